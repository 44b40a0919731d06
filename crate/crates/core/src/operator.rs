//! Operator norm, numerical range and numerical radius.
//!
//! On polytope spaces the numerical radius is computed exactly from the
//! admissible pairs `(v, x*)` of a ball vertex and a dual-ball vertex with
//! `x*(v) = ±1`: for fixed `x` the supremum over `J(x)` is attained at an
//! extreme point of `J(x)`, which is extreme in the dual ball, and for fixed
//! `x*` the linear map `x ↦ x*(Tx)` peaks at a vertex of the facet of `x*`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Operator, RatMatrix};
use crate::polytope::Polytope;
use crate::scalar::{dot, Measured, Rational, Sign};
use crate::space::Space;
use crate::verify::{self, SampleConfig};

/// A ball vertex `x`, a dual-ball vertex `xstar`, and `sigma = xstar(x) ∈ {±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub x: Vec<Rational>,
    pub xstar: Vec<Rational>,
    pub sigma: Sign,
}

impl AdmissiblePair {
    /// `x*(Tx)`
    pub fn value(&self, t: &RatMatrix) -> Rational {
        dot(&self.xstar, &t.apply(&self.x))
    }

    /// The same pair with `σ = +1`, obtained by replacing `x*` with `σ·x*`.
    pub fn normalized(&self) -> AdmissiblePair {
        match self.sigma {
            Sign::Plus => self.clone(),
            Sign::Minus => AdmissiblePair {
                x: self.x.clone(),
                xstar: self.xstar.iter().map(|v| -v).collect(),
                sigma: Sign::Plus,
            },
        }
    }
}

pub fn admissible_pairs(space: &Space) -> Result<Vec<AdmissiblePair>> {
    let poly = space.as_polytope()?;
    Ok(pairs_of(poly))
}

pub(crate) fn pairs_of(poly: &Polytope) -> Vec<AdmissiblePair> {
    let mut out = Vec::new();
    for x in poly.vertices() {
        for xstar in poly.facets() {
            let v = dot(xstar, x);
            if v.abs() == num_traits::One::one() {
                let sigma = Sign::of(&v).expect("nonzero");
                out.push(AdmissiblePair { x: x.clone(), xstar: xstar.clone(), sigma });
            }
        }
    }
    out
}

fn check_op(space: &Space, n: usize) -> Result<()> {
    if n != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: n });
    }
    Ok(())
}

/// `max_v ‖Tv‖` over ball vertices.
pub fn op_norm_exact(poly: &Polytope, t: &RatMatrix) -> Rational {
    poly.vertices().iter().map(|v| poly.gauge(&t.apply(v))).max().unwrap_or_else(Rational::zero)
}

/// Operator norm: exact on polytope spaces with rational entries, sampled otherwise.
pub fn op_norm(space: &Space, op: &Operator, cfg: &SampleConfig) -> Result<Measured> {
    check_op(space, op.n())?;
    match (space.as_polytope(), op) {
        (Ok(poly), Operator::Exact(t)) => Ok(Measured::Exact(op_norm_exact(poly, t))),
        _ => {
            let (value, samples) = verify::sample_op_norm(space, &op.to_f64(), cfg)?;
            Ok(Measured::Sampled { value, samples })
        }
    }
}

/// `max |x*(Tv)|` over the given admissible pairs.
pub fn radius_over_pairs(pairs: &[AdmissiblePair], t: &RatMatrix) -> Rational {
    pairs.iter().map(|p| p.value(t).abs()).max().unwrap_or_else(Rational::zero)
}

pub fn numerical_radius_exact(space: &Space, t: &RatMatrix) -> Result<Rational> {
    check_op(space, t.n())?;
    Ok(radius_over_pairs(&admissible_pairs(space)?, t))
}

/// Numerical radius: exact on polytope spaces with rational entries, sampled otherwise.
pub fn numerical_radius(space: &Space, op: &Operator, cfg: &SampleConfig) -> Result<Measured> {
    check_op(space, op.n())?;
    match (space.is_exact(), op) {
        (true, Operator::Exact(t)) => Ok(Measured::Exact(numerical_radius_exact(space, t)?)),
        _ => {
            let (value, samples) = verify::sample_radius(space, &op.to_f64(), cfg)?;
            Ok(Measured::Sampled { value, samples })
        }
    }
}

/// Range of `x ↦ x*(Tx)` over the facet `{x ∈ B_X : x*(x) = 1}` of one dual vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetInterval {
    pub xstar: Vec<Rational>,
    pub lo: Rational,
    pub hi: Rational,
}

/// Facet-wise description of the numerical range. The union of the intervals
/// lies in `[hull.0, hull.1]` but may not fill it.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeReport {
    pub facet_intervals: Vec<FacetInterval>,
    pub hull: (Rational, Rational),
    pub radius: Rational,
}

pub fn numerical_range(space: &Space, t: &RatMatrix) -> Result<RangeReport> {
    check_op(space, t.n())?;
    let poly = space.as_polytope()?;
    let one: Rational = num_traits::One::one();
    let mut facet_intervals = Vec::with_capacity(poly.facets().len());
    for xstar in poly.facets() {
        let values: Vec<Rational> =
            poly.vertices().iter().filter(|v| dot(xstar, v) == one).map(|v| dot(xstar, &t.apply(v))).collect();
        let lo = values.iter().min().expect("every facet has vertices").clone();
        let hi = values.iter().max().expect("every facet has vertices").clone();
        facet_intervals.push(FacetInterval { xstar: xstar.clone(), lo, hi });
    }
    let lo = facet_intervals.iter().map(|f| &f.lo).min().expect("facets").clone();
    let hi = facet_intervals.iter().map(|f| &f.hi).max().expect("facets").clone();
    let radius = lo.abs().max(hi.abs());
    Ok(RangeReport { facet_intervals, hull: (lo, hi), radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn operator_norms_on_the_square() {
        let s = Space::linf(2).unwrap();
        let poly = s.as_polytope().unwrap();
        assert_eq!(op_norm_exact(poly, &RatMatrix::identity(2)), int(1));
        assert_eq!(op_norm_exact(poly, &m(&[&[1, 1], &[0, 0]])), int(2));
        assert_eq!(op_norm_exact(poly, &RatMatrix::zero(2)), int(0));
    }

    #[test]
    fn admissible_pair_counts() {
        assert_eq!(admissible_pairs(&Space::linf(2).unwrap()).unwrap().len(), 16);
        assert_eq!(admissible_pairs(&Space::l1(2).unwrap()).unwrap().len(), 16);
        let oct = admissible_pairs(&Space::octagon()).unwrap();
        assert!(oct.len() < 64);
        assert!(oct.iter().all(|p| dot(&p.xstar, &p.x) == p.sigma.to_rational()));
    }

    #[test]
    fn radius_examples() {
        let s = Space::linf(2).unwrap();
        assert_eq!(numerical_radius_exact(&s, &RatMatrix::identity(2)).unwrap(), int(1));
        assert_eq!(numerical_radius_exact(&s, &m(&[&[0, 1], &[0, 0]])).unwrap(), int(1));
        let l2 = Space::lp(2, 2.0).unwrap();
        let rot = Operator::Exact(m(&[&[0, -1], &[1, 0]]));
        let w = numerical_radius(&l2, &rot, &SampleConfig::default()).unwrap();
        assert!(!w.is_exact() && w.to_f64() < 1e-9);
    }

    #[test]
    fn range_examples() {
        let s = Space::linf(2).unwrap();
        let id = numerical_range(&s, &RatMatrix::identity(2)).unwrap();
        assert!(id.facet_intervals.iter().all(|f| f.lo == int(1) && f.hi == int(1)));
        assert_eq!(id.hull, (int(1), int(1)));

        let d = numerical_range(&s, &m(&[&[1, 0], &[0, -1]])).unwrap();
        let e1 = d.facet_intervals.iter().find(|f| f.xstar == vec![int(1), int(0)]).unwrap();
        assert_eq!((e1.lo.clone(), e1.hi.clone()), (int(1), int(1)));
        assert_eq!(d.hull, (int(-1), int(1)));
        assert_eq!(d.radius, int(1));

        let z = numerical_range(&s, &RatMatrix::zero(2)).unwrap();
        assert_eq!(z.hull, (int(0), int(0)));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let s = Space::linf(2).unwrap();
        assert!(matches!(numerical_radius_exact(&s, &RatMatrix::identity(3)), Err(Error::DimensionMismatch { .. })));
    }
}
