//! Where the numerical radius is attained, Birkhoff–James orthogonality with
//! respect to `w`, nu-smoothness, exposedness of dual extreme points, and the
//! rank-one operators `y ↦ x*(y)·x`.
//!
//! Only extreme attaining pairs are stored. On a polytope every attaining
//! value is a convex combination of extreme attaining values, which is all
//! the orthogonality test needs.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::dual::{build_m, TensorFunctional};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::matrix::{FloatMatrix, RatMatrix};
use crate::operator::{admissible_pairs, radius_over_pairs};
use crate::polytope::hull_coefficients;
use crate::scalar::{dot, dot_f64, int, Rational, Sign};
use crate::space::Space;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AttainingPair {
    pub x: Vec<Rational>,
    pub xstar: Vec<Rational>,
    /// `x*(Tx) / w(T)`
    pub s: Sign,
}

impl AttainingPair {
    /// The supporting functional `s·(x* ⊗ x)` of `w` at `T`.
    pub fn support_g(&self) -> RatMatrix {
        let tf = TensorFunctional::new(self.x.clone(), self.xstar.clone()).expect("same dimension");
        match self.s {
            Sign::Plus => tf.g().clone(),
            Sign::Minus => tf.g().neg(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AttainmentSet {
    pub radius: Rational,
    /// Extreme pairs with `x*(x) = 1` and `|x*(Tx)| = w(T)`.
    pub pairs: Vec<AttainingPair>,
}

fn check_op(space: &Space, t: &RatMatrix) -> Result<()> {
    if t.n() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: t.n() });
    }
    Ok(())
}

pub fn attainment_set(space: &Space, t: &RatMatrix) -> Result<AttainmentSet> {
    check_op(space, t)?;
    let pairs = admissible_pairs(space)?;
    let radius = radius_over_pairs(&pairs, t);
    if radius.is_zero() {
        return Err(Error::ZeroRadius);
    }
    let mut out: Vec<AttainingPair> = pairs
        .iter()
        .filter(|p| p.sigma == Sign::Plus)
        .filter_map(|p| {
            let v = p.value(t);
            (v.abs() == radius).then(|| AttainingPair {
                x: p.x.clone(),
                xstar: p.xstar.clone(),
                s: Sign::of(&v).expect("nonzero radius"),
            })
        })
        .collect();
    out.sort();
    Ok(AttainmentSet { radius, pairs: out })
}

#[derive(Clone, Debug, PartialEq)]
pub enum BjCertificate {
    /// `Σ c_i·u_i = 0` with `c_i > 0, Σ c_i = 1`, where `u_i` is the vector
    /// `s·x*(A_k x)` of attainment pair `pair_indices[i]`.
    Convex { pair_indices: Vec<usize>, coefficients: Vec<Rational>, values: Vec<Vec<Rational>> },
    /// `w(T + Σ λ_k A_k) < w(T)`, verified exactly.
    Descent { lambda: Vec<Rational>, perturbed_radius: Rational },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BjReport {
    pub orthogonal: bool,
    pub radius: Rational,
    pub certificate: BjCertificate,
}

/// Decides `w(T + Σ λ_k A_k) ≥ w(T)` for all real `λ`.
///
/// Holds iff `0` lies in the convex hull of the attainment vectors
/// `(s·x*(A_1 x), …, s·x*(A_k x))`; otherwise a strictly separating direction
/// gives a descent step.
pub fn bj_orthogonal_w(space: &Space, t: &RatMatrix, family: &[RatMatrix]) -> Result<BjReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for a in family {
        check_op(space, a)?;
    }
    let att = attainment_set(space, t)?;
    let values: Vec<Vec<Rational>> = att
        .pairs
        .iter()
        .map(|p| {
            family
                .iter()
                .map(|a| {
                    let v = dot(&p.xstar, &a.apply(&p.x));
                    if p.s == Sign::Plus {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    let origin = vec![Rational::zero(); family.len()];
    if let Some(c) = hull_coefficients(&values, &origin) {
        let support: Vec<usize> = (0..c.len()).filter(|&i| c[i].is_positive()).collect();
        return Ok(BjReport {
            orthogonal: true,
            radius: att.radius,
            certificate: BjCertificate::Convex {
                coefficients: support.iter().map(|&i| c[i].clone()).collect(),
                values: support.iter().map(|&i| values[i].clone()).collect(),
                pair_indices: support,
            },
        });
    }

    // Separating direction d with u·d ≤ -1 for every attainment vector u.
    let k = family.len();
    let mut lp = LinearProgram::new(k);
    lp.set_all_free();
    for u in &values {
        lp.constraint(u.clone(), Relation::Le, -Rational::one());
    }
    let LpOutcome::Optimal { x: d, .. } = lp.solve() else {
        return Err(Error::CertificationFailure {
            reason: "no convex certificate and no separating direction".into(),
            difference: Vec::new(),
        });
    };
    let direction = family
        .iter()
        .zip(&d)
        .fold(RatMatrix::zero(space.dim()), |acc, (a, di)| acc.add_scaled(di, a));

    // Largest safe step: stay below every non-attaining functional.
    let gs = build_m(space)?;
    let mut step: Option<Rational> = None;
    for g in &gs {
        let base = g.apply(t);
        let slope = g.apply(&direction);
        if base < att.radius && slope.is_positive() {
            let limit = (&att.radius - base) / slope;
            if step.as_ref().is_none_or(|s| &limit < s) {
                step = Some(limit);
            }
        }
    }
    let step = step.map_or_else(Rational::one, |s| s / int(2));
    let lambda: Vec<Rational> = d.iter().map(|di| di * &step).collect();
    let perturbed = family.iter().zip(&lambda).fold(t.clone(), |acc, (a, l)| acc.add_scaled(l, a));
    let perturbed_radius = radius_over_pairs(&admissible_pairs(space)?, &perturbed);
    if perturbed_radius >= att.radius {
        return Err(Error::CertificationFailure {
            reason: format!("descent step did not decrease the radius ({perturbed_radius} >= {})", att.radius),
            difference: Vec::new(),
        });
    }
    Ok(BjReport { orthogonal: false, radius: att.radius, certificate: BjCertificate::Descent { lambda, perturbed_radius } })
}

/// Rank-one operator `T(y) = x*(y)·x`, i.e. `T[i][j] = x[i]·x*[j]`, for a unit
/// `x`, a unit functional `x*` and `x*(x) = μ`. Its numerical radius is one.
pub fn rank_one_spear(space: &Space, x: &[Rational], xstar: &[Rational], mu: Sign) -> Result<RatMatrix> {
    let poly = space.as_polytope()?;
    if x.len() != space.dim() || xstar.len() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: x.len().max(xstar.len()) });
    }
    let one = Rational::one();
    let nx = poly.gauge(x);
    if nx != one {
        return Err(Error::NotOnSphere { norm: nx.to_string() });
    }
    let nf = poly.polar().gauge(xstar);
    if nf != one {
        return Err(Error::NotOnSphere { norm: nf.to_string() });
    }
    if dot(xstar, x) != mu.to_rational() {
        return Err(Error::Precondition(format!("x*(x) = {} differs from mu = {mu}", dot(xstar, x))));
    }
    Ok(outer(x, xstar))
}

fn outer(x: &[Rational], xstar: &[Rational]) -> RatMatrix {
    let rows = x.iter().map(|a| xstar.iter().map(|b| a * b).collect()).collect();
    RatMatrix::from_rows(rows).expect("square")
}

/// Floating variant for sampled spaces; preconditions are checked to `eps`.
pub fn rank_one_spear_f64(space: &Space, x: &[f64], xstar: &[f64], mu: Sign, eps: f64) -> Result<FloatMatrix> {
    if x.len() != space.dim() || xstar.len() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: x.len().max(xstar.len()) });
    }
    let nx = space.norm_f64(x)?;
    if (nx - 1.0).abs() > eps {
        return Err(Error::NotOnSphere { norm: nx.to_string() });
    }
    if (dot_f64(xstar, x) - mu.to_i64() as f64).abs() > eps {
        return Err(Error::Precondition("x*(x) differs from mu".into()));
    }
    let rows = x.iter().map(|a| xstar.iter().map(|b| a * b).collect()).collect();
    FloatMatrix::from_rows(rows)
}

/// Maximizers of `⟨T, G⟩` over the extreme functionals: the vertices of the
/// face of the dual ball exposed by `T`.
pub fn exposed_face(space: &Space, t: &RatMatrix) -> Result<Vec<TensorFunctional>> {
    check_op(space, t)?;
    let m = build_m(space)?;
    let best = m.iter().map(|g| g.apply(t)).max().unwrap_or_else(Rational::zero);
    if best.is_zero() {
        return Err(Error::ZeroRadius);
    }
    Ok(m.into_iter().filter(|g| g.apply(t) == best).collect())
}

/// Affine dimension of the face of the dual ball exposed by `T`.
pub fn exposed_face_dimension(space: &Space, t: &RatMatrix) -> Result<usize> {
    let face = exposed_face(space, t)?;
    let base = face[0].g().clone();
    let diffs: Vec<Vec<Rational>> = face[1..].iter().map(|g| g.g().add_scaled(&-Rational::one(), &base).into_entries()).collect();
    Ok(linalg::rank(&diffs))
}

/// `T` is nu-smooth iff it has a unique supporting functional in the dual
/// ball of the numerical-radius norm, i.e. its exposed face is a point.
pub fn nu_smooth(space: &Space, t: &RatMatrix) -> Result<bool> {
    Ok(exposed_face_dimension(space, t)? == 0)
}

/// Certifies by LP that `tf` is the unique maximizer over the extreme set of
/// some linear functional `H`: `⟨H, G⟩ ≥ ⟨H, G'⟩ + 1` for every other extreme `G'`.
pub fn exposed_point_check(space: &Space, tf: &TensorFunctional) -> Result<bool> {
    let extremes: BTreeSet<RatMatrix> = build_m(space)?.iter().map(|t| t.g().clone()).collect();
    if !extremes.contains(tf.g()) {
        return Err(Error::NotExtreme);
    }
    let n2 = space.dim() * space.dim();
    let mut lp = LinearProgram::new(n2);
    lp.set_all_free();
    for other in extremes.iter().filter(|g| *g != tf.g()) {
        let diff = tf.g().add_scaled(&-Rational::one(), other).into_entries();
        lp.constraint(diff, Relation::Ge, Rational::one());
    }
    Ok(lp.solve().is_feasible())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int_vec, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn identity_attains_everywhere() {
        let s = Space::linf(2).unwrap();
        let a = attainment_set(&s, &RatMatrix::identity(2)).unwrap();
        assert_eq!(a.pairs.len(), 8);
        assert!(a.pairs.iter().all(|p| p.s == Sign::Plus));
    }

    #[test]
    fn nilpotent_attainment() {
        let s = Space::linf(2).unwrap();
        let a = attainment_set(&s, &m(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(a.radius, int(1));
        for p in &a.pairs {
            assert_eq!(p.xstar.iter().map(|v| v.abs()).collect::<Vec<_>>(), int_vec(&[1, 0]));
            assert_eq!(dot(&p.xstar, &p.x), int(1));
            assert_eq!(p.x[1].abs(), int(1));
        }
        assert_eq!(a.pairs.len(), 4);
    }

    #[test]
    fn diagonal_has_both_signs() {
        let s = Space::linf(2).unwrap();
        let a = attainment_set(&s, &m(&[&[1, 0], &[0, -1]])).unwrap();
        assert!(a.pairs.iter().any(|p| p.s == Sign::Plus));
        assert!(a.pairs.iter().any(|p| p.s == Sign::Minus));
        assert!(matches!(attainment_set(&s, &RatMatrix::zero(2)), Err(Error::ZeroRadius)));
    }

    #[test]
    fn bj_examples() {
        let s = Space::linf(2).unwrap();
        let id = RatMatrix::identity(2);
        let r = bj_orthogonal_w(&s, &id, &[m(&[&[1, 0], &[0, -1]])]).unwrap();
        assert!(r.orthogonal);
        match r.certificate {
            BjCertificate::Convex { coefficients, values, .. } => {
                assert_eq!(coefficients, vec![rat(1, 2), rat(1, 2)]);
                let mut vs: Vec<Rational> = values.into_iter().map(|v| v[0].clone()).collect();
                vs.sort();
                assert_eq!(vs, vec![int(-1), int(1)]);
            }
            other => panic!("unexpected {other:?}"),
        }

        let r = bj_orthogonal_w(&s, &id, &[id.clone()]).unwrap();
        assert!(!r.orthogonal);
        match r.certificate {
            BjCertificate::Descent { perturbed_radius, .. } => assert!(perturbed_radius < int(1)),
            other => panic!("unexpected {other:?}"),
        }

        assert!(bj_orthogonal_w(&s, &m(&[&[2, 1], &[0, 1]]), &[RatMatrix::zero(2)]).unwrap().orthogonal);
        assert!(matches!(bj_orthogonal_w(&s, &id, &[]), Err(Error::EmptyFamily)));
    }

    #[test]
    fn rank_one_examples() {
        let s = Space::linf(2).unwrap();
        let t = rank_one_spear(&s, &int_vec(&[1, 1]), &int_vec(&[1, 0]), Sign::Plus).unwrap();
        assert_eq!(t, m(&[&[1, 0], &[1, 0]]));
        assert_eq!(crate::operator::numerical_radius_exact(&s, &t).unwrap(), int(1));
        assert!(rank_one_spear(&s, &int_vec(&[1, 1]), &int_vec(&[1, 0]), Sign::Minus).is_err());
        assert!(rank_one_spear(&s, &int_vec(&[2, 0]), &int_vec(&[1, 0]), Sign::Plus).is_err());
    }

    #[test]
    fn nu_smoothness() {
        let s = Space::linf(2).unwrap();
        assert!(!nu_smooth(&s, &RatMatrix::identity(2)).unwrap());
        assert!(exposed_face_dimension(&s, &RatMatrix::identity(2)).unwrap() > 0);
        assert!(nu_smooth(&s, &m(&[&[1, 1], &[0, 0]])).unwrap());
        assert!(matches!(nu_smooth(&s, &RatMatrix::zero(2)), Err(Error::ZeroRadius)));
    }

    #[test]
    fn exposedness() {
        let s = Space::linf(2).unwrap();
        for tf in build_m(&s).unwrap() {
            assert!(exposed_point_check(&s, &tf).unwrap());
        }
        let a = TensorFunctional::new(int_vec(&[1, 1]), int_vec(&[1, 0])).unwrap();
        let b = TensorFunctional::new(int_vec(&[1, -1]), int_vec(&[1, 0])).unwrap();
        // Midpoint e_1 ⊗ (1, 0) is not extreme.
        let mid = TensorFunctional::new(int_vec(&[1, 0]), int_vec(&[1, 0])).unwrap();
        assert_eq!(mid.g(), &a.g().add(b.g()).scale(&rat(1, 2)));
        assert!(matches!(exposed_point_check(&s, &mid), Err(Error::NotExtreme)));
    }
}
