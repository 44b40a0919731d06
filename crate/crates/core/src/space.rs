//! Finite-dimensional real normed spaces: polytope balls (exact) and `ℓ_p`
//! balls (floating, sampled).

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::scalar::{dot, int, neg_vec, rat, Rational, Sign};

#[derive(Clone, Debug, PartialEq)]
pub enum SpaceKind {
    Polytope(Polytope),
    Lp { p: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Space {
    name: String,
    dim: usize,
    kind: SpaceKind,
}

impl Space {
    /// A polytope space from a symmetric vertex list. Redundant and duplicate
    /// points are dropped; asymmetric or flat input is rejected.
    pub fn polytope(name: impl Into<String>, vertices: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = vertices.first().map(Vec::len).ok_or_else(|| Error::Degenerate("no vertices".into()))?;
        if dim == 0 {
            return Err(Error::Degenerate("zero-dimensional space".into()));
        }
        let poly = Polytope::from_vertices(vertices, dim)?;
        Ok(Space { name: name.into(), dim, kind: SpaceKind::Polytope(poly) })
    }

    /// Like [`Space::polytope`], but first closes the point set under negation.
    /// The flag reports whether any point had to be added.
    pub fn polytope_symmetrized(name: impl Into<String>, vertices: Vec<Vec<Rational>>) -> Result<(Self, bool)> {
        let set: BTreeSet<Vec<Rational>> = vertices.iter().cloned().collect();
        let mut closed = set.clone();
        closed.extend(set.iter().map(|v| neg_vec(v)));
        let added = closed.len() > set.len();
        Ok((Space::polytope(name, closed.into_iter().collect())?, added))
    }

    pub fn from_polytope(name: impl Into<String>, poly: Polytope) -> Self {
        Space { name: name.into(), dim: poly.dim(), kind: SpaceKind::Polytope(poly) }
    }

    pub fn lp(dim: usize, p: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Degenerate("zero-dimensional space".into()));
        }
        if !(p >= 1.0) || p.is_nan() {
            return Err(Error::Precondition(format!("l_p requires p >= 1, got {p}")));
        }
        let name = if p.is_infinite() { format!("lp:{dim}:inf") } else { format!("lp:{dim}:{p}") };
        Ok(Space { name, dim, kind: SpaceKind::Lp { p } })
    }

    /// `ℓ_∞^n`: the cube with vertices `(±1, …, ±1)`.
    pub fn linf(n: usize) -> Result<Self> {
        let vertices = (0..1u64 << n)
            .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { int(-1) } else { int(1) }).collect())
            .collect();
        Space::polytope(format!("linf:{n}"), vertices)
    }

    /// `ℓ_1^n`: the cross-polytope with vertices `±e_i`.
    pub fn l1(n: usize) -> Result<Self> {
        let vertices = (0..n)
            .flat_map(|i| {
                [1, -1].map(|s| {
                    let mut v = vec![Rational::zero(); n];
                    v[i] = int(s);
                    v
                })
            })
            .collect();
        Space::polytope(format!("l1:{n}"), vertices)
    }

    /// The octagon with vertices `(±1,0), (0,±1), (±2/3,±2/3)`.
    pub fn octagon() -> Self {
        let t = rat(2, 3);
        let mut v = vec![
            vec![int(1), int(0)],
            vec![int(-1), int(0)],
            vec![int(0), int(1)],
            vec![int(0), int(-1)],
        ];
        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            v.push(vec![&t * int(a), &t * int(b)]);
        }
        Space::polytope("octagon", v).expect("octagon is a valid symmetric polytope")
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, SpaceKind::Polytope(_))
    }

    pub fn as_polytope(&self) -> Result<&Polytope> {
        match &self.kind {
            SpaceKind::Polytope(p) => Ok(p),
            SpaceKind::Lp { .. } => Err(Error::NotPolytope(self.name.clone())),
        }
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: len });
        }
        Ok(())
    }

    /// Exact norm of a rational vector (polytope spaces only).
    pub fn norm(&self, x: &[Rational]) -> Result<Rational> {
        self.check_dim(x.len())?;
        Ok(self.as_polytope()?.gauge(x))
    }

    /// Floating norm; available for every kind of space.
    pub fn norm_f64(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(match &self.kind {
            SpaceKind::Polytope(poly) => poly
                .facets()
                .iter()
                .map(|a| a.iter().zip(x).map(|(ai, xi)| crate::scalar::to_f64(ai) * xi).sum::<f64>())
                .fold(0.0, f64::max),
            SpaceKind::Lp { p } => lp_norm(x, *p),
        })
    }

    /// The polar polytope, realizing the dual unit ball.
    pub fn dualize(&self) -> Result<Space> {
        let poly = self.as_polytope()?;
        Ok(Space::from_polytope(format!("dual({})", self.name), poly.polar()))
    }

    pub fn extreme_points(&self) -> Result<&[Vec<Rational>]> {
        Ok(self.as_polytope()?.vertices())
    }

    /// Extreme points of the dual ball.
    pub fn dual_extreme_points(&self) -> Result<&[Vec<Rational>]> {
        Ok(self.as_polytope()?.facets())
    }

    /// Extreme points of `J_μ(x) = {x* ∈ S_{X*} : x*(x) = μ}` for a unit vector `x`:
    /// the dual vertices taking the value `μ` at `x`.
    pub fn support_set(&self, x: &[Rational], mu: Sign) -> Result<Vec<Vec<Rational>>> {
        let norm = self.norm(x)?;
        if !norm.is_one() {
            return Err(Error::NotOnSphere { norm: norm.to_string() });
        }
        let target = mu.to_rational();
        Ok(self.dual_extreme_points()?.iter().filter(|f| dot(f, x) == target).cloned().collect())
    }

    pub fn is_smooth_point(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.support_set(x, Sign::Plus)?.len() == 1)
    }

    /// Floating smoothness test, used for `ℓ_p` spaces.
    pub fn is_smooth_point_f64(&self, x: &[f64]) -> Result<bool> {
        self.check_dim(x.len())?;
        match &self.kind {
            SpaceKind::Lp { p } if *p > 1.0 && p.is_finite() => Ok(x.iter().any(|v| *v != 0.0)),
            SpaceKind::Lp { p } if *p == 1.0 => Ok(x.iter().all(|v| *v != 0.0)),
            SpaceKind::Lp { .. } => {
                let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                Ok(x.iter().filter(|v| v.abs() == m).count() == 1)
            }
            SpaceKind::Polytope(_) => {
                let exact: Vec<Rational> = x
                    .iter()
                    .map(|v| Rational::from_float(*v).ok_or_else(|| Error::Precondition("non-finite coordinate".into())))
                    .collect::<Result<_>>()?;
                let n = self.norm(&exact)?;
                let unit: Vec<Rational> = exact.iter().map(|v| v / &n).collect();
                self.is_smooth_point(&unit)
            }
        }
    }

    pub fn is_smooth_space(&self) -> bool {
        match &self.kind {
            SpaceKind::Polytope(_) => self.dim == 1,
            SpaceKind::Lp { p } => self.dim == 1 || (*p > 1.0 && p.is_finite()),
        }
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.is_smooth_space()
    }
}

pub fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        x.iter().fold(0.0, |m, v| m.max(v.abs()))
    } else if p == 1.0 {
        x.iter().map(|v| v.abs()).sum()
    } else if p == 2.0 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    } else {
        x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int_vec;

    #[test]
    fn norms_of_listed_points() {
        assert_eq!(Space::linf(2).unwrap().norm(&int_vec(&[1, 1])).unwrap(), int(1));
        let oct = Space::octagon();
        assert_eq!(oct.norm(&[rat(2, 3), rat(2, 3)]).unwrap(), int(1));
        assert_eq!(oct.norm(&int_vec(&[0, 0])).unwrap(), int(0));
        assert_eq!(oct.norm(&int_vec(&[1, 1])).unwrap(), rat(3, 2));
        assert!(matches!(oct.norm(&int_vec(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn dual_pairs() {
        let linf = Space::linf(2).unwrap();
        let l1 = Space::l1(2).unwrap();
        assert_eq!(linf.dualize().unwrap().extreme_points().unwrap(), l1.extreme_points().unwrap());
        assert_eq!(l1.dualize().unwrap().extreme_points().unwrap(), linf.extreme_points().unwrap());
        let oct = Space::octagon();
        let dual = oct.dualize().unwrap();
        assert_eq!(dual.extreme_points().unwrap().len(), 8);
        assert_eq!(dual.dualize().unwrap().extreme_points().unwrap(), oct.extreme_points().unwrap());
    }

    #[test]
    fn extreme_point_counts() {
        assert_eq!(Space::linf(3).unwrap().extreme_points().unwrap().len(), 8);
        assert_eq!(Space::l1(3).unwrap().extreme_points().unwrap().len(), 6);
        assert_eq!(Space::octagon().extreme_points().unwrap().len(), 8);
    }

    #[test]
    fn support_sets() {
        let linf = Space::linf(2).unwrap();
        assert_eq!(linf.support_set(&int_vec(&[1, 1]), Sign::Plus).unwrap(), vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
        assert_eq!(linf.support_set(&int_vec(&[1, 0]), Sign::Plus).unwrap(), vec![int_vec(&[1, 0])]);
        let l1 = Space::l1(2).unwrap();
        assert_eq!(l1.support_set(&int_vec(&[1, 0]), Sign::Plus).unwrap(), vec![int_vec(&[1, -1]), int_vec(&[1, 1])]);
        assert!(matches!(linf.support_set(&int_vec(&[2, 0]), Sign::Plus), Err(Error::NotOnSphere { .. })));
        let minus = linf.support_set(&int_vec(&[1, 1]), Sign::Minus).unwrap();
        assert_eq!(minus, vec![int_vec(&[-1, 0]), int_vec(&[0, -1])]);
    }

    #[test]
    fn smoothness_flags() {
        let linf = Space::linf(2).unwrap();
        assert!(linf.is_smooth_point(&int_vec(&[1, 0])).unwrap());
        assert!(!linf.is_smooth_point(&int_vec(&[1, 1])).unwrap());
        assert!(!linf.is_smooth_space());
        assert!(!linf.is_strictly_convex());
        let l3 = Space::lp(2, 3.0).unwrap();
        assert!(l3.is_smooth_space() && l3.is_strictly_convex());
        assert!(l3.is_smooth_point_f64(&[1.0, 0.0]).unwrap());
        assert!(Space::lp(2, 0.5).is_err());
    }
}
