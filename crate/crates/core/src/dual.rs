//! Tensor functionals `x* ⊗ x : T ↦ x*(Tx)` and the unit balls of the operator
//! space under the numerical radius and the operator norm.
//!
//! A tensor functional is identified with its matrix `G[i][j] = x*[i]·x[j]`
//! under the trace pairing, so equality of functionals is equality of `G`.
//! Operator balls live in `n²`-space with coordinates flattened row-major.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::One;

use crate::dd;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::RatMatrix;
use crate::operator::{admissible_pairs, AdmissiblePair};
use crate::polytope::hull_contains;
use crate::scalar::{dot, Rational};
use crate::space::Space;
use crate::verify::dedup_by_g;

/// Largest `n` for which matrix-space vertex enumeration runs without an explicit lift.
pub const MATRIX_DIM_CAP: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EnumerationCap {
    #[default]
    Default,
    Lifted,
}

impl EnumerationCap {
    pub fn check(self, n: usize) -> Result<()> {
        if self == EnumerationCap::Default && n > MATRIX_DIM_CAP {
            return Err(Error::TooLarge { dim: n, cap: MATRIX_DIM_CAP });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFunctional {
    x: Vec<Rational>,
    xstar: Vec<Rational>,
    g: RatMatrix,
}

impl TensorFunctional {
    pub fn new(x: Vec<Rational>, xstar: Vec<Rational>) -> Result<Self> {
        if x.len() != xstar.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), got: xstar.len() });
        }
        let rows = xstar.iter().map(|a| x.iter().map(|b| a * b).collect()).collect();
        let g = RatMatrix::from_rows(rows)?;
        Ok(TensorFunctional { x, xstar, g })
    }

    pub fn from_pair(pair: &AdmissiblePair) -> Self {
        Self::new(pair.x.clone(), pair.xstar.clone()).expect("pair factors share a dimension")
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn xstar(&self) -> &[Rational] {
        &self.xstar
    }

    pub fn g(&self) -> &RatMatrix {
        &self.g
    }

    /// `⟨T, G⟩ = Σ G[i][j]·T[i][j]`
    pub fn apply(&self, t: &RatMatrix) -> Rational {
        self.g.pair(t)
    }

    /// `(-x*) ⊗ x`
    pub fn negated(&self) -> Self {
        Self::new(self.x.clone(), self.xstar.iter().map(|v| -v).collect()).expect("same dimension")
    }
}

/// `{x* ⊗ x : x ∈ E_{B_X}, x* ∈ E_{B_X*}, |x*(x)| = 1}`, deduplicated by `G`.
/// The set is rounded: it contains `-G` with every `G`.
pub fn build_m(space: &Space) -> Result<Vec<TensorFunctional>> {
    let pairs = admissible_pairs(space)?;
    Ok(dedup_by_g(pairs.iter().map(TensorFunctional::from_pair).collect()))
}

/// The extreme-factor part of `{x* ⊗ x : |x*(x)| = ‖x*‖·‖x‖}`, with the norm
/// condition evaluated through the primal and dual gauges rather than
/// through the vertex normalization.
pub fn build_a(space: &Space) -> Result<Vec<TensorFunctional>> {
    let poly = space.as_polytope()?;
    let polar = poly.polar();
    let mut out = Vec::new();
    for x in poly.vertices() {
        let nx = poly.gauge(x);
        for xstar in poly.facets() {
            let nf = polar.gauge(xstar);
            let v = dot(xstar, x);
            if num_traits::Signed::abs(&v) == &nf * &nx {
                out.push(TensorFunctional::new(x.clone(), xstar.clone())?);
            }
        }
    }
    Ok(dedup_by_g(out))
}

/// A symmetric polytope in operator space given by `|⟨T, G⟩| ≤ 1` over its
/// generators; vertices are enumerated on first request.
#[derive(Debug)]
pub struct OperatorBall {
    n: usize,
    generators: Vec<RatMatrix>,
    cap: EnumerationCap,
    vertices: OnceLock<Vec<RatMatrix>>,
    polar_vertices: OnceLock<Vec<RatMatrix>>,
}

fn flatten(ms: &[RatMatrix]) -> Vec<Vec<Rational>> {
    ms.iter().map(|m| m.entries().to_vec()).collect()
}

fn unflatten(n: usize, vs: Vec<Vec<Rational>>) -> Vec<RatMatrix> {
    vs.into_iter().map(|v| RatMatrix::from_flat(n, v).expect("n² coordinates")).collect()
}

impl OperatorBall {
    fn new(n: usize, generators: Vec<RatMatrix>, cap: EnumerationCap) -> Self {
        let set: BTreeSet<RatMatrix> = generators.iter().flat_map(|g| [g.clone(), g.neg()]).collect();
        OperatorBall {
            n,
            generators: set.into_iter().collect(),
            cap,
            vertices: OnceLock::new(),
            polar_vertices: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Facet-form generators, closed under negation and sorted.
    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    pub fn contains(&self, t: &RatMatrix) -> bool {
        self.generators.iter().all(|g| g.pair(t) <= Rational::one())
    }

    /// `max_G ⟨T, G⟩`, the gauge of the ball.
    pub fn gauge(&self, t: &RatMatrix) -> Rational {
        self.generators.iter().map(|g| g.pair(t)).max().expect("nonempty generators")
    }

    pub fn vertices(&self) -> Result<&[RatMatrix]> {
        if let Some(v) = self.vertices.get() {
            return Ok(v);
        }
        self.cap.check(self.n)?;
        let v = unflatten(self.n, dd::enumerate_vertices(&flatten(&self.generators), self.n * self.n)?);
        Ok(self.vertices.get_or_init(|| v))
    }

    /// Vertices of the polar body, enumerated from the facet form
    /// `{G : ⟨V, G⟩ ≤ 1 for every vertex V}` of the polar.
    pub fn polar_vertices(&self) -> Result<&[RatMatrix]> {
        if let Some(v) = self.polar_vertices.get() {
            return Ok(v);
        }
        let normals = flatten(self.vertices()?);
        let v = unflatten(self.n, dd::enumerate_vertices(&normals, self.n * self.n)?);
        Ok(self.polar_vertices.get_or_init(|| v))
    }

    /// Facet-form membership of `g` in the polar body.
    pub fn polar_contains(&self, g: &RatMatrix) -> Result<bool> {
        Ok(self.vertices()?.iter().all(|v| v.pair(g) <= Rational::one()))
    }
}

/// Returns an operator annihilated by every `G`, when the `G` fail to span matrix space.
pub fn seminorm_kernel(n: usize, gs: &[RatMatrix]) -> Option<RatMatrix> {
    linalg::kernel_vector(&flatten(gs), n * n).map(|k| RatMatrix::from_flat(n, k).expect("n² coordinates"))
}

/// Unit ball of the numerical radius. Fails with the kernel witness when the
/// numerical radius is not a norm.
pub fn w_ball(space: &Space, cap: EnumerationCap) -> Result<OperatorBall> {
    let m = build_m(space)?;
    let gs: Vec<RatMatrix> = m.iter().map(|t| t.g().clone()).collect();
    if let Some(witness) = seminorm_kernel(space.dim(), &gs) {
        return Err(Error::DegenerateSeminorm { witness });
    }
    Ok(OperatorBall::new(space.dim(), gs, cap))
}

/// Unit ball of the operator norm: `|x*(Tv)| ≤ 1` over all dual/primal vertex pairs.
pub fn op_ball(space: &Space, cap: EnumerationCap) -> Result<OperatorBall> {
    let poly = space.as_polytope()?;
    let mut gs = Vec::with_capacity(poly.vertices().len() * poly.facets().len());
    for v in poly.vertices() {
        for f in poly.facets() {
            gs.push(TensorFunctional::new(v.clone(), f.clone())?.g().clone());
        }
    }
    Ok(OperatorBall::new(space.dim(), gs, cap))
}

/// The extreme points of the dual ball of the numerical-radius operator space.
#[derive(Debug)]
pub struct ExtremeSet {
    pub functionals: Vec<TensorFunctional>,
    /// Enumerated vertices of the polar of the numerical-radius ball.
    pub polar_vertices: Vec<RatMatrix>,
    pub certified: bool,
}

/// `build_m`, certified equal to the vertex set of the polar of `w_ball`.
pub fn extreme_dual_w(space: &Space, cap: EnumerationCap) -> Result<ExtremeSet> {
    let functionals = build_m(space)?;
    let ball = w_ball(space, cap)?;
    let polar: BTreeSet<RatMatrix> = ball.polar_vertices()?.iter().cloned().collect();
    let claimed: BTreeSet<RatMatrix> = functionals.iter().map(|t| t.g().clone()).collect();
    let difference: Vec<String> = polar.symmetric_difference(&claimed).map(ToString::to_string).collect();
    if !difference.is_empty() {
        return Err(Error::CertificationFailure {
            reason: "tensor functionals differ from the enumerated dual-ball vertices".into(),
            difference,
        });
    }
    Ok(ExtremeSet { functionals, polar_vertices: polar.into_iter().collect(), certified: true })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    /// Admissible `(x, x*)` pairs with `x*(x) = ±1`, counted directly.
    pub pair_count: usize,
    /// `2·Σ_{x ∈ E_{B_X}} |E_{J(x)}|`.
    pub formula_value: usize,
    /// Distinct functionals after identifying equal `G` matrices.
    pub distinct_count: usize,
}

impl CountReport {
    /// `formula_value / distinct_count`; 2 on every symmetric polytope space.
    pub fn ratio(&self) -> BigRational {
        crate::scalar::rat(self.formula_value as i64, self.distinct_count.max(1) as i64)
    }
}

pub fn count_extremes(space: &Space) -> Result<CountReport> {
    let pairs = admissible_pairs(space)?;
    let mut formula_value = 0;
    for x in space.extreme_points()? {
        formula_value += 2 * space.support_set(x, crate::scalar::Sign::Plus)?.len();
    }
    let distinct_count = dedup_by_g(pairs.iter().map(TensorFunctional::from_pair).collect()).len();
    Ok(CountReport { pair_count: pairs.len(), formula_value, distinct_count })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HullReport {
    /// Polar of the numerical-radius ball equals `co(±M)`.
    pub w_dual_eq: bool,
    /// Polar of the operator-norm ball equals `co(±M)`.
    pub op_dual_eq: bool,
}

fn polar_equals_hull(ball: &OperatorBall, hull: &[RatMatrix]) -> Result<bool> {
    for g in hull {
        if !ball.polar_contains(g)? {
            return Ok(false);
        }
    }
    let points = flatten(hull);
    Ok(ball.polar_vertices()?.iter().all(|v| hull_contains(&points, v.entries())))
}

/// Compares both operator-space dual balls with `co(±M)` by mutual membership.
pub fn verify_hull_equality(space: &Space, cap: EnumerationCap) -> Result<HullReport> {
    let m: Vec<RatMatrix> = build_m(space)?.iter().map(|t| t.g().clone()).collect();
    let wb = w_ball(space, cap)?;
    let ob = op_ball(space, cap)?;
    Ok(HullReport { w_dual_eq: polar_equals_hull(&wb, &m)?, op_dual_eq: polar_equals_hull(&ob, &m)? })
}

/// Every vertex of the polar of the numerical-radius ball lies in the polar of
/// the operator-norm ball (vertex-form LP membership).
pub fn dual_ball_inclusion(space: &Space, cap: EnumerationCap) -> Result<bool> {
    let wb = w_ball(space, cap)?;
    let ob = op_ball(space, cap)?;
    let op_polar = flatten(ob.polar_vertices()?);
    Ok(wb.polar_vertices()?.iter().all(|v| hull_contains(&op_polar, v.entries())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, int_vec};

    #[test]
    fn pairing_matches_definition() {
        let tf = TensorFunctional::new(int_vec(&[1, -1]), int_vec(&[2, 3])).unwrap();
        let t = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(tf.apply(&t), dot(tf.xstar(), &t.apply(tf.x())));
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(tf.apply(&RatMatrix::unit(2, i, j)), &tf.xstar()[i] * &tf.x()[j]);
            }
        }
        assert_eq!(linalg::rank(&tf.g().rows()), 1);
    }

    #[test]
    fn m_counts_and_roundedness() {
        for (space, expected) in [(Space::linf(2).unwrap(), 8), (Space::l1(2).unwrap(), 8), (Space::octagon(), 16)] {
            let m = build_m(&space).unwrap();
            assert_eq!(m.len(), expected, "{}", space.name());
            let gs: BTreeSet<RatMatrix> = m.iter().map(|t| t.g().clone()).collect();
            assert!(gs.iter().all(|g| gs.contains(&g.neg())));
        }
    }

    #[test]
    fn a_and_m_agree() {
        for space in [Space::linf(2).unwrap(), Space::l1(3).unwrap(), Space::octagon()] {
            let a: Vec<RatMatrix> = build_a(&space).unwrap().iter().map(|t| t.g().clone()).collect();
            let m: Vec<RatMatrix> = build_m(&space).unwrap().iter().map(|t| t.g().clone()).collect();
            assert_eq!(a, m, "{}", space.name());
        }
    }

    #[test]
    fn square_balls() {
        let s = Space::linf(2).unwrap();
        let wb = w_ball(&s, EnumerationCap::Default).unwrap();
        assert_eq!(wb.generators().len(), 8);
        // Product of two diamonds |T_i1| + |T_i2| ≤ 1.
        assert_eq!(wb.vertices().unwrap().len(), 16);
        let ob = op_ball(&s, EnumerationCap::Default).unwrap();
        let t = RatMatrix::from_rows(vec![vec![crate::scalar::rat(1, 2), crate::scalar::rat(-1, 2)], vec![int(0), int(1)]])
            .unwrap();
        assert!(ob.contains(&t));
        assert_eq!(ob.gauge(&t), int(1));
        assert_eq!(ob.gauge(&RatMatrix::from_i64(&[&[1, 1], &[0, 0]]).unwrap()), int(2));
    }

    #[test]
    fn square_extremes_certify() {
        let ext = extreme_dual_w(&Space::linf(2).unwrap(), EnumerationCap::Default).unwrap();
        assert!(ext.certified);
        assert_eq!(ext.functionals.len(), 8);
    }

    #[test]
    fn counts_for_the_square() {
        let c = count_extremes(&Space::linf(2).unwrap()).unwrap();
        assert_eq!(c, CountReport { pair_count: 16, formula_value: 16, distinct_count: 8 });
        assert_eq!(c.ratio(), int(2));
    }

    #[test]
    fn cap_blocks_large_enumeration() {
        let s = Space::linf(4).unwrap();
        let wb = w_ball(&s, EnumerationCap::Default).unwrap();
        assert!(matches!(wb.vertices(), Err(Error::TooLarge { dim: 4, .. })));
    }

    #[test]
    fn kernel_witness_for_deficient_family() {
        let gs = vec![RatMatrix::identity(2), RatMatrix::unit(2, 0, 1)];
        let k = seminorm_kernel(2, &gs).unwrap();
        assert!(!k.is_zero());
        assert!(gs.iter().all(|g| g.pair(&k) == int(0)));
    }
}
