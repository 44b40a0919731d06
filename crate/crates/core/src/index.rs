//! The numerical index `n(X) = inf{w(T) : ‖T‖ = 1}`.
//!
//! For a polytope space the numerical radius is a polyhedral norm, so
//! `n(X) = 1 / max{‖V‖ : V a vertex of the numerical-radius ball}`: the
//! reciprocal of the largest operator norm on the unit ball of `w`, and a
//! convex function attains its maximum over a polytope at a vertex.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dual::{build_m, w_ball, EnumerationCap};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{FloatMatrix, RatMatrix};
use crate::operator::{admissible_pairs, op_norm_exact};
use crate::scalar::{dot, dot_f64, rat, vec_to_f64, Rational};
use crate::space::{Space, SpaceKind};
use crate::verify::{self, SampleConfig};

/// Whether the numerical radius is a norm: the `G` matrices of `M` span `n²`-space.
pub fn is_w_norm(space: &Space) -> Result<bool> {
    let rows: Vec<Vec<Rational>> = build_m(space)?.iter().map(|t| t.g().entries().to_vec()).collect();
    Ok(linalg::rank(&rows) == space.dim() * space.dim())
}

#[derive(Clone, Debug, PartialEq)]
pub struct McGregorWitness {
    pub x: Vec<Rational>,
    pub xstar: Vec<Rational>,
    /// `|x*(x)|`, strictly below one.
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct McGregorReport {
    pub index_one: bool,
    pub witness: Option<McGregorWitness>,
}

/// Index one iff `|x*(x)| = 1` for every ball vertex `x` and dual-ball vertex `x*`.
/// A failing report carries the pair with the smallest `|x*(x)|`.
pub fn mcgregor(space: &Space) -> Result<McGregorReport> {
    let poly = space.as_polytope()?;
    let mut witness: Option<McGregorWitness> = None;
    for x in poly.vertices() {
        for xstar in poly.facets() {
            let value = dot(xstar, x).abs();
            if value < Rational::one() && witness.as_ref().is_none_or(|w| value < w.value) {
                witness = Some(McGregorWitness { x: x.clone(), xstar: xstar.clone(), value });
            }
        }
    }
    Ok(McGregorReport { index_one: witness.is_none(), witness })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactIndex {
    pub value: Rational,
    /// A vertex of the numerical-radius ball of maximal operator norm, or a
    /// nonzero operator with `w = 0` when `degenerate`.
    pub extremal_operator: RatMatrix,
    pub ball_vertices: usize,
    /// The numerical radius is only a seminorm; `value` is zero.
    pub degenerate: bool,
}

/// Exact numerical index of a polytope space.
pub fn numerical_index_exact(space: &Space, cap: EnumerationCap) -> Result<ExactIndex> {
    let poly = space.as_polytope()?;
    cap.check(space.dim())?;
    let ball = match w_ball(space, cap) {
        Ok(ball) => ball,
        Err(Error::DegenerateSeminorm { witness }) => {
            return Ok(ExactIndex { value: Rational::zero(), extremal_operator: witness, ball_vertices: 0, degenerate: true });
        }
        Err(e) => return Err(e),
    };
    let vertices = ball.vertices()?;
    let (best, norm) = vertices
        .iter()
        .map(|v| (v, op_norm_exact(poly, v)))
        .max_by(|a, b| a.1.cmp(&b.1))
        .ok_or(Error::Unbounded)?;
    Ok(ExactIndex { value: Rational::one() / norm, extremal_operator: best.clone(), ball_vertices: vertices.len(), degenerate: false })
}

#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { restarts: 64, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    /// Smallest `w(T)/‖T‖` found; an upper bound on `n(X)`, never exact.
    pub upper_bound: f64,
    /// The minimizing operator, scaled to operator norm one.
    pub argmin: FloatMatrix,
    pub restarts: usize,
    pub evaluations: usize,
}

/// Floating evaluators of `w` and `‖·‖`, built once per space. Sampled spaces
/// are evaluated on a fixed unit mesh with precomputed norming functionals.
enum RatioEvaluator {
    Polytope { pairs: Vec<(Vec<f64>, Vec<f64>)>, vertices: Vec<Vec<f64>>, facets: Vec<Vec<f64>> },
    Mesh { p: f64, pairs: Vec<(Vec<f64>, Vec<f64>)> },
}

impl RatioEvaluator {
    fn new(space: &Space) -> Result<Self> {
        Ok(match space.kind() {
            SpaceKind::Polytope(poly) => RatioEvaluator::Polytope {
                pairs: admissible_pairs(space)?.iter().map(|p| (vec_to_f64(&p.x), vec_to_f64(&p.xstar))).collect(),
                vertices: poly.vertices().iter().map(|v| vec_to_f64(v)).collect(),
                facets: poly.facets().iter().map(|v| vec_to_f64(v)).collect(),
            },
            SpaceKind::Lp { p } => {
                let pairs = verify::sphere_mesh(space.dim(), search_density(space.dim()))
                    .into_iter()
                    .map(|y| {
                        let r = verify::p_norm(&y, *p);
                        let x: Vec<f64> = y.iter().map(|v| v / r).collect();
                        let f = verify::lp_gradient(&x, *p);
                        (x, f)
                    })
                    .collect();
                RatioEvaluator::Mesh { p: *p, pairs }
            }
        })
    }

    fn radius_and_norm(&self, t: &FloatMatrix) -> (f64, f64) {
        match self {
            RatioEvaluator::Polytope { pairs, vertices, facets } => {
                let w = pairs.iter().map(|(x, f)| dot_f64(f, &t.apply_f64(x)).abs()).fold(0.0, f64::max);
                let norm = vertices
                    .iter()
                    .map(|v| {
                        let tv = t.apply_f64(v);
                        facets.iter().map(|f| dot_f64(f, &tv)).fold(0.0, f64::max)
                    })
                    .fold(0.0, f64::max);
                (w, norm)
            }
            RatioEvaluator::Mesh { p, pairs } => pairs.iter().fold((0.0, 0.0), |(w, n), (x, f)| {
                let tx = t.apply_f64(x);
                (f64::max(w, dot_f64(f, &tx).abs()), f64::max(n, verify::p_norm(&tx, *p)))
            }),
        }
    }

    fn ratio(&self, t: &FloatMatrix) -> f64 {
        let (w, n) = self.radius_and_norm(t);
        if n > 0.0 {
            w / n
        } else {
            f64::INFINITY
        }
    }
}

fn search_density(dim: usize) -> usize {
    match dim {
        1 | 2 => 64,
        3 => 24,
        _ => 2000,
    }
}

/// Random-restart descent on `T ↦ w(T)/‖T‖`.
///
/// Each restart cycles through coordinate moves `±h·E_ij`; when none
/// improves it tries a batch of random directions before halving `h`.
/// Restarts are seeded from `budget.seed`. On `ℓ_p` spaces the descent runs
/// on a fixed mesh and the winner is re-scored with [`verify::sample_radius`].
pub fn numerical_index_search(space: &Space, budget: &SearchBudget, cfg: &SampleConfig) -> Result<SearchReport> {
    let n = space.dim();
    let eval = RatioEvaluator::new(space)?;
    let mut best: Option<(f64, FloatMatrix)> = None;
    let mut evaluations = 0;
    for restart in 0..budget.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed.wrapping_mul(0x9E37_79B9).wrapping_add(restart as u64));
        let (value, t, evals) = descend(&eval, n, &mut rng);
        evaluations += evals;
        if best.as_ref().is_none_or(|b| value < b.0) {
            best = Some((value, t));
        }
    }
    let (mut upper_bound, t) = best.expect("at least one restart");
    let (_, mut norm) = eval.radius_and_norm(&t);
    if let RatioEvaluator::Mesh { .. } = eval {
        // Re-score the winner with the refined sampler.
        let (w, ew) = verify::sample_radius(space, &t, cfg)?;
        let (nr, en) = verify::sample_op_norm(space, &t, cfg)?;
        evaluations += ew + en;
        norm = nr;
        upper_bound = if nr > 0.0 { w / nr } else { f64::INFINITY };
    }
    let argmin = if norm > 0.0 { t.scale_f64(1.0 / norm) } else { t };
    Ok(SearchReport { upper_bound, argmin, restarts: budget.restarts.max(1), evaluations })
}

fn descend(eval: &RatioEvaluator, n: usize, rng: &mut ChaCha8Rng) -> (f64, FloatMatrix, usize) {
    const MIN_STEP: f64 = 1e-11;
    const MAX_EVALS: usize = 40_000;
    let dim = n * n;
    let mut t = FloatMatrix::from_flat(n, (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("n² entries");
    let mut value = eval.ratio(&t);
    let mut evals = 1;
    let mut h = 0.25;
    while h > MIN_STEP && evals < MAX_EVALS {
        let mut improved = false;
        'moves: for k in 0..2 * dim {
            let mut cand = t.clone();
            cand.entries_mut()[k / 2] += if k % 2 == 0 { h } else { -h };
            let v = eval.ratio(&cand);
            evals += 1;
            if v < value {
                (t, value, improved) = (cand, v, true);
                break 'moves;
            }
        }
        if !improved {
            for _ in 0..2 * dim + 8 {
                let mut d: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let r = d.iter().map(|x| x * x).sum::<f64>().sqrt();
                d.iter_mut().for_each(|x| *x *= h / r);
                let mut cand = t.clone();
                cand.entries_mut().iter_mut().zip(&d).for_each(|(a, b)| *a += b);
                let v = eval.ratio(&cand);
                evals += 1;
                if v < value {
                    (t, value, improved) = (cand, v, true);
                    break;
                }
            }
        }
        if !improved {
            h *= 0.5;
        } else {
            // The ratio is scale invariant; keep the iterate near unit size.
            let f = t.frobenius();
            if f > 0.0 && !(0.5..=2.0).contains(&f) {
                t = t.scale_f64(1.0 / f);
            }
        }
    }
    (value, t, evals)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpearWitness {
    pub a: RatMatrix,
    /// `max_{t = ±1} ‖Id + tA‖`
    pub lhs: Rational,
    /// `1 + ‖A‖`
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpearReport {
    pub holds: bool,
    pub trials_run: usize,
    pub witness: Option<SpearWitness>,
}

/// A seeded random rational operator with entries `p/q`, `|p| ≤ 4`, `1 ≤ q ≤ 3`.
pub fn random_rational_operator(n: usize, rng: &mut impl Rng) -> RatMatrix {
    let entries = (0..n * n).map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect();
    RatMatrix::from_flat(n, entries).expect("n² entries")
}

/// Tests `max_{t=±1} ‖Id + tA‖ = 1 + ‖A‖` exactly on `trials` random
/// operators (the first is always `A = 0`); stops at the first failure.
pub fn spear_check_identity(space: &Space, trials: usize, seed: u64) -> Result<SpearReport> {
    let poly = space.as_polytope()?;
    let n = space.dim();
    let id = RatMatrix::identity(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let a = if trial == 0 { RatMatrix::zero(n) } else { random_rational_operator(n, &mut rng) };
        let lhs = [Rational::one(), -Rational::one()]
            .iter()
            .map(|t| op_norm_exact(poly, &id.add_scaled(t, &a)))
            .max()
            .expect("two signs");
        let rhs = Rational::one() + op_norm_exact(poly, &a);
        if lhs != rhs {
            return Ok(SpearReport { holds: false, trials_run: trial + 1, witness: Some(SpearWitness { a, lhs, rhs }) });
        }
    }
    Ok(SpearReport { holds: true, trials_run: trials, witness: None })
}

/// `n(X) ∈ [0, 1]` as a sanity bound on any reported index.
pub fn is_valid_index(value: &Rational) -> bool {
    !value.is_negative() && value <= &Rational::one()
}
