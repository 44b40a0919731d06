//! Independent oracles: exact LP membership, vertex enumeration, the counting
//! dedup, and sphere-sampling estimators for norms and numerical radii.
//!
//! The sampling estimators never look at primal vertices. They project a
//! deterministic direction mesh onto the unit sphere, evaluate the support
//! functionals there, and then polish the best mesh points by a seeded
//! pattern search.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dual::TensorFunctional;
use crate::error::{Error, Result};
use crate::matrix::FloatMatrix;
use crate::polytope;
use crate::scalar::{dot_f64, vec_to_f64, Rational, DEFAULT_EPS};
use crate::space::{lp_norm, Space, SpaceKind};

pub use crate::dd::enumerate_vertices;

/// Exact LP membership of `point` in the convex hull of `vertices`.
pub fn lp_member(point: &[Rational], vertices: &[Vec<Rational>]) -> Result<bool> {
    if let Some(bad) = vertices.iter().find(|v| v.len() != point.len()) {
        return Err(Error::DimensionMismatch { expected: point.len(), got: bad.len() });
    }
    Ok(polytope::hull_contains(vertices, point))
}

/// Constraint check for `point` against `{y : a·y ≤ 1}`.
pub fn hrep_member(point: &[Rational], normals: &[Vec<Rational>]) -> Result<bool> {
    if let Some(bad) = normals.iter().find(|v| v.len() != point.len()) {
        return Err(Error::DimensionMismatch { expected: point.len(), got: bad.len() });
    }
    Ok(normals.iter().all(|a| crate::scalar::dot(a, point) <= num_traits::One::one()))
}

/// Groups tensor functionals by exact equality of their matrix representatives
/// and keeps the first member of each class, ordered by matrix.
pub fn dedup_by_g(list: Vec<TensorFunctional>) -> Vec<TensorFunctional> {
    let mut list = list;
    list.sort_by(|a, b| a.g().cmp(b.g()));
    list.dedup_by(|a, b| a.g() == b.g());
    list
}

#[derive(Clone, Debug)]
pub struct SampleConfig {
    /// Mesh resolution; `None` picks a per-dimension default.
    pub density: Option<usize>,
    pub eps: f64,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { density: None, eps: DEFAULT_EPS, seed: 0 }
    }
}

impl SampleConfig {
    pub fn with_density(density: usize) -> Self {
        SampleConfig { density: Some(density), ..Self::default() }
    }

    fn density_for(&self, dim: usize) -> usize {
        self.density.unwrap_or_else(|| default_density(dim))
    }
}

pub fn default_density(dim: usize) -> usize {
    match dim {
        1 | 2 => 4096,
        3 => 128,
        _ => 20_000,
    }
}

/// Coarse mesh from which refinement starts, independent of the requested density.
fn base_density(dim: usize) -> usize {
    match dim {
        1 | 2 => 256,
        3 => 32,
        _ => 4000,
    }
}

fn max_starts(dim: usize) -> usize {
    match dim {
        1 | 2 => 24,
        3 => 64,
        _ => 128,
    }
}

/// Deterministic unit directions in `ℝ^dim`.
///
/// `dim = 2`: `density` equally spaced angles. `dim = 3`: a latitude/longitude
/// grid with `density` longitudes and `density/2 + 1` latitudes. Larger
/// dimensions use a Kronecker (generalized golden-ratio) sequence, whose
/// prefixes nest. Meshes for `d` and `k·d` nest in dimensions 2 and 3.
pub fn sphere_mesh(dim: usize, density: usize) -> Vec<Vec<f64>> {
    let density = density.max(4);
    match dim {
        0 => Vec::new(),
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..density)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / density as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => {
            let lat = density / 2;
            let mut out = Vec::with_capacity((lat + 1) * density);
            for i in 0..=lat {
                let theta = PI * i as f64 / lat as f64;
                if i == 0 || i == lat {
                    out.push(vec![0.0, 0.0, theta.cos()]);
                    continue;
                }
                for j in 0..density {
                    let phi = 2.0 * PI * j as f64 / density as f64;
                    out.push(vec![theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]);
                }
            }
            out
        }
        _ => {
            // Roberts' R_d sequence: phi_d is the unique positive root of x^(d+1) = x + 1.
            let mut g = 2.0f64;
            for _ in 0..64 {
                g = (1.0 + g).powf(1.0 / (dim as f64 + 1.0));
            }
            let alpha: Vec<f64> = (1..=dim).map(|i| (1.0 / g.powi(i as i32)).fract()).collect();
            (1..=density)
                .filter_map(|k| {
                    let y: Vec<f64> = alpha.iter().map(|a| 2.0 * (0.5 + k as f64 * a).fract() - 1.0).collect();
                    let r = y.iter().map(|v| v * v).sum::<f64>().sqrt();
                    (r > 1e-6).then(|| y.iter().map(|v| v / r).collect())
                })
                .collect()
        }
    }
}

fn normalize(y: &mut [f64]) {
    let r = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r > 0.0 {
        y.iter_mut().for_each(|v| *v /= r);
    }
}

/// Seeded pattern search maximizing a scale-invariant objective over directions.
fn pattern_ascent(objective: &dyn Fn(&[f64]) -> f64, start: &[f64], step: f64, rng: &mut ChaCha8Rng) -> (f64, usize) {
    const MIN_STEP: f64 = 1e-13;
    const MAX_EVALS: usize = 20_000;
    let n = start.len();
    let random_dirs = 2 * n + 4;
    let mut y = start.to_vec();
    normalize(&mut y);
    let mut best = objective(&y);
    let mut evals = 1;
    let mut h = step;
    let mut cand = vec![0.0; n];
    while h > MIN_STEP && evals < MAX_EVALS {
        let mut improved = false;
        for k in 0..(2 * n + random_dirs) {
            if k < 2 * n {
                cand.copy_from_slice(&y);
                cand[k / 2] += if k % 2 == 0 { h } else { -h };
            } else {
                let mut d: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                normalize(&mut d);
                for i in 0..n {
                    cand[i] = y[i] + h * d[i];
                }
            }
            normalize(&mut cand);
            let v = objective(&cand);
            evals += 1;
            if v > best {
                best = v;
                y.copy_from_slice(&cand);
                improved = true;
                break;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (best, evals)
}

/// Supremum of a scale-invariant objective over the unit sphere: mesh maximum
/// combined with refinement from well-separated starts of a fixed base mesh.
fn sampled_sup(dim: usize, density: usize, seed: u64, objective: &dyn Fn(&[f64]) -> f64) -> (f64, usize) {
    let mesh = sphere_mesh(dim, density);
    let mesh_max = mesh.iter().map(|y| objective(y)).fold(f64::NEG_INFINITY, f64::max);
    let mut samples = mesh.len();

    let base = sphere_mesh(dim, base_density(dim));
    let spacing = if dim <= 3 { 2.0 * PI / base_density(dim) as f64 } else { 0.5 };
    let mut scored: Vec<(f64, &Vec<f64>)> = base.iter().map(|y| (objective(y), y)).collect();
    samples += base.len();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut starts: Vec<&Vec<f64>> = Vec::new();
    for (_, y) in &scored {
        if starts.len() == max_starts(dim) {
            break;
        }
        let far = starts.iter().all(|s| s.iter().zip(y.iter()).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt() > 1.5 * spacing);
        if far {
            starts.push(y);
        }
    }
    let mut refined = f64::NEG_INFINITY;
    for (k, s) in starts.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        let (v, e) = pattern_ascent(objective, s, spacing, &mut rng);
        refined = refined.max(v);
        samples += e;
    }
    (mesh_max.max(refined), samples)
}

/// Support functionals at a unit vector of a sampled space.
fn support_functionals(space: &Space, facets: &[Vec<f64>], x: &[f64], eps: f64) -> Vec<Vec<f64>> {
    match space.kind() {
        SpaceKind::Polytope(_) => facets.iter().filter(|f| dot_f64(f, x) >= 1.0 - eps).cloned().collect(),
        SpaceKind::Lp { p } => vec![lp_gradient(x, *p)],
    }
}

/// The norming functional of a unit vector of `ℓ_p` (a subgradient when `p ∈ {1, ∞}`).
pub fn lp_gradient(x: &[f64], p: f64) -> Vec<f64> {
    if p.is_infinite() {
        let (k, _) = x.iter().enumerate().fold((0, -1.0), |(bk, bv), (k, v)| if v.abs() > bv { (k, v.abs()) } else { (bk, bv) });
        let mut f = vec![0.0; x.len()];
        f[k] = x[k].signum();
        f
    } else if p == 1.0 {
        x.iter().map(|v| if *v == 0.0 { 0.0 } else { v.signum() }).collect()
    } else {
        x.iter().map(|v| v.signum() * v.abs().powf(p - 1.0)).collect()
    }
}

fn facets_f64(space: &Space) -> Vec<Vec<f64>> {
    match space.kind() {
        SpaceKind::Polytope(poly) => poly.facets().iter().map(|f| vec_to_f64(f)).collect(),
        SpaceKind::Lp { .. } => Vec::new(),
    }
}

fn check_op(space: &Space, t: &FloatMatrix) -> Result<()> {
    if t.n() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: t.n() });
    }
    Ok(())
}

/// Value of `max |x*(Tx)|` over support functionals `x*` of the unit vector in direction `y`.
fn radius_objective<'a>(space: &'a Space, facets: &'a [Vec<f64>], t: &'a FloatMatrix, eps: f64) -> impl Fn(&[f64]) -> f64 + 'a {
    move |y: &[f64]| {
        let r = space.norm_f64(y).unwrap_or(0.0);
        if r <= 0.0 {
            return 0.0;
        }
        let x: Vec<f64> = y.iter().map(|v| v / r).collect();
        let tx = t.apply_f64(&x);
        support_functionals(space, facets, &x, eps).iter().map(|f| dot_f64(f, &tx).abs()).fold(0.0, f64::max)
    }
}

/// Sampled numerical radius. Nondecreasing along nested meshes and, on
/// polytope spaces, never above the exact radius by more than `eps·‖T‖`.
pub fn sample_radius(space: &Space, t: &FloatMatrix, cfg: &SampleConfig) -> Result<(f64, usize)> {
    check_op(space, t)?;
    let facets = facets_f64(space);
    let objective = radius_objective(space, &facets, t, cfg.eps);
    Ok(sampled_sup(space.dim(), cfg.density_for(space.dim()), cfg.seed, &objective))
}

/// Mesh-only radius estimate, without refinement.
pub fn mesh_radius(space: &Space, t: &FloatMatrix, density: usize, eps: f64) -> Result<f64> {
    check_op(space, t)?;
    let facets = facets_f64(space);
    let objective = radius_objective(space, &facets, t, eps);
    Ok(sphere_mesh(space.dim(), density).iter().map(|y| objective(y)).fold(0.0, f64::max))
}

/// Sampled operator norm `sup ‖Tx‖ / ‖x‖`.
pub fn sample_op_norm(space: &Space, t: &FloatMatrix, cfg: &SampleConfig) -> Result<(f64, usize)> {
    check_op(space, t)?;
    let objective = |y: &[f64]| {
        let r = space.norm_f64(y).unwrap_or(0.0);
        if r <= 0.0 {
            return 0.0;
        }
        space.norm_f64(&t.apply_f64(y)).unwrap_or(0.0) / r
    };
    Ok(sampled_sup(space.dim(), cfg.density_for(space.dim()), cfg.seed, &objective))
}

/// Unit mesh points whose value `max |x*(Tx)|` lies within `tol` of the best
/// mesh value. Used to inspect where the numerical radius is attained.
pub fn sampled_attainment(space: &Space, t: &FloatMatrix, density: usize, tol: f64) -> Result<Vec<Vec<f64>>> {
    check_op(space, t)?;
    let facets = facets_f64(space);
    let objective = radius_objective(space, &facets, t, DEFAULT_EPS);
    let scored: Vec<(f64, Vec<f64>)> = sphere_mesh(space.dim(), density)
        .into_iter()
        .map(|y| {
            let r = space.norm_f64(&y).unwrap_or(1.0);
            (objective(&y), y.iter().map(|v| v / r).collect())
        })
        .collect();
    let best = scored.iter().map(|s| s.0).fold(0.0, f64::max);
    Ok(scored.into_iter().filter(|s| s.0 >= best - tol).map(|s| s.1).collect())
}

/// Convenience: `ℓ_p` norm of a vector, used by tests and the CLI.
pub fn p_norm(x: &[f64], p: f64) -> f64 {
    lp_norm(x, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RatMatrix;
    use crate::scalar::int_vec;

    #[test]
    fn mesh_sizes_and_nesting() {
        assert_eq!(sphere_mesh(2, 16).len(), 16);
        let coarse = sphere_mesh(3, 8);
        let fine = sphere_mesh(3, 16);
        for p in &coarse {
            assert!(fine.iter().any(|q| q.iter().zip(p).all(|(a, b)| (a - b).abs() < 1e-12)));
        }
        let m5 = sphere_mesh(5, 100);
        assert!(m5.iter().all(|v| (v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn identity_radius_is_one() {
        for space in [Space::linf(2).unwrap(), Space::octagon(), Space::lp(2, 3.0).unwrap()] {
            let (w, _) = sample_radius(&space, &FloatMatrix::identity_f64(2), &SampleConfig::default()).unwrap();
            assert!((w - 1.0).abs() < 1e-9, "{}: {w}", space.name());
        }
    }

    #[test]
    fn rotation_on_euclidean_plane_has_zero_radius() {
        let l2 = Space::lp(2, 2.0).unwrap();
        let rot = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]).unwrap().to_f64();
        let (w, _) = sample_radius(&l2, &rot, &SampleConfig::default()).unwrap();
        assert!(w <= 1e-9);
        let (norm, _) = sample_op_norm(&l2, &rot, &SampleConfig::default()).unwrap();
        assert!((norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lp_member_examples() {
        let square = Space::linf(2).unwrap();
        let v = square.extreme_points().unwrap();
        assert!(lp_member(&int_vec(&[0, 0]), v).unwrap());
        assert!(lp_member(&int_vec(&[1, -1]), v).unwrap());
        let outside = vec![crate::scalar::rat(101, 100), crate::scalar::rat(101, 100)];
        assert!(!lp_member(&outside, v).unwrap());
        assert!(!hrep_member(&outside, square.dual_extreme_points().unwrap()).unwrap());
    }

    #[test]
    fn lp_gradient_norms_its_point() {
        let x = [0.6f64, -0.8];
        let r = lp_norm(&x, 3.0);
        let u: Vec<f64> = x.iter().map(|v| v / r).collect();
        let f = lp_gradient(&u, 3.0);
        assert!((dot_f64(&f, &u) - 1.0).abs() < 1e-12);
        assert!((lp_norm(&f, 1.5) - 1.0).abs() < 1e-12);
    }
}
