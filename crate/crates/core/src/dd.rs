//! Vertex enumeration by the double description method.
//!
//! The polytope `{y : a_k·y ≤ 1}` (origin in the interior) is homogenized to
//! the pointed cone `{(t, y) : t - a_k·y ≥ 0, t ≥ 0}`, whose extreme rays with
//! `t > 0` are exactly the vertices `(1, v)`. Rays are kept as primitive
//! integer vectors; adjacency uses the combinatorial test on zero sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Rational;

#[derive(Clone, Debug)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(bits: usize) -> Self {
        ZeroSet(vec![0; bits.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Self) -> Self {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn subset_of(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: ZeroSet,
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|x| *x = &*x / &g);
    }
    v
}

fn integer_row(r: &[Rational]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive(r.iter().map(|x| x.numer() * (&l / x.denom())).collect())
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Enumerates the vertices of `{y ∈ ℝ^d : a·y ≤ 1 for every a in normals}`.
///
/// The normals must span `ℝ^d`; an unbounded region is reported as an error.
/// Output is sorted lexicographically.
pub fn enumerate_vertices(normals: &[Vec<Rational>], dim: usize) -> Result<Vec<Vec<Rational>>> {
    if let Some(bad) = normals.iter().find(|a| a.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: bad.len() });
    }
    // Homogeneous rows b with b·(t, y) ≥ 0.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(normals.len() + 1);
    let mut t_row = vec![Rational::zero(); dim + 1];
    t_row[0] = Rational::one();
    rows.push(t_row);
    for a in normals {
        let mut r = Vec::with_capacity(dim + 1);
        r.push(Rational::one());
        r.extend(a.iter().map(|x| -x));
        rows.push(r);
    }
    let initial = linalg::independent_subset(&rows);
    if initial.len() < dim + 1 {
        return Err(Error::Unbounded);
    }
    let basis_rows: Vec<Vec<Rational>> = initial.iter().map(|&i| rows[i].clone()).collect();
    let inv = linalg::inverse(&basis_rows).expect("independent rows are invertible");
    let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();

    let nbits = rows.len();
    let mut rays: Vec<Ray> = (0..=dim)
        .map(|j| {
            let col: Vec<Rational> = inv.iter().map(|r| r[j].clone()).collect();
            let mut zeros = ZeroSet::new(nbits);
            for (k, &row) in initial.iter().enumerate() {
                if k != j {
                    zeros.insert(row);
                }
            }
            Ray { coords: integer_row(&col), zeros }
        })
        .collect();

    let threshold = (dim + 1).saturating_sub(2) as u32;
    for (idx, row) in int_rows.iter().enumerate() {
        if initial.contains(&idx) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| idot(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (ray, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    ray.zeros.insert(idx);
                }
            }
            continue;
        }
        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() < threshold {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !common.subset_of(&r.zeros));
                if !adjacent {
                    continue;
                }
                let (vp, vn) = (&values[p], &values[n]);
                let coords: Vec<BigInt> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(cn, cp)| vp * cn - vn * cp)
                    .collect();
                let mut zeros = common;
                zeros.insert(idx);
                created.push(Ray { coords: primitive(coords), zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut ray, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                ray.zeros.insert(idx);
            }
            next.push(ray);
        }
        next.extend(created);
        rays = next;
    }

    let mut vertices = Vec::with_capacity(rays.len());
    for ray in rays {
        let t = &ray.coords[0];
        if !t.is_positive() {
            return Err(Error::Unbounded);
        }
        vertices.push(ray.coords[1..].iter().map(|c| Rational::new(c.clone(), t.clone())).collect::<Vec<_>>());
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}
