//! Exact results checked against brute-force oracles that share no code with
//! the library's double-description and LP routines.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use numindex_core::dual::{build_m, op_ball, w_ball, EnumerationCap};
use numindex_core::index::{mcgregor, numerical_index_exact};
use numindex_core::operator::op_norm_exact;
use numindex_core::scalar::{int, rat};
use numindex_core::verify::enumerate_vertices;
use numindex_core::{RatMatrix, Rational, Space};

/// Gauss–Jordan solve of a square system; `None` when singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        let inv = Rational::one() / &a[c][c];
        for k in 0..n {
            a[c][k] = &a[c][k] * &inv;
        }
        b[c] = &b[c] * &inv;
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..n {
                    let d = &f * &a[c][k];
                    a[r][k] -= d;
                }
                let d = &f * &b[c];
                b[r] -= d;
            }
        }
    }
    Some(b)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Vertices of `{y : a·y ≤ 1}` by solving every `dim`-subset of tight constraints.
fn brute_force_vertices(normals: &[Vec<Rational>], dim: usize) -> BTreeSet<Vec<Rational>> {
    let normals: Vec<Vec<Rational>> = normals.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut out = BTreeSet::new();
    for subset in combinations(normals.len(), dim) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let Some(y) = solve_square(a, vec![Rational::one(); dim]) else { continue };
        let feasible = normals.iter().all(|n| n.iter().zip(&y).map(|(p, q)| p * q).sum::<Rational>() <= Rational::one());
        if feasible {
            out.insert(y);
        }
    }
    out
}

fn flat(ms: &[RatMatrix]) -> Vec<Vec<Rational>> {
    ms.iter().map(|m| m.entries().to_vec()).collect()
}

#[test]
fn dd_matches_brute_force_on_operator_balls() {
    for (space, expected) in [(Space::linf(2).unwrap(), 16), (Space::l1(2).unwrap(), 16), (Space::octagon(), 40)] {
        let ball = w_ball(&space, EnumerationCap::Default).unwrap();
        let normals = flat(ball.generators());
        let oracle = brute_force_vertices(&normals, 4);
        let dd: BTreeSet<Vec<Rational>> = enumerate_vertices(&normals, 4).unwrap().into_iter().collect();
        assert_eq!(dd, oracle, "{}", space.name());
        assert_eq!(dd.len(), expected, "{}", space.name());
        let lib: BTreeSet<Vec<Rational>> = flat(ball.vertices().unwrap()).into_iter().collect();
        assert_eq!(lib, oracle);
    }
}

#[test]
fn linf2_numerical_radius_ball_is_a_product_of_diamonds() {
    // The functionals are ±(T_i1 ± T_i2): each row ranges over a diamond, so
    // the ball is a product of two diamonds with 4 · 4 = 16 vertices.
    let ball = w_ball(&Space::linf(2).unwrap(), EnumerationCap::Default).unwrap();
    assert_eq!(ball.generators().iter().collect::<BTreeSet<_>>().len(), 8);
    assert_eq!(ball.vertices().unwrap().len(), 16);
    assert_eq!(ball.polar_vertices().unwrap().len(), 8);
}

#[test]
fn op_ball_of_the_square() {
    let ball = op_ball(&Space::linf(2).unwrap(), EnumerationCap::Default).unwrap();
    let normals = flat(ball.generators());
    let oracle = brute_force_vertices(&normals, 4);
    let lib: BTreeSet<Vec<Rational>> = flat(ball.vertices().unwrap()).into_iter().collect();
    assert_eq!(lib, oracle);
    // Rows independently in the l1 ball: 4 · 4 sign/coordinate choices.
    assert_eq!(lib.len(), 16);
}

#[test]
fn octagon_index_is_one_half() {
    let oct = Space::octagon();
    let r = numerical_index_exact(&oct, EnumerationCap::Default).unwrap();
    assert_eq!(r.value, rat(1, 2));
    assert_eq!(r.ball_vertices, 40);

    // Independent check: maximize the operator norm over brute-force vertices.
    let normals: Vec<Vec<Rational>> = build_m(&oct).unwrap().iter().map(|t| t.g().entries().to_vec()).collect();
    let poly = oct.as_polytope().unwrap();
    let max = brute_force_vertices(&normals, 4)
        .into_iter()
        .map(|v| op_norm_exact(poly, &RatMatrix::from_flat(2, v).unwrap()))
        .max()
        .unwrap();
    assert_eq!(max, int(2));
}

#[test]
fn octagon_mcgregor_witness() {
    let r = mcgregor(&Space::octagon()).unwrap();
    let w = r.witness.unwrap();
    assert_eq!(w.value, rat(1, 3));
    // The minimum over all vertex/dual-vertex pairs, recomputed directly.
    let oct = Space::octagon();
    let min = oct
        .extreme_points()
        .unwrap()
        .iter()
        .flat_map(|x| oct.dual_extreme_points().unwrap().iter().map(move |f| {
            let v: Rational = f.iter().zip(x).map(|(a, b)| a * b).sum();
            if v < Rational::zero() { -v } else { v }
        }))
        .min()
        .unwrap();
    assert_eq!(min, rat(1, 3));
}

#[test]
fn dd_on_random_symmetric_constraint_sets() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let dim = rng.gen_range(2..=3);
        let mut normals: Vec<Vec<Rational>> = (0..dim).map(|i| (0..dim).map(|j| int((i == j) as i64)).collect()).collect();
        for _ in 0..rng.gen_range(1..5) {
            normals.push((0..dim).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect());
        }
        let sym: Vec<Vec<Rational>> = normals.iter().flat_map(|n| [n.clone(), n.iter().map(|x| -x).collect()]).collect();
        let dd: BTreeSet<Vec<Rational>> = enumerate_vertices(&sym, dim).unwrap().into_iter().collect();
        assert_eq!(dd, brute_force_vertices(&sym, dim));
    }
}
