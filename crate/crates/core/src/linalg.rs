//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Reduced row echelon form; returns the pivot columns.
fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let Some(cols) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Indices of a maximal linearly independent subset of `rows`, chosen greedily in order.
pub fn independent_subset(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut candidate = basis.clone();
        candidate.push(row.clone());
        if rank(&candidate) > basis.len() {
            basis.push(row.clone());
            chosen.push(i);
        }
    }
    chosen
}

/// A nonzero vector orthogonal to every row, if the rows do not span the ambient space.
pub fn kernel_vector(rows: &[Vec<Rational>], dim: usize) -> Option<Vec<Rational>> {
    if rows.is_empty() {
        let mut v = vec![Rational::zero(); dim];
        if dim > 0 {
            v[0] = Rational::one();
            return Some(v);
        }
        return None;
    }
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); dim];
    v[free] = Rational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    Some(v)
}

/// Solves the square system `a·x = b`; `None` if `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a square matrix given by rows.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{dot, int_vec, rat};

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![int_vec(&[1, 2, 3]), int_vec(&[2, 4, 6]), int_vec(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        assert_eq!(independent_subset(&rows), vec![0, 2]);
    }

    #[test]
    fn kernel_is_orthogonal() {
        let rows = vec![int_vec(&[1, 2, 3]), int_vec(&[0, 1, 1])];
        let k = kernel_vector(&rows, 3).unwrap();
        assert!(rows.iter().all(|r| dot(r, &k).is_zero()));
        assert!(kernel_vector(&[int_vec(&[1, 0]), int_vec(&[0, 1])], 2).is_none());
    }

    #[test]
    fn solve_and_invert() {
        let a = vec![int_vec(&[2, 1]), int_vec(&[1, 3])];
        let x = solve(&a, &int_vec(&[3, 5])).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0], vec![rat(3, 5), rat(-1, 5)]);
        assert!(inverse(&[int_vec(&[1, 2]), int_vec(&[2, 4])]).is_none());
    }
}
