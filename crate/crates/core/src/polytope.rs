//! Centrally symmetric polytopes with the origin in the interior, carried in
//! both vertex and facet form.
//!
//! Facets are stored as normals `a` of the inequalities `a·y ≤ 1`; for a
//! symmetric body these normals are exactly the vertices of the polar.

use std::collections::BTreeSet;

use num_traits::One;

use crate::dd;
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{LinearProgram, Relation};
use crate::scalar::{dot, is_zero_vec, neg_vec, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<Vec<Rational>>,
}

/// Exact LP test for `point ∈ co(points)`.
pub fn hull_contains(points: &[Vec<Rational>], point: &[Rational]) -> bool {
    hull_coefficients(points, point).is_some()
}

/// Convex coefficients writing `point` as a combination of `points`, if any.
/// The returned solution is basic, so at most `dim + 1` coefficients are nonzero.
pub fn hull_coefficients(points: &[Vec<Rational>], point: &[Rational]) -> Option<Vec<Rational>> {
    if points.is_empty() {
        return None;
    }
    let dim = point.len();
    let mut lp = LinearProgram::new(points.len());
    for i in 0..dim {
        lp.constraint(points.iter().map(|p| p[i].clone()).collect(), Relation::Eq, point[i].clone());
    }
    lp.constraint(vec![Rational::one(); points.len()], Relation::Eq, Rational::one());
    lp.solve().solution().map(<[Rational]>::to_vec)
}

fn check_dims(points: &[Vec<Rational>], dim: usize) -> Result<()> {
    match points.iter().find(|p| p.len() != dim) {
        Some(bad) => Err(Error::DimensionMismatch { expected: dim, got: bad.len() }),
        None => Ok(()),
    }
}

fn check_symmetric(set: &BTreeSet<Vec<Rational>>, what: &str) -> Result<()> {
    match set.iter().find(|p| !set.contains(&neg_vec(p))) {
        Some(p) => Err(Error::Asymmetric(format!(
            "{what} {} has no antipode",
            p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ))),
        None => Ok(()),
    }
}

/// Removes points lying in the convex hull of the remaining ones.
fn prune_to_extreme(points: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut kept = points;
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<Vec<Rational>> =
            kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        if hull_contains(&others, &kept[i]) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

/// Keeps normals whose tight vertices span a hyperplane.
fn prune_redundant_normals(normals: Vec<Vec<Rational>>, vertices: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    normals
        .into_iter()
        .filter(|a| {
            let tight: Vec<Vec<Rational>> = vertices.iter().filter(|v| dot(a, v).is_one()).cloned().collect();
            tight.len() >= dim && linalg::rank(&tight) == dim
        })
        .collect()
}

impl Polytope {
    /// Builds the convex hull of a symmetric, full-dimensional point set.
    /// Duplicates and non-extreme points are removed.
    pub fn from_vertices(points: Vec<Vec<Rational>>, dim: usize) -> Result<Self> {
        check_dims(&points, dim)?;
        let set: BTreeSet<Vec<Rational>> = points.into_iter().filter(|p| !is_zero_vec(p)).collect();
        check_symmetric(&set, "point")?;
        let points: Vec<Vec<Rational>> = set.into_iter().collect();
        if linalg::rank(&points) < dim {
            return Err(Error::Degenerate(format!("points do not span R^{dim}")));
        }
        let vertices = prune_to_extreme(points);
        let facets = dd::enumerate_vertices(&vertices, dim)?;
        Ok(Polytope { dim, vertices, facets })
    }

    /// Builds `{y : a·y ≤ 1}` from a symmetric set of normals spanning the space.
    pub fn from_facets(normals: Vec<Vec<Rational>>, dim: usize) -> Result<Self> {
        check_dims(&normals, dim)?;
        let set: BTreeSet<Vec<Rational>> = normals.into_iter().filter(|p| !is_zero_vec(p)).collect();
        check_symmetric(&set, "normal")?;
        let normals: Vec<Vec<Rational>> = set.into_iter().collect();
        if linalg::rank(&normals) < dim {
            return Err(Error::Unbounded);
        }
        let vertices = dd::enumerate_vertices(&normals, dim)?;
        let facets = prune_redundant_normals(normals, &vertices, dim);
        Ok(Polytope { dim, vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Irredundant vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// Irredundant facet normals in lexicographic order.
    pub fn facets(&self) -> &[Vec<Rational>] {
        &self.facets
    }

    /// The polar body `{f : f·v ≤ 1 for all v}`.
    pub fn polar(&self) -> Polytope {
        Polytope { dim: self.dim, vertices: self.facets.clone(), facets: self.vertices.clone() }
    }

    /// Minkowski gauge, `max_a a·x` over facet normals.
    pub fn gauge(&self, x: &[Rational]) -> Rational {
        self.facets.iter().map(|a| dot(a, x)).max().expect("polytope has facets")
    }

    /// Facet-form membership.
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|a| dot(a, x) <= Rational::one())
    }

    /// Vertex-form membership by exact LP.
    pub fn hull_contains(&self, x: &[Rational]) -> bool {
        hull_contains(&self.vertices, x)
    }

    /// Same body, compared as vertex sets (both lists are canonical).
    pub fn same_body(&self, other: &Polytope) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, int_vec, rat};

    fn square() -> Polytope {
        Polytope::from_vertices(
            vec![int_vec(&[1, 1]), int_vec(&[1, -1]), int_vec(&[-1, 1]), int_vec(&[-1, -1])],
            2,
        )
        .unwrap()
    }

    #[test]
    fn square_facets_and_gauge() {
        let s = square();
        assert_eq!(s.facets().len(), 4);
        assert_eq!(s.gauge(&int_vec(&[3, -5])), int(5));
        assert!(s.contains(&int_vec(&[1, 0])));
        assert!(!s.contains(&vec![rat(101, 100), int(0)]));
    }

    #[test]
    fn redundant_points_are_pruned() {
        let p = Polytope::from_vertices(
            vec![
                int_vec(&[1, 1]),
                int_vec(&[1, -1]),
                int_vec(&[-1, 1]),
                int_vec(&[-1, -1]),
                int_vec(&[1, 0]),
                int_vec(&[-1, 0]),
                vec![rat(1, 2), rat(1, 3)],
                vec![rat(-1, 2), rat(-1, 3)],
                int_vec(&[1, 1]),
            ],
            2,
        )
        .unwrap();
        assert_eq!(p, square());
    }

    #[test]
    fn rejects_degenerate_and_asymmetric() {
        assert!(matches!(
            Polytope::from_vertices(vec![int_vec(&[1, 1]), int_vec(&[-1, -1])], 2),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            Polytope::from_vertices(vec![int_vec(&[1, 0]), int_vec(&[-1, 0]), int_vec(&[0, 1])], 2),
            Err(Error::Asymmetric(_))
        ));
    }

    #[test]
    fn polar_round_trip_from_facets() {
        let s = square();
        let back = Polytope::from_facets(s.facets().to_vec(), 2).unwrap();
        assert!(back.same_body(&s));
        assert_eq!(back.facets(), s.facets());
    }

    #[test]
    fn hull_coefficients_are_convex() {
        let s = square();
        let c = hull_coefficients(s.vertices(), &vec![rat(1, 2), int(0)]).unwrap();
        assert_eq!(c.iter().sum::<Rational>(), int(1));
        assert!(c.iter().all(|x| x >= &int(0)));
    }
}
