//! Exact numerical ranges, numerical radii and numerical indices of
//! finite-dimensional real normed spaces.
//!
//! Polytope unit balls are handled in exact rational arithmetic: the
//! numerical radius is a maximum over finitely many vertex/dual-vertex pairs,
//! the dual ball of the operator space under the numerical radius is the
//! convex hull of the rank-one functionals `x* ⊗ x` with extreme factors and
//! `|x*(x)| = 1`, and the numerical index follows from a vertex enumeration
//! of the numerical-radius ball. `ℓ_p` balls are handled by deterministic
//! sphere sampling. Every exact path has an independent oracle in [`verify`].

pub mod attain;
pub mod dd;
pub mod dual;
pub mod error;
pub mod index;
pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod operator;
pub mod polytope;
pub mod scalar;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{FloatMatrix, Matrix, Operator, RatMatrix};
pub use scalar::{Measured, Rational, Sign, DEFAULT_EPS};
pub use space::{Space, SpaceKind};
