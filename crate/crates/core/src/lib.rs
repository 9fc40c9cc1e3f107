//! Orthogonal polar Grassmann codes.
//!
//! The points of the code are the totally singular k-subspaces of the parabolic
//! quadric Q(2n, q), embedded in ∧^k V by their Plücker coordinates. The crate
//! builds the generator matrix, computes or bounds the code parameters, and for
//! line codes (k = 2) provides an index-addressed enumerator, a position-local
//! encoder and a plane-vote local corrector.

pub mod bounds;
pub mod code;
pub mod codec;
pub mod distance;
pub mod enumerative;
pub mod error;
pub mod field;
pub mod matrix;
pub mod pluecker;
pub mod quadric;
pub mod subspace;
pub mod verify;

pub use code::{DistanceBounds, LinearCode};
pub use error::{Error, Result};
pub use field::{Elem, FieldTable};
pub use matrix::{MatrixGF, Rref};
pub use pluecker::{pluecker, PlueckerVector};
pub use quadric::{count_formula, PolarGrassmannian, QuadraticSpace};
pub use subspace::Subspace;
