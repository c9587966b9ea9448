//! Exact linear algebra over small prime fields.

pub mod enumerate;
pub mod field;
pub mod matrix;
pub mod subspace;

pub use enumerate::{enumerate_isotropic_in, enumerate_subspaces, EchelonIter, SubspaceIter};
pub use field::{is_prime, Fp};
pub use matrix::{image, kernel, rref, FqMatrix};
pub use subspace::{intersect, perp, restrict_operator, sum, Subspace};
