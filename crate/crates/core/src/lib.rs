//! Finite-field Lie algebra toolkit: ℤ/2-graded algebras, free Lie algebras,
//! polynomial identities and their consequences.

pub mod algebra;
pub mod error;
pub mod field;
pub mod freelie;
pub mod gradings;
pub mod identities;
pub mod linalg;
pub mod mat2;

pub use algebra::GradedLieAlgebra;
pub use error::{Error, Result};
pub use field::{Fe, Field};
pub use linalg::{Matrix, SubspaceBasis};
