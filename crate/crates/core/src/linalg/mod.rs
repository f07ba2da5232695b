//! Exact field arithmetic and dense linear algebra.

mod matrix;
pub mod poly;
mod rational;
mod scalar;
mod subspace;

pub use matrix::{vector, LinalgError, Matrix, Vector};
pub use rational::{ParseRationalError, Rational};
pub use scalar::{is_prime, Field, Scalar};
pub use subspace::{change_of_basis, Subspace};
