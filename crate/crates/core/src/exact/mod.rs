//! Exact arithmetic: Gaussian rationals, sparse polynomials, small matrices.

pub mod gauss;
pub mod matrix;
pub mod poly;

pub use gauss::{rat, rat_int, GaussRat};
pub use matrix::{Mat, Scalar};
pub use poly::Poly;
