//! Exact and arbitrary-precision computations for harmonic Maass-Jacobi
//! forms of lattice index.
//!
//! The crate is organised bottom-up:
//!
//! * [`group_core`]: the centrally extended Jacobi group, its Lie algebra,
//!   action on H x C^N, cocycles and slash actions.
//! * [`enveloping`]: PBW arithmetic in the enveloping algebra, the Casimir
//!   element and the identities around it.
//! * [`opcalc`]: differential operators with polynomial coefficients, the
//!   raising/lowering calculus and numeric covariance checks via jets.
//! * [`specfun`]: Whittaker, Bessel and incomplete gamma functions.
//! * [`arith_series`]: lattices, theta series, Kloosterman sums and
//!   Poincare-series Fourier coefficients.

pub mod arith_series;
pub mod enveloping;
pub mod error;
pub mod exact;
pub mod group_core;
pub mod numeric;
pub mod opcalc;
pub mod specfun;

pub use error::{Error, Result};
