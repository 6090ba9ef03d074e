//! Arbitrary-precision complex arithmetic and truncated Taylor jets.

pub mod cplx;
pub mod jet;
pub mod quad;

pub use cplx::{Cplx, PrecisionContext};
pub use jet::{Jet, JetShape};
