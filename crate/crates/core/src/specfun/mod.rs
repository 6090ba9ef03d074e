//! Arbitrary-precision special functions: confluent hypergeometric and
//! Whittaker functions, Bessel J and I, the upper incomplete gamma function
//! and the two profile functions H and E. Every function takes an explicit
//! [`PrecisionContext`](crate::numeric::PrecisionContext); jet variants return
//! the derivatives of orders 0..=order in the real argument.
//!
//! Parameters are real.

pub mod bessel;
pub mod gamma;
pub mod kummer;
pub mod profiles;
pub mod whittaker;

pub use bessel::{bessel_i, bessel_i_jet, bessel_j, bessel_j_jet};
pub use gamma::upper_incomplete_gamma;
pub use kummer::{kummer_m, kummer_u};
pub use profiles::{e_profile, e_profile_jet, h_profile, h_profile_exp, h_profile_exp_jet, h_profile_jet};
pub use whittaker::{
    whittaker_m, whittaker_m_jet, whittaker_m_renorm, whittaker_m_renorm_jet, whittaker_w, whittaker_w_jet,
    whittaker_w_renorm, whittaker_w_renorm_jet,
};
