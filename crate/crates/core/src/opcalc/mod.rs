//! Differential operators on H x C^N with polynomial coefficients, the
//! raising/lowering calculus, and numeric application through jets.

pub mod builders;
pub mod coeff;
pub mod diffop;
pub mod jets;

pub use builders::{
    bridge_identity, build_casimir_op, build_casimir_rl, build_d_minus, build_heat, build_laplace, build_lie_slash,
    build_raising_lowering, chain, chain_commutator, commutator_table, expected_semiholomorphic_casimir,
    lie_slash_basis, uea_to_op, BridgeReport, CommutatorCheck, RaisingLowering, WeightedOp,
};
pub use coeff::{CoeffPoint, CoeffPoly, IndexData, Ring};
pub use diffop::{DMono, DiffOp};
pub use jets::{
    apply_op, coordinate_jets, covariance_check, eval_at, kernel_seed, random_group_element, random_point, xi_apply,
    CovarianceReport, CovarianceWeights, GaussianSeed, JetFn, KernelReport, KernelSeed, SlashedJetFn,
};
