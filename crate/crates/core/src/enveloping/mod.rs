//! Exact arithmetic in the universal enveloping algebra U(g) of the
//! extended Jacobi Lie algebra: PBW normal forms, the Casimir element, the
//! virtual copy of sl2, classical invariants and the automorphism tau.
//!
//! Whether the centre of the invariant operator algebra is larger than the
//! image of the centre of U(g) for N > 1 is not decided here; only
//! centrality facts are certified.

pub mod casimir;
pub mod localized;
pub mod pbw;
pub mod sym;
pub mod tau;
pub mod zmat;

pub use casimir::{
    adjugate_substitute, build_casimir, casimir_centrality, check_centrality, det_z, divide_by_det, Bilinear,
};
pub use localized::{eta, nu, nu_casimir_identity, nu_casimir_identity_with, LocalizedPbw, NuCasimirReport};
pub use pbw::{pbw_commutator, pbw_mul, pbw_normal_order, Mono, PbwAlgebra, PbwElement};
pub use sym::{build_classical_invariants, symmetrize, ClassicalInvariants, SymElement};
pub use tau::{tau_automorphism, tilde, tilde_basis};
