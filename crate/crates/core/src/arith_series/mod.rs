//! Lattices, theta series, Kloosterman sums, Fourier expansions and the
//! Fourier coefficients of Jacobi-Poincare series.

pub mod decompose;
pub mod expansion;
pub mod kloosterman;
pub mod lattice;
pub mod poincare;
pub mod terms;
pub mod theta;

pub use expansion::{FourierExpansion, FourierIndex, Profile, TermFn, TermKey};
pub use kloosterman::{kloosterman, kloosterman_histogram};
pub use lattice::{fincke_pohst, GramLattice, Rat};
pub use theta::{theta_klr, theta_lmu, ThetaVariant};
pub use poincare::{
    casimir_eigenvalue, casimir_eigenvalue_printed, duality_report, eigen_check, full_coeff_c, phi_seed, poincare_coeff_b,
    skew_poincare_coeff, CoeffValue, DualityReport, DualityRow, EigenReport, PoincareParams, SkewCoeff,
};
pub use decompose::{theta_decompose_semi, theta_decompose_skew, ComponentKey, DecompositionKind, ThetaComponents};
pub use terms::{
    casimir_residual, heat_residual, maass_fourier_term, mixed_mock_admissible_n, mixed_mock_term, mixed_mock_weight, operator_residual,
    skew_term, specialize_term, specialize_torsion, MaassKind, Specialized, SpecializedTerm,
};
