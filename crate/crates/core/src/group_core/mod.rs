//! The centrally extended real Jacobi group of rank N, its Lie algebra,
//! the action on H x C^N, scalar cocycles and numeric slash actions.
//!
//! Elements are triples (M, X, kappa) with M in SL2, X an N x 2 matrix and
//! kappa an N x N matrix. All routines are generic over [`Scalar`] so the
//! same code runs on Gaussian rationals and on MPFR complex floats.

pub mod action;
pub mod algebra;
pub mod embed;
pub mod group;
pub mod slash;

pub use action::{act, cocycle_a, cocycle_alpha, cocycle_beta, Point};
pub use algebra::{check_structure_constants, AlgebraElement, Basis, BasisElt};
pub use embed::{conjugate_is_symplectic, cyclic_permutation, embed_algebra, embed_group, symplectic_form};
pub use group::{jacobi_exp, jacobi_inv, jacobi_mul, GroupElement};
pub use slash::{slash, PointFn, SlashedFn};

use crate::exact::{GaussRat, Mat, Scalar};


/// J2 = [[0, -1], [1, 0]] with the scalar type of `like`.
pub fn j2<T: Scalar>(like: &T) -> Mat<T> {
    let z = like.zero_like();
    let o = like.one_like();
    Mat::from_rows(vec![vec![z.clone(), o.neg()], vec![o, z]])
}

/// Convert an exact matrix to the scalar type of `like`.
pub fn lift<T: Scalar>(m: &Mat<GaussRat>, like: &T) -> Mat<T> {
    Mat { rows: m.rows, cols: m.cols, data: m.data.iter().map(|g| like.from_gauss_like(g)).collect() }
}
