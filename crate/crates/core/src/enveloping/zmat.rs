//! The symmetric matrix of central generators Z = (Z_ij), its determinant
//! and adjugate as commutative polynomials over the basis variables.

use crate::exact::{GaussRat, Poly};
use crate::group_core::{Basis, BasisElt};

pub type PolyMat = Vec<Vec<Poly>>;

pub fn z_matrix(n: usize) -> PolyMat {
    let b = Basis::new(n);
    let dim = b.dim();
    (0..n).map(|i| (0..n).map(|j| Poly::var(dim, b.index(BasisElt::Z(i, j)))).collect()).collect()
}

fn minor(m: &PolyMat, r: usize, c: usize) -> PolyMat {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect())
        .collect()
}

/// Determinant by Laplace expansion (desk-scale sizes only).
pub fn poly_det(m: &PolyMat, nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nvars);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let t = &m[0][c] * &poly_det(&minor(m, 0, c), nvars);
        if c % 2 == 0 {
            acc.add_assign_ref(&t);
        } else {
            acc = &acc - &t;
        }
    }
    acc
}

/// Adjugate: adj[i][j] = (-1)^(i+j) det(minor(j, i)).
pub fn poly_adj(m: &PolyMat, nvars: usize) -> PolyMat {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = poly_det(&minor(m, j, i), nvars);
                    if (i + j) % 2 == 1 {
                        d.scale(&GaussRat::int(-1))
                    } else {
                        d
                    }
                })
                .collect()
        })
        .collect()
}

/// det(Z) and adj(Z) for rank n.
pub fn det_adj(n: usize) -> (Poly, PolyMat) {
    let dim = Basis::new(n).dim();
    let z = z_matrix(n);
    (poly_det(&z, dim), poly_adj(&z, dim))
}
