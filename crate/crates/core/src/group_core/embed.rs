//! Matrix realisations of size 2N+2 with block sizes (N, 2, N).

use super::algebra::AlgebraElement;
use super::group::GroupElement;
use super::j2;
use crate::exact::{Mat, Scalar};

/// [[I, X, kappa], [0, M, -M J2 X^T], [0, 0, I]].
pub fn embed_group<T: Scalar>(g: &GroupElement<T>) -> Mat<T> {
    let n = g.n();
    let like = g.like();
    let mut out = Mat::zeros(2 * n + 2, 2 * n + 2, &like);
    out.set_block(0, 0, &Mat::identity(n, &like));
    out.set_block(0, n, &g.x);
    out.set_block(0, n + 2, &g.kappa);
    out.set_block(n, n, &g.m);
    out.set_block(n, n + 2, &g.m.mul(&j2(&like)).mul(&g.x.transpose()).neg());
    out.set_block(n + 2, n + 2, &Mat::identity(n, &like));
    out
}

/// [[0, X, kappa], [0, M, -J2 X^T], [0, 0, 0]].
pub fn embed_algebra<T: Scalar>(y: &AlgebraElement<T>) -> Mat<T> {
    let n = y.n();
    let like = y.m.get(0, 0).zero_like();
    let mut out = Mat::zeros(2 * n + 2, 2 * n + 2, &like);
    out.set_block(0, n, &y.x);
    out.set_block(0, n + 2, &y.kappa);
    out.set_block(n, n, &y.m);
    out.set_block(n, n + 2, &j2(&like).mul(&y.x.transpose()).neg());
    out
}

/// Permutation matrix of the cycle (1, 2, .., N+1) on the first N+1
/// coordinates: P e_i = e_{i+1}, P e_{N+1} = e_1; identity elsewhere.
pub fn cyclic_permutation<T: Scalar>(n: usize, like: &T) -> Mat<T> {
    let d = 2 * n + 2;
    let mut p = Mat::zeros(d, d, like);
    for i in 0..=n {
        let j = if i == n { 0 } else { i + 1 };
        p.set(j, i, like.one_like());
    }
    for i in n + 1..d {
        p.set(i, i, like.one_like());
    }
    p
}

/// [[0, -I], [I, 0]] of size 2(N+1).
pub fn symplectic_form<T: Scalar>(n: usize, like: &T) -> Mat<T> {
    let h = n + 1;
    let mut j = Mat::zeros(2 * h, 2 * h, like);
    for i in 0..h {
        j.set(i, h + i, like.one_like().neg());
        j.set(h + i, i, like.one_like());
    }
    j
}

/// True if P g P^-1 preserves the symplectic form.
pub fn conjugate_is_symplectic<T: Scalar>(g: &GroupElement<T>) -> bool {
    let like = g.like();
    let n = g.n();
    let p = cyclic_permutation(n, &like);
    let a = p.mul(&embed_group(g)).mul(&p.transpose());
    let j = symplectic_form(n, &like);
    a.transpose().mul(&j).mul(&a).sub(&j).data.iter().all(|v| v.is_negligible())
}
