//! The symmetric algebra S(g): classical invariants and the symmetrizer.

use super::pbw::{PbwAlgebra, PbwElement};
use super::zmat::det_adj;
use crate::error::Result;
use crate::exact::{GaussRat, Poly};
use crate::group_core::{Basis, BasisElt};

/// Commutative polynomial in the basis symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct SymElement {
    pub n: usize,
    pub poly: Poly,
}

impl SymElement {
    pub fn gen(n: usize, e: BasisElt) -> Self {
        let b = Basis::new(n);
        SymElement { n, poly: Poly::var(b.dim(), b.index(e)) }
    }
    pub fn from_poly(n: usize, poly: Poly) -> Self {
        SymElement { n, poly }
    }
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

pub struct ClassicalInvariants {
    pub n: usize,
    pub q0: Poly,
    pub q: Vec<Vec<Poly>>,
    pub c: Vec<Vec<Poly>>,
    pub p: Poly,
}

/// Q0 = H^2 + 4FE, Q_ij = (f_i e_j - f_j e_i)/2,
/// C_ij = E f_i f_j - H (f_i e_j + f_j e_i)/2 - F e_i e_j and
/// P_N = det(Z) Q0 + tr(adj(Z) C) + tr((adj(Z) Q)^2) / (2 det(Z)).
pub fn build_classical_invariants(n: usize) -> Result<ClassicalInvariants> {
    let b = Basis::new(n);
    let dim = b.dim();
    let v = |e| Poly::var(dim, b.index(e));
    let (e, f, h) = (v(BasisElt::E), v(BasisElt::F), v(BasisElt::H));
    let le = |i| v(BasisElt::LowE(i));
    let lf = |i| v(BasisElt::LowF(i));
    let half = GaussRat::frac(1, 2);
    let q0 = &(&h * &h) + &(&f * &e).scale(&GaussRat::int(4));
    let q: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| (&(&lf(i) * &le(j)) - &(&lf(j) * &le(i))).scale(&half)).collect())
        .collect();
    let c: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let t1 = &(&e * &lf(i)) * &lf(j);
                    let t2 = (&h * &(&(&lf(i) * &le(j)) + &(&lf(j) * &le(i)))).scale(&half);
                    let t3 = &(&f * &le(i)) * &le(j);
                    &(&t1 - &t2) - &t3
                })
                .collect()
        })
        .collect();
    let (det, adj) = det_adj(n);
    let mut p = &det * &q0;
    for i in 0..n {
        for j in 0..n {
            p.add_assign_ref(&(&adj[j][i] * &c[i][j]));
        }
    }
    let mut tr = Poly::zero(dim);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let t = &(&(&adj[i][j] * &q[j][k]) * &adj[k][l]) * &q[l][i];
                    tr.add_assign_ref(&t);
                }
            }
        }
    }
    p.add_assign_ref(&tr.div_exact(&det)?.scale(&half));
    Ok(ClassicalInvariants { n, q0, q, c, p })
}

impl ClassicalInvariants {
    /// Index tuples (i, j, k, l) where either quadratic relation fails.
    pub fn relation_failures(&self) -> Vec<(usize, usize, usize, usize)> {
        let n = self.n;
        let (q, c) = (&self.q, &self.c);
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r1 = &(&(&q[i][j] * &q[k][l]) + &(&q[i][l] * &q[j][k])) + &(&q[i][k] * &q[l][j]);
                        let r2 = &(&(&c[i][j] * &c[k][l]) - &(&c[i][k] * &c[j][l])) + &(&(&self.q0 * &q[i][l]) * &q[j][k]);
                        if !r1.is_zero() || !r2.is_zero() {
                            bad.push((i, j, k, l));
                        }
                    }
                }
            }
        }
        bad
    }
}

/// Distinct permutations of a multiset word, lexicographic.
fn distinct_perms(mut w: Vec<usize>) -> Vec<Vec<usize>> {
    w.sort_unstable();
    let mut out = vec![w.clone()];
    loop {
        // next permutation
        let Some(i) = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) else {
            return out;
        };
        let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).unwrap();
        w.swap(i, j);
        w[i + 1..].reverse();
        out.push(w.clone());
    }
}

/// Sym(x_1 .. x_r) = (1/r!) sum over orderings, extended linearly.
pub fn symmetrize(a: &SymElement) -> PbwElement {
    let alg = PbwAlgebra::get(a.n);
    let dim = alg.dim();
    let mut out = PbwElement::zero(a.n);
    for (ex, c) in &a.poly.terms {
        assert!(ex.iter().all(|&x| x >= 0), "negative exponent in symmetric algebra");
        let mut central = vec![0u16; dim];
        let mut word = Vec::new();
        for (i, &e) in ex.iter().enumerate() {
            if alg.is_central(i) {
                central[i] = e as u16;
            } else {
                word.extend(std::iter::repeat(i).take(e as usize));
            }
        }
        let perms = distinct_perms(word);
        let weight = GaussRat::frac(1, perms.len() as i64);
        let mut acc = PbwElement::zero(a.n);
        for p in perms {
            acc = acc.add(&alg.normal_order(&p));
        }
        let mut z = PbwElement::zero(a.n);
        z.terms.insert(central, c * &weight);
        out = out.add(&z.mul(&acc));
    }
    out
}
