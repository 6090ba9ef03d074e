//! The automorphism tau and the tilde basis.

use super::pbw::PbwElement;
use crate::exact::GaussRat;
use crate::group_core::{Basis, BasisElt};

fn lin(n: usize, parts: &[(BasisElt, GaussRat)]) -> PbwElement {
    parts.iter().fold(PbwElement::zero(n), |acc, (e, c)| acc.add(&PbwElement::gen(n, *e).scale(c)))
}

/// Image of a generator under tau.
pub fn tilde(n: usize, x: BasisElt) -> PbwElement {
    let i = GaussRat::i();
    let h = GaussRat::frac(1, 2);
    let hi = &h * &i;
    use BasisElt::*;
    match x {
        H => lin(n, &[(F, i.clone()), (E, -&i)]),
        E => lin(n, &[(H, h.clone()), (F, hi.clone()), (E, hi)]),
        F => lin(n, &[(H, h.clone()), (F, -&hi), (E, -&hi)]),
        LowE(j) => lin(n, &[(LowF(j), h.clone()), (LowE(j), hi)]),
        LowF(j) => lin(n, &[(LowF(j), h.clone()), (LowE(j), -&hi)]),
        Z(a, b) => lin(n, &[(Z(a, b), hi)]),
    }
}

/// (generator, image) pairs for the whole basis.
pub fn tilde_basis(n: usize) -> Vec<(BasisElt, PbwElement)> {
    Basis::new(n).all().into_iter().map(|x| (x, tilde(n, x))).collect()
}

/// Extend tau multiplicatively to U(g).
pub fn tau_automorphism(a: &PbwElement) -> PbwElement {
    let n = a.n;
    let b = Basis::new(n);
    let images: Vec<PbwElement> = b.all().into_iter().map(|x| tilde(n, x)).collect();
    let mut out = PbwElement::zero(n);
    for (m, c) in &a.terms {
        let mut acc = PbwElement::scalar(n, c.clone());
        for (g, &e) in m.iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&images[g]);
            }
        }
        out = out.add(&acc);
    }
    out
}
