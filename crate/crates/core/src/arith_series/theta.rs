//! The theta series theta_{L,mu} and theta_{k,L}^{(r)}, truncated in the
//! q-exponent.

use super::expansion::{FourierExpansion, FourierIndex, Profile};
use super::lattice::{ints, GramLattice, Rat};
use crate::exact::GaussRat;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// sum over r = mu mod L Z^N of q^{L^{-1}[r]/4} zeta^r, exponents <= bound.
pub fn theta_lmu(lattice: &GramLattice, mu: &[i64], bound: &Rat) -> FourierExpansion {
    let n = lattice.rank();
    let mut out = FourierExpansion::new(lattice.clone());
    let zero = vec![Rat::from_integer(0.into()); n];
    for r in lattice.short_vectors(true, &zero, &(bound * ri(4))) {
        if lattice.congruent(&r, mu) {
            let e = lattice.inv_quad(&ints(&r)) / ri(4);
            out.add(FourierIndex::new(e, r), Profile::Constant, GaussRat::one());
        }
    }
    out
}

/// Which zeta power the second summand of theta_{k,L}^{(r)} carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ThetaVariant {
    /// zeta^r in both summands.
    #[default]
    Printed,
    /// zeta^{-r} in the second summand.
    NegatedR,
}

/// sum_lambda q^{L[lambda]} zeta^{2 L lambda} (q^{r lambda} zeta^r
/// + (-1)^k q^{-r lambda} zeta^{+-r}), exponents <= bound.
pub fn theta_klr(k: i64, lattice: &GramLattice, r: &[i64], bound: &Rat, variant: ThetaVariant) -> FourierExpansion {
    let n = lattice.rank();
    let mut out = FourierExpansion::new(lattice.clone());
    let rq = ints(r);
    let shift = lattice.inv_quad(&rq) / ri(4);
    let half_linv_r: Vec<Rat> = lattice.apply_inv(&rq).into_iter().map(|x| x / ri(2)).collect();
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    for (eps, coef) in [(1i64, 1i64), (-1, sign)] {
        // L[lambda] + eps r.lambda = L[lambda + eps L^{-1} r / 2] - L^{-1}[r]/4
        let center: Vec<Rat> = half_linv_r.iter().map(|x| -x * ri(eps)).collect();
        for lam in lattice.short_vectors(false, &center, &(bound + &shift)) {
            let lq = ints(&lam);
            let e = lattice.quad(&lq) + ri(eps) * lq.iter().zip(&rq).map(|(a, b)| a * b).sum::<Rat>();
            let two_l: Vec<i64> = lattice.apply(&lq).iter().map(|x| (x * ri(2)).to_integer().to_i64().unwrap()).collect();
            let rs = if eps == -1 && variant == ThetaVariant::NegatedR { -1 } else { 1 };
            let zr: Vec<i64> = (0..n).map(|j| two_l[j] + rs * r[j]).collect();
            out.add(FourierIndex::new(e, zr), Profile::Constant, GaussRat::int(coef));
        }
    }
    out
}
