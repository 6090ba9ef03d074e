//! Fractions with a det(Z)-power denominator, and the virtual copy of sl2.

use super::casimir::{adjugate_substitute, build_casimir, det_z, divide_by_det, Bilinear};
use super::pbw::PbwElement;
use crate::error::{Error, Result};
use crate::exact::GaussRat;
use crate::group_core::BasisElt;

/// numerator / det(Z)^detpow. det(Z) is central so the fraction is
/// unambiguous.
#[derive(Clone, Debug)]
pub struct LocalizedPbw {
    pub num: PbwElement,
    pub detpow: u32,
}

impl LocalizedPbw {
    pub fn new(num: PbwElement, detpow: u32) -> Self {
        LocalizedPbw { num, detpow }
    }
    pub fn from_pbw(a: PbwElement) -> Self {
        Self::new(a, 0)
    }
    pub fn n(&self) -> usize {
        self.num.n
    }
    fn lift(&self, p: u32) -> PbwElement {
        let d = det_z(self.n());
        let mut a = self.num.clone();
        for _ in self.detpow..p {
            a = a.mul(&d);
        }
        a
    }
    pub fn add(&self, o: &Self) -> Self {
        let p = self.detpow.max(o.detpow);
        LocalizedPbw::new(self.lift(p).add(&o.lift(p)), p)
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&GaussRat::int(-1)))
    }
    pub fn scale(&self, s: &GaussRat) -> Self {
        LocalizedPbw::new(self.num.scale(s), self.detpow)
    }
    pub fn mul(&self, o: &Self) -> Self {
        LocalizedPbw::new(self.num.mul(&o.num), self.detpow + o.detpow)
    }
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    /// Cancel common det(Z) factors.
    pub fn reduce(&self) -> Self {
        let mut cur = self.clone();
        while cur.detpow > 0 {
            match divide_by_det(&cur.num) {
                Ok(q) => {
                    cur = LocalizedPbw::new(q, cur.detpow - 1);
                }
                Err(_) => break,
            }
        }
        cur
    }
    pub fn equals(&self, o: &Self) -> bool {
        let p = self.detpow.max(o.detpow);
        self.lift(p) == o.lift(p)
    }
}

/// eta(E) = B_ee / (4 det), eta(F) = -B_ff / (4 det),
/// eta(H) = (N det / 2 + B_ef / 2) / det.
pub fn eta(n: usize, x: BasisElt) -> Result<LocalizedPbw> {
    let v = match x {
        BasisElt::E => adjugate_substitute(n, Bilinear::EE).scale(&GaussRat::frac(1, 4)),
        BasisElt::F => adjugate_substitute(n, Bilinear::FF).scale(&GaussRat::frac(-1, 4)),
        BasisElt::H => det_z(n)
            .scale(&GaussRat::frac(n as i64, 2))
            .add(&adjugate_substitute(n, Bilinear::EF).scale(&GaussRat::frac(1, 2))),
        other => {
            return Err(Error::Domain(format!("eta is only defined on sl2 generators, got {other:?}")));
        }
    };
    Ok(LocalizedPbw::new(v, 1))
}

/// nu = x - eta(x).
pub fn nu(n: usize, x: BasisElt) -> Result<LocalizedPbw> {
    Ok(LocalizedPbw::from_pbw(PbwElement::gen(n, x)).sub(&eta(n, x)?))
}

/// Result of comparing nu(H)^2 - 2 nu(H) + 4 nu(E) nu(F) with
/// det(Z)^-1 Omega_N + constant.
pub struct NuCasimirReport {
    pub lhs: LocalizedPbw,
    pub rhs: LocalizedPbw,
    pub equal: bool,
}

pub fn nu_casimir_identity_with(n: usize, constant: GaussRat) -> Result<NuCasimirReport> {
    let (ne, nf, nh) = (nu(n, BasisElt::E)?, nu(n, BasisElt::F)?, nu(n, BasisElt::H)?);
    let lhs = nh
        .mul(&nh)
        .sub(&nh.scale(&GaussRat::int(2)))
        .add(&ne.mul(&nf).scale(&GaussRat::int(4)));
    let rhs = LocalizedPbw::new(build_casimir(n)?, 1).add(&LocalizedPbw::from_pbw(PbwElement::scalar(n, constant)));
    let equal = lhs.equals(&rhs);
    Ok(NuCasimirReport { lhs: lhs.reduce(), rhs: rhs.reduce(), equal })
}

/// The identity with constant N(N+4)/4.
pub fn nu_casimir_identity(n: usize) -> Result<NuCasimirReport> {
    nu_casimir_identity_with(n, GaussRat::frac((n * (n + 4)) as i64, 4))
}
