//! theta-decomposition of truncated expansions into components h_mu indexed
//! by r mod L Z^N, and reassembly sum_mu h_mu theta_{L,mu}.

use super::expansion::{FourierExpansion, FourierIndex, Profile};
use super::lattice::{ints, GramLattice, Rat};
use crate::error::{Error, Result};
use crate::exact::GaussRat;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    Semi,
    Skew,
}

/// One coefficient of h_mu: c P(y) q^e with e = D / 4|L| (semi) or
/// -D / 4|L| (skew).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComponentKey {
    pub exponent: Rat,
    pub profile: Profile,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaComponents {
    pub lattice: GramLattice,
    pub kind: DecompositionKind,
    pub components: BTreeMap<Vec<i64>, BTreeMap<ComponentKey, GaussRat>>,
}

fn four_det(l: &GramLattice) -> Rat {
    l.det() * Rat::from_integer(BigInt::from(4))
}

fn insert(
    comps: &mut BTreeMap<Vec<i64>, BTreeMap<ComponentKey, GaussRat>>,
    mu: Vec<i64>,
    key: ComponentKey,
    c: GaussRat,
    index: &FourierIndex,
) -> Result<()> {
    let slot = comps.entry(mu.clone()).or_default();
    match slot.get(&key) {
        Some(old) if *old != c => Err(Error::NotSemiHolomorphic(format!(
            "coefficient at n = {}, r = {:?} differs from another index with the same D and class {:?}",
            index.n, index.r, mu
        ))),
        Some(_) => Ok(()),
        None => {
            slot.insert(key, c);
            Ok(())
        }
    }
}

/// Components of a semi-holomorphic expansion. Profiles are kept as they
/// are; E-profiles depend on v and are rejected.
pub fn theta_decompose_semi(f: &FourierExpansion) -> Result<ThetaComponents> {
    let l = &f.lattice;
    let mut comps = BTreeMap::new();
    for (key, c) in &f.terms {
        if matches!(key.profile, Profile::EProfile { .. } | Profile::ExpHalf) {
            return Err(Error::NotSemiHolomorphic(format!("profile {} does not factor through D", key.profile.tag())));
        }
        let d = f.discriminant(&key.index);
        let mu = l.reduce_class(&key.index.r);
        let ck = ComponentKey { exponent: d / four_det(l), profile: key.profile.clone() };
        insert(&mut comps, mu, ck, c.clone(), &key.index)?;
    }
    Ok(ThetaComponents { lattice: l.clone(), kind: DecompositionKind::Semi, components: comps })
}

/// Components of a skew-holomorphic expansion (all terms with the
/// e(-i D y / 2|L|) profile): conj(c) q^{-D / 4|L|}.
pub fn theta_decompose_skew(f: &FourierExpansion) -> Result<ThetaComponents> {
    let l = &f.lattice;
    let mut comps = BTreeMap::new();
    for (key, c) in &f.terms {
        if key.profile != Profile::ExpHalf {
            return Err(Error::NotSemiHolomorphic(format!("skew expansion has a {} term", key.profile.tag())));
        }
        let d = f.discriminant(&key.index);
        let mu = l.reduce_class(&key.index.r);
        let ck = ComponentKey { exponent: -d / four_det(l), profile: Profile::Constant };
        insert(&mut comps, mu, ck, c.conj(), &key.index)?;
    }
    Ok(ThetaComponents { lattice: l.clone(), kind: DecompositionKind::Skew, components: comps })
}

impl ThetaComponents {
    /// sum_mu h_mu theta_{L,mu}, keeping the terms with q-exponent <= bound.
    pub fn reassemble(&self, bound: &Rat) -> FourierExpansion {
        let l = &self.lattice;
        let n = l.rank();
        let zero = vec![Rat::zero(); n];
        let four = Rat::from_integer(BigInt::from(4));
        let mut out = FourierExpansion::new(l.clone());
        for (mu, h) in &self.components {
            for (ck, c) in h {
                let (e, profile, coeff) = match self.kind {
                    DecompositionKind::Semi => (ck.exponent.clone(), ck.profile.clone(), c.clone()),
                    DecompositionKind::Skew => (-&ck.exponent, Profile::ExpHalf, c.conj()),
                };
                // n = e + L^{-1}[r]/4 <= bound
                let rb = (bound - &e) * &four;
                if rb < Rat::zero() {
                    continue;
                }
                for r in l.short_vectors(true, &zero, &rb) {
                    if l.congruent(&r, mu) {
                        let nn = &e + l.inv_quad(&ints(&r)) / &four;
                        out.add(FourierIndex::new(nn, r), profile.clone(), coeff.clone());
                    }
                }
            }
        }
        out
    }

    /// The coefficient of q^e P in h_mu.
    pub fn coefficient(&self, mu: &[i64], exponent: &Rat, profile: &Profile) -> GaussRat {
        let mu = self.lattice.reduce_class(mu);
        self.components
            .get(&mu)
            .and_then(|h| h.get(&ComponentKey { exponent: exponent.clone(), profile: profile.clone() }))
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }
}
