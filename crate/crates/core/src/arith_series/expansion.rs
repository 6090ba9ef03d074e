//! Truncated Fourier expansions sum c(n, r) P(y, v) q^n zeta^r with a small
//! catalogue of profile functions P, their JSON form and jet evaluation.

use super::lattice::{GramLattice, Rat};
use crate::error::{Error, Result};
use crate::exact::gauss::{parse_rat, rat_to_string};
use crate::exact::GaussRat;
use crate::group_core::Point;
use crate::numeric::{Cplx, Jet, PrecisionContext};
use crate::opcalc::jets::imag_part;
use crate::opcalc::{eval_at, JetFn};
use crate::specfun;
use num_bigint::BigInt;
use num_traits::Zero;
use rug::Float;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// (n, r) with n rational and r an integer vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FourierIndex {
    pub n: Rat,
    pub r: Vec<i64>,
}

impl FourierIndex {
    pub fn new(n: Rat, r: Vec<i64>) -> Self {
        FourierIndex { n, r }
    }
    pub fn int(n: i64, r: &[i64]) -> Self {
        FourierIndex { n: Rat::from_integer(BigInt::from(n)), r: r.to_vec() }
    }
}

/// The factor multiplying q^n zeta^r. D is the discriminant of the index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Profile {
    /// 1
    Constant,
    /// y^{1 + N/2 - k}
    YPower { k: Rat },
    /// H(pi D y / 2|L|) e(-i D y / 4|L|), H with exponent -(k - N/2)
    HProfile { k: Rat },
    /// W_{s, k - N/2}(pi D y / |L|) e(-i D y / 4|L|)
    WProfile { k: Rat, s: Rat },
    /// M_{s, k - N/2}(pi D y / |L|) e(-i D y / 4|L|)
    MProfile { k: Rat, s: Rat },
    /// e(-i D y / 4|L|)
    ExpQuarter,
    /// e(-i D y / 2|L|)
    ExpHalf,
    /// E((nu + h^T v / y) sqrt(2y))
    EProfile { nu: Rat, h: Vec<Rat> },
}

impl Profile {
    pub fn tag(&self) -> &'static str {
        match self {
            Profile::Constant => "constant",
            Profile::YPower { .. } => "y-power",
            Profile::HProfile { .. } => "H-profile",
            Profile::WProfile { .. } => "W-profile",
            Profile::MProfile { .. } => "M-profile",
            Profile::ExpQuarter => "exp-quarter",
            Profile::ExpHalf => "exp-half",
            Profile::EProfile { .. } => "E-profile",
        }
    }

    pub fn params(&self) -> Value {
        let s = rat_to_string;
        match self {
            Profile::Constant | Profile::ExpQuarter | Profile::ExpHalf => json!({}),
            Profile::YPower { k } | Profile::HProfile { k } => json!({ "k": s(k) }),
            Profile::WProfile { k, s: sv } | Profile::MProfile { k, s: sv } => json!({ "k": s(k), "s": s(sv) }),
            Profile::EProfile { nu, h } => json!({ "h": h.iter().map(s).collect::<Vec<_>>(), "nu": s(nu) }),
        }
    }

    fn from_json(tag: &str, params: &Value) -> Result<Self> {
        let bad = || Error::Malformed(format!("bad parameters for profile {tag}"));
        let get = |key: &str| -> Result<Rat> { params.get(key).and_then(|v| v.as_str()).and_then(parse_rat).ok_or_else(bad) };
        Ok(match tag {
            "constant" => Profile::Constant,
            "exp-quarter" => Profile::ExpQuarter,
            "exp-half" => Profile::ExpHalf,
            "y-power" => Profile::YPower { k: get("k")? },
            "H-profile" => Profile::HProfile { k: get("k")? },
            "W-profile" => Profile::WProfile { k: get("k")?, s: get("s")? },
            "M-profile" => Profile::MProfile { k: get("k")?, s: get("s")? },
            "E-profile" => {
                let h = params
                    .get("h")
                    .and_then(|v| v.as_array())
                    .ok_or_else(bad)?
                    .iter()
                    .map(|e| e.as_str().and_then(parse_rat).ok_or_else(bad))
                    .collect::<Result<_>>()?;
                Profile::EProfile { nu: get("nu")?, h }
            }
            _ => return Err(Error::Malformed(format!("unknown profile {tag}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub index: FourierIndex,
    pub profile: Profile,
}

/// A finite sum of profile terms with exact Gaussian-rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierExpansion {
    pub lattice: GramLattice,
    pub terms: BTreeMap<TermKey, GaussRat>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    n: String,
    r: Vec<i64>,
    profile: String,
    params: Value,
    coeff: [String; 2],
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    lattice: Vec<Vec<String>>,
    terms: Vec<TermJson>,
}

impl FourierExpansion {
    pub fn new(lattice: GramLattice) -> Self {
        FourierExpansion { lattice, terms: BTreeMap::new() }
    }

    /// Adds c to the coefficient of the term, dropping it if it cancels.
    pub fn add(&mut self, index: FourierIndex, profile: Profile, c: GaussRat) {
        let key = TermKey { index, profile };
        let e = self.terms.entry(key.clone()).or_insert_with(GaussRat::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, index: &FourierIndex, profile: &Profile) -> GaussRat {
        self.terms
            .get(&TermKey { index: index.clone(), profile: profile.clone() })
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    pub fn discriminant(&self, index: &FourierIndex) -> Rat {
        self.lattice.discriminant(&index.n, &index.r)
    }

    pub fn to_json(&self) -> String {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| TermJson {
                n: rat_to_string(&k.index.n),
                r: k.index.r.clone(),
                profile: k.profile.tag().to_string(),
                params: k.profile.params(),
                coeff: [rat_to_string(&c.re), rat_to_string(&c.im)],
            })
            .collect();
        let j = ExpansionJson { lattice: self.lattice.to_strings(), terms };
        serde_json::to_string_pretty(&j).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: ExpansionJson = serde_json::from_str(s).map_err(|e| Error::Malformed(format!("expansion JSON: {e}")))?;
        let rows = j
            .lattice
            .iter()
            .map(|r| r.iter().map(|e| parse_rat(e).ok_or_else(|| Error::Malformed(format!("bad rational {e}")))).collect())
            .collect::<Result<Vec<Vec<Rat>>>>()?;
        let lattice = GramLattice::new(rows)?;
        let mut out = FourierExpansion::new(lattice);
        for t in j.terms {
            let n = parse_rat(&t.n).ok_or_else(|| Error::Malformed(format!("bad rational {}", t.n)))?;
            if t.r.len() != out.lattice.rank() {
                return Err(Error::Malformed("term r has the wrong length".into()));
            }
            let re = parse_rat(&t.coeff[0]).ok_or_else(|| Error::Malformed("bad coefficient".into()))?;
            let im = parse_rat(&t.coeff[1]).ok_or_else(|| Error::Malformed("bad coefficient".into()))?;
            let p = Profile::from_json(&t.profile, &t.params)?;
            out.add(FourierIndex::new(n, t.r), p, GaussRat::new(re, im));
        }
        Ok(out)
    }

    /// Jet function of a single term (coefficient included).
    pub fn term_fn(&self, key: &TermKey) -> TermFn {
        let c = self.terms.get(key).cloned().unwrap_or_else(GaussRat::zero);
        TermFn::new(&self.lattice, key.index.clone(), key.profile.clone(), c)
    }

    /// Value of the truncated sum at a point.
    pub fn evaluate(&self, p: &Point<Cplx>, ctx: &PrecisionContext) -> Result<Cplx> {
        let mut acc = Cplx::zero(ctx);
        for k in self.terms.keys() {
            acc = &acc + &eval_at(&self.term_fn(k), p)?;
        }
        Ok(acc)
    }
}

/// c P(y, v) q^n zeta^r as a function of (tau, taubar, z, zbar).
#[derive(Clone, Debug)]
pub struct TermFn {
    pub n_rank: usize,
    pub det: Rat,
    pub disc: Rat,
    pub index: FourierIndex,
    pub profile: Profile,
    pub coeff: GaussRat,
}

impl TermFn {
    pub fn new(lattice: &GramLattice, index: FourierIndex, profile: Profile, coeff: GaussRat) -> Self {
        let disc = lattice.discriminant(&index.n, &index.r);
        TermFn { n_rank: lattice.rank(), det: lattice.det().clone(), disc, index, profile, coeff }
    }
}

fn real_cplx(v: Vec<Float>) -> Vec<Cplx> {
    v.into_iter().map(Cplx::from_real).collect()
}

/// e(c y) = exp(2 pi i c y) for c = -i D / (m |L|): exp(2 pi D y / (m |L|)).
fn exp_profile(y: &Jet, disc: &Rat, det: &Rat, m: i64, ctx: &PrecisionContext) -> Jet {
    let f = ctx.rat(&(disc / det)) * ctx.pi() * 2u32 / m;
    y.scale(&Cplx::from_real(f)).exp()
}

impl JetFn for TermFn {
    fn eval_jet(&self, vars: &[Jet]) -> Result<Jet> {
        let n = self.n_rank;
        let ctx = vars[0].ctx();
        let deg = vars[0].shape.deg;
        let y = imag_part(&vars[0], &vars[1]);
        // q^n zeta^r
        let mut ph = vars[0].scale(&Cplx::from_rat(&ctx, &self.index.n));
        for j in 0..n {
            ph = ph.add(&vars[2 + j].scale(&Cplx::from_f64(&ctx, self.index.r[j] as f64, 0.0)));
        }
        let two_pi_i = Cplx::new(ctx.zero(), Float::with_val(ctx.bits, ctx.pi() * 2u32));
        let base = ph.scale(&two_pi_i).exp().scale(&Cplx::from_gauss(&ctx, &self.coeff));
        let half_n = Rat::new(BigInt::from(n), BigInt::from(2));
        let prof = match &self.profile {
            Profile::Constant => return Ok(base),
            Profile::YPower { k } => y.pow_real(&ctx.rat(&(Rat::from_integer(1.into()) + &half_n - k))),
            Profile::ExpQuarter => exp_profile(&y, &self.disc, &self.det, 4, &ctx),
            Profile::ExpHalf => exp_profile(&y, &self.disc, &self.det, 2, &ctx),
            Profile::HProfile { k } => {
                let scale = ctx.rat(&(&self.disc / &self.det)) * ctx.pi() / 2u32;
                let arg = y.scale(&Cplx::from_real(scale));
                let a = ctx.rat(&(k - &half_n));
                let d = specfun::h_profile_exp_jet(&a, &arg.value().re, deg, &ctx)?;
                arg.compose(&real_cplx(d)).mul(&exp_profile(&y, &self.disc, &self.det, 4, &ctx))
            }
            Profile::WProfile { k, s } | Profile::MProfile { k, s } => {
                if self.disc.is_zero() {
                    return Err(Error::Domain("Whittaker profile with D = 0".into()));
                }
                let scale = ctx.rat(&(&self.disc / &self.det)) * ctx.pi();
                let arg = y.scale(&Cplx::from_real(scale));
                let kappa = ctx.rat(&(k - &half_n));
                let sv = ctx.rat(s);
                let t = arg.value().re.clone();
                let d = if matches!(self.profile, Profile::WProfile { .. }) {
                    specfun::whittaker_w_renorm_jet(&sv, &kappa, &t, deg, &ctx)?
                } else {
                    specfun::whittaker_m_renorm_jet(&sv, &kappa, &t, deg, &ctx)?
                };
                arg.compose(&real_cplx(d)).mul(&exp_profile(&y, &self.disc, &self.det, 4, &ctx))
            }
            Profile::EProfile { nu, h } => {
                let mut hv = Jet::zero(&vars[0].shape, &ctx);
                for j in 0..n {
                    if !h[j].is_zero() {
                        let v = imag_part(&vars[2 + j], &vars[2 + n + j]);
                        hv = hv.add(&v.scale(&Cplx::from_rat(&ctx, &h[j])));
                    }
                }
                let w = hv.div(&y).add_const(&Cplx::from_rat(&ctx, nu));
                let arg = w.mul(&y.scale(&Cplx::from_f64(&ctx, 2.0, 0.0)).pow_real(&ctx.float(0.5)));
                let d = specfun::e_profile_jet(&arg.value().re, deg, &ctx);
                arg.compose(&real_cplx(d))
            }
        };
        Ok(prof.mul(&base))
    }
}
