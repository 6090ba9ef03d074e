//! Single Fourier terms of semi-holomorphic, skew-holomorphic and mixed mock
//! forms, their operator checks, and specialization to torsion points.

use super::expansion::{FourierExpansion, FourierIndex, Profile, TermFn};
use super::lattice::{ints, GramLattice, Rat};
use crate::error::{Error, Result};
use crate::exact::GaussRat;
use crate::group_core::Point;
use crate::numeric::{Cplx, Jet, JetShape, PrecisionContext};
use crate::opcalc::{apply_op, build_casimir_op, build_heat, coordinate_jets, eval_at, random_point, DiffOp, JetFn};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// The three parts of a semi-holomorphic Fourier expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaassKind {
    /// y^{1 + N/2 - k} q^n zeta^r, D = 0
    C0,
    /// q^n zeta^r
    CPlus,
    /// H(pi D y / 2|L|) e(-i D y / 4|L|) q^n zeta^r, D < 0
    CMinus,
}

impl std::str::FromStr for MaassKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c0" => Ok(MaassKind::C0),
            "c+" => Ok(MaassKind::CPlus),
            "c-" => Ok(MaassKind::CMinus),
            _ => Err(Error::Malformed(format!("unknown term kind {s}"))),
        }
    }
}

pub fn maass_fourier_term(
    lattice: &GramLattice,
    kind: MaassKind,
    k: &Rat,
    n: &Rat,
    r: &[i64],
    coeff: GaussRat,
) -> Result<FourierExpansion> {
    if r.len() != lattice.rank() {
        return Err(Error::Malformed("r has the wrong length".into()));
    }
    let d = lattice.discriminant(n, r);
    let profile = match kind {
        MaassKind::C0 if d.is_zero() => Profile::YPower { k: k.clone() },
        MaassKind::C0 => return Err(Error::Domain(format!("c0 term needs D = 0, got D = {d}"))),
        MaassKind::CPlus => Profile::Constant,
        MaassKind::CMinus if d.is_negative() => Profile::HProfile { k: k.clone() },
        MaassKind::CMinus => return Err(Error::Domain(format!("c- term needs D < 0, got D = {d}"))),
    };
    let mut out = FourierExpansion::new(lattice.clone());
    out.add(FourierIndex::new(n.clone(), r.to_vec()), profile, coeff);
    Ok(out)
}

/// c E((nu + h^T v / y) sqrt(2y)) q^n zeta^r.
pub fn mixed_mock_term(
    lattice: &GramLattice,
    n: &Rat,
    r: &[i64],
    nu: &Rat,
    h: &[Rat],
    coeff: GaussRat,
) -> Result<FourierExpansion> {
    if r.len() != lattice.rank() || h.len() != lattice.rank() {
        return Err(Error::Malformed("r and h must have length N".into()));
    }
    let mut out = FourierExpansion::new(lattice.clone());
    out.add(FourierIndex::new(n.clone(), r.to_vec()), Profile::EProfile { nu: nu.clone(), h: h.to_vec() }, coeff);
    Ok(out)
}

/// The q-exponent for which the E-profile term at (r, nu, h) is an
/// eigenfunction of the Casimir operator. With <a, b> = a^T L^{-1} b write
/// r = alpha h + r0, <h, r0> = 0, H = <h, h>. The r0 part carries a
/// holomorphic factor of discriminant 0 and alpha h the rank one relation:
/// n = (alpha^2 H + 2 nu alpha H - 2 nu^2) / (4 + 2H) + <r0, r0>/4.
/// For h = 0 this is n = L^{-1}[r]/4 - nu^2/2.
pub fn mixed_mock_admissible_n(lattice: &GramLattice, r: &[i64], nu: &Rat, h: &[Rat]) -> Rat {
    let rq = ints(r);
    let two = Rat::from_integer(BigInt::from(2));
    let four = Rat::from_integer(BigInt::from(4));
    let hh = lattice.inv_quad(h);
    let rr = lattice.inv_quad(&rq);
    if hh.is_zero() {
        return rr / four - nu * nu / two;
    }
    let hr = lattice.inv_bilinear(h, &rq);
    // alpha^2 H = <h,r>^2 / H, alpha H = <h,r>, <r0,r0> = <r,r> - <h,r>^2 / H
    let par = &hr * &hr / &hh;
    let perp = &rr - &par;
    (&par + &two * nu * &hr - &two * nu * nu) / (&four + &two * &hh) + perp / four
}

/// Weight at which E-profile terms with <h, r> != 2 nu are Casimir
/// eigenfunctions: k = (N + 1)/2, which is k = 1 in rank one.
pub fn mixed_mock_weight(n: usize) -> Rat {
    Rat::new(BigInt::from(n as i64 + 1), BigInt::from(2))
}

/// max over sample points of |T f| / |f| at input weight k.
pub fn operator_residual(
    op: &DiffOp,
    k: &Rat,
    f: &dyn JetFn,
    n: usize,
    samples: usize,
    seed: u64,
    ctx: &PrecisionContext,
) -> Result<f64> {
    let kg = GaussRat::real(k.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    for _ in 0..samples {
        let p = random_point(n, &mut rng, ctx)?;
        let tf = apply_op(op, &kg, f, &p, None, ctx)?;
        let v = eval_at(f, &p)?;
        if v.is_zero() {
            continue;
        }
        worst = worst.max((tf.abs() / v.abs()).to_f64());
    }
    Ok(worst)
}

/// Relative Casimir residual of every term of `f` at weight k (worst term).
pub fn casimir_residual(f: &FourierExpansion, k: &Rat, samples: usize, seed: u64, ctx: &PrecisionContext) -> Result<f64> {
    let op = build_casimir_op(&f.lattice.index_data());
    let mut worst = 0f64;
    for key in f.terms.keys() {
        let t = f.term_fn(key);
        worst = worst.max(operator_residual(&op, k, &t, f.lattice.rank(), samples, seed, ctx)?);
    }
    Ok(worst)
}

/// Relative heat-operator residual of every term of `f` (worst term).
pub fn heat_residual(f: &FourierExpansion, samples: usize, seed: u64, ctx: &PrecisionContext) -> Result<f64> {
    let op = build_heat(&f.lattice.index_data());
    let k = Rat::new(BigInt::from(f.lattice.rank()), BigInt::from(2));
    let mut worst = 0f64;
    for key in f.terms.keys() {
        let t = f.term_fn(key);
        worst = worst.max(operator_residual(&op, &k, &t, f.lattice.rank(), samples, seed, ctx)?);
    }
    Ok(worst)
}

/// e(-i D y / 2|L|) q^n zeta^r, the shape of a skew-holomorphic coefficient.
pub fn skew_term(lattice: &GramLattice, n: &Rat, r: &[i64], coeff: GaussRat) -> Result<TermFn> {
    if r.len() != lattice.rank() {
        return Err(Error::Malformed("r has the wrong length".into()));
    }
    Ok(TermFn::new(lattice, FourierIndex::new(n.clone(), r.to_vec()), Profile::ExpHalf, coeff))
}

/// tau -> f(tau, lambda tau + mu) as a function of (tau, taubar).
#[derive(Clone)]
pub struct Specialized {
    pub f: Arc<dyn JetFn>,
    pub lambda: Vec<Rat>,
    pub mu: Vec<Rat>,
}

pub fn specialize_torsion(f: Arc<dyn JetFn>, lambda: &[Rat], mu: &[Rat]) -> Result<Specialized> {
    if lambda.len() != mu.len() {
        return Err(Error::Malformed("lambda and mu must have the same length".into()));
    }
    Ok(Specialized { f, lambda: lambda.to_vec(), mu: mu.to_vec() })
}

impl JetFn for Specialized {
    fn eval_jet(&self, vars: &[Jet]) -> Result<Jet> {
        let ctx = vars[0].ctx();
        let mut full = vec![vars[0].clone(), vars[1].clone()];
        for t in [&vars[0], &vars[1]] {
            for (l, m) in self.lambda.iter().zip(&self.mu) {
                full.push(t.scale(&Cplx::from_rat(&ctx, l)).add_const(&Cplx::from_rat(&ctx, m)));
            }
        }
        self.f.eval_jet(&full)
    }
}

impl Specialized {
    /// Value and first derivatives (d/dtau, d/dtaubar) at tau.
    pub fn eval_with_derivatives(&self, tau: &Cplx) -> Result<(Cplx, Cplx, Cplx)> {
        let shape = JetShape::get(2, 1);
        let vars = vec![Jet::variable(&shape, 0, tau.clone()), Jet::variable(&shape, 1, tau.conj())];
        let j = self.eval_jet(&vars)?;
        Ok((j.value().clone(), j.derivative(&[1, 0])?, j.derivative(&[0, 1])?))
    }

    pub fn eval(&self, tau: &Cplx) -> Result<Cplx> {
        Ok(self.eval_with_derivatives(tau)?.0)
    }

    /// The point (tau, lambda tau + mu).
    pub fn point(&self, tau: &Cplx) -> Result<Point<Cplx>> {
        let ctx = tau.ctx();
        let z = self
            .lambda
            .iter()
            .zip(&self.mu)
            .map(|(l, m)| &tau.scale(&ctx.rat(l)) + &Cplx::from_rat(&ctx, m))
            .collect();
        Point::new(tau.clone(), z)
    }

    /// (d/dtaubar of the specialization, (d/dtaubar + sum lambda_i d/dzbar_i) f)
    /// at tau.
    pub fn chain_rule(&self, tau: &Cplx) -> Result<(Cplx, Cplx)> {
        let ctx = tau.ctx();
        let (_, _, lhs) = self.eval_with_derivatives(tau)?;
        let p = self.point(tau)?;
        let n = p.n();
        let jet = self.f.eval_jet(&coordinate_jets(&p, 1))?;
        let nv = 2 + 2 * n;
        let unit = |i: usize| {
            let mut a = vec![0u8; nv];
            a[i] = 1;
            a
        };
        let mut rhs = jet.derivative(&unit(1))?;
        for (i, l) in self.lambda.iter().enumerate() {
            rhs = &rhs + &jet.derivative(&unit(2 + n + i))?.scale(&ctx.rat(l));
        }
        Ok((lhs, rhs))
    }
}

/// q^n zeta^r at z = lambda tau + mu is e(r.mu) q^{n + r.lambda}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedTerm {
    pub exponent: Rat,
    pub phase: Rat,
}

pub fn specialize_term(index: &FourierIndex, lambda: &[Rat], mu: &[Rat]) -> Result<SpecializedTerm> {
    if index.r.len() != lambda.len() || lambda.len() != mu.len() {
        return Err(Error::Malformed("lambda, mu and r must have the same length".into()));
    }
    let rq = ints(&index.r);
    let dot = |v: &[Rat]| rq.iter().zip(v).map(|(a, b)| a * b).fold(Rat::zero(), |s, x| s + x);
    Ok(SpecializedTerm { exponent: &index.n + dot(lambda), phase: dot(mu) })
}

impl SpecializedTerm {
    /// e(phase) e(exponent tau)
    pub fn eval(&self, tau: &Cplx) -> Cplx {
        let ctx = tau.ctx();
        (&tau.scale(&ctx.rat(&self.exponent)) + &Cplx::from_rat(&ctx, &self.phase)).e()
    }
}
