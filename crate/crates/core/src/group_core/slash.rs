use super::action::{act, cocycle_alpha, cocycle_beta, Point};
use super::group::GroupElement;
use crate::error::{Error, Result};
use crate::exact::Mat;
use crate::numeric::Cplx;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rug::Float;
use std::sync::Arc;

/// A complex-valued function on H x C^N.
pub trait PointFn: Send + Sync {
    fn eval(&self, p: &Point<Cplx>) -> Result<Cplx>;
}

impl<F> PointFn for F
where
    F: Fn(&Point<Cplx>) -> Result<Cplx> + Send + Sync,
{
    fn eval(&self, p: &Point<Cplx>) -> Result<Cplx> {
        self(p)
    }
}

/// f |_{k,k',L} g, evaluated lazily.
///
/// (f|g)(p) = f(g p) beta^{k-k'} |beta|^{2k'} alpha_L(g, p), the conjugate
/// cocycle carrying the exponent k'.
#[derive(Clone)]
pub struct SlashedFn {
    pub f: Arc<dyn PointFn>,
    pub shift: i64,
    pub kp: BigRational,
    pub l: Mat<Cplx>,
    pub g: GroupElement<Cplx>,
}

impl PointFn for SlashedFn {
    fn eval(&self, p: &Point<Cplx>) -> Result<Cplx> {
        let ctx = p.tau.ctx();
        let gp = act(&self.g, p)?;
        let beta = cocycle_beta(&self.g.m, &p.tau)?;
        let kp = ctx.rat(&self.kp);
        let absb = Float::with_val(ctx.bits, beta.norm_sq());
        let mag = Float::with_val(ctx.bits, rug::ops::Pow::pow(&absb, &kp));
        let alpha = cocycle_alpha(&self.l, &self.g, p)?;
        Ok((&(&self.f.eval(&gp)? * &beta.powi(self.shift)) * &alpha).scale(&mag))
    }
}

/// Slash `f` by `g` with weights (k, k') and index L. Requires k - k' integral.
pub fn slash(
    f: Arc<dyn PointFn>,
    k: &BigRational,
    kp: &BigRational,
    l: &Mat<Cplx>,
    g: &GroupElement<Cplx>,
) -> Result<SlashedFn> {
    let d = k - kp;
    if !d.is_integer() {
        return Err(Error::Domain(format!("k - k' = {d} is not an integer")));
    }
    let shift = d.to_integer().to_i64().ok_or_else(|| Error::Range("weight difference too large".into()))?;
    if !l.is_square() || l.rows != g.n() {
        return Err(Error::Malformed("index matrix does not match rank".into()));
    }
    g.validate()?;
    Ok(SlashedFn { f, shift, kp: kp.clone(), l: l.clone(), g: g.clone() })
}
