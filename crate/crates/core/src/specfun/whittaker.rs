//! Whittaker functions M and W and their renormalised versions in t.

use super::kummer::{is_nonpos_int, kummer_m, kummer_u};
use crate::error::{Error, Result};
use crate::numeric::PrecisionContext;
use rug::Float;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    M,
    W,
}

/// Derivatives 0..=order of h(x) = e^{-x/2} x^c.
fn prefactor_jet(c: &Float, x: &Float, order: usize, bits: u32) -> Vec<Float> {
    let e = Float::with_val(bits, -Float::with_val(bits, x / 2u32)).exp();
    // p_i = (c)_falling_i x^{c-i}
    let mut p = Vec::with_capacity(order + 1);
    let mut fall = Float::with_val(bits, 1);
    for i in 0..=order {
        let ex = Float::with_val(bits, c - i as u32);
        let xp = Float::with_val(bits, rug::ops::Pow::pow(x, &ex));
        p.push(Float::with_val(bits, &fall * &xp));
        fall *= Float::with_val(bits, c - i as u32);
    }
    let mut out = Vec::with_capacity(order + 1);
    for j in 0..=order {
        let mut acc = Float::with_val(bits, 0);
        let mut binom = Float::with_val(bits, 1);
        for i in 0..=j {
            let half = Float::with_val(bits, Float::i_exp(1, -((j - i) as i32)));
            let sgn = if (j - i) % 2 == 1 { -1 } else { 1 };
            acc += Float::with_val(bits, &binom * &half) * &p[i] * sgn;
            binom *= (j - i) as u32;
            binom /= (i + 1) as u32;
        }
        out.push(acc * &e);
    }
    out
}

pub(crate) fn leibniz(f: &[Float], g: &[Float], bits: u32) -> Vec<Float> {
    let n = f.len().min(g.len());
    (0..n)
        .map(|j| {
            let mut acc = Float::with_val(bits, 0);
            let mut binom = Float::with_val(bits, 1);
            for i in 0..=j {
                acc += Float::with_val(bits, &binom * &f[i]) * &g[j - i];
                binom *= (j - i) as u32;
                binom /= (i + 1) as u32;
            }
            acc
        })
        .collect()
}

/// Jet of e^{-x/2} x^{mu + 1/2 + extra} F(a, b, x) with a = 1/2 + mu - lambda,
/// b = 1 + 2 mu and F = M or U. The Kummer derivatives come from the
/// contiguous relations M' = (a/b) M(a+1, b+1), U' = -a U(a+1, b+1).
fn whit_jet(
    kind: Kind,
    lambda: &Float,
    mu: &Float,
    extra: &Float,
    x: &Float,
    order: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<Float>> {
    if *x <= 0 {
        return Err(Error::Domain("Whittaker argument must be positive".into()));
    }
    let bits = ctx.bits + 32;
    let wctx = PrecisionContext { bits, max_terms: ctx.max_terms };
    let a = Float::with_val(bits, 0.5) + mu - lambda;
    let b = Float::with_val(bits, mu * 2u32) + 1u32;
    if kind == Kind::M && is_nonpos_int(&b) {
        return Err(Error::Pole(format!("Whittaker M with 1 + 2mu = {}", b.to_f64())));
    }
    let mut fj = Vec::with_capacity(order + 1);
    let mut coef = Float::with_val(bits, 1);
    for j in 0..=order {
        let aj = Float::with_val(bits, &a + j as u32);
        let bj = Float::with_val(bits, &b + j as u32);
        let v = if coef.is_zero() {
            Float::with_val(bits, 0)
        } else {
            match kind {
                Kind::M => kummer_m(&aj, &bj, x, &wctx)?,
                Kind::W => kummer_u(&aj, &bj, x, &wctx)?,
            }
        };
        fj.push(Float::with_val(bits, &coef * &v));
        match kind {
            Kind::M => {
                coef *= &aj;
                coef /= &bj;
            }
            Kind::W => {
                coef *= &aj;
                coef = -coef;
            }
        }
    }
    let c = Float::with_val(bits, mu + 0.5) + extra;
    let h = prefactor_jet(&c, x, order, bits);
    Ok(leibniz(&h, &fj, bits).into_iter().map(|v| Float::with_val(ctx.bits, v)).collect())
}

/// M_{lambda,mu}(x) for x > 0.
pub fn whittaker_m(lambda: &Float, mu: &Float, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    Ok(whittaker_m_jet(lambda, mu, x, 0, ctx)?.remove(0))
}

/// W_{lambda,mu}(x) for x > 0.
pub fn whittaker_w(lambda: &Float, mu: &Float, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    Ok(whittaker_w_jet(lambda, mu, x, 0, ctx)?.remove(0))
}

/// Derivatives of M_{lambda,mu} at x of orders 0..=order.
pub fn whittaker_m_jet(lambda: &Float, mu: &Float, x: &Float, order: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    whit_jet(Kind::M, lambda, mu, &Float::with_val(ctx.bits, 0), x, order, ctx)
}

/// Derivatives of W_{lambda,mu} at x of orders 0..=order.
pub fn whittaker_w_jet(lambda: &Float, mu: &Float, x: &Float, order: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    whit_jet(Kind::W, lambda, mu, &Float::with_val(ctx.bits, 0), x, order, ctx)
}

fn renorm_jet(kind: Kind, s: &Float, kappa: &Float, t: &Float, order: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    if t.is_zero() {
        return Err(Error::Domain("renormalised Whittaker function at t = 0".into()));
    }
    let bits = ctx.bits;
    let neg = t.is_sign_negative();
    let x = Float::with_val(bits, t.abs_ref());
    let mut lambda = Float::with_val(bits, kappa / 2u32);
    if neg {
        lambda = -lambda;
    }
    let mu = Float::with_val(bits, s - 0.5);
    let extra = Float::with_val(bits, -Float::with_val(bits, kappa / 2u32));
    let mut out = whit_jet(kind, &lambda, &mu, &extra, &x, order, ctx)?;
    if neg {
        for v in out.iter_mut().skip(1).step_by(2) {
            *v = -v.clone();
        }
    }
    Ok(out)
}

/// |t|^{-kappa/2} M_{sgn(t) kappa/2, s - 1/2}(|t|).
pub fn whittaker_m_renorm(s: &Float, kappa: &Float, t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    Ok(renorm_jet(Kind::M, s, kappa, t, 0, ctx)?.remove(0))
}

/// |t|^{-kappa/2} W_{sgn(t) kappa/2, s - 1/2}(|t|).
pub fn whittaker_w_renorm(s: &Float, kappa: &Float, t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    Ok(renorm_jet(Kind::W, s, kappa, t, 0, ctx)?.remove(0))
}

/// Derivatives in t of the renormalised M function.
pub fn whittaker_m_renorm_jet(s: &Float, kappa: &Float, t: &Float, order: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    renorm_jet(Kind::M, s, kappa, t, order, ctx)
}

/// Derivatives in t of the renormalised W function.
pub fn whittaker_w_renorm_jet(s: &Float, kappa: &Float, t: &Float, order: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    renorm_jet(Kind::W, s, kappa, t, order, ctx)
}
