//! Bessel functions J_nu and I_nu of real order and positive argument.

use crate::error::{Error, Result};
use crate::numeric::PrecisionContext;
use rug::Float;

const MAX_ARG: f64 = 1.0e4;

/// sum_k (sign x^2/4)^k / (k! Gamma(nu + k + 1)) times (x/2)^nu.
fn ascending(nu: &Float, x: &Float, sign: i32, bits: u32, max_terms: usize) -> Result<(Float, Float)> {
    let half = Float::with_val(bits, x / 2u32);
    let q = Float::with_val(bits, &half * &half) * sign;
    let g = Float::with_val(bits, nu + 1u32).gamma();
    let mut term = Float::with_val(bits, rug::ops::Pow::pow(&half, nu)) / g;
    let mut sum = term.clone();
    let mut big = Float::with_val(bits, term.abs_ref());
    let eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32) - 8));
    let xf = x.to_f64();
    for k in 1..max_terms {
        let kf = k as f64;
        term *= &q;
        term /= Float::with_val(bits, nu + kf) * kf;
        sum += &term;
        let ta = Float::with_val(bits, term.abs_ref());
        if ta > big {
            big = ta.clone();
        }
        // ratio |q|/(k (nu+k)) < 1/2 from here on
        if kf > xf + nu.to_f64().abs() + 2.0 && kf * (kf + nu.to_f64()) > xf * xf / 2.0 {
            if ta <= Float::with_val(bits, &eps * Float::with_val(bits, sum.abs_ref())) {
                return Ok((sum, big));
            }
        }
    }
    Err(Error::Precision("Bessel series did not converge".into()))
}

fn bessel(nu: &Float, x: &Float, sign: i32, ctx: &PrecisionContext) -> Result<Float> {
    if *x <= 0 {
        return Err(Error::Domain("Bessel argument must be positive".into()));
    }
    if x.to_f64() > MAX_ARG {
        return Err(Error::Range(format!("Bessel argument {} beyond series range", x.to_f64())));
    }
    if nu.is_integer() && *nu < 0 {
        // J_{-n} = (-1)^n J_n, I_{-n} = I_n
        let n = Float::with_val(ctx.bits, -nu);
        let v = bessel(&n, x, sign, ctx)?;
        let odd = n.to_integer().map(|i| i.is_odd()).unwrap_or(false);
        return Ok(if sign < 0 && odd { -v } else { v });
    }
    let mut bits = ctx.bits + 32;
    if sign < 0 {
        bits += (x.to_f64() / std::f64::consts::LN_2) as u32;
    }
    for _ in 0..3 {
        let (s, big) = ascending(nu, x, sign, bits, ctx.max_terms)?;
        if s.is_zero() {
            return Ok(Float::with_val(ctx.bits, s));
        }
        let loss = Float::with_val(64, &big / Float::with_val(bits, s.abs_ref())).log2().to_f64().max(0.0);
        if loss < (bits - ctx.bits) as f64 - 16.0 {
            return Ok(Float::with_val(ctx.bits, s));
        }
        bits = ctx.bits + 48 + loss.ceil() as u32;
    }
    Err(Error::Precision("cancellation in Bessel series".into()))
}

/// J_nu(x) for x > 0.
pub fn bessel_j(nu: &Float, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    bessel(nu, x, -1, ctx)
}

/// I_nu(x) for x > 0.
pub fn bessel_i(nu: &Float, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    bessel(nu, x, 1, ctx)
}

fn bessel_jet(nu: &Float, x: &Float, sign: i32, order: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    // d^n Z_nu = 2^-n sum_k (+-1)^k C(n,k) Z_{nu-n+2k}
    let bits = ctx.bits + 16;
    let wctx = PrecisionContext { bits, max_terms: ctx.max_terms };
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = Float::with_val(bits, 0);
        let mut binom = Float::with_val(bits, 1);
        for k in 0..=n {
            let o = Float::with_val(bits, nu - n as u32) + (2 * k) as u32;
            let v = bessel(&o, x, sign, &wctx)?;
            let t = Float::with_val(bits, &binom * &v);
            if sign < 0 && k % 2 == 1 {
                acc -= t;
            } else {
                acc += t;
            }
            binom *= (n - k) as u32;
            binom /= (k + 1) as u32;
        }
        acc /= Float::with_val(bits, Float::i_exp(1, n as i32));
        out.push(Float::with_val(ctx.bits, acc));
    }
    Ok(out)
}

/// Derivatives of J_nu at x of orders 0..=order.
pub fn bessel_j_jet(nu: &Float, x: &Float, order: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    bessel_jet(nu, x, -1, order, ctx)
}

/// Derivatives of I_nu at x of orders 0..=order.
pub fn bessel_i_jet(nu: &Float, x: &Float, order: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    bessel_jet(nu, x, 1, order, ctx)
}
