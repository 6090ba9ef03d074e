//! Confluent hypergeometric functions M(a, b, x) and U(a, b, x) for real
//! parameters and real argument.

use crate::error::{Error, Result};
use crate::numeric::quad::exp_sinh_log;
use crate::numeric::PrecisionContext;
use rug::Float;

pub(crate) fn is_nonpos_int(x: &Float) -> bool {
    x.is_integer() && *x <= 0
}

/// Series sum of 1F1 at the given precision; returns (sum, largest |term|).
fn m_series(a: &Float, b: &Float, x: &Float, bits: u32, max_terms: usize) -> Result<(Float, Float)> {
    let mut term = Float::with_val(bits, 1);
    let mut sum = Float::with_val(bits, 1);
    let mut big = Float::with_val(bits, 1);
    let eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32) - 8));
    let settle = 2.0 * (a.to_f64().abs() + b.to_f64().abs() + x.to_f64().abs()) + 4.0;
    for n in 0..max_terms {
        let nf = n as f64;
        let num = Float::with_val(bits, a + nf) * x;
        let den = Float::with_val(bits, b + nf) * (nf + 1.0);
        term *= num;
        term /= den;
        sum += &term;
        let ta = Float::with_val(bits, term.abs_ref());
        if ta > big {
            big = ta.clone();
        }
        if term.is_zero() {
            return Ok((sum, big));
        }
        if nf > settle {
            // remaining ratios are below r and decreasing
            let r = Float::with_val(bits, a + (nf + 1.0)).abs() * Float::with_val(bits, x.abs_ref())
                / (Float::with_val(bits, b + (nf + 1.0)).abs() * (nf + 2.0));
            if r < 0.5 {
                let tail = Float::with_val(bits, &ta * &r) / (1 - r);
                if tail <= Float::with_val(bits, &eps * Float::with_val(bits, sum.abs_ref())) {
                    return Ok((sum, big));
                }
            }
        }
    }
    Err(Error::Precision(format!("1F1 series did not converge in {max_terms} terms")))
}

/// Kummer's function M(a, b, x) = 1F1(a; b; x).
pub fn kummer_m(a: &Float, b: &Float, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if is_nonpos_int(b) {
        return Err(Error::Pole(format!("1F1 with b = {} a nonpositive integer", b.to_f64())));
    }
    let mut bits = ctx.bits + 32;
    for _ in 0..4 {
        let (s, big) = m_series(a, b, x, bits, ctx.max_terms)?;
        if s.is_zero() {
            return Ok(Float::with_val(ctx.bits, s));
        }
        let loss = (Float::with_val(64, &big / Float::with_val(bits, s.abs_ref()))).log2().to_f64().max(0.0);
        if loss < (bits - ctx.bits) as f64 - 16.0 {
            return Ok(Float::with_val(ctx.bits, s));
        }
        bits = ctx.bits + 32 + loss.ceil() as u32 + 16;
    }
    Err(Error::Precision("cancellation in 1F1 series".into()))
}

/// U(a, b, x) for a >= 1 via U = x^-a / Gamma(a) int_0^inf e^-s s^(a-1) (1 + s/x)^(b-a-1) ds.
fn u_integral(a: &Float, b: &Float, x: &Float, bits: u32) -> Result<Float> {
    let wctx = PrecisionContext::new(bits);
    let c = Float::with_val(bits, b - a) - 1u32;
    let am1 = Float::with_val(bits, a - 1u32);
    let lf = |s: &Float| -> Float {
        let mut v = Float::with_val(bits, -s);
        v += Float::with_val(bits, s.ln_ref()) * &am1;
        let q = Float::with_val(bits, s / x);
        v += Float::with_val(bits, q.ln_1p_ref()) * &c;
        v
    };
    let i = exp_sinh_log(&lf, &wctx)?;
    let g = Float::with_val(bits, a.gamma_ref());
    let xa = Float::with_val(bits, rug::ops::Pow::pow(x, &Float::with_val(bits, -a)));
    Ok(i * xa / g)
}

/// U(-m, b, x) as the finite sum (-1)^m sum_s C(m,s) (b+s)_{m-s} (-x)^s.
fn u_polynomial(m: u32, b: &Float, x: &Float, bits: u32) -> Float {
    let mut acc = Float::with_val(bits, 0);
    for s in 0..=m {
        let mut t = Float::with_val(bits, 1);
        // binomial
        for j in 0..s {
            t *= m - j;
            t /= j + 1;
        }
        for j in s..m {
            t *= Float::with_val(bits, b + j);
        }
        let xs = Float::with_val(bits, rug::ops::Pow::pow(Float::with_val(bits, -x), s));
        acc += t * xs;
    }
    if m % 2 == 1 {
        -acc
    } else {
        acc
    }
}

fn kummer_u_bits(a: &Float, b: &Float, x: &Float, bits: u32, depth: u32) -> Result<Float> {
    if is_nonpos_int(a) {
        let m = (-a.to_f64()).round() as u32;
        return Ok(u_polynomial(m, b, x, bits));
    }
    if *a >= 1 {
        return u_integral(a, b, x, bits);
    }
    let a2 = Float::with_val(bits, a - b) + 1u32;
    if depth == 0 && *a <= 0 && (a2 >= 1 || is_nonpos_int(&a2)) {
        // Kummer transformation U(a,b,x) = x^(1-b) U(1+a-b, 2-b, x)
        let b2 = Float::with_val(bits, 2u32 - b);
        let u = kummer_u_bits(&a2, &b2, x, bits, depth + 1)?;
        let e = Float::with_val(bits, 1u32 - b);
        return Ok(u * Float::with_val(bits, rug::ops::Pow::pow(x, &e)));
    }
    // downward recurrence from a0 in [1, 2), where the integral converges
    // quickly at s = 0: U(c-1) = (2c - b + x) U(c) - c (c - b + 1) U(c+1)
    let m = (1.0 - a.to_f64()).floor() as i64 + 1;
    let a0 = Float::with_val(bits, a + m);
    let mut u1 = u_integral(&Float::with_val(bits, &a0 + 1u32), b, x, bits)?;
    let mut u0 = u_integral(&a0, b, x, bits)?;
    let mut c = a0;
    for _ in 0..m {
        let f1 = Float::with_val(bits, &c * 2u32) - b + x;
        let f2 = Float::with_val(bits, &c * (Float::with_val(bits, &c - b) + 1u32));
        let next = Float::with_val(bits, &f1 * &u0) - Float::with_val(bits, &f2 * &u1);
        u1 = u0;
        u0 = next;
        c -= 1u32;
    }
    Ok(u0)
}

/// Tricomi's function U(a, b, x) for x > 0.
pub fn kummer_u(a: &Float, b: &Float, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *x <= 0 {
        return Err(Error::Domain("U(a, b, x) needs x > 0".into()));
    }
    let steps = (-a.to_f64()).max(0.0) as u32;
    let bits = ctx.bits + 48 + 2 * steps;
    let u = kummer_u_bits(a, b, x, bits, 0)?;
    Ok(Float::with_val(ctx.bits, u))
}
