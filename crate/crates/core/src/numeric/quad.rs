//! Double-exponential quadrature at arbitrary precision.

use super::cplx::PrecisionContext;
use crate::error::{Error, Result};
use rug::Float;

const MAX_LEVEL: u32 = 14;

fn sum_nodes(
    node: &dyn Fn(&Float) -> Result<Float>,
    h: &Float,
    offset: bool,
    bits: u32,
    umax: f64,
) -> Result<Float> {
    // nodes at u = k h (offset: odd k only)
    let mut acc = Float::with_val(bits, 0);
    let tiny = Float::with_val(bits, Float::i_exp(1, -(bits as i32) - 40));
    for dir in [1i64, -1] {
        let mut k: i64 = if offset { 1 } else if dir == 1 { 0 } else { 1 };
        let mut small = 0;
        loop {
            let u = Float::with_val(bits, h * (k * dir));
            if u.to_f64().abs() > umax {
                break;
            }
            let v = node(&u)?;
            let va = Float::with_val(bits, v.abs_ref());
            acc += &v;
            if va < Float::with_val(bits, &tiny * Float::with_val(bits, acc.abs_ref()).max(&Float::with_val(bits, 1e-300)))
                && u.to_f64().abs() > 1.0
            {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
            k += if offset { 2 } else { 1 };
        }
    }
    Ok(acc)
}

fn refine(node: &dyn Fn(&Float) -> Result<Float>, ctx: &PrecisionContext, umax: f64) -> Result<Float> {
    let bits = ctx.bits;
    let mut h = Float::with_val(bits, 0.5);
    let mut s = sum_nodes(node, &h, false, bits, umax)?;
    let mut est = Float::with_val(bits, &s * &h);
    let half_eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32) / 2 - 4));
    for _ in 0..MAX_LEVEL {
        h /= 2;
        s += sum_nodes(node, &h, true, bits, umax)?;
        let next = Float::with_val(bits, &s * &h);
        let diff = Float::with_val(bits, &next - &est).abs();
        let scale = Float::with_val(bits, next.abs_ref()).max(&Float::with_val(bits, Float::i_exp(1, -(bits as i32))));
        est = next;
        if diff <= Float::with_val(bits, &half_eps * &scale) {
            return Ok(est);
        }
    }
    Err(Error::Precision("quadrature did not converge".into()))
}

/// Integral of f over [0, inf) by the exp-sinh rule. `log_f(t)` returns
/// ln f(t); f must be positive, smooth on (0, inf) and decay at infinity.
pub fn exp_sinh_log(log_f: &dyn Fn(&Float) -> Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits;
    let half_pi = Float::with_val(bits, rug::float::Constant::Pi) / 2;
    let node = |u: &Float| -> Result<Float> {
        let sh = Float::with_val(bits, u.sinh_ref());
        let ch = Float::with_val(bits, u.cosh_ref());
        let lt = Float::with_val(bits, &half_pi * &sh);
        let t = Float::with_val(bits, lt.exp_ref());
        if t.is_zero() || t.is_infinite() {
            return Ok(Float::with_val(bits, 0));
        }
        let lw = Float::with_val(bits, &half_pi * &ch).ln() + &lt;
        let v = log_f(&t) + lw;
        Ok(v.exp())
    };
    refine(&node, ctx, 8.0)
}

/// Integral of f over [lo, hi] by the tanh-sinh rule.
pub fn tanh_sinh(f: &dyn Fn(&Float) -> Float, lo: &Float, hi: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits;
    let half_pi = Float::with_val(bits, rug::float::Constant::Pi) / 2;
    let rad = Float::with_val(bits, hi - lo) / 2;
    let node = |u: &Float| -> Result<Float> {
        let sh = Float::with_val(bits, u.sinh_ref());
        let ch = Float::with_val(bits, u.cosh_ref());
        let arg = Float::with_val(bits, &half_pi * &sh);
        let c = Float::with_val(bits, arg.cosh_ref());
        let w = Float::with_val(bits, &half_pi * &ch) / Float::with_val(bits, &c * &c);
        // distance to the nearer endpoint, computed without cancellation
        let a2: Float = Float::with_val(bits, arg.abs_ref()) * 2u32;
        let e = Float::with_val(bits, 1) / (a2.exp() + 1);
        let d = Float::with_val(bits, &rad * 2) * &e;
        let t = if u.is_sign_negative() { Float::with_val(bits, lo + &d) } else { Float::with_val(bits, hi - &d) };
        if w.is_zero() || t <= *lo || t >= *hi {
            return Ok(Float::with_val(bits, 0));
        }
        Ok(f(&t) * w * &rad)
    };
    refine(&node, ctx, 6.5)
}
