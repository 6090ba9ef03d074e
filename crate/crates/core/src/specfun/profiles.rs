//! The H and E profile functions of the non-holomorphic Fourier terms.

use super::gamma::upper_incomplete_gamma;
use crate::error::{Error, Result};
use crate::numeric::PrecisionContext;
use num_rational::BigRational;
use rug::Float;

/// H(y) = e^{-y} int_{-2y}^inf e^{-t} t^{-k-N/2} dt.
pub fn h_profile(k: &BigRational, n: i64, y: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let a = k + BigRational::new(n.into(), 2.into());
    h_profile_exp(&PrecisionContext::new(ctx.bits + 16).rat(&a), y, ctx)
}

/// Derivatives in y of [`h_profile`] of orders 0..=order.
pub fn h_profile_jet(k: &BigRational, n: i64, y: &Float, order: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    let a = k + BigRational::new(n.into(), 2.into());
    h_profile_exp_jet(&PrecisionContext::new(ctx.bits + 16).rat(&a), y, order, ctx)
}

/// Nonnegative integer p with a = -p, if any.
fn poly_degree(a: &Float) -> Option<u64> {
    if a.is_integer() && *a <= 0 {
        Float::with_val(a.prec(), -a).to_integer().and_then(|i| i.to_u64())
    } else {
        None
    }
}

/// e^{-y} int_{-2y}^inf e^{-t} t^{-a} dt. Defined for y < 0, for y = 0 when
/// a < 1, and for all y when a is a nonpositive integer (polynomial
/// integrand). Other y >= 0 are a domain error.
pub fn h_profile_exp(a: &Float, y: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits + 24;
    let wctx = PrecisionContext { bits, max_terms: ctx.max_terms };
    let ey = Float::with_val(bits, -y).exp();
    if let Some(p) = poly_degree(a) {
        // int_x^inf e^{-t} t^p dt = p! e^{-x} sum_{j<=p} x^j / j!
        let x = Float::with_val(bits, y * -2i32);
        let mut term = Float::with_val(bits, 1);
        let mut sum = Float::with_val(bits, 1);
        for j in 1..=p {
            term *= &x;
            term /= j;
            sum += &term;
        }
        let mut fact = Float::with_val(bits, 1);
        for j in 2..=p {
            fact *= j;
        }
        let e2y = Float::with_val(bits, y * 2u32).exp();
        return Ok(Float::with_val(ctx.bits, sum * fact * e2y * ey));
    }
    let s = Float::with_val(bits, 1u32 - a);
    if y.is_zero() {
        if s > 0 {
            return Ok(Float::with_val(ctx.bits, s.gamma()));
        }
        return Err(Error::Domain(format!("H profile integral diverges at t = 0 for exponent {}", a.to_f64())));
    }
    if *y > 0 {
        return Err(Error::Domain(format!(
            "H profile with y > 0 needs a nonpositive integer exponent, got {}",
            a.to_f64()
        )));
    }
    let x = Float::with_val(bits, y * -2i32);
    let g = upper_incomplete_gamma(&s, &x, &wctx)?;
    Ok(Float::with_val(ctx.bits, g * ey))
}

/// Derivatives in y of [`h_profile_exp`], from H' = -H + 2 e^y (-2y)^{-a}.
pub fn h_profile_exp_jet(a: &Float, y: &Float, order: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    let bits = ctx.bits + 24;
    let wctx = PrecisionContext { bits, max_terms: ctx.max_terms };
    let h0 = h_profile_exp(a, y, &wctx)?;
    if order == 0 {
        return Ok(vec![Float::with_val(ctx.bits, h0)]);
    }
    let p = poly_degree(a);
    if p.is_none() && y.is_zero() {
        return Err(Error::Domain("H profile derivatives at y = 0".into()));
    }
    // q_i = d^i/dy^i (-2y)^{-a} = (-a)_falling_i (-2)^i (-2y)^{-a-i}
    let base = Float::with_val(bits, y * -2i32);
    let mut q = Vec::with_capacity(order);
    let mut fall = Float::with_val(bits, 1);
    for i in 0..order {
        let e = Float::with_val(bits, -Float::with_val(bits, a + i as u32));
        let pw = match p {
            Some(_) => {
                if fall.is_zero() {
                    Float::with_val(bits, 0)
                } else {
                    let ei = e.to_f64().round() as i32;
                    Float::with_val(bits, rug::ops::Pow::pow(&base, ei))
                }
            }
            None => Float::with_val(bits, rug::ops::Pow::pow(&base, &e)),
        };
        let m2 = Float::with_val(bits, rug::ops::Pow::pow(Float::with_val(bits, -2), i as u32));
        q.push(Float::with_val(bits, &fall * &pw) * m2);
        fall *= Float::with_val(bits, -Float::with_val(bits, a + i as u32));
    }
    // g^{(j)} with g = 2 e^y (-2y)^{-a}
    let two_ey = Float::with_val(bits, y.exp_ref()) * 2u32;
    let mut out = vec![h0];
    for j in 0..order {
        let mut gj = Float::with_val(bits, 0);
        let mut binom = Float::with_val(bits, 1);
        for i in 0..=j {
            gj += Float::with_val(bits, &binom * &q[i]);
            binom *= (j - i) as u32;
            binom /= (i + 1) as u32;
        }
        gj *= &two_ey;
        let next = gj - &out[j];
        out.push(next);
    }
    Ok(out.into_iter().map(|v| Float::with_val(ctx.bits, v)).collect())
}

/// E(z) = 2 int_0^z e^{-pi u^2} du = erf(sqrt(pi) z).
pub fn e_profile(z: &Float, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits + 16;
    let sp = Float::with_val(bits, rug::float::Constant::Pi).sqrt();
    Float::with_val(ctx.bits, Float::with_val(bits, sp * z).erf())
}

/// Derivatives of E at z of orders 0..=order. E' = 2 e^{-pi z^2}; higher
/// derivatives are 2 e^{-pi z^2} P_n(z) with P_{n+1} = P_n' - 2 pi z P_n.
pub fn e_profile_jet(z: &Float, order: usize, ctx: &PrecisionContext) -> Vec<Float> {
    let bits = ctx.bits + 16;
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let g = Float::with_val(bits, -Float::with_val(bits, &pi * Float::with_val(bits, z.square_ref()))).exp() * 2u32;
    let mut out = vec![e_profile(z, ctx)];
    let mut poly = vec![Float::with_val(bits, 1)];
    for _ in 1..=order {
        let mut v = Float::with_val(bits, 0);
        for c in poly.iter().rev() {
            v *= z;
            v += c;
        }
        out.push(Float::with_val(ctx.bits, &v * &g));
        let mut next = vec![Float::with_val(bits, 0); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            if i > 0 {
                next[i - 1] += Float::with_val(bits, c * i as u32);
            }
            next[i + 1] -= Float::with_val(bits, c * &pi) * 2u32;
        }
        poly = next;
    }
    out
}
