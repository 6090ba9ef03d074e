//! Upper incomplete gamma function for real a and x > 0.

use crate::error::{Error, Result};
use crate::numeric::PrecisionContext;
use rug::Float;

fn eps(bits: u32) -> Float {
    Float::with_val(bits, Float::i_exp(1, -(bits as i32) - 4))
}

/// e^{-x} x^a, the inhomogeneous term of the a-recurrence.
fn weight(a: &Float, x: &Float, bits: u32) -> Float {
    let lx = Float::with_val(bits, x.ln_ref());
    Float::with_val(bits, Float::with_val(bits, a * &lx) - x).exp()
}

/// Modified Lentz evaluation of the continued fraction, valid for x > a + 1.
fn gamma_cf(a: &Float, x: &Float, bits: u32, max_terms: usize) -> Result<Float> {
    let tiny = Float::with_val(bits, Float::i_exp(1, -(bits as i32) * 2));
    let one = Float::with_val(bits, 1);
    let mut b = Float::with_val(bits, x + 1u32) - a;
    let mut c = Float::with_val(bits, &one / &tiny);
    let mut d = Float::with_val(bits, &one / &b);
    let mut h = d.clone();
    let e = eps(bits);
    for i in 1..max_terms {
        let fi = i as f64;
        let an = -(Float::with_val(bits, fi - a) * fi);
        b += 2u32;
        d = Float::with_val(bits, &an * &d) + &b;
        if d.is_zero() {
            d = tiny.clone();
        }
        c = Float::with_val(bits, &an / &c) + &b;
        if c.is_zero() {
            c = tiny.clone();
        }
        d = Float::with_val(bits, &one / &d);
        let del = Float::with_val(bits, &d * &c);
        h *= &del;
        if Float::with_val(bits, &del - 1u32).abs() < e {
            return Ok(h * weight(a, x, bits));
        }
    }
    Err(Error::Precision("incomplete gamma continued fraction did not converge".into()))
}

/// Lower incomplete gamma by its power series, a > 0.
fn lower_series(a: &Float, x: &Float, bits: u32, max_terms: usize) -> Result<Float> {
    let mut term = Float::with_val(bits, a.recip_ref());
    let mut sum = term.clone();
    let e = eps(bits);
    for n in 1..max_terms {
        term *= x;
        term /= Float::with_val(bits, a + n as u32);
        sum += &term;
        if n as f64 > x.to_f64() && Float::with_val(bits, term.abs_ref()) < Float::with_val(bits, &e * &sum) {
            return Ok(sum * weight(a, x, bits));
        }
    }
    Err(Error::Precision("incomplete gamma series did not converge".into()))
}

/// E_1(x) = -gamma - ln x - sum_{n>=1} (-x)^n / (n n!).
fn e1_series(x: &Float, bits: u32, max_terms: usize) -> Result<Float> {
    let mut term = Float::with_val(bits, 1);
    let mut sum = Float::with_val(bits, 0);
    let e = eps(bits);
    for n in 1..max_terms {
        term *= x;
        term /= n as u32;
        term = -term;
        let t = Float::with_val(bits, &term / n as u32);
        sum += &t;
        if n as f64 > x.to_f64() && t.abs() < e {
            let g = Float::with_val(bits, rug::float::Constant::Euler);
            return Ok(-(g + Float::with_val(bits, x.ln_ref()) + sum));
        }
    }
    Err(Error::Precision("E1 series did not converge".into()))
}

fn gamma_bits(a: &Float, x: &Float, bits: u32, max_terms: usize) -> Result<Float> {
    let af = a.to_f64();
    let xf = x.to_f64();
    if xf > af + 1.0 && xf >= 1.5 {
        return gamma_cf(a, x, bits, max_terms);
    }
    if *a > 0 {
        let g = Float::with_val(bits, a.gamma_ref());
        return Ok(g - lower_series(a, x, bits, max_terms)?);
    }
    // a <= 0 and x small: step down from a0 in (0, 1], or from 0 for integer a
    let (mut cur, mut g) = if a.is_integer() {
        (Float::with_val(bits, 0), e1_series(x, bits, max_terms)?)
    } else {
        let m = (-af).floor() + 1.0;
        let a0 = Float::with_val(bits, a + m);
        let g = Float::with_val(bits, a0.gamma_ref()) - lower_series(&a0, x, bits, max_terms)?;
        (a0, g)
    };
    while cur > *a {
        // Gamma(c-1, x) = (Gamma(c, x) - x^{c-1} e^{-x}) / (c-1)
        cur -= 1u32;
        g = (g - weight(&cur, x, bits)) / &cur;
    }
    Ok(g)
}

/// Gamma(a, x) = int_x^inf e^{-t} t^{a-1} dt for real a and x > 0.
pub fn upper_incomplete_gamma(a: &Float, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *x <= 0 {
        return Err(Error::Domain("upper incomplete gamma needs x > 0".into()));
    }
    let steps = (-a.to_f64()).max(0.0) as u32;
    let bits = ctx.bits + 40 + 2 * steps;
    Ok(Float::with_val(ctx.bits, gamma_bits(a, x, bits, ctx.max_terms)?))
}
