//! Complex numbers over MPFR floats, with an explicit precision context.

use crate::exact::gauss::GaussRat;
use num_bigint::BigInt;
use num_rational::BigRational;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Working precision and series cut-off, passed explicitly to every
/// numeric routine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    pub bits: u32,
    pub max_terms: usize,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { bits: 128, max_terms: 20_000 }
    }
}

impl PrecisionContext {
    pub fn new(bits: u32) -> Self {
        assert!(bits >= 53, "precision must be at least 53 bits");
        PrecisionContext { bits, ..Default::default() }
    }
    pub fn with_extra(&self, extra: u32) -> Self {
        PrecisionContext { bits: self.bits + extra, max_terms: self.max_terms }
    }
    /// 2^-bits, the unit roundoff scale used for series cut-offs.
    pub fn eps(&self) -> Float {
        Float::with_val(self.bits, Float::i_exp(1, -(self.bits as i32)))
    }
    pub fn float(&self, x: f64) -> Float {
        Float::with_val(self.bits, x)
    }
    pub fn zero(&self) -> Float {
        Float::with_val(self.bits, 0)
    }
    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi)
    }
    pub fn rat(&self, q: &BigRational) -> Float {
        let n = bigint_to_rug(q.numer());
        let d = bigint_to_rug(q.denom());
        Float::with_val(self.bits, rug::Rational::from((n, d)))
    }
}

pub fn bigint_to_rug(b: &BigInt) -> rug::Integer {
    rug::Integer::from_str_radix(&b.to_str_radix(16), 16).expect("valid integer")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cplx {
    pub re: Float,
    pub im: Float,
}

impl Cplx {
    pub fn new(re: Float, im: Float) -> Self {
        Cplx { re, im }
    }
    pub fn zero(ctx: &PrecisionContext) -> Self {
        Cplx { re: ctx.zero(), im: ctx.zero() }
    }
    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::from_f64(ctx, 1.0, 0.0)
    }
    pub fn i(ctx: &PrecisionContext) -> Self {
        Self::from_f64(ctx, 0.0, 1.0)
    }
    pub fn from_f64(ctx: &PrecisionContext, re: f64, im: f64) -> Self {
        Cplx { re: ctx.float(re), im: ctx.float(im) }
    }
    pub fn from_real(re: Float) -> Self {
        let im = Float::with_val(re.prec(), 0);
        Cplx { re, im }
    }
    pub fn from_gauss(ctx: &PrecisionContext, g: &GaussRat) -> Self {
        Cplx { re: ctx.rat(&g.re), im: ctx.rat(&g.im) }
    }
    pub fn from_rat(ctx: &PrecisionContext, q: &BigRational) -> Self {
        Cplx { re: ctx.rat(q), im: ctx.zero() }
    }
    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }
    pub fn ctx(&self) -> PrecisionContext {
        PrecisionContext::new(self.prec())
    }
    pub fn with_prec(&self, bits: u32) -> Self {
        Cplx { re: Float::with_val(bits, &self.re), im: Float::with_val(bits, &self.im) }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        Cplx { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }
    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }
    pub fn norm_sq(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }
    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }
    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        Cplx { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }
    pub fn scale_f64(&self, s: f64) -> Self {
        let p = self.prec();
        Cplx { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }
    pub fn mul_i(&self) -> Self {
        Cplx { re: Float::with_val(self.prec(), -&self.im), im: self.re.clone() }
    }
    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        let p = self.prec();
        Cplx {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, -(Float::with_val(p, &self.im / &n))),
        }
    }
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Cplx { re: Float::with_val(p, &m * &c), im: Float::with_val(p, &m * &s) }
    }
    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        Cplx { re: Float::with_val(p, self.abs().ln_ref()), im: self.arg() }
    }
    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let h = self.ln().scale_f64(0.5);
        h.exp()
    }
    /// Principal power `z^a` for real `a`; positive reals give real results.
    pub fn pow_real(&self, a: &Float) -> Self {
        if self.im.is_zero() && self.re.is_sign_positive() && !self.re.is_zero() {
            let p = self.prec();
            return Cplx::from_real(Float::with_val(p, (&self.re).pow(a)));
        }
        if self.is_zero() {
            return self.clone();
        }
        self.ln().scale(a).exp()
    }
    pub fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inv() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Cplx::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
    /// `e(x) = exp(2 pi i x)`.
    pub fn e(&self) -> Self {
        let pi = self.ctx().pi();
        self.mul_i().scale(&pi).scale_f64(2.0).exp()
    }
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
    /// Decimal rendering with enough digits to round-trip at this precision.
    pub fn to_decimal_pair(&self) -> (String, String) {
        let digits = (self.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
        (float_to_string(&self.re, digits), float_to_string(&self.im, digits))
    }
}

pub fn float_to_string(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits))
}

/// Relative or absolute difference, whichever is smaller, as f64.
pub fn rel_diff(a: &Cplx, b: &Cplx) -> f64 {
    let d = (a - b).abs().to_f64();
    let m = a.abs().to_f64().max(b.abs().to_f64());
    if m > 1.0 {
        d / m
    } else {
        d
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64_pair();
        write!(f, "{a:e}{:+e}i", b)
    }
}

impl Add<&Cplx> for &Cplx {
    type Output = Cplx;
    fn add(self, o: &Cplx) -> Cplx {
        let p = self.prec().max(o.prec());
        Cplx { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}
impl Sub<&Cplx> for &Cplx {
    type Output = Cplx;
    fn sub(self, o: &Cplx) -> Cplx {
        let p = self.prec().max(o.prec());
        Cplx { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}
impl Mul<&Cplx> for &Cplx {
    type Output = Cplx;
    fn mul(self, o: &Cplx) -> Cplx {
        let p = self.prec().max(o.prec());
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        Cplx { re: ac - bd, im: ad + bc }
    }
}
impl Div<&Cplx> for &Cplx {
    type Output = Cplx;
    fn div(self, o: &Cplx) -> Cplx {
        self * &o.inv()
    }
}
impl Neg for &Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        let p = self.prec();
        Cplx { re: Float::with_val(p, -&self.re), im: Float::with_val(p, -&self.im) }
    }
}
impl Neg for Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cplx> for Cplx {
            type Output = Cplx;
            fn $m(self, o: Cplx) -> Cplx {
                (&self).$m(&o)
            }
        }
        impl $tr<&Cplx> for Cplx {
            type Output = Cplx;
            fn $m(self, o: &Cplx) -> Cplx {
                (&self).$m(o)
            }
        }
        impl $tr<Cplx> for &Cplx {
            type Output = Cplx;
            fn $m(self, o: Cplx) -> Cplx {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
