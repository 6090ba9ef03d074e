use super::algebra::AlgebraElement;
use super::j2;
use crate::error::{Error, Result};
use crate::exact::{Mat, Scalar};
use crate::numeric::{Cplx, PrecisionContext};
use rug::Float;

/// Element (M, X, kappa) of the extended Jacobi group.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<T> {
    pub m: Mat<T>,
    pub x: Mat<T>,
    pub kappa: Mat<T>,
}

impl<T: Scalar> GroupElement<T> {
    /// Validating constructor: det M = 1 and kappa + X J2 X^T / 2 symmetric.
    pub fn new(m: Mat<T>, x: Mat<T>, kappa: Mat<T>) -> Result<Self> {
        let g = GroupElement { m, x, kappa };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.x.rows;
        if (self.m.rows, self.m.cols) != (2, 2) || self.x.cols != 2 || (self.kappa.rows, self.kappa.cols) != (n, n) {
            return Err(Error::Malformed("shape mismatch".into()));
        }
        let one = self.m.get(0, 0).one_like();
        if !self.m.det().sub(&one).is_negligible() {
            return Err(Error::Malformed("det(M) != 1".into()));
        }
        if n > 0 {
            let half = one.from_gauss_like(&crate::exact::GaussRat::frac(1, 2));
            let s = self.kappa.add(&self.x.mul(&j2(&one)).mul(&self.x.transpose()).scale(&half));
            let asym = s.sub(&s.transpose());
            if !asym.data.iter().all(|v| v.is_negligible()) {
                return Err(Error::Malformed("kappa + X J2 X^T / 2 is not symmetric".into()));
            }
        }
        Ok(())
    }

    pub fn identity(n: usize, like: &T) -> Self {
        GroupElement { m: Mat::identity(2, like), x: Mat::zeros(n, 2, like), kappa: Mat::zeros(n, n, like) }
    }

    /// Rank N.
    pub fn n(&self) -> usize {
        self.x.rows
    }

    pub fn like(&self) -> T {
        self.m.get(0, 0).zero_like()
    }

    /// Central element (I, 0, kappa).
    pub fn central(kappa: Mat<T>) -> Result<Self> {
        let like = kappa.data.first().ok_or_else(|| Error::Malformed("empty kappa".into()))?.zero_like();
        let n = kappa.rows;
        Self::new(Mat::identity(2, &like), Mat::zeros(n, 2, &like), kappa)
    }

    /// Heisenberg element (I, (lambda, mu), kappa).
    pub fn heisenberg(x: Mat<T>, kappa: Mat<T>) -> Result<Self> {
        let like = x.get(0, 0).zero_like();
        Self::new(Mat::identity(2, &like), x, kappa)
    }

    /// Modular element (M, 0, 0).
    pub fn modular(m: Mat<T>, n: usize) -> Result<Self> {
        let like = m.get(0, 0).zero_like();
        Self::new(m, Mat::zeros(n, 2, &like), Mat::zeros(n, n, &like))
    }

    pub fn is_identity(&self) -> bool {
        let one = self.like().one_like();
        let id = Mat::identity(2, &one);
        self.m.sub(&id).data.iter().all(|v| v.is_negligible())
            && self.x.data.iter().all(|v| v.is_negligible())
            && self.kappa.data.iter().all(|v| v.is_negligible())
    }
}

fn check_pair<T: Scalar>(g: &GroupElement<T>, h: &GroupElement<T>) -> Result<()> {
    g.validate()?;
    h.validate()?;
    if g.n() != h.n() {
        return Err(Error::Malformed(format!("rank mismatch {} vs {}", g.n(), h.n())));
    }
    Ok(())
}

/// (M, X, k)(M', X', k') = (M M', X M' + X', k + k' - X M' J2 X'^T).
pub fn jacobi_mul<T: Scalar>(g: &GroupElement<T>, h: &GroupElement<T>) -> Result<GroupElement<T>> {
    check_pair(g, h)?;
    Ok(mul_unchecked(g, h))
}

pub(crate) fn mul_unchecked<T: Scalar>(g: &GroupElement<T>, h: &GroupElement<T>) -> GroupElement<T> {
    let j = j2(&g.like());
    let xm = g.x.mul(&h.m);
    let cross = xm.mul(&j).mul(&h.x.transpose());
    GroupElement { m: g.m.mul(&h.m), x: xm.add(&h.x), kappa: g.kappa.add(&h.kappa).sub(&cross) }
}

/// Inverse: (M^-1, -X M^-1, -kappa - X M^-1 J2 M^-T X^T).
pub fn jacobi_inv<T: Scalar>(g: &GroupElement<T>) -> Result<GroupElement<T>> {
    g.validate()?;
    let mi = g.m.inverse().ok_or_else(|| Error::Malformed("singular M".into()))?;
    let j = j2(&g.like());
    let xmi = g.x.mul(&mi);
    let kappa = g.kappa.neg().sub(&xmi.mul(&j).mul(&xmi.transpose()));
    Ok(GroupElement { m: mi, x: xmi.neg(), kappa })
}

/// Sums S_m(d) = sum_j d^j / (2j+m)! for m = 0..3, so that for traceless
/// 2x2 M with M^2 = d I: e^M = S0 + S1 M, g(M) = S1 + S2 M, h(M) = S2 + S3 M.
fn s_series(d: &Cplx, ctx: &PrecisionContext) -> Result<[Cplx; 4]> {
    let eps = ctx.eps();
    let dmag = d.abs();
    let mut out: [Cplx; 4] = std::array::from_fn(|_| Cplx::zero(ctx));
    for (m, slot) in out.iter_mut().enumerate() {
        let mut fact = Float::with_val(ctx.bits, 1);
        for i in 2..=m as u32 {
            fact *= i;
        }
        let mut term = Cplx::from_real(Float::with_val(ctx.bits, 1 / &fact));
        let mut acc = Cplx::zero(ctx);
        let mut j = 0usize;
        loop {
            acc = &acc + &term;
            let a = (2 * j + m + 1) as u32;
            let b = (2 * j + m + 2) as u32;
            term = (&term * d).scale(&Float::with_val(ctx.bits, 1 / Float::with_val(ctx.bits, a * b)));
            j += 1;
            // ratio |d| / ((2j+m+1)(2j+m+2)) < 1/2 makes the tail at most twice the next term
            let ratio_ok = Float::with_val(ctx.bits, &dmag * 2u32) < Float::with_val(ctx.bits, a as f64 * b as f64);
            if ratio_ok && term.abs() < eps {
                break;
            }
            if j > ctx.max_terms {
                return Err(Error::Precision("matrix exponential series did not converge".into()));
            }
        }
        *slot = acc;
    }
    Ok(out)
}

/// exp(M, X, kappa) = (e^M, X g(M), kappa - X h(M) J2 X^T) with
/// g(z) = (e^z - 1)/z and h(z) = (e^z - 1 - z)/z^2.
pub fn jacobi_exp(y: &AlgebraElement<Cplx>, ctx: &PrecisionContext) -> Result<GroupElement<Cplx>> {
    y.validate()?;
    let wctx = ctx.with_extra(32);
    let m = y.m.map(|v| v.with_prec(wctx.bits));
    let one = Cplx::one(&wctx);
    let id = Mat::identity(2, &one);
    let norm = m.max_abs() * 2.0;
    let mut s = 0u32;
    while norm / 2f64.powi(s as i32) > 8.0 {
        s += 1;
    }
    let scale = Cplx::from_real(Float::with_val(wctx.bits, Float::i_exp(1, -(s as i32))));
    let ms = m.scale(&scale);
    // M^2 = -det(M) I for traceless M
    let d = ms.det().neg();
    let [s0, s1, s2, s3] = s_series(&d, &wctx)?;
    let mut e = id.scale(&s0).add(&ms.scale(&s1));
    let mut g = id.scale(&s1).add(&ms.scale(&s2));
    let mut h = id.scale(&s2).add(&ms.scale(&s3));
    let half = Cplx::from_f64(&wctx, 0.5, 0.0);
    let quarter = Cplx::from_f64(&wctx, 0.25, 0.0);
    for _ in 0..s {
        // g(2z) = (e^z + 1) g(z) / 2, h(2z) = (g(z)^2 + 2 h(z)) / 4
        let g2 = e.add(&id).mul(&g).scale(&half);
        let h2 = g.mul(&g).add(&h.scale(&Cplx::from_f64(&wctx, 2.0, 0.0))).scale(&quarter);
        e = e.mul(&e);
        g = g2;
        h = h2;
    }
    let xw = y.x.map(|v| v.with_prec(wctx.bits));
    let kw = y.kappa.map(|v| v.with_prec(wctx.bits));
    let xg = xw.mul(&g);
    let kappa = kw.sub(&xw.mul(&h).mul(&j2(&one)).mul(&xw.transpose()));
    let back = |a: Mat<Cplx>| a.map(|v| v.with_prec(ctx.bits));
    Ok(GroupElement { m: back(e), x: back(xg), kappa: back(kappa) })
}
