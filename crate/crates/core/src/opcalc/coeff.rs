//! Operator coefficients: Laurent polynomials over Q(i) in the symbols
//! k, pi, y, x, u_1..u_N, v_1..v_N.
//!
//! pi is formal, so 2 pi i L and its inverse stay exact. The Wirtinger
//! derivatives act by d_tau y = -i/2, d_taubar y = i/2, d_tau x = d_taubar x = 1/2
//! and likewise for (u_j, v_j) under d_{z_j}, d_{zbar_j}.

use crate::error::{Error, Result};
use crate::exact::{GaussRat, Mat, Poly};
use crate::numeric::{Cplx, PrecisionContext};
use num_rational::BigRational;

pub type CoeffPoly = Poly;

pub const K: usize = 0;
pub const PI: usize = 1;
pub const Y: usize = 2;
pub const X: usize = 3;

/// Variable layout of the coefficient ring for rank N.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ring {
    pub n: usize,
}

impl Ring {
    pub fn new(n: usize) -> Self {
        Ring { n }
    }
    pub fn nvars(&self) -> usize {
        4 + 2 * self.n
    }
    pub fn u(&self, j: usize) -> usize {
        4 + j
    }
    pub fn v(&self, j: usize) -> usize {
        4 + self.n + j
    }
    pub fn zero(&self) -> CoeffPoly {
        Poly::zero(self.nvars())
    }
    pub fn one(&self) -> CoeffPoly {
        Poly::one(self.nvars())
    }
    pub fn c(&self, c: GaussRat) -> CoeffPoly {
        Poly::constant(self.nvars(), c)
    }
    pub fn int(&self, c: i64) -> CoeffPoly {
        self.c(GaussRat::int(c))
    }
    pub fn var(&self, i: usize) -> CoeffPoly {
        Poly::var(self.nvars(), i)
    }
    pub fn pow(&self, i: usize, e: i32) -> CoeffPoly {
        Poly::monomial(self.nvars(), i, e, GaussRat::one())
    }
    pub fn k(&self) -> CoeffPoly {
        self.var(K)
    }
    /// tau = x + i y
    pub fn tau(&self) -> CoeffPoly {
        &self.var(X) + &self.var(Y).scale(&GaussRat::i())
    }
    pub fn taubar(&self) -> CoeffPoly {
        &self.var(X) - &self.var(Y).scale(&GaussRat::i())
    }
    /// z_j = u_j + i v_j
    pub fn z(&self, j: usize) -> CoeffPoly {
        &self.var(self.u(j)) + &self.var(self.v(j)).scale(&GaussRat::i())
    }
    pub fn zbar(&self, j: usize) -> CoeffPoly {
        &self.var(self.u(j)) - &self.var(self.v(j)).scale(&GaussRat::i())
    }

    /// Derivation with index d in [d_tau, d_taubar, d_z_1.., d_zbar_1..].
    pub fn derive(&self, d: usize, p: &CoeffPoly) -> CoeffPoly {
        let n = self.n;
        let half = GaussRat::frac(1, 2);
        let ihalf = GaussRat::new(BigRational::from_integer(0.into()), crate::exact::rat(1, 2));
        let (im_var, re_var, sign) = match d {
            0 => (Y, X, -1),
            1 => (Y, X, 1),
            d if d < 2 + n => (self.v(d - 2), self.u(d - 2), -1),
            d => (self.v(d - 2 - n), self.u(d - 2 - n), 1),
        };
        let mut out = p.diff(re_var).scale(&half);
        let ic = if sign < 0 { -&ihalf } else { ihalf };
        out.add_assign_ref(&p.diff(im_var).scale(&ic));
        out
    }

    /// Substitute a rational value for k.
    pub fn subs_k(&self, p: &CoeffPoly, k: &GaussRat) -> CoeffPoly {
        let mut out = self.zero();
        for (e, c) in &p.terms {
            let mut ne = e.clone();
            let pk = ne[K];
            ne[K] = 0;
            let kv = k.powi(pk as i64).expect("k^-n at k = 0");
            out.add_term(ne, c * &kv);
        }
        out
    }

    pub fn involves_x_or_u(&self, p: &CoeffPoly) -> bool {
        p.involves(X) || (0..self.n).any(|j| p.involves(self.u(j)))
    }
}

/// Index data: L, L^-1 and det L, exact.
#[derive(Clone, Debug)]
pub struct IndexData {
    pub n: usize,
    pub l: Mat<GaussRat>,
    pub linv: Mat<GaussRat>,
    pub det: GaussRat,
}

impl IndexData {
    pub fn new(l: &Mat<GaussRat>) -> Result<Self> {
        if !l.is_square() || l.rows == 0 {
            return Err(Error::Malformed("index matrix must be square and nonempty".into()));
        }
        if !l.is_symmetric() {
            return Err(Error::Malformed("index matrix must be symmetric".into()));
        }
        let det = l.det();
        let linv = l.inverse().ok_or_else(|| Error::Singular("index matrix is singular".into()))?;
        Ok(IndexData { n: l.rows, l: l.clone(), linv, det })
    }
    pub fn ring(&self) -> Ring {
        Ring::new(self.n)
    }
    /// (2 pi i L)_ab
    pub fn frak(&self, a: usize, b: usize) -> CoeffPoly {
        let r = self.ring();
        r.var(PI).scale(&(&GaussRat::new(crate::exact::rat(0, 1), crate::exact::rat(2, 1)) * self.l.get(a, b)))
    }
    /// ((2 pi i L)^-1)_ab = -i/(2 pi) (L^-1)_ab
    pub fn frak_inv(&self, a: usize, b: usize) -> CoeffPoly {
        let r = self.ring();
        r.pow(PI, -1).scale(&(&GaussRat::new(crate::exact::rat(0, 1), crate::exact::rat(-1, 2)) * self.linv.get(a, b)))
    }
    /// det(2 pi i L) = (2 pi i)^N det L
    pub fn frak_det(&self) -> CoeffPoly {
        let r = self.ring();
        let two_i = GaussRat::new(crate::exact::rat(0, 1), crate::exact::rat(2, 1));
        r.pow(PI, self.n as i32).scale(&(&two_i.pow(self.n as u32) * &self.det))
    }
    /// (2 pi i L v)_j
    pub fn frak_v(&self, j: usize) -> CoeffPoly {
        let r = self.ring();
        (0..self.n).fold(r.zero(), |acc, b| &acc + &(&self.frak(j, b) * &r.var(r.v(b))))
    }
    /// (2 pi i L)[v] = v^T (2 pi i L) v
    pub fn frak_quad_v(&self) -> CoeffPoly {
        let r = self.ring();
        (0..self.n).fold(r.zero(), |acc, a| &acc + &(&r.var(r.v(a)) * &self.frak_v(a)))
    }
    /// (2 pi i L z)_j with z = u + i v
    pub fn frak_z(&self, j: usize) -> CoeffPoly {
        let r = self.ring();
        (0..self.n).fold(r.zero(), |acc, b| &acc + &(&self.frak(j, b) * &r.z(b)))
    }
    pub fn frak_quad_z(&self) -> CoeffPoly {
        let r = self.ring();
        (0..self.n).fold(r.zero(), |acc, a| &acc + &(&r.z(a) * &self.frak_z(a)))
    }
}

/// Numeric values of the ring variables at a point.
#[derive(Clone, Debug)]
pub struct CoeffPoint {
    pub vals: Vec<Cplx>,
}

impl CoeffPoint {
    /// Values for (k, pi, y, x, u, v) at (tau, z) with a concrete weight.
    pub fn new(ring: Ring, k: &GaussRat, tau: &Cplx, z: &[Cplx], ctx: &PrecisionContext) -> Self {
        let mut vals = vec![Cplx::zero(ctx); ring.nvars()];
        vals[K] = Cplx::from_gauss(ctx, k);
        vals[PI] = Cplx::from_real(ctx.pi());
        vals[Y] = Cplx::from_real(tau.im.clone());
        vals[X] = Cplx::from_real(tau.re.clone());
        for (j, zj) in z.iter().enumerate() {
            vals[ring.u(j)] = Cplx::from_real(zj.re.clone());
            vals[ring.v(j)] = Cplx::from_real(zj.im.clone());
        }
        CoeffPoint { vals }
    }

    pub fn eval(&self, p: &CoeffPoly, ctx: &PrecisionContext) -> Cplx {
        let mut acc = Cplx::zero(ctx);
        for (e, c) in &p.terms {
            let mut t = Cplx::from_gauss(ctx, c);
            for (i, &ei) in e.iter().enumerate() {
                if ei != 0 {
                    t = &t * &self.vals[i].powi(ei as i64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

/// Render a coefficient polynomial in a stable text form.
pub fn render_coeff(ring: Ring, p: &CoeffPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let name = |i: usize| -> String {
        match i {
            K => "k".into(),
            PI => "pi".into(),
            Y => "y".into(),
            X => "x".into(),
            i if i < 4 + ring.n => format!("u{}", i - 3),
            i => format!("v{}", i - 3 - ring.n),
        }
    };
    let parts: Vec<String> = p
        .terms
        .iter()
        .map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { name(i) } else { format!("{}^{}", name(i), x) })
                .collect();
            if mono.is_empty() {
                format!("({c})")
            } else {
                format!("({c})*{}", mono.join("*"))
            }
        })
        .collect();
    parts.join(" + ")
}
