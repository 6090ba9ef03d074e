//! Truncated multivariate Taylor jets with arbitrary-precision complex
//! coefficients.
//!
//! A jet stores the Taylor coefficients `c_a` of a function at a base point,
//! for all multi-indices `a` of total degree at most `deg`. Derivatives are
//! recovered as `c_a * a!`. Arithmetic is exact truncation of the
//! corresponding function arithmetic.

use super::cplx::{Cplx, PrecisionContext};
use crate::error::{Error, Result};
use rug::Float;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug)]
pub struct JetShape {
    pub nvars: usize,
    pub deg: usize,
    pub indices: Vec<Vec<u8>>,
    lookup: HashMap<Vec<u8>, usize>,
    /// Triples (i, j, k) with index_i + index_j = index_k.
    mul_table: Vec<(u32, u32, u32)>,
    /// Integer factorial weights a! per index.
    pub factorials: Vec<u128>,
}

impl JetShape {
    fn build(nvars: usize, deg: usize) -> JetShape {
        let mut indices: Vec<Vec<u8>> = Vec::new();
        fn rec(cur: &mut Vec<u8>, pos: usize, left: usize, out: &mut Vec<Vec<u8>>) {
            if pos == cur.len() {
                out.push(cur.clone());
                return;
            }
            for e in 0..=left {
                cur[pos] = e as u8;
                rec(cur, pos + 1, left - e, out);
            }
            cur[pos] = 0;
        }
        let mut cur = vec![0u8; nvars];
        rec(&mut cur, 0, deg, &mut indices);
        indices.sort_by_key(|a| (a.iter().map(|&x| x as usize).sum::<usize>(), std::cmp::Reverse(a.clone())));
        let lookup: HashMap<Vec<u8>, usize> = indices.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let mut mul_table = Vec::new();
        for (i, a) in indices.iter().enumerate() {
            let da: usize = a.iter().map(|&x| x as usize).sum();
            for (j, b) in indices.iter().enumerate() {
                let db: usize = b.iter().map(|&x| x as usize).sum();
                if da + db > deg {
                    continue;
                }
                let s: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                mul_table.push((i as u32, j as u32, lookup[&s] as u32));
            }
        }
        let factorials = indices
            .iter()
            .map(|a| a.iter().map(|&e| (1..=e as u128).product::<u128>()).product())
            .collect();
        JetShape { nvars, deg, indices, lookup, mul_table, factorials }
    }

    /// Shared shape for (nvars, deg).
    pub fn get(nvars: usize, deg: usize) -> Arc<JetShape> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<JetShape>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut g = cache.lock().unwrap();
        g.entry((nvars, deg)).or_insert_with(|| Arc::new(JetShape::build(nvars, deg))).clone()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
    pub fn index_of(&self, a: &[u8]) -> Option<usize> {
        self.lookup.get(a).copied()
    }
}

#[derive(Clone, Debug)]
pub struct Jet {
    pub shape: Arc<JetShape>,
    pub c: Vec<Cplx>,
}

impl Jet {
    pub fn constant(shape: &Arc<JetShape>, v: Cplx) -> Jet {
        let ctx = v.ctx();
        let mut c = vec![Cplx::zero(&ctx); shape.len()];
        c[0] = v;
        Jet { shape: shape.clone(), c }
    }
    pub fn zero(shape: &Arc<JetShape>, ctx: &PrecisionContext) -> Jet {
        Jet { shape: shape.clone(), c: vec![Cplx::zero(ctx); shape.len()] }
    }
    /// The coordinate function `x_i` with value `base` at the base point.
    pub fn variable(shape: &Arc<JetShape>, i: usize, base: Cplx) -> Jet {
        let ctx = base.ctx();
        let mut j = Jet::constant(shape, base);
        if shape.deg >= 1 {
            let mut a = vec![0u8; shape.nvars];
            a[i] = 1;
            let k = shape.index_of(&a).unwrap();
            j.c[k] = Cplx::one(&ctx);
        }
        j
    }
    pub fn ctx(&self) -> PrecisionContext {
        self.c[0].ctx()
    }
    pub fn value(&self) -> &Cplx {
        &self.c[0]
    }
    /// Partial derivative `d^a` at the base point.
    pub fn derivative(&self, a: &[u8]) -> Result<Cplx> {
        let deg: usize = a.iter().map(|&x| x as usize).sum();
        let k = self
            .shape
            .index_of(a)
            .ok_or(Error::JetDegree { have: self.shape.deg, need: deg })?;
        let f = Float::with_val(self.ctx().bits, self.shape.factorials[k]);
        Ok(self.c[k].scale(&f))
    }
    pub fn add(&self, o: &Jet) -> Jet {
        Jet { shape: self.shape.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    pub fn sub(&self, o: &Jet) -> Jet {
        Jet { shape: self.shape.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
    pub fn neg(&self) -> Jet {
        Jet { shape: self.shape.clone(), c: self.c.iter().map(|a| -a).collect() }
    }
    pub fn scale(&self, s: &Cplx) -> Jet {
        Jet { shape: self.shape.clone(), c: self.c.iter().map(|a| a * s).collect() }
    }
    pub fn add_const(&self, s: &Cplx) -> Jet {
        let mut j = self.clone();
        j.c[0] = &j.c[0] + s;
        j
    }
    pub fn mul(&self, o: &Jet) -> Jet {
        let ctx = self.ctx();
        let mut c = vec![Cplx::zero(&ctx); self.shape.len()];
        let nz_a: Vec<bool> = self.c.iter().map(|x| !x.is_zero()).collect();
        let nz_b: Vec<bool> = o.c.iter().map(|x| !x.is_zero()).collect();
        for &(i, j, k) in &self.shape.mul_table {
            let (i, j, k) = (i as usize, j as usize, k as usize);
            if nz_a[i] && nz_b[j] {
                c[k] = &c[k] + &(&self.c[i] * &o.c[j]);
            }
        }
        Jet { shape: self.shape.clone(), c }
    }
    /// `f(self)` where `derivs[n]` is the n-th derivative of `f` at the
    /// base value of `self`.
    pub fn compose(&self, derivs: &[Cplx]) -> Jet {
        let ctx = self.ctx();
        let mut h = self.clone();
        h.c[0] = Cplx::zero(&ctx);
        let mut out = Jet::constant(&self.shape, derivs[0].clone());
        let mut hp = Jet::constant(&self.shape, Cplx::one(&ctx));
        let mut fact = Float::with_val(ctx.bits, 1);
        for (n, d) in derivs.iter().enumerate().skip(1).take(self.shape.deg) {
            hp = hp.mul(&h);
            fact *= n as u32;
            let coef = d.scale(&Float::with_val(ctx.bits, 1 / &fact));
            out = out.add(&hp.scale(&coef));
        }
        out
    }
    pub fn exp(&self) -> Jet {
        let e = self.c[0].exp();
        let derivs = vec![e; self.shape.deg + 1];
        self.compose(&derivs)
    }
    pub fn recip(&self) -> Jet {
        let a = &self.c[0];
        let ai = a.inv();
        let mut derivs = Vec::with_capacity(self.shape.deg + 1);
        let mut cur = ai.clone();
        for n in 0..=self.shape.deg {
            derivs.push(cur.clone());
            cur = (&cur * &ai).scale_f64(-((n + 1) as f64));
        }
        self.compose(&derivs)
    }
    pub fn div(&self, o: &Jet) -> Jet {
        self.mul(&o.recip())
    }
    /// Principal real power.
    pub fn pow_real(&self, p: &Float) -> Jet {
        let a = &self.c[0];
        let bits = self.ctx().bits;
        let mut derivs = Vec::with_capacity(self.shape.deg + 1);
        let mut coef = Float::with_val(bits, 1);
        let ai = a.inv();
        let mut base = a.pow_real(p);
        for n in 0..=self.shape.deg {
            derivs.push(base.scale(&coef));
            coef *= Float::with_val(bits, p - n as u32);
            base = &base * &ai;
        }
        self.compose(&derivs)
    }
    pub fn powi(&self, n: i64) -> Jet {
        if n < 0 {
            return self.recip().powi(-n);
        }
        let mut acc = Jet::constant(&self.shape, Cplx::one(&self.ctx()));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
    /// Complex-conjugate the function, given a pairing of the variables
    /// with their conjugates (Wirtinger coordinates).
    pub fn conj_swap(&self, pairing: &[usize]) -> Jet {
        let ctx = self.ctx();
        let mut c = vec![Cplx::zero(&ctx); self.shape.len()];
        for (k, a) in self.shape.indices.iter().enumerate() {
            let mut b = vec![0u8; a.len()];
            for (i, &e) in a.iter().enumerate() {
                b[pairing[i]] = e;
            }
            let kk = self.shape.index_of(&b).unwrap();
            c[kk] = self.c[k].conj();
        }
        Jet { shape: self.shape.clone(), c }
    }
    pub fn max_abs_diff(&self, o: &Jet) -> f64 {
        self.c.iter().zip(&o.c).map(|(a, b)| (a - b).abs().to_f64()).fold(0.0, f64::max)
    }
}
