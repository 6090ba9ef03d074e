//! Sparse commutative Laurent polynomials over Q(i).
//!
//! Used for symmetric-algebra elements, Z-polynomials inside the enveloping
//! algebra, and operator coefficients. Exponents are signed so that `y^-1`
//! and `pi^-1` are first-class.

use super::gauss::GaussRat;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

pub type Exps = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Exps, GaussRat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }
    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussRat::one())
    }
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, i, 1, GaussRat::one())
    }
    pub fn monomial(nvars: usize, i: usize, e: i32, c: GaussRat) -> Self {
        let mut ex = vec![0; nvars];
        ex[i] = e;
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(ex, c);
        }
        p
    }
    pub fn from_term(nvars: usize, ex: Exps, c: GaussRat) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(ex, c);
        p
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_term(&mut self, ex: Exps, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(ex) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
    pub fn add_assign_ref(&mut self, o: &Poly) {
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
    pub fn add_scaled(&mut self, o: &Poly, s: &GaussRat) {
        if s.is_zero() {
            return;
        }
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c * s);
        }
    }
    pub fn scale(&self, s: &GaussRat) -> Poly {
        let mut p = Poly::zero(self.nvars);
        if s.is_zero() {
            return p;
        }
        for (e, c) in &self.terms {
            p.terms.insert(e.clone(), c * s);
        }
        p
    }
    pub fn mul_monomial(&self, ex: &[i32], c: &GaussRat) -> Poly {
        let mut p = Poly::zero(self.nvars);
        if c.is_zero() {
            return p;
        }
        for (e, d) in &self.terms {
            let ne: Exps = e.iter().zip(ex).map(|(a, b)| a + b).collect();
            p.terms.insert(ne, d * c);
        }
        p
    }
    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
    pub fn constant_term(&self) -> GaussRat {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_default()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }
    /// True if variable `i` appears with nonzero exponent in some term.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] != 0)
    }
    pub fn max_total_degree(&self) -> i32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(i32::MIN)
    }

    /// Partial derivative with respect to variable `i` (Laurent rule).
    pub fn diff(&self, i: usize) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                p.add_term(ne, c * &GaussRat::int(e[i] as i64));
            }
        }
        p
    }

    /// Substitute `x_i -> x_i + s` (only nonnegative exponents of `x_i`).
    pub fn shift_var(&self, i: usize, s: &GaussRat) -> Poly {
        if s.is_zero() {
            return self.clone();
        }
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let n = e[i];
            assert!(n >= 0, "shift of a negative power");
            // (x + s)^n = sum binom(n,j) x^j s^(n-j)
            let mut binom = GaussRat::one();
            for j in (0..=n).rev() {
                // coefficient for x^j : binom(n, j) s^(n-j)
                let mut ne = e.clone();
                ne[i] = j;
                p.add_term(ne, c * &binom * s.pow((n - j) as u32));
                if j > 0 {
                    binom = &binom * &GaussRat::frac(j as i64, (n - j + 1) as i64);
                }
            }
        }
        p
    }

    /// Substitute polynomial values for variables. `subs[i] = None` keeps x_i.
    pub fn substitute(&self, subs: &[Option<Poly>]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut keep = vec![0; self.nvars];
            let mut factor = Poly::one(self.nvars);
            for (i, &n) in e.iter().enumerate() {
                match &subs[i] {
                    Some(s) if n != 0 => {
                        assert!(n > 0, "substitution into a negative power");
                        factor = &factor * &s.pow(n as u32);
                    }
                    _ => keep[i] = n,
                }
            }
            out.add_assign_ref(&factor.mul_monomial(&keep, c));
        }
        out
    }

    /// Leading term in lexicographic order (variable 0 most significant).
    fn leading(&self) -> Option<(&Exps, &GaussRat)> {
        self.terms.iter().next_back()
    }

    /// Exact division by `d` in lex order; errors if a remainder is left.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (dl, dc) = d
            .leading()
            .ok_or_else(|| Error::Singular("division by the zero polynomial".into()))?;
        let dl = dl.clone();
        let dci = dc.inv().unwrap();
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rl, rc)) = rem.leading() {
            if rl.iter().zip(&dl).any(|(a, b)| a < b) {
                return Err(Error::NotDivisible(format!(
                    "leading exponent {rl:?} not divisible by {dl:?}"
                )));
            }
            let qe: Exps = rl.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let qc = rc * &dci;
            rem = &rem - &d.mul_monomial(&qe, &qc);
            q.add_term(qe, qc);
        }
        Ok(q)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_assign_ref(o);
        p
    }
}
impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }
}
impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&GaussRat::int(-1))
    }
}
impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let ne: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(ne, c1 * c2);
            }
        }
        p
    }
}
