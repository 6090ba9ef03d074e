//! Normally ordered elements of U(g) for the rank-N extended Jacobi algebra.

use crate::error::{Error, Result};
use crate::exact::{GaussRat, Poly};
use crate::group_core::{Basis, BasisElt};
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Exponent vector over the fixed basis order.
pub type Mono = Vec<u16>;

/// Sparse linear combination of PBW monomials with Gaussian-rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PbwElement {
    pub n: usize,
    pub terms: BTreeMap<Mono, GaussRat>,
}

type Terms = BTreeMap<Mono, GaussRat>;

fn add_into(t: &mut Terms, m: Mono, c: GaussRat) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match t.entry(m) {
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

/// Multiplication tables and a memo of monomial x generator products.
pub struct PbwAlgebra {
    pub n: usize,
    pub basis: Basis,
    dim: usize,
    consts: Vec<Vec<Vec<(usize, GaussRat)>>>,
    central: Vec<bool>,
    cache: Mutex<HashMap<(Mono, usize), Arc<Terms>>>,
}

impl PbwAlgebra {
    fn build(n: usize) -> PbwAlgebra {
        let basis = Basis::new(n);
        let dim = basis.dim();
        let central = (0..dim).map(|i| basis.elt(i).is_central()).collect();
        PbwAlgebra { n, basis, dim, consts: basis.structure_constants(), central, cache: Mutex::new(HashMap::new()) }
    }

    /// Shared algebra for rank `n`.
    pub fn get(n: usize) -> Arc<PbwAlgebra> {
        static ALGS: OnceLock<Mutex<HashMap<usize, Arc<PbwAlgebra>>>> = OnceLock::new();
        let m = ALGS.get_or_init(|| Mutex::new(HashMap::new()));
        m.lock().unwrap().entry(n).or_insert_with(|| Arc::new(PbwAlgebra::build(n))).clone()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_central(&self, g: usize) -> bool {
        self.central[g]
    }

    /// Normally ordered expansion of `m * g`.
    fn mono_gen(&self, m: &Mono, g: usize) -> Arc<Terms> {
        let single = |mut m: Mono| {
            m[g] += 1;
            let mut t = Terms::new();
            t.insert(m, GaussRat::one());
            Arc::new(t)
        };
        if self.central[g] {
            return single(m.clone());
        }
        let has_central = (0..self.dim).any(|i| self.central[i] && m[i] > 0);
        if has_central {
            let mut nc = m.clone();
            for i in 0..self.dim {
                if self.central[i] {
                    nc[i] = 0;
                }
            }
            let r = self.mono_gen(&nc, g);
            let mut t = Terms::new();
            for (k, c) in r.iter() {
                let s: Mono = k.iter().zip(m).enumerate().map(|(i, (a, b))| if self.central[i] { a + b } else { *a }).collect();
                t.insert(s, c.clone());
            }
            return Arc::new(t);
        }
        let last = (0..self.dim).rev().find(|&i| m[i] > 0);
        match last {
            None => return single(m.clone()),
            Some(x) if x <= g => return single(m.clone()),
            _ => {}
        }
        let x = last.unwrap();
        let key = (m.clone(), g);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        // m' x g = (m' g) x + m' [x, g]
        let mut mp = m.clone();
        mp[x] -= 1;
        let mut out = Terms::new();
        for (t, c) in self.mono_gen(&mp, g).iter() {
            for (t2, c2) in self.mono_gen(t, x).iter() {
                add_into(&mut out, t2.clone(), c * c2);
            }
        }
        for (j, cj) in &self.consts[x][g] {
            for (t, c) in self.mono_gen(&mp, *j).iter() {
                add_into(&mut out, t.clone(), c * cj);
            }
        }
        let out = Arc::new(out);
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn times_gen(&self, a: &Terms, g: usize) -> Terms {
        let mut out = Terms::new();
        for (m, c) in a {
            for (t, c2) in self.mono_gen(m, g).iter() {
                add_into(&mut out, t.clone(), c * c2);
            }
        }
        out
    }

    /// Generator word of a monomial, in basis order.
    fn word(&self, m: &Mono) -> Vec<usize> {
        m.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize)).collect()
    }

    pub fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        assert_eq!(a.n, self.n);
        assert_eq!(b.n, self.n);
        let mut out = Terms::new();
        for (mb, cb) in &b.terms {
            let mut cur = a.terms.clone();
            for g in self.word(mb) {
                cur = self.times_gen(&cur, g);
            }
            for (m, c) in cur {
                add_into(&mut out, m, &c * cb);
            }
        }
        PbwElement { n: self.n, terms: out }
    }

    pub fn normal_order(&self, word: &[usize]) -> PbwElement {
        let mut cur = Terms::new();
        cur.insert(vec![0; self.dim], GaussRat::one());
        for &g in word {
            cur = self.times_gen(&cur, g);
        }
        PbwElement { n: self.n, terms: cur }
    }
}

impl PbwElement {
    pub fn zero(n: usize) -> Self {
        PbwElement { n, terms: Terms::new() }
    }
    pub fn scalar(n: usize, c: GaussRat) -> Self {
        let dim = Basis::new(n).dim();
        let mut t = Terms::new();
        add_into(&mut t, vec![0; dim], c);
        PbwElement { n, terms: t }
    }
    pub fn one(n: usize) -> Self {
        Self::scalar(n, GaussRat::one())
    }
    pub fn gen(n: usize, e: BasisElt) -> Self {
        let b = Basis::new(n);
        let mut m = vec![0u16; b.dim()];
        m[b.index(e)] = 1;
        let mut t = Terms::new();
        t.insert(m, GaussRat::one());
        PbwElement { n, terms: t }
    }
    pub fn alg(&self) -> Arc<PbwAlgebra> {
        PbwAlgebra::get(self.n)
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (m, c) in &o.terms {
            add_into(&mut t, m.clone(), c.clone());
        }
        PbwElement { n: self.n, terms: t }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        self.scale(&GaussRat::int(-1))
    }
    pub fn scale(&self, s: &GaussRat) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        PbwElement { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }
    pub fn mul(&self, o: &Self) -> Self {
        self.alg().mul(self, o)
    }
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    /// Highest total degree among stored monomials.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }
    pub fn coeff(&self, m: &Mono) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Interpret each commutative monomial of `p` (variables = basis
    /// indices) as the PBW monomial with the same exponents.
    pub fn from_ordered_poly(n: usize, p: &Poly) -> Self {
        let mut t = Terms::new();
        for (e, c) in &p.terms {
            assert!(e.iter().all(|&x| x >= 0), "negative exponent in PBW monomial");
            add_into(&mut t, e.iter().map(|&x| x as u16).collect(), c.clone());
        }
        PbwElement { n, terms: t }
    }

    /// Inverse of [`from_ordered_poly`](Self::from_ordered_poly).
    pub fn to_ordered_poly(&self) -> Poly {
        let dim = Basis::new(self.n).dim();
        let mut p = Poly::zero(dim);
        for (m, c) in &self.terms {
            p.add_term(m.iter().map(|&x| x as i32).collect(), c.clone());
        }
        p
    }

    /// Graded-lex sorted terms: total degree, then exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Mono, &GaussRat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| (m.iter().map(|&e| e as u32).sum::<u32>(), (*m).clone()));
        v
    }

    pub fn monomial_string(&self, m: &Mono) -> String {
        let b = Basis::new(self.n);
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { b.name(b.elt(i)) } else { format!("{}^{}", b.name(b.elt(i)), e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Canonical JSON: sorted monomials, coefficients as "a/b+c/d i".
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| json!({"monomial": self.monomial_string(m), "exponents": m, "coeff": c.to_string()}))
            .collect();
        json!({"N": self.n, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |s: &str| Error::Malformed(format!("PBW JSON: {s}"));
        let n = v.get("N").and_then(|x| x.as_u64()).ok_or_else(|| bad("missing N"))? as usize;
        let dim = Basis::new(n).dim();
        let mut t = Terms::new();
        for term in v.get("terms").and_then(|x| x.as_array()).ok_or_else(|| bad("missing terms"))? {
            let ex: Vec<u16> = serde_json::from_value(term.get("exponents").cloned().ok_or_else(|| bad("exponents"))?)
                .map_err(|e| bad(&e.to_string()))?;
            if ex.len() != dim {
                return Err(bad("exponent length"));
            }
            let c: GaussRat = term.get("coeff").and_then(|x| x.as_str()).ok_or_else(|| bad("coeff"))?.parse().map_err(|e: String| bad(&e))?;
            add_into(&mut t, ex, c);
        }
        Ok(PbwElement { n, terms: t })
    }
}

impl std::fmt::Display for PbwElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.sorted_terms().into_iter().map(|(m, c)| format!("({c}) {}", self.monomial_string(m))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Normal form of a generator word.
pub fn pbw_normal_order(n: usize, word: &[BasisElt]) -> PbwElement {
    let b = Basis::new(n);
    let idx: Vec<usize> = word.iter().map(|&e| b.index(e)).collect();
    PbwAlgebra::get(n).normal_order(&idx)
}

pub fn pbw_mul(a: &PbwElement, b: &PbwElement) -> PbwElement {
    a.mul(b)
}

pub fn pbw_commutator(a: &PbwElement, b: &PbwElement) -> PbwElement {
    a.commutator(b)
}
