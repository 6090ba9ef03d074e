//! Differential operators sum_a c_a(k, pi, y, x, u, v) d^a with
//! coefficients to the left of Wirtinger derivative monomials.

use super::coeff::{render_coeff, CoeffPoly, Ring, K};
use crate::exact::GaussRat;
use std::collections::{BTreeMap, HashMap};

/// Derivative exponents over [d_tau, d_taubar, d_z_1.., d_zbar_1..].
pub type DMono = Vec<u8>;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    pub n: usize,
    pub terms: BTreeMap<DMono, CoeffPoly>,
}

impl DiffOp {
    pub fn ring(&self) -> Ring {
        Ring::new(self.n)
    }
    pub fn nder(n: usize) -> usize {
        2 + 2 * n
    }
    pub fn zero(n: usize) -> Self {
        DiffOp { n, terms: BTreeMap::new() }
    }
    /// Multiplication operator.
    pub fn mult(n: usize, c: CoeffPoly) -> Self {
        let mut op = DiffOp::zero(n);
        op.add_term(vec![0; Self::nder(n)], c);
        op
    }
    pub fn identity(n: usize) -> Self {
        Self::mult(n, Ring::new(n).one())
    }
    /// Single derivative with coefficient `c`.
    pub fn deriv(n: usize, d: usize, c: CoeffPoly) -> Self {
        let mut m = vec![0u8; Self::nder(n)];
        m[d] = 1;
        let mut op = DiffOp::zero(n);
        op.add_term(m, c);
        op
    }
    pub fn d_tau(n: usize) -> usize {
        let _ = n;
        0
    }
    pub fn d_taubar(n: usize) -> usize {
        let _ = n;
        1
    }
    pub fn d_z(_n: usize, j: usize) -> usize {
        2 + j
    }
    pub fn d_zbar(n: usize, j: usize) -> usize {
        2 + n + j
    }

    pub fn add_term(&mut self, m: DMono, c: CoeffPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&GaussRat::int(-1)))
    }
    pub fn scale(&self, s: &GaussRat) -> Self {
        let mut r = DiffOp::zero(self.n);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.scale(s));
        }
        r
    }
    /// Left multiplication by a coefficient.
    pub fn lmul(&self, p: &CoeffPoly) -> Self {
        let mut r = DiffOp::zero(self.n);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), p * c);
        }
        r
    }
    pub fn order(&self) -> usize {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }

    /// A o B via the Leibniz rule.
    pub fn compose(&self, o: &Self) -> Self {
        let ring = self.ring();
        let nd = Self::nder(self.n);
        let mut out = DiffOp::zero(self.n);
        // derivatives d^g b, memoised per (term of B, g)
        let mut memo: HashMap<(DMono, DMono), CoeffPoly> = HashMap::new();
        for (alpha, a) in &self.terms {
            // all gamma <= alpha
            let mut gammas: Vec<DMono> = vec![vec![]];
            for &ai in alpha.iter() {
                gammas = gammas.into_iter().flat_map(|g| (0..=ai).map(move |x| [g.clone(), vec![x]].concat())).collect();
            }
            for gamma in &gammas {
                let mut binom = GaussRat::one();
                for i in 0..nd {
                    binom = &binom * &GaussRat::int(binomial(alpha[i] as u64, gamma[i] as u64) as i64);
                }
                for (beta, b) in &o.terms {
                    let key = (beta.clone(), gamma.clone());
                    let db = memo
                        .entry(key)
                        .or_insert_with(|| {
                            let mut p = b.clone();
                            for (i, &gi) in gamma.iter().enumerate() {
                                for _ in 0..gi {
                                    p = ring.derive(i, &p);
                                }
                            }
                            p
                        })
                        .clone();
                    if db.is_zero() {
                        continue;
                    }
                    let m: DMono = (0..nd).map(|i| alpha[i] - gamma[i] + beta[i]).collect();
                    out.add_term(m, (a * &db).scale(&binom));
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.compose(o).sub(&o.compose(self))
    }

    /// Substitute k -> k + s in every coefficient.
    pub fn shift_k(&self, s: i64) -> Self {
        let mut r = DiffOp::zero(self.n);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.shift_var(K, &GaussRat::int(s)));
        }
        r
    }

    /// Substitute a value for k.
    pub fn subs_k(&self, k: &GaussRat) -> Self {
        let ring = self.ring();
        let mut r = DiffOp::zero(self.n);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), ring.subs_k(c, k));
        }
        r
    }

    /// Drop every monomial containing a d_zbar factor.
    pub fn restrict_semiholomorphic(&self) -> Self {
        let mut r = DiffOp::zero(self.n);
        for (m, c) in &self.terms {
            if m[2 + self.n..].iter().all(|&e| e == 0) {
                r.add_term(m.clone(), c.clone());
            }
        }
        r
    }

    pub fn involves_x_or_u(&self) -> bool {
        let ring = self.ring();
        self.terms.values().any(|c| ring.involves_x_or_u(c))
    }

    /// Sum of terms of exactly this derivative order.
    pub fn homogeneous_part(&self, ord: usize) -> Self {
        let mut r = DiffOp::zero(self.n);
        for (m, c) in &self.terms {
            if m.iter().map(|&e| e as usize).sum::<usize>() == ord {
                r.add_term(m.clone(), c.clone());
            }
        }
        r
    }

    pub fn dmono_string(&self, m: &DMono) -> String {
        let n = self.n;
        let name = |i: usize| match i {
            0 => "d_tau".to_string(),
            1 => "d_taubar".to_string(),
            i if i < 2 + n => format!("d_z{}", i - 1),
            i => format!("d_zbar{}", i - 1 - n),
        };
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Stable text form: one line per derivative monomial, sorted by order
    /// then exponents.
    pub fn render(&self) -> String {
        let ring = self.ring();
        let mut keys: Vec<&DMono> = self.terms.keys().collect();
        keys.sort_by_key(|m| (m.iter().map(|&e| e as u32).sum::<u32>(), (*m).clone()));
        if keys.is_empty() {
            return "0\n".into();
        }
        let mut s = String::new();
        for m in keys {
            s.push_str(&format!("[{}] {}\n", self.dmono_string(m), render_coeff(ring, &self.terms[m])));
        }
        s
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
