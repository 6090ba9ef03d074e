use super::j2;
use crate::error::{Error, Result};
use crate::exact::{GaussRat, Mat, Scalar};
use std::fmt;

/// Element (M, X, kappa) of the complexified Lie algebra: M traceless,
/// kappa symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<T> {
    pub m: Mat<T>,
    pub x: Mat<T>,
    pub kappa: Mat<T>,
}

impl<T: Scalar> AlgebraElement<T> {
    pub fn new(m: Mat<T>, x: Mat<T>, kappa: Mat<T>) -> Result<Self> {
        let y = AlgebraElement { m, x, kappa };
        y.validate()?;
        Ok(y)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.x.rows;
        if (self.m.rows, self.m.cols) != (2, 2) || self.x.cols != 2 || (self.kappa.rows, self.kappa.cols) != (n, n) {
            return Err(Error::Malformed("shape mismatch".into()));
        }
        if !self.m.trace().is_negligible() {
            return Err(Error::Malformed("tr(M) != 0".into()));
        }
        let asym = self.kappa.sub(&self.kappa.transpose());
        if !asym.data.iter().all(|v| v.is_negligible()) {
            return Err(Error::Malformed("kappa is not symmetric".into()));
        }
        Ok(())
    }

    pub fn zero(n: usize, like: &T) -> Self {
        AlgebraElement { m: Mat::zeros(2, 2, like), x: Mat::zeros(n, 2, like), kappa: Mat::zeros(n, n, like) }
    }

    pub fn n(&self) -> usize {
        self.x.rows
    }

    pub fn add(&self, o: &Self) -> Self {
        AlgebraElement { m: self.m.add(&o.m), x: self.x.add(&o.x), kappa: self.kappa.add(&o.kappa) }
    }

    pub fn scale(&self, s: &T) -> Self {
        AlgebraElement { m: self.m.scale(s), x: self.x.scale(s), kappa: self.kappa.scale(s) }
    }

    /// [(M,X,k), (M',X',k')] = ([M,M'], X M' - X' M, X' J2 X^T - X J2 X'^T).
    pub fn bracket(&self, o: &Self) -> Self {
        let j = j2(self.m.get(0, 0));
        AlgebraElement {
            m: self.m.commutator(&o.m),
            x: self.x.mul(&o.m).sub(&o.x.mul(&self.m)),
            kappa: o.x.mul(&j).mul(&self.x.transpose()).sub(&self.x.mul(&j).mul(&o.x.transpose())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero() && self.x.is_zero() && self.kappa.is_zero()
    }
}

impl AlgebraElement<GaussRat> {
    /// Build from coefficients over [`Basis`].
    pub fn from_coeffs(n: usize, c: &[GaussRat]) -> Self {
        let b = Basis::new(n);
        assert_eq!(c.len(), b.dim());
        let mut y = AlgebraElement::zero(n, &GaussRat::zero());
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                y = y.add(&b.element(b.elt(i)).scale(ci));
            }
        }
        y
    }

    /// Coefficients over [`Basis`]. Z_ij for i < j picks up 2 kappa_ij.
    pub fn coeffs(&self) -> Vec<GaussRat> {
        let n = self.n();
        let b = Basis::new(n);
        let mut out = vec![GaussRat::zero(); b.dim()];
        out[0] = self.m.get(0, 1).clone();
        out[1] = self.m.get(1, 0).clone();
        out[2] = self.m.get(0, 0).clone();
        for i in 0..n {
            out[b.index(BasisElt::LowE(i))] = self.x.get(i, 1).clone();
            out[b.index(BasisElt::LowF(i))] = self.x.get(i, 0).clone();
            for j in i..n {
                let v = self.kappa.get(i, j).clone();
                out[b.index(BasisElt::Z(i, j))] = if i == j { v } else { &v + &v };
            }
        }
        out
    }
}

/// Basis generators E, F, H, e_i, f_i, Z_ij (i <= j), 0-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElt {
    E,
    F,
    H,
    LowE(usize),
    LowF(usize),
    Z(usize, usize),
}

impl BasisElt {
    pub fn is_central(&self) -> bool {
        matches!(self, BasisElt::Z(..))
    }
}

/// The fixed ordered basis E < F < H < e_1 < .. < e_N < f_1 < .. < f_N <
/// Z_11 < Z_12 < .. < Z_NN of the rank-N algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    pub n: usize,
}

impl Basis {
    pub fn new(n: usize) -> Self {
        Basis { n }
    }
    pub fn dim(&self) -> usize {
        3 + 2 * self.n + self.n * (self.n + 1) / 2
    }
    fn z_offset(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // rows 0..i contribute n - r entries each
        let before: usize = (0..i).map(|r| self.n - r).sum();
        before + (j - i)
    }
    pub fn index(&self, e: BasisElt) -> usize {
        match e {
            BasisElt::E => 0,
            BasisElt::F => 1,
            BasisElt::H => 2,
            BasisElt::LowE(i) => 3 + i,
            BasisElt::LowF(i) => 3 + self.n + i,
            BasisElt::Z(i, j) => 3 + 2 * self.n + self.z_offset(i, j),
        }
    }
    pub fn elt(&self, idx: usize) -> BasisElt {
        let n = self.n;
        match idx {
            0 => BasisElt::E,
            1 => BasisElt::F,
            2 => BasisElt::H,
            i if i < 3 + n => BasisElt::LowE(i - 3),
            i if i < 3 + 2 * n => BasisElt::LowF(i - 3 - n),
            i => {
                let mut k = i - 3 - 2 * n;
                for r in 0..n {
                    if k < n - r {
                        return BasisElt::Z(r, r + k);
                    }
                    k -= n - r;
                }
                panic!("basis index {idx} out of range for N = {n}")
            }
        }
    }
    pub fn all(&self) -> Vec<BasisElt> {
        (0..self.dim()).map(|i| self.elt(i)).collect()
    }
    pub fn name(&self, e: BasisElt) -> String {
        let sep = if self.n > 9 { "_" } else { "" };
        match e {
            BasisElt::E => "E".into(),
            BasisElt::F => "F".into(),
            BasisElt::H => "H".into(),
            BasisElt::LowE(i) => format!("e{}", i + 1),
            BasisElt::LowF(i) => format!("f{}", i + 1),
            BasisElt::Z(i, j) => format!("Z{}{sep}{}", i + 1, j + 1),
        }
    }
    pub fn parse_name(&self, s: &str) -> Option<BasisElt> {
        self.all().into_iter().find(|&e| self.name(e) == s)
    }

    /// Matrix realisation of a basis element.
    pub fn element(&self, e: BasisElt) -> AlgebraElement<GaussRat> {
        let n = self.n;
        let mut y = AlgebraElement::zero(n, &GaussRat::zero());
        let one = GaussRat::one();
        match e {
            BasisElt::E => y.m.set(0, 1, one),
            BasisElt::F => y.m.set(1, 0, one),
            BasisElt::H => {
                y.m.set(0, 0, one);
                y.m.set(1, 1, GaussRat::int(-1));
            }
            BasisElt::LowE(i) => y.x.set(i, 1, one),
            BasisElt::LowF(i) => y.x.set(i, 0, one),
            BasisElt::Z(i, j) => {
                if i == j {
                    y.kappa.set(i, i, one);
                } else {
                    y.kappa.set(i, j, GaussRat::frac(1, 2));
                    y.kappa.set(j, i, GaussRat::frac(1, 2));
                }
            }
        }
        y
    }

    /// Structure constants: `c[a][b]` lists (index, coefficient) pairs of [b_a, b_b].
    pub fn structure_constants(&self) -> Vec<Vec<Vec<(usize, GaussRat)>>> {
        let elems: Vec<_> = self.all().into_iter().map(|e| self.element(e)).collect();
        elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        a.bracket(b)
                            .coeffs()
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Exact check of antisymmetry and the Jacobi identity on the structure
/// constants. Returns the list of violated (a, b, c) triples (empty if sound).
pub fn check_structure_constants(n: usize) -> Vec<String> {
    let b = Basis::new(n);
    let c = b.structure_constants();
    let d = b.dim();
    let mut bad = Vec::new();
    let dense = |v: &Vec<(usize, GaussRat)>| {
        let mut out = vec![GaussRat::zero(); d];
        for (i, x) in v {
            out[*i] = x.clone();
        }
        out
    };
    // [x, y] for coefficient vectors via constants
    let br = |x: &[GaussRat], y: &[GaussRat]| {
        let mut out = vec![GaussRat::zero(); d];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let s = xi * yj;
                for (k, ck) in &c[i][j] {
                    out[*k] += &s * ck;
                }
            }
        }
        out
    };
    for a in 0..d {
        for bb in 0..d {
            let ab = dense(&c[a][bb]);
            let ba = dense(&c[bb][a]);
            if ab.iter().zip(&ba).any(|(x, y)| !(x + y).is_zero()) {
                bad.push(format!("antisymmetry fails for ({}, {})", b.name(b.elt(a)), b.name(b.elt(bb))));
            }
        }
    }
    let unit = |i: usize| {
        let mut v = vec![GaussRat::zero(); d];
        v[i] = GaussRat::one();
        v
    };
    for a in 0..d {
        for bb in a + 1..d {
            for cc in bb + 1..d {
                let (x, y, z) = (unit(a), unit(bb), unit(cc));
                let t1 = br(&x, &br(&y, &z));
                let t2 = br(&y, &br(&z, &x));
                let t3 = br(&z, &br(&x, &y));
                if (0..d).any(|i| !(&(&t1[i] + &t2[i]) + &t3[i]).is_zero()) {
                    bad.push(format!(
                        "Jacobi identity fails for ({}, {}, {})",
                        b.name(b.elt(a)),
                        b.name(b.elt(bb)),
                        b.name(b.elt(cc))
                    ));
                }
            }
        }
    }
    bad
}

impl fmt::Display for AlgebraElement<GaussRat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = Basis::new(self.n());
        let parts: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c}) {}", b.name(b.elt(i))))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
