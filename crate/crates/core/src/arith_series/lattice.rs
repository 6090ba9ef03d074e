//! Gram matrices of even lattices, discriminants and short-vector enumeration.

use crate::error::{Error, Result};
use crate::exact::gauss::{parse_rat, rat_to_string};
use crate::exact::{GaussRat, Mat};
use crate::opcalc::IndexData;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// A positive definite symmetric matrix with entries in (1/2)Z and integral
/// diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct GramLattice {
    n: usize,
    l: Vec<Vec<Rat>>,
    det: Rat,
    adj: Vec<Vec<Rat>>,
    inv: Vec<Vec<Rat>>,
}

fn to_mat(m: &[Vec<Rat>]) -> Mat<GaussRat> {
    Mat::from_fn(m.len(), m.len(), |i, j| GaussRat::real(m[i][j].clone()))
}

impl GramLattice {
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidLattice("Gram matrix must be square and nonempty".into()));
        }
        let two = ri(2);
        for i in 0..n {
            for j in 0..n {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidLattice("Gram matrix must be symmetric".into()));
                }
                if !(&entries[i][j] * &two).is_integer() {
                    return Err(Error::InvalidLattice(format!("entry ({i},{j}) is not in Z/2")));
                }
            }
            if !entries[i][i].is_integer() {
                return Err(Error::InvalidLattice(format!("diagonal entry {i} is not integral")));
            }
        }
        let m = to_mat(&entries);
        for k in 1..=n {
            if m.block(0, 0, k, k).det().re <= Rat::zero() {
                return Err(Error::InvalidLattice("Gram matrix is not positive definite".into()));
            }
        }
        let det = m.det().re;
        let adj = m.adjugate();
        let inv = m.inverse().expect("positive definite");
        let un = |a: Mat<GaussRat>| (0..n).map(|i| (0..n).map(|j| a.get(i, j).re.clone()).collect()).collect();
        Ok(GramLattice { n, l: entries, det, adj: un(adj), inv: un(inv) })
    }

    pub fn from_i64(n: usize, v: &[i64]) -> Result<Self> {
        Self::new((0..n).map(|i| (0..n).map(|j| ri(v[i * n + j])).collect()).collect())
    }

    /// Parses "a/b,c/d;e/f,g/h" (rows separated by ';') or a flat
    /// comma-separated list of N^2 entries.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidLattice(format!("cannot parse lattice literal {s:?}"));
        let rows: Vec<Vec<Rat>> = if s.contains(';') {
            s.split(';')
                .map(|r| r.split(',').map(|e| parse_rat(e).ok_or_else(bad)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?
        } else {
            let flat = s.split(',').map(|e| parse_rat(e).ok_or_else(bad)).collect::<Result<Vec<_>>>()?;
            let n = (flat.len() as f64).sqrt().round() as usize;
            if n * n != flat.len() {
                return Err(bad());
            }
            flat.chunks(n).map(|c| c.to_vec()).collect()
        };
        Self::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.n
    }
    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.l
    }
    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.l[i][j]
    }
    /// |L|
    pub fn det(&self) -> &Rat {
        &self.det
    }
    pub fn adjugate(&self) -> &[Vec<Rat>] {
        &self.adj
    }
    pub fn inverse(&self) -> &[Vec<Rat>] {
        &self.inv
    }
    pub fn to_mat(&self) -> Mat<GaussRat> {
        to_mat(&self.l)
    }
    pub fn index_data(&self) -> IndexData {
        IndexData::new(&self.to_mat()).expect("validated lattice")
    }
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.l.iter().map(|r| r.iter().map(rat_to_string).collect()).collect()
    }

    /// a^T M b for one of the stored matrices.
    fn form(m: &[Vec<Rat>], a: &[Rat], b: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                acc += ai * &m[i][j] * bj;
            }
        }
        acc
    }

    /// L[x] = x^T L x
    pub fn quad(&self, x: &[Rat]) -> Rat {
        Self::form(&self.l, x, x)
    }
    /// L[x] for an integer vector; always an integer.
    pub fn quad_int(&self, x: &[i64]) -> Rat {
        self.quad(&ints(x))
    }
    /// x^T L y
    pub fn bilinear(&self, x: &[Rat], y: &[Rat]) -> Rat {
        Self::form(&self.l, x, y)
    }
    /// L^{-1}[x]
    pub fn inv_quad(&self, x: &[Rat]) -> Rat {
        Self::form(&self.inv, x, x)
    }
    /// x^T L^{-1} y
    pub fn inv_bilinear(&self, x: &[Rat], y: &[Rat]) -> Rat {
        Self::form(&self.inv, x, y)
    }
    /// L x
    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        (0..self.n).map(|i| (0..self.n).map(|j| &self.l[i][j] * &x[j]).sum()).collect()
    }
    /// L^{-1} x
    pub fn apply_inv(&self, x: &[Rat]) -> Vec<Rat> {
        (0..self.n).map(|i| (0..self.n).map(|j| &self.inv[i][j] * &x[j]).sum()).collect()
    }

    /// Whether r - mu lies in L Z^N.
    pub fn congruent(&self, r: &[i64], mu: &[i64]) -> bool {
        let d: Vec<Rat> = r.iter().zip(mu).map(|(a, b)| ri(a - b)).collect();
        self.apply_inv(&d).iter().all(|x| x.is_integer())
    }

    /// Basis (rows) of Z^N intersected with L Z^N in Hermite normal form
    /// (lower triangular, positive diagonal).
    fn class_lattice(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        // x in Z^N with L x integral: generated by 2 e_i and the 0/1 vectors that work
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for mask in 0u32..(1 << n) {
            let x: Vec<Rat> = (0..n).map(|i| ri(((mask >> i) & 1) as i64)).collect();
            let lx = self.apply(&x);
            if lx.iter().all(|v| v.is_integer()) {
                gens.push(lx.iter().map(|v| v.to_integer().to_i64().unwrap()).collect());
            }
        }
        for i in 0..n {
            let mut x = vec![Rat::zero(); n];
            x[i] = ri(2);
            gens.push(self.apply(&x).iter().map(|v| v.to_integer().to_i64().unwrap()).collect());
        }
        hermite_lower(gens, n)
    }

    /// Canonical representative of r modulo L Z^N (inside Z^N).
    pub fn reduce_class(&self, r: &[i64]) -> Vec<i64> {
        let basis = self.class_lattice();
        let mut v = r.to_vec();
        for (i, b) in basis.iter().enumerate().rev() {
            // b has zeros after position i and b[i] > 0
            let q = v[i].div_euclid(b[i]);
            for j in 0..=i {
                v[j] -= q * b[j];
            }
        }
        v
    }

    /// All class representatives of Z^N / (Z^N intersected with L Z^N).
    pub fn classes(&self) -> Vec<Vec<i64>> {
        let basis = self.class_lattice();
        let n = self.n;
        let mut out = vec![vec![0i64; n]];
        for i in 0..n {
            let mut next = Vec::new();
            for v in &out {
                for t in 0..basis[i][i] {
                    let mut w = v.clone();
                    w[i] = t;
                    next.push(w);
                }
            }
            out = next;
        }
        let mut reps: Vec<Vec<i64>> = out.iter().map(|v| self.reduce_class(v)).collect();
        reps.sort();
        reps.dedup();
        reps
    }

    /// D = |L| (4n - L^{-1}[r])
    pub fn discriminant(&self, n: &Rat, r: &[i64]) -> Rat {
        &self.det * (n * ri(4) - self.inv_quad(&ints(r)))
    }
    /// h = |L| L^{-1}[r]
    pub fn h_of_r(&self, r: &[i64]) -> Rat {
        &self.det * self.inv_quad(&ints(r))
    }
    /// n with D_L(n, r) = d.
    pub fn n_from_discriminant(&self, d: &Rat, r: &[i64]) -> Rat {
        (d / &self.det + self.inv_quad(&ints(r))) / ri(4)
    }

    /// Integer vectors x with (x - c)^T A (x - c) <= bound where A is L or
    /// L^{-1}, by Fincke-Pohst enumeration with exact pruning.
    pub fn short_vectors(&self, use_inverse: bool, center: &[Rat], bound: &Rat) -> Vec<Vec<i64>> {
        let a = if use_inverse { &self.inv } else { &self.l };
        fincke_pohst(a, center, bound)
    }
}

pub(crate) fn ints(x: &[i64]) -> Vec<Rat> {
    x.iter().map(|&v| ri(v)).collect()
}

/// Lower-triangular Hermite basis of the lattice spanned by `gens` (full rank).
fn hermite_lower(mut gens: Vec<Vec<i64>>, n: usize) -> Vec<Vec<i64>> {
    let mut basis: Vec<Vec<i64>> = vec![vec![0; n]; n];
    // eliminate from the last coordinate down
    for col in (0..n).rev() {
        loop {
            let mut piv: Option<usize> = None;
            for (i, g) in gens.iter().enumerate() {
                if g[col] != 0 && piv.is_none_or(|p| g[col].abs() < gens[p][col].abs()) {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            let pv = gens[p].clone();
            let mut done = true;
            for (i, g) in gens.iter_mut().enumerate() {
                if i != p && g[col] != 0 {
                    let q = g[col].div_euclid(pv[col]);
                    for j in 0..n {
                        g[j] -= q * pv[j];
                    }
                    if g[col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                let mut b = gens.remove(p);
                if b[col] < 0 {
                    b.iter_mut().for_each(|v| *v = -*v);
                }
                basis[col] = b;
                break;
            }
        }
    }
    basis
}

/// Integer solutions of (x - c)^T A (x - c) <= bound for positive definite
/// rational A, sorted lexicographically.
pub fn fincke_pohst(a: &[Vec<Rat>], center: &[Rat], bound: &Rat) -> Vec<Vec<i64>> {
    let n = a.len();
    // A = U^T D U with U unit upper triangular
    let mut q = a.to_vec();
    let mut d = vec![Rat::zero(); n];
    let mut u = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        d[i] = q[i][i].clone();
        u[i][i] = Rat::one();
        for j in i + 1..n {
            u[i][j] = &q[i][j] / &d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let t = &u[i][j] * &d[i] * &u[i][k];
                q[j][k] -= t;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(
        i: usize,
        rem: &Rat,
        x: &mut Vec<i64>,
        d: &[Rat],
        u: &[Vec<Rat>],
        c: &[Rat],
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = d.len();
        // t_i = (x_i - c_i) + sum_{j>i} u_ij (x_j - c_j)
        let mut shift = -c[i].clone();
        for j in i + 1..n {
            shift += &u[i][j] * (ri(x[j]) - &c[j]);
        }
        let half = (rem / &d[i]).to_f64().unwrap_or(0.0).max(0.0).sqrt();
        let mid = -shift.to_f64().unwrap_or(0.0);
        let lo = (mid - half).floor() as i64 - 1;
        let hi = (mid + half).ceil() as i64 + 1;
        for xi in lo..=hi {
            let t = ri(xi) + &shift;
            let used = &d[i] * &t * &t;
            if &used > rem {
                continue;
            }
            x[i] = xi;
            let left = rem - used;
            if i == 0 {
                out.push(x.clone());
            } else {
                rec(i - 1, &left, x, d, u, c, out);
            }
        }
    }
    if bound.is_negative() {
        return out;
    }
    rec(n - 1, bound, &mut x, &d, &u, center, &mut out);
    out.sort();
    out
}
