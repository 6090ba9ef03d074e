//! Small dense matrices over an exact or floating field.

use super::gauss::GaussRat;
use crate::numeric::cplx::Cplx;
use std::fmt::Debug;

/// Field operations shared by the exact and numeric scalar types.
///
/// Constants are produced from an existing value (`zero_like`) so that
/// floating types can carry their precision along.
pub trait Scalar: Clone + Debug + PartialEq {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_gauss_like(&self, g: &GaussRat) -> Self;
    fn is_zero_value(&self) -> bool;
    fn zero_like(&self) -> Self {
        self.from_gauss_like(&GaussRat::zero())
    }
    fn one_like(&self) -> Self {
        self.from_gauss_like(&GaussRat::one())
    }
    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
    /// Magnitude for residual reporting.
    fn magnitude(&self) -> f64;
    /// Zero for exact types; below the working-precision noise floor for floats.
    fn is_negligible(&self) -> bool;
    /// Imaginary part strictly positive.
    fn im_positive(&self) -> bool;
}

impl Scalar for GaussRat {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        GaussRat::inv(self)
    }
    fn from_gauss_like(&self, g: &GaussRat) -> Self {
        g.clone()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        let (a, b) = self.to_f64_pair();
        a.hypot(b)
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn im_positive(&self) -> bool {
        use num_traits::Signed;
        self.im.is_positive()
    }
}

impl Scalar for Cplx {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Cplx::inv(self))
        }
    }
    fn from_gauss_like(&self, g: &GaussRat) -> Self {
        Cplx::from_gauss(&self.ctx(), g)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64()
    }
    fn is_negligible(&self) -> bool {
        let floor = 2f64.powi(-((self.prec() / 2) as i32));
        self.magnitude() < floor
    }
    fn im_positive(&self) -> bool {
        self.im.is_sign_positive() && !self.im.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> T) -> Self {
        let mut f = f;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }
    pub fn zeros(rows: usize, cols: usize, like: &T) -> Self {
        Self::from_fn(rows, cols, |_, _| like.zero_like())
    }
    pub fn identity(n: usize, like: &T) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { like.one_like() } else { like.zero_like() })
    }
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }
    pub fn neg(&self) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.neg()).collect() }
    }
    pub fn scale(&self, s: &T) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let like = self.data.first().or(o.data.first());
        let Some(like) = like else {
            return Mat { rows: self.rows, cols: o.cols, data: Vec::new() };
        };
        let zero = like.zero_like();
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
            }
            acc
        })
    }
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
    pub fn trace(&self) -> T {
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_value())
    }
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }
    /// Column `j` as an `rows x 1` matrix.
    pub fn column(&self, j: usize) -> Self {
        Self::from_fn(self.rows, 1, |i, _| self.get(i, j).clone())
    }
    /// Copy `block` into `self` at offset (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }
    /// Determinant by fraction-free elimination with pivoting.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            panic!("determinant of an empty matrix needs a scalar template");
        }
        let mut a = self.clone();
        let mut det = a.data[0].one_like();
        for c in 0..n {
            let Some(p) = (c..n).max_by(|&x, &y| {
                a.get(x, c).magnitude().partial_cmp(&a.get(y, c).magnitude()).unwrap()
            }) else {
                unreachable!()
            };
            if a.get(p, c).is_zero_value() {
                return det.zero_like();
            }
            if p != c {
                for j in 0..n {
                    let t = a.get(p, j).clone();
                    a.set(p, j, a.get(c, j).clone());
                    a.set(c, j, t);
                }
                det = det.neg();
            }
            let piv = a.get(c, c).clone();
            det = det.mul(&piv);
            let pinv = piv.inv().unwrap();
            for r in c + 1..n {
                let f = a.get(r, c).mul(&pinv);
                if f.is_zero_value() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(r, j).sub(&f.mul(a.get(c, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }
    /// Inverse by Gauss-Jordan; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let like = self.data[0].clone();
        let mut a = self.clone();
        let mut inv = Self::identity(n, &like);
        for c in 0..n {
            let p = (c..n).max_by(|&x, &y| {
                a.get(x, c).magnitude().partial_cmp(&a.get(y, c).magnitude()).unwrap()
            })?;
            if a.get(p, c).is_zero_value() {
                return None;
            }
            if p != c {
                for j in 0..n {
                    let t = a.get(p, j).clone();
                    a.set(p, j, a.get(c, j).clone());
                    a.set(c, j, t);
                    let t = inv.get(p, j).clone();
                    inv.set(p, j, inv.get(c, j).clone());
                    inv.set(c, j, t);
                }
            }
            let pinv = a.get(c, c).inv()?;
            for j in 0..n {
                a.set(c, j, a.get(c, j).mul(&pinv));
                inv.set(c, j, inv.get(c, j).mul(&pinv));
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone();
                if f.is_zero_value() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j).sub(&f.mul(a.get(c, j))));
                    inv.set(r, j, inv.get(r, j).sub(&f.mul(inv.get(c, j))));
                }
            }
        }
        Some(inv)
    }
    /// Adjugate, computed from cofactors (exact for exact scalars).
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let like = self.data[0].clone();
        if n == 1 {
            return Self::identity(1, &like);
        }
        Self::from_fn(n, n, |i, j| {
            // adj[i][j] = (-1)^(i+j) M_{ji}
            let minor = Self::from_fn(n - 1, n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                self.get(rr, cc).clone()
            });
            let d = minor.det();
            if (i + j) % 2 == 1 {
                d.neg()
            } else {
                d
            }
        })
    }
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl Mat<GaussRat> {
    pub fn from_i64(rows: usize, cols: usize, v: &[i64]) -> Self {
        assert_eq!(v.len(), rows * cols);
        Mat { rows, cols, data: v.iter().map(|&x| GaussRat::int(x)).collect() }
    }
    pub fn to_cplx(&self, ctx: &crate::numeric::cplx::PrecisionContext) -> Mat<Cplx> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|g| Cplx::from_gauss(ctx, g)).collect() }
    }
}
