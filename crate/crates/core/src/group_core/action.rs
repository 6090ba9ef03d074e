use super::group::GroupElement;
use crate::error::{Error, Result};
use crate::exact::{Mat, Scalar};
use crate::numeric::Cplx;

/// Point (tau, z) of H x C^N.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<T> {
    pub tau: T,
    pub z: Vec<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(tau: T, z: Vec<T>) -> Result<Self> {
        if !tau.im_positive() {
            return Err(Error::Domain("Im(tau) must be positive".into()));
        }
        Ok(Point { tau, z })
    }
    pub fn n(&self) -> usize {
        self.z.len()
    }
    fn z_col(&self) -> Mat<T> {
        Mat { rows: self.z.len(), cols: 1, data: self.z.clone() }
    }
}

/// beta(M, tau) = 1 / (c tau + d).
pub fn cocycle_beta<T: Scalar>(m: &Mat<T>, tau: &T) -> Result<T> {
    let den = m.get(1, 0).mul(tau).add(m.get(1, 1));
    den.inv().ok_or_else(|| Error::Domain("c tau + d = 0".into()))
}

/// w = z + X_1 tau + X_2 as a column.
fn shifted<T: Scalar>(g: &GroupElement<T>, p: &Point<T>) -> Mat<T> {
    let x1 = g.x.column(0);
    let x2 = g.x.column(1);
    p.z_col().add(&x1.scale(&p.tau)).add(&x2)
}

/// (M tau, beta (z + X_1 tau + X_2)).
pub fn act<T: Scalar>(g: &GroupElement<T>, p: &Point<T>) -> Result<Point<T>> {
    if g.n() != p.n() {
        return Err(Error::Malformed("rank mismatch between element and point".into()));
    }
    let beta = cocycle_beta(&g.m, &p.tau)?;
    let num = g.m.get(0, 0).mul(&p.tau).add(g.m.get(0, 1));
    let tau = num.mul(&beta);
    let w = shifted(g, p).scale(&beta);
    Point::new(tau, w.data)
}

/// a(g, (tau, z)) = kappa + X_2 X_1^T + X_1 z^T + z X_1^T + X_1 X_1^T tau - c beta w w^T.
pub fn cocycle_a<T: Scalar>(g: &GroupElement<T>, p: &Point<T>) -> Result<Mat<T>> {
    if g.n() != p.n() {
        return Err(Error::Malformed("rank mismatch between element and point".into()));
    }
    let beta = cocycle_beta(&g.m, &p.tau)?;
    let x1 = g.x.column(0);
    let x2 = g.x.column(1);
    let z = p.z_col();
    let w = shifted(g, p);
    let cb = g.m.get(1, 0).mul(&beta);
    Ok(g.kappa
        .add(&x2.mul(&x1.transpose()))
        .add(&x1.mul(&z.transpose()))
        .add(&z.mul(&x1.transpose()))
        .add(&x1.mul(&x1.transpose()).scale(&p.tau))
        .sub(&w.mul(&w.transpose()).scale(&cb)))
}

/// alpha_L(g, p) = e(tr(L a(g, p))).
pub fn cocycle_alpha(l: &Mat<Cplx>, g: &GroupElement<Cplx>, p: &Point<Cplx>) -> Result<Cplx> {
    let a = cocycle_a(g, p)?;
    Ok(l.mul(&a).trace().e())
}
