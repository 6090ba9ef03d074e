#![allow(dead_code)]

use jacobi_core::exact::{GaussRat, Mat};
use jacobi_core::group_core::{j2, GroupElement};
use jacobi_core::numeric::{Cplx, PrecisionContext};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut impl Rng) -> GaussRat {
    GaussRat::frac(r.gen_range(-6..=6), r.gen_range(1..=4))
}

/// SL2(Z) word in the generators T^a and its transpose.
pub fn random_sl2z(r: &mut impl Rng) -> Mat<GaussRat> {
    let mut m = Mat::from_i64(2, 2, &[1, 0, 0, 1]);
    for _ in 0..r.gen_range(1..=3) {
        let a = r.gen_range(-2..=2);
        let b = r.gen_range(-2..=2);
        m = m.mul(&Mat::from_i64(2, 2, &[1, a, 0, 1])).mul(&Mat::from_i64(2, 2, &[1, 0, b, 1]));
    }
    m
}

/// Random exact element with rational X and kappa chosen to satisfy the
/// symmetry invariant.
pub fn random_exact_element(r: &mut impl Rng, n: usize, integral: bool) -> GroupElement<GaussRat> {
    let m = random_sl2z(r);
    let pick = |r: &mut ChaCha8Rng| if integral { GaussRat::int(r.gen_range(-3..=3)) } else { small_rat(r) };
    let mut rr = ChaCha8Rng::seed_from_u64(r.gen());
    let x = Mat::from_fn(n, 2, |_, _| pick(&mut rr));
    let mut s = Mat::zeros(n, n, &GaussRat::zero());
    for i in 0..n {
        for j in i..n {
            let v = pick(&mut rr);
            s.set(i, j, v.clone());
            s.set(j, i, v);
        }
    }
    let half = GaussRat::frac(1, 2);
    let kappa = s.sub(&x.mul(&j2(&half)).mul(&x.transpose()).scale(&half));
    GroupElement::new(m, x, kappa).unwrap()
}

pub fn to_cplx_element(g: &GroupElement<GaussRat>, ctx: &PrecisionContext) -> GroupElement<Cplx> {
    GroupElement { m: g.m.to_cplx(ctx), x: g.x.to_cplx(ctx), kappa: g.kappa.to_cplx(ctx) }
}

pub fn cplx(ctx: &PrecisionContext, re: f64, im: f64) -> Cplx {
    Cplx::from_f64(ctx, re, im)
}

pub fn random_point(r: &mut impl Rng, n: usize, ctx: &PrecisionContext) -> jacobi_core::group_core::Point<Cplx> {
    let tau = cplx(ctx, r.gen_range(-0.5..0.5), r.gen_range(0.6..1.6));
    let z = (0..n).map(|_| cplx(ctx, r.gen_range(-0.5..0.5), r.gen_range(-0.5..0.5))).collect();
    jacobi_core::group_core::Point::new(tau, z).unwrap()
}

/// exp of a square matrix by scaling and squaring of the Taylor series.
pub fn matrix_exp(a: &Mat<Cplx>, ctx: &PrecisionContext) -> Mat<Cplx> {
    let one = Cplx::one(ctx);
    let mut s = 0;
    while a.max_abs() * a.rows as f64 / 2f64.powi(s) > 0.5 {
        s += 1;
    }
    let sc = a.scale(&Cplx::from_f64(ctx, 2f64.powi(-s), 0.0));
    let mut term = Mat::identity(a.rows, &one);
    let mut acc = term.clone();
    for k in 1..80 {
        term = term.mul(&sc).scale(&Cplx::from_gauss(ctx, &GaussRat::frac(1, k)));
        acc = acc.add(&term);
    }
    for _ in 0..s {
        acc = acc.mul(&acc);
    }
    acc
}
