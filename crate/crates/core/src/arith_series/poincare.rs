//! Maass-Jacobi Poincare series: seed, Casimir eigenvalue and the Fourier
//! coefficients as Kloosterman-Bessel sums, including the skew-holomorphic
//! case and the duality between weights k and N + 2 - k.

use super::expansion::{FourierIndex, Profile, TermFn};
use super::kloosterman::kloosterman;
use super::lattice::{GramLattice, Rat};
use crate::error::{Error, Result};
use crate::exact::GaussRat;
use crate::numeric::{Cplx, PrecisionContext};
use crate::opcalc::{apply_op, build_casimir_op, eval_at, random_point};
use crate::specfun;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Float;

fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn half_n(n: usize) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(2))
}

/// Eigenvalue of the Casimir operator on the seed of weight k and spectral
/// parameter s: 2s(1 - s) + (k^2 - k(N + 2) + N(N + 4)/4) / 2.
pub fn casimir_eigenvalue(k: &Rat, n: usize, s: &Rat) -> Rat {
    let nn = ri(n as i64);
    let two = ri(2);
    &two * s * (Rat::one() - s) + (k * k - k * (&nn + &two) + &nn * (&nn + ri(4)) / ri(4)) / two
}

/// The same quantity with the overall sign reversed, as it is sometimes
/// quoted. Only the sign differs; see `casimir_eigenvalue`.
pub fn casimir_eigenvalue_printed(k: &Rat, n: usize, s: &Rat) -> Rat {
    -casimir_eigenvalue(k, n, s)
}

/// phi(tau, z) = M_{s, k - N/2}(pi D y / |L|) e(-i D y / 4|L|) q^n zeta^r.
pub fn phi_seed(lattice: &GramLattice, k: &Rat, s: &Rat, n: &Rat, r: &[i64]) -> Result<TermFn> {
    if r.len() != lattice.rank() {
        return Err(Error::Malformed("r has the wrong length".into()));
    }
    let idx = FourierIndex::new(n.clone(), r.to_vec());
    if lattice.discriminant(n, r).is_zero() {
        return Err(Error::Domain("the seed needs D(n, r) != 0".into()));
    }
    Ok(TermFn::new(lattice, idx, Profile::MProfile { k: k.clone(), s: s.clone() }, GaussRat::one()))
}

/// Relative residual of C phi = lambda phi at sampled points.
#[derive(Clone, Debug)]
pub struct EigenReport {
    pub eigenvalue: Rat,
    pub printed: Rat,
    pub samples: usize,
    /// max |C phi - lambda phi| / |phi|
    pub residual: f64,
    /// the same with the printed value
    pub printed_residual: f64,
}

pub fn eigen_check(
    lattice: &GramLattice,
    k: &Rat,
    s: &Rat,
    n: &Rat,
    r: &[i64],
    samples: usize,
    seed: u64,
    ctx: &PrecisionContext,
) -> Result<EigenReport> {
    let nr = lattice.rank();
    let phi = phi_seed(lattice, k, s, n, r)?;
    let op = build_casimir_op(&lattice.index_data());
    let lam = casimir_eigenvalue(k, nr, s);
    let printed = casimir_eigenvalue_printed(k, nr, s);
    let lam_f = ctx.rat(&lam);
    let pr_f = ctx.rat(&printed);
    let kg = GaussRat::real(k.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut res = 0f64;
    let mut pres = 0f64;
    for _ in 0..samples {
        let p = random_point(nr, &mut rng, ctx)?;
        let cf = apply_op(&op, &kg, &phi, &p, None, ctx)?;
        let f = eval_at(&phi, &p)?;
        let scale = f.abs();
        let d1 = (&cf - &f.scale(&lam_f)).abs() / &scale;
        let d2 = (&cf - &f.scale(&pr_f)).abs() / &scale;
        res = res.max(d1.to_f64());
        pres = pres.max(d2.to_f64());
    }
    Ok(EigenReport { eigenvalue: lam, printed, samples, residual: res, printed_residual: pres })
}

/// Parameters of P_{k, L, s}^{(n, r)}.
#[derive(Clone, Debug)]
pub struct PoincareParams {
    pub k: i64,
    pub s: Rat,
    pub n: i64,
    pub r: Vec<i64>,
    pub c_max: u64,
    pub jobs: usize,
}

/// A truncated Fourier coefficient.
#[derive(Clone, Debug)]
pub struct CoeffValue {
    /// the coefficient times its profile at the requested y
    pub value: Cplx,
    /// the y-independent factor in front of the profile
    pub constant: Cplx,
    /// the truncated c-sum alone
    pub c_sum: Cplx,
    /// max |term| over c in (c_max/2, c_max] divided by |partial sum|
    pub tail: f64,
    pub c_max: u64,
}

/// sum_{c <= c_max} c^{-(N+2)/2} K_c(n, r, n', r') Z(pi sqrt|D D'| / (c |L|)),
/// Z = J_order or I_order. The c-range is split over `jobs` threads and
/// reduced in order of c so the result does not depend on `jobs`.
#[allow(clippy::too_many_arguments)]
fn bessel_c_sum(
    lattice: &GramLattice,
    n: i64,
    r: &[i64],
    n2: i64,
    r2: &[i64],
    order: &Float,
    use_i: bool,
    dd: &Rat,
    c_max: u64,
    jobs: usize,
    ctx: &PrecisionContext,
) -> Result<(Cplx, f64)> {
    if c_max == 0 {
        return Ok((Cplx::zero(ctx), 0.0));
    }
    let wctx = ctx.with_extra(16);
    let base = ctx_sqrt(&wctx, &dd.abs()) * wctx.pi() / wctx.rat(lattice.det());
    let exp_c = Float::with_val(wctx.bits, -(lattice.rank() as f64 + 2.0) / 2.0);
    let term = |c: u64| -> Result<Cplx> {
        let kl = kloosterman(c, lattice, n, r, n2, r2, &wctx)?;
        if kl.is_zero() {
            return Ok(kl);
        }
        let x = Float::with_val(wctx.bits, &base / c);
        let z = if use_i { specfun::bessel_i(order, &x, &wctx)? } else { specfun::bessel_j(order, &x, &wctx)? };
        let w = rug::ops::Pow::pow(Float::with_val(wctx.bits, c), &exp_c);
        Ok(kl.scale(&(z * w)))
    };
    let jobs = jobs.max(1).min(c_max as usize);
    let mut terms: Vec<Option<Result<Cplx>>> = (0..c_max).map(|_| None).collect();
    if jobs == 1 {
        for c in 1..=c_max {
            terms[(c - 1) as usize] = Some(term(c));
        }
    } else {
        let parts: Vec<Vec<(u64, Result<Cplx>)>> = std::thread::scope(|sc| {
            let hs: Vec<_> = (0..jobs)
                .map(|t| {
                    let term = &term;
                    sc.spawn(move || (1..=c_max).filter(|c| (c - 1) as usize % jobs == t).map(|c| (c, term(c))).collect::<Vec<_>>())
                })
                .collect();
            hs.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        for part in parts {
            for (c, v) in part {
                terms[(c - 1) as usize] = Some(v);
            }
        }
    }
    // individual Kloosterman sums can vanish, so the tail estimate uses the
    // largest term in the upper half of the c-range
    let mut acc = Cplx::zero(&wctx);
    let mut last = Float::new(wctx.bits);
    for (i, t) in terms.into_iter().enumerate() {
        let v = t.expect("all c computed")?;
        if 2 * (i as u64 + 1) > c_max {
            last = last.max(&v.abs());
        }
        acc = &acc + &v;
    }
    let tail = if acc.is_zero() { 0.0 } else { (last / acc.abs()).to_f64() };
    Ok((acc.with_prec(ctx.bits), tail))
}

fn ctx_sqrt(ctx: &PrecisionContext, q: &Rat) -> Float {
    ctx.rat(q).sqrt()
}

/// i^m
fn i_pow(m: i64, ctx: &PrecisionContext) -> Cplx {
    match m.rem_euclid(4) {
        0 => Cplx::one(ctx),
        1 => Cplx::i(ctx),
        2 => Cplx::from_f64(ctx, -1.0, 0.0),
        _ => Cplx::from_f64(ctx, 0.0, -1.0),
    }
}

/// q^e on the principal branch.
fn principal_pow(q: &Rat, e: &Float, ctx: &PrecisionContext) -> Cplx {
    let m = Float::with_val(ctx.bits, rug::ops::Pow::pow(ctx.rat(&q.abs()), e));
    if q.is_negative() {
        let ang = Float::with_val(ctx.bits, ctx.pi() * e);
        let (s, c) = ang.sin_cos(Float::new(ctx.bits));
        Cplx::new(c * &m, s * m)
    } else {
        Cplx::from_real(m)
    }
}

fn is_nonpos_int(q: &Rat) -> bool {
    q.is_integer() && !q.is_positive()
}

/// 2^{1 - N/2} pi |L|^{-1/2}
fn base_prefactor(lattice: &GramLattice, ctx: &PrecisionContext) -> Float {
    let nr = lattice.rank() as f64;
    let two = Float::with_val(ctx.bits, 2);
    let p = rug::ops::Pow::pow(two, 1.0 - nr / 2.0);
    let p = Float::with_val(ctx.bits, p * ctx.pi());
    p / ctx_sqrt(ctx, lattice.det())
}

/// b-part of the (n', r') coefficient of P_{k, L, s}^{(n, r)}:
///
/// 2^{1-N/2} pi i^{-k} |L|^{-1/2} Gamma(2s) / Gamma(s - sgn(D')(k/2 - N/4))
/// (D'/D)^{k/2 - (N+2)/4} W(pi D' y / |L|) e(-i D' y / 4|L|)
/// sum_c c^{-(N+2)/2} K_c(n, r, n', r') (J or I)_{2s-1}(pi sqrt|D D'| / (c |L|)).
pub fn poincare_coeff_b(
    lattice: &GramLattice,
    p: &PoincareParams,
    n2: i64,
    r2: &[i64],
    y: &Float,
    ctx: &PrecisionContext,
) -> Result<CoeffValue> {
    let nr = lattice.rank();
    if p.r.len() != nr || r2.len() != nr {
        return Err(Error::Malformed("index vectors must have length N".into()));
    }
    let d = lattice.discriminant(&ri(p.n), &p.r);
    let d2 = lattice.discriminant(&ri(n2), r2);
    if d.is_zero() {
        return Err(Error::Domain("the seed needs D(n, r) != 0".into()));
    }
    if d2.is_zero() {
        return Err(Error::Unsupported("coefficients with D(n', r') = 0 are not computed".into()));
    }
    if p.s <= Rat::one() + half_n(nr) {
        return Err(Error::Domain("the series needs Re s > 1 + N/2".into()));
    }
    let k = ri(p.k);
    let sgn = if d2.is_positive() { ri(1) } else { ri(-1) };
    let gamma_arg = &p.s - sgn * (&k / ri(2) - ri(nr as i64) / ri(4));
    if is_nonpos_int(&gamma_arg) {
        return Err(Error::Pole(format!("Gamma({gamma_arg}) in the coefficient")));
    }
    let wctx = ctx.with_extra(16);
    let s_f = wctx.rat(&p.s);
    let g2s = Float::with_val(wctx.bits, &s_f * 2u32).gamma();
    let gden = wctx.rat(&gamma_arg).gamma();
    let e = wctx.rat(&(&k / ri(2) - ri(nr as i64 + 2) / ri(4)));
    let ratio = principal_pow(&(&d2 / &d), &e, &wctx);
    let order = Float::with_val(wctx.bits, &s_f * 2u32) - 1u32;
    let dd = &d * &d2;
    let (sum, tail) = bessel_c_sum(lattice, p.n, &p.r, n2, r2, &order, dd.is_negative(), &dd, p.c_max, p.jobs, &wctx)?;
    let pre = Cplx::from_real(base_prefactor(lattice, &wctx) * g2s / gden);
    let constant = &(&(&pre * &i_pow(-p.k, &wctx)) * &ratio) * &sum;
    // profile at y
    let t = Float::with_val(wctx.bits, wctx.rat(&(&d2 / lattice.det())) * wctx.pi()) * y;
    let kappa = wctx.rat(&(&k - half_n(nr)));
    let w = specfun::whittaker_w_renorm(&s_f, &kappa, &t, &wctx)?;
    let ex = Float::with_val(wctx.bits, &t / 2u32).exp();
    let value = constant.scale(&(w * ex));
    Ok(CoeffValue {
        value: value.with_prec(ctx.bits),
        constant: constant.with_prec(ctx.bits),
        c_sum: sum.with_prec(ctx.bits),
        tail,
        c_max: p.c_max,
    })
}

/// c(n', r') = b(n', r') + (-1)^k b(n', -r').
pub fn full_coeff_c(
    lattice: &GramLattice,
    p: &PoincareParams,
    n2: i64,
    r2: &[i64],
    y: &Float,
    ctx: &PrecisionContext,
) -> Result<CoeffValue> {
    let a = poincare_coeff_b(lattice, p, n2, r2, y, ctx)?;
    let neg: Vec<i64> = r2.iter().map(|x| -x).collect();
    let b = poincare_coeff_b(lattice, p, n2, &neg, y, ctx)?;
    let sg = if p.k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(CoeffValue {
        value: &a.value + &b.value.scale_f64(sg),
        constant: &a.constant + &b.constant.scale_f64(sg),
        c_sum: &a.c_sum + &b.c_sum.scale_f64(sg),
        tail: a.tail.max(b.tail),
        c_max: p.c_max,
    })
}

/// Coefficient of the skew-holomorphic Poincare series.
#[derive(Clone, Debug)]
pub struct SkewCoeff {
    /// b(n', r')
    pub b: Cplx,
    /// b(n', r') + (-1)^k b(n', -r')
    pub c: Cplx,
    pub tail: f64,
}

/// Coefficient of e(-i D' y / 2|L|) q^{n'} zeta^{r'} in the skew-holomorphic
/// Poincare series of weight k >= 3:
///
/// b = 2^{1-N/2} pi i^{1-k} |L|^{-1/2} (D'/D)^{k/2 - (N+2)/4}
/// sum_c c^{-(N+2)/2} K_c(n, r, n', -r') J_{k - (N+2)/2}(pi sqrt(D D') / (|L| c)).
#[allow(clippy::too_many_arguments)]
pub fn skew_poincare_coeff(
    lattice: &GramLattice,
    k: i64,
    n: i64,
    r: &[i64],
    n2: i64,
    r2: &[i64],
    c_max: u64,
    jobs: usize,
    ctx: &PrecisionContext,
) -> Result<SkewCoeff> {
    let nr = lattice.rank();
    if r.len() != nr || r2.len() != nr {
        return Err(Error::Malformed("index vectors must have length N".into()));
    }
    if k < 3 {
        return Err(Error::Domain("the skew-holomorphic series needs k >= 3".into()));
    }
    let d = lattice.discriminant(&ri(n), r);
    let d2 = lattice.discriminant(&ri(n2), r2);
    if !d.is_positive() || !d2.is_positive() {
        return Err(Error::Domain("the skew-holomorphic series needs D, D' > 0".into()));
    }
    let wctx = ctx.with_extra(16);
    let order = wctx.rat(&(ri(k) - ri(nr as i64 + 2) / ri(2)));
    let e = wctx.rat(&(ri(k) / ri(2) - ri(nr as i64 + 2) / ri(4)));
    let ratio = principal_pow(&(&d2 / &d), &e, &wctx);
    let pre = &(&Cplx::from_real(base_prefactor(lattice, &wctx)) * &i_pow(1 - k, &wctx)) * &ratio;
    let dd = &d * &d2;
    let neg2: Vec<i64> = r2.iter().map(|x| -x).collect();
    let (s1, t1) = bessel_c_sum(lattice, n, r, n2, &neg2, &order, false, &dd, c_max, jobs, &wctx)?;
    let (s2, t2) = bessel_c_sum(lattice, n, r, n2, r2, &order, false, &dd, c_max, jobs, &wctx)?;
    let b = &pre * &s1;
    let bneg = &pre * &s2;
    let sg = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let c = &b + &bneg.scale_f64(sg);
    Ok(SkewCoeff { b: b.with_prec(ctx.bits), c: c.with_prec(ctx.bits), tail: t1.max(t2) })
}

/// One index pair of the duality comparison.
#[derive(Clone, Debug)]
pub struct DualityRow {
    pub n: i64,
    pub r: Vec<i64>,
    pub n2: i64,
    pub r2: Vec<i64>,
    /// y-independent factor of the (n', r') coefficient of P_k^{(n, r)}
    pub lhs: Cplx,
    /// y-independent factor of the (n, r) coefficient of P_{N+2-k}^{(n', r')}
    pub rhs: Cplx,
    pub ratio: Cplx,
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub k: i64,
    pub dual_k: i64,
    pub rows: Vec<DualityRow>,
    /// max_i |ratio_i - ratio_0| / |ratio_0|
    pub spread: f64,
}

/// Compares the coefficients of P_{k, L, s}^{(n, r)} at (n', r') with those of
/// P_{N+2-k, L, s}^{(n', r')} at (n, r). Within one sign regime of (D, D')
/// the ratio of the y-independent parts should not depend on the pair.
pub fn duality_report(
    lattice: &GramLattice,
    k: i64,
    s: &Rat,
    pairs: &[((i64, Vec<i64>), (i64, Vec<i64>))],
    c_max: u64,
    jobs: usize,
    ctx: &PrecisionContext,
) -> Result<DualityReport> {
    let nr = lattice.rank() as i64;
    let dual_k = nr + 2 - k;
    let y = ctx.float(1.0);
    let mut rows = Vec::new();
    for ((n, r), (n2, r2)) in pairs {
        let p1 = PoincareParams { k, s: s.clone(), n: *n, r: r.clone(), c_max, jobs };
        let p2 = PoincareParams { k: dual_k, s: s.clone(), n: *n2, r: r2.clone(), c_max, jobs };
        let lhs = poincare_coeff_b(lattice, &p1, *n2, r2, &y, ctx)?.constant;
        let rhs = poincare_coeff_b(lattice, &p2, *n, r, &y, ctx)?.constant;
        if rhs.is_zero() {
            return Err(Error::Singular("dual coefficient vanishes".into()));
        }
        let ratio = &lhs * &rhs.inv();
        rows.push(DualityRow { n: *n, r: r.clone(), n2: *n2, r2: r2.clone(), lhs, rhs, ratio });
    }
    let mut spread = 0f64;
    if let Some(first) = rows.first() {
        let r0 = first.ratio.clone();
        for row in &rows {
            let d = (&row.ratio - &r0).abs() / r0.abs();
            spread = spread.max(d.to_f64());
        }
    }
    Ok(DualityReport { k, dual_k, rows, spread })
}
