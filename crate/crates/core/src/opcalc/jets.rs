//! Numeric application of operators through truncated Taylor jets in the
//! Wirtinger coordinates (tau, taubar, z_1.., zbar_1..), treated as
//! independent variables.

use super::builders::{build_d_minus, build_raising_lowering};
use super::coeff::{CoeffPoint, IndexData};
use super::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::exact::{GaussRat, Mat};
use crate::group_core::{act, cocycle_alpha, cocycle_beta, GroupElement, Point};
use crate::numeric::{Cplx, Jet, JetShape, PrecisionContext};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use std::sync::Arc;

/// A function of (tau, taubar, z, zbar) that can be evaluated on jets.
pub trait JetFn: Send + Sync {
    /// `vars` holds jets of tau, taubar, z_1..z_N, zbar_1..zbar_N in that
    /// order.
    fn eval_jet(&self, vars: &[Jet]) -> Result<Jet>;
}

impl<F> JetFn for F
where
    F: Fn(&[Jet]) -> Result<Jet> + Send + Sync,
{
    fn eval_jet(&self, vars: &[Jet]) -> Result<Jet> {
        self(vars)
    }
}

/// Coordinate jets at `p` up to degree `deg`.
pub fn coordinate_jets(p: &Point<Cplx>, deg: usize) -> Vec<Jet> {
    let n = p.n();
    let shape = JetShape::get(2 + 2 * n, deg);
    let mut v = vec![Jet::variable(&shape, 0, p.tau.clone()), Jet::variable(&shape, 1, p.tau.conj())];
    for j in 0..n {
        v.push(Jet::variable(&shape, 2 + j, p.z[j].clone()));
    }
    for j in 0..n {
        v.push(Jet::variable(&shape, 2 + n + j, p.z[j].conj()));
    }
    v
}

/// Value of `f` at `p`.
pub fn eval_at(f: &dyn JetFn, p: &Point<Cplx>) -> Result<Cplx> {
    Ok(f.eval_jet(&coordinate_jets(p, 0))?.value().clone())
}

/// (T f)(p) for input weight `k`, with jets of degree `deg` (at least the
/// order of T; `None` uses the order).
pub fn apply_op(
    op: &DiffOp,
    k: &GaussRat,
    f: &dyn JetFn,
    p: &Point<Cplx>,
    deg: Option<usize>,
    ctx: &PrecisionContext,
) -> Result<Cplx> {
    let ord = op.order();
    let deg = deg.unwrap_or(ord);
    if deg < ord {
        return Err(Error::JetDegree { have: deg, need: ord });
    }
    if p.n() != op.n {
        return Err(Error::Malformed("rank mismatch between operator and point".into()));
    }
    let jet = f.eval_jet(&coordinate_jets(p, deg))?;
    let cp = CoeffPoint::new(op.ring(), k, &p.tau, &p.z, ctx);
    let mut acc = Cplx::zero(ctx);
    for (m, c) in &op.terms {
        let d = jet.derivative(m)?;
        acc = &acc + &(&cp.eval(c, ctx) * &d);
    }
    Ok(acc)
}

/// exp of a linear plus quadratic form in the coordinates.
#[derive(Clone, Debug)]
pub struct GaussianSeed {
    pub lin: Vec<Cplx>,
    pub quad: Vec<Vec<Cplx>>,
}

impl GaussianSeed {
    pub fn random(n: usize, rng: &mut ChaCha8Rng, ctx: &PrecisionContext) -> Self {
        let m = 2 + 2 * n;
        let mut r = |s: f64| Cplx::from_f64(ctx, rng.gen_range(-s..s), rng.gen_range(-s..s));
        let lin = (0..m).map(|_| r(0.6)).collect();
        let quad = (0..m).map(|_| (0..m).map(|_| r(0.25)).collect()).collect();
        GaussianSeed { lin, quad }
    }
}

impl JetFn for GaussianSeed {
    fn eval_jet(&self, vars: &[Jet]) -> Result<Jet> {
        let ctx = vars[0].ctx();
        let mut q = Jet::zero(&vars[0].shape, &ctx);
        for (i, vi) in vars.iter().enumerate() {
            let mut inner = vi.scale(&self.lin[i]);
            for (j, vj) in vars.iter().enumerate().skip(i) {
                inner = inner.add(&vi.mul(vj).scale(&self.quad[i][j]));
            }
            q = q.add(&inner);
        }
        Ok(q.exp())
    }
}

/// f |_{k,k',L} [g] as a jet function; g must be real.
pub struct SlashedJetFn {
    pub f: Arc<dyn JetFn>,
    pub g: GroupElement<Cplx>,
    /// k - k'
    pub shift: i64,
    pub kc: BigRational,
    pub l: Mat<Cplx>,
}

impl JetFn for SlashedJetFn {
    fn eval_jet(&self, vars: &[Jet]) -> Result<Jet> {
        let n = self.g.n();
        let ctx = vars[0].ctx();
        let g = &self.g;
        let (a, b, c, d) = (g.m.get(0, 0), g.m.get(0, 1), g.m.get(1, 0), g.m.get(1, 1));
        let tau = &vars[0];
        let taub = &vars[1];
        let beta = tau.scale(c).add_const(d).recip();
        let betab = taub.scale(c).add_const(d).recip();
        let gtau = tau.scale(a).add_const(b).mul(&beta);
        let gtaub = taub.scale(a).add_const(b).mul(&betab);
        let x1: Vec<&Cplx> = (0..n).map(|j| g.x.get(j, 0)).collect();
        let x2: Vec<&Cplx> = (0..n).map(|j| g.x.get(j, 1)).collect();
        let w: Vec<Jet> = (0..n).map(|j| vars[2 + j].add(&tau.scale(x1[j])).add_const(x2[j])).collect();
        let wb: Vec<Jet> = (0..n).map(|j| vars[2 + n + j].add(&taub.scale(x1[j])).add_const(x2[j])).collect();
        let mut gv = vec![gtau, gtaub];
        gv.extend(w.iter().map(|x| x.mul(&beta)));
        gv.extend(wb.iter().map(|x| x.mul(&betab)));
        let fv = self.f.eval_jet(&gv)?;
        // tr(L a) with a = kappa + X2 X1^T + X1 z^T + z X1^T + X1 X1^T tau - c beta w w^T
        let cb = beta.scale(c);
        let mut tr = Jet::zero(&vars[0].shape, &ctx);
        for i in 0..n {
            for j in 0..n {
                let lji = self.l.get(j, i);
                if lji.is_zero() {
                    continue;
                }
                let mut aij = Jet::constant(&vars[0].shape, g.kappa.get(i, j) + &(x2[i] * x1[j]));
                aij = aij.add(&vars[2 + j].scale(x1[i])).add(&vars[2 + i].scale(x1[j]));
                aij = aij.add(&tau.scale(&(x1[i] * x1[j])));
                aij = aij.sub(&cb.mul(&w[i].mul(&w[j])));
                tr = tr.add(&aij.scale(lji));
            }
        }
        let two_pi_i = Cplx::new(ctx.zero(), Float::with_val(ctx.bits, 2 * ctx.pi()));
        let alpha = tr.scale(&two_pi_i).exp();
        let mut factor = beta.powi(self.shift).mul(&alpha);
        if self.kc != BigRational::from_integer(0.into()) {
            let kc = ctx.rat(&self.kc);
            factor = factor.mul(&beta.mul(&betab).pow_real(&kc));
        }
        Ok(fv.mul(&factor))
    }
}

/// A random real element of the extended Jacobi group of moderate size.
pub fn random_group_element(n: usize, rng: &mut ChaCha8Rng, ctx: &PrecisionContext) -> Result<GroupElement<Cplx>> {
    let re = |x: f64| Cplx::from_f64(ctx, x, 0.0);
    let a: f64 = rng.gen_range(0.6..1.5);
    let b: f64 = rng.gen_range(-0.7..0.7);
    let c: f64 = rng.gen_range(-0.7..0.7);
    let (ca, cb, cc) = (re(a), re(b), re(c));
    let cd = (&Cplx::one(ctx) + &(&cb * &cc)) * ca.inv();
    let m = Mat::from_rows(vec![vec![ca, cb], vec![cc, cd]]);
    let x = Mat::from_fn(n, 2, |_, _| re(rng.gen_range(-1.0..1.0)));
    let mut s = Mat::from_fn(n, n, |_, _| re(0.0));
    for i in 0..n {
        for j in i..n {
            let v = re(rng.gen_range(-1.0..1.0));
            s.set(i, j, v.clone());
            s.set(j, i, v);
        }
    }
    // kappa = S - X J2 X^T / 2 keeps the symmetry condition
    let j2 = crate::group_core::j2(&re(0.0));
    let half = ctx.float(0.5);
    let kappa = s.sub(&x.mul(&j2).mul(&x.transpose()).map(|v| v.scale(&half)));
    GroupElement::new(m, x, kappa)
}

pub fn random_point(n: usize, rng: &mut ChaCha8Rng, ctx: &PrecisionContext) -> Result<Point<Cplx>> {
    let tau = Cplx::from_f64(ctx, rng.gen_range(-1.0..1.0), rng.gen_range(0.5..2.0));
    let z = (0..n).map(|_| Cplx::from_f64(ctx, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    Point::new(tau, z)
}

/// Source and target slash actions for a covariance check.
#[derive(Clone, Debug)]
pub struct CovarianceWeights {
    pub k: BigRational,
    pub kc: BigRational,
    pub k_out: BigRational,
    pub kc_out: BigRational,
}

impl CovarianceWeights {
    /// From |_{k,L} to |_{k_out,L}, no conjugate weight.
    pub fn plain(k: BigRational, k_out: BigRational) -> Self {
        let z = BigRational::from_integer(0.into());
        CovarianceWeights { k, kc: z.clone(), k_out, kc_out: z }
    }
    pub fn invariant(k: BigRational) -> Self {
        Self::plain(k.clone(), k)
    }
}

#[derive(Clone, Debug)]
pub struct CovarianceReport {
    pub samples: usize,
    pub max_residual: f64,
    /// Largest |T(f|g)(p)| seen, for scale.
    pub max_value: f64,
}

fn integral_diff(a: &BigRational, b: &BigRational) -> Result<i64> {
    let d = a - b;
    if !d.is_integer() {
        return Err(Error::Domain("weight minus conjugate weight must be an integer".into()));
    }
    use num_traits::ToPrimitive;
    d.to_integer().to_i64().ok_or_else(|| Error::Range("weight difference too large".into()))
}

/// max over samples of |T(f|_{k,L}[g])(p) - ((T f)|_{k_out,L_out}[g])(p)|.
///
/// Samples (g, p, f) are drawn from a ChaCha stream seeded with `seed`; the
/// work is split across threads.
pub fn covariance_check(
    op: &DiffOp,
    w: &CovarianceWeights,
    l: &Mat<GaussRat>,
    l_out: &Mat<GaussRat>,
    samples: usize,
    seed: u64,
    ctx: &PrecisionContext,
) -> Result<CovarianceReport> {
    let n = op.n;
    let shift = integral_diff(&w.k, &w.kc)?;
    let shift_out = integral_diff(&w.k_out, &w.kc_out)?;
    let kg = GaussRat::real(w.k.clone());
    let lc = l.to_cplx(ctx);
    let loc = l_out.to_cplx(ctx);
    let wctx = ctx.with_extra(32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(samples);
    for _ in 0..samples {
        let g = random_group_element(n, &mut rng, &wctx)?;
        let p = random_point(n, &mut rng, &wctx)?;
        let f = GaussianSeed::random(n, &mut rng, &wctx);
        cases.push((g, p, f));
    }
    let threads = std::thread::available_parallelism().map(|x| x.get()).unwrap_or(1).min(samples.max(1));
    let chunk = samples.div_ceil(threads.max(1)).max(1);
    let results: Vec<Result<(f64, f64)>> = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .chunks(chunk)
            .map(|part| {
                let (kg, lc, loc, wctx) = (&kg, &lc, &loc, &wctx);
                s.spawn(move || -> Result<(f64, f64)> {
                    let mut worst = (0.0f64, 0.0f64);
                    for (g, p, f) in part {
                        let f: Arc<dyn JetFn> = Arc::new(f.clone());
                        let sl = SlashedJetFn { f: f.clone(), g: g.clone(), shift, kc: w.kc.clone(), l: lc.clone() };
                        let lhs = apply_op(op, kg, &sl, p, None, wctx)?;
                        let gp = act(g, p)?;
                        let tf = apply_op(op, kg, f.as_ref(), &gp, None, wctx)?;
                        let beta = cocycle_beta(&g.m, &p.tau)?;
                        let mut fac = &beta.powi(shift_out) * &cocycle_alpha(loc, g, p)?;
                        if w.kc_out != BigRational::from_integer(0.into()) {
                            let nb = beta.norm_sq();
                            let kc = wctx.rat(&w.kc_out);
                            fac = fac.scale(&Float::with_val(wctx.bits, rug::ops::Pow::pow(&nb, &kc)));
                        }
                        let rhs = &tf * &fac;
                        let res = (&lhs - &rhs).abs().to_f64();
                        worst.0 = worst.0.max(res);
                        worst.1 = worst.1.max(lhs.abs().to_f64());
                    }
                    Ok(worst)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("covariance worker panicked")).collect()
    });
    let mut rep = CovarianceReport { samples, max_residual: 0.0, max_value: 0.0 };
    for r in results {
        let (a, b) = r?;
        rep.max_residual = rep.max_residual.max(a);
        rep.max_value = rep.max_value.max(b);
    }
    Ok(rep)
}

/// xi f (p) = y^{k - 5/2} (D_- f)(p).
pub fn xi_apply(k: &BigRational, idx: &IndexData, f: &dyn JetFn, p: &Point<Cplx>, ctx: &PrecisionContext) -> Result<Cplx> {
    let dm = build_d_minus(idx);
    let kg = GaussRat::real(k.clone());
    let v = apply_op(&dm, &kg, f, p, None, ctx)?;
    let e = ctx.rat(k) - Float::with_val(ctx.bits, 2.5);
    Ok(v.scale(&Float::with_val(ctx.bits, rug::ops::Pow::pow(p.tau.im.clone(), &e))))
}

pub(crate) fn imag_part(a: &Jet, b: &Jet) -> Jet {
    // (a - b) / (2i)
    let ctx = a.ctx();
    let c = Cplx::new(ctx.zero(), ctx.float(-0.5));
    a.sub(b).scale(&c)
}

/// y^{-k} e(l taubar + h^T zbar + c L[v] / y).
#[derive(Clone, Debug)]
pub struct KernelSeed {
    pub k: BigRational,
    pub l_mat: Mat<GaussRat>,
    pub l: BigRational,
    pub h: Vec<BigRational>,
    pub c: Cplx,
}

impl JetFn for KernelSeed {
    fn eval_jet(&self, vars: &[Jet]) -> Result<Jet> {
        let n = self.h.len();
        let ctx = vars[0].ctx();
        let y = imag_part(&vars[0], &vars[1]);
        let v: Vec<Jet> = (0..n).map(|j| imag_part(&vars[2 + j], &vars[2 + n + j])).collect();
        let mut lv = Jet::zero(&vars[0].shape, &ctx);
        for a in 0..n {
            for b in 0..n {
                let lab = self.l_mat.get(a, b);
                if !lab.is_zero() {
                    lv = lv.add(&v[a].mul(&v[b]).scale(&Cplx::from_gauss(&ctx, lab)));
                }
            }
        }
        let mut ph = vars[1].scale(&Cplx::from_rat(&ctx, &self.l));
        for j in 0..n {
            ph = ph.add(&vars[2 + n + j].scale(&Cplx::from_rat(&ctx, &self.h[j])));
        }
        ph = ph.add(&lv.div(&y).scale(&self.c));
        let two_pi_i = Cplx::new(ctx.zero(), Float::with_val(ctx.bits, 2 * ctx.pi()));
        let mk = -ctx.rat(&self.k);
        Ok(y.pow_real(&mk).mul(&ph.scale(&two_pi_i).exp()))
    }
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    /// Constant c in e(c L[v]/y) solving the Y_+ conditions, averaged over
    /// sample points and coordinates.
    pub solved_constant: (f64, f64),
    /// Largest deviation of the per-point solutions from the average.
    pub constant_spread: f64,
    /// Residuals at the solved constant, relative to |f|.
    pub x_plus_residual: f64,
    pub y_plus_residual: f64,
    /// X_+ residual with the L[v] term switched off.
    pub x_plus_residual_at_zero: f64,
}

/// Build the kernel candidate and report how well it is annihilated by the
/// raising operators. The L[v] constant is solved from the Y_+ equations,
/// which are affine in it.
pub fn kernel_seed(
    k: &BigRational,
    idx: &IndexData,
    l: &BigRational,
    h: &[BigRational],
    samples: usize,
    seed: u64,
    ctx: &PrecisionContext,
) -> Result<KernelReport> {
    let n = idx.n;
    if h.len() != n {
        return Err(Error::Malformed("h must have N entries".into()));
    }
    let rl = build_raising_lowering(idx);
    let kg = GaussRat::real(k.clone());
    let mk = |c: Cplx| KernelSeed { k: k.clone(), l_mat: idx.l.clone(), l: l.clone(), h: h.to_vec(), c };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Point<Cplx>> = (0..samples).map(|_| random_point(n, &mut rng, ctx)).collect::<Result<_>>()?;
    let mut sols = Vec::new();
    for p in &pts {
        for j in 0..n {
            let r0 = apply_op(&rl.y_plus[j].op, &kg, &mk(Cplx::zero(ctx)), p, None, ctx)?;
            let r1 = apply_op(&rl.y_plus[j].op, &kg, &mk(Cplx::one(ctx)), p, None, ctx)?;
            let f0 = eval_at(&mk(Cplx::zero(ctx)), p)?;
            let f1 = eval_at(&mk(Cplx::one(ctx)), p)?;
            // the residual divided by f is affine in c
            let a0 = &r0 / &f0;
            let a1 = &r1 / &f1;
            let slope = &a1 - &a0;
            if slope.abs().to_f64() < 1e-30 {
                continue;
            }
            sols.push(-(&a0 / &slope));
        }
    }
    let c = if sols.is_empty() {
        Cplx::zero(ctx)
    } else {
        let mut s = Cplx::zero(ctx);
        for x in &sols {
            s = &s + x;
        }
        s.scale(&Float::with_val(ctx.bits, Float::with_val(ctx.bits, sols.len()).recip()))
    };
    let spread = sols.iter().map(|x| (x - &c).abs().to_f64()).fold(0.0, f64::max);
    let f = mk(c.clone());
    let f0 = mk(Cplx::zero(ctx));
    let mut xr: f64 = 0.0;
    let mut yr: f64 = 0.0;
    let mut x0: f64 = 0.0;
    for p in &pts {
        let fv = eval_at(&f, p)?.abs().to_f64();
        xr = xr.max(apply_op(&rl.x_plus.op, &kg, &f, p, None, ctx)?.abs().to_f64() / fv);
        for j in 0..n {
            yr = yr.max(apply_op(&rl.y_plus[j].op, &kg, &f, p, None, ctx)?.abs().to_f64() / fv);
        }
        let f0v = eval_at(&f0, p)?.abs().to_f64();
        x0 = x0.max(apply_op(&rl.x_plus.op, &kg, &f0, p, None, ctx)?.abs().to_f64() / f0v);
    }
    Ok(KernelReport {
        solved_constant: c.to_f64_pair(),
        constant_spread: spread,
        x_plus_residual: xr,
        y_plus_residual: yr,
        x_plus_residual_at_zero: x0,
    })
}
