use jacobi_core::arith_series::*;
use jacobi_core::exact::{rat, GaussRat};
use jacobi_core::numeric::{Cplx, PrecisionContext};
use jacobi_core::opcalc::{build_heat, JetFn};
use jacobi_core::specfun;
use jacobi_core::Error;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use std::collections::BTreeSet;
use std::sync::Arc;

const BITS: u32 = 128;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(BITS)
}

fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn lat(n: usize, v: &[i64]) -> GramLattice {
    GramLattice::from_i64(n, v).unwrap()
}

fn lattices() -> Vec<GramLattice> {
    vec![
        lat(1, &[1]),
        lat(1, &[3]),
        lat(2, &[1, 0, 0, 1]),
        lat(2, &[2, 1, 1, 2]),
        GramLattice::parse("1,1/2;1/2,1").unwrap(),
    ]
}

fn rel_c(a: &Cplx, b: &Cplx) -> f64 {
    let d = (a - b).abs();
    let s = b.abs();
    if s.is_zero() {
        d.to_f64()
    } else {
        (d / s).to_f64()
    }
}

// ---------------------------------------------------------------- lattices

#[test]
fn discriminant_examples() {
    let l = lat(1, &[1]);
    assert_eq!(l.discriminant(&ri(1), &[0]), ri(4));
    for n in -3..4 {
        for r in -4..5i64 {
            assert_eq!(l.discriminant(&ri(n), &[r]), ri(4 * n - r * r));
        }
    }
    let l = lat(1, &[3]);
    // |L|(4n - r^2/3) = 12n - r^2
    assert_eq!(l.discriminant(&ri(2), &[5]), ri(24 - 25));
}

#[test]
fn lattice_validation() {
    assert!(matches!(GramLattice::parse("1,2;3,1"), Err(Error::InvalidLattice(_))));
    assert!(matches!(GramLattice::parse("1,2;2,1"), Err(Error::InvalidLattice(_))));
    assert!(matches!(GramLattice::parse("1/2"), Err(Error::InvalidLattice(_))));
    assert!(matches!(GramLattice::parse("1,1/3;1/3,1"), Err(Error::InvalidLattice(_))));
    assert!(matches!(GramLattice::parse("-1"), Err(Error::InvalidLattice(_))));
    let l = GramLattice::parse("2,1/2;1/2,1").unwrap();
    assert_eq!(l.det(), &rat(7, 4));
    assert_eq!(GramLattice::parse("2,1/2,1/2,1").unwrap(), l);
}

#[test]
fn fincke_pohst_matches_box() {
    for l in lattices() {
        let n = l.rank();
        let zero = vec![Rat::zero(); n];
        for inv in [false, true] {
            for b in [0, 1, 3, 7] {
                let got: BTreeSet<Vec<i64>> = l.short_vectors(inv, &zero, &ri(b)).into_iter().collect();
                let mut want = BTreeSet::new();
                let m = 12i64;
                let mut x = vec![-m; n];
                loop {
                    let q = if inv { l.inv_quad(&x.iter().map(|&v| ri(v)).collect::<Vec<_>>()) } else { l.quad_int(&x) };
                    if q <= ri(b) {
                        want.insert(x.clone());
                    }
                    let mut i = 0;
                    while i < n && x[i] == m {
                        x[i] = -m;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                    x[i] += 1;
                }
                assert_eq!(got, want, "L {:?} inverse {inv} bound {b}", l.to_strings());
            }
        }
    }
}

#[test]
fn classes_partition() {
    for l in lattices() {
        let cls = l.classes();
        // |Z^N / (Z^N cap L Z^N)| divides |det 2L| and every r reduces into the list
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let r: Vec<i64> = (0..l.rank()).map(|_| rng.gen_range(-20..20)).collect();
            let mu = l.reduce_class(&r);
            assert!(cls.contains(&mu));
            assert!(l.congruent(&r, &mu));
        }
        for (i, a) in cls.iter().enumerate() {
            for b in &cls[i + 1..] {
                assert!(!l.congruent(a, b));
            }
        }
    }
}

proptest! {
    #[test]
    fn discriminant_plus_h(n in -20i64..20, r0 in -15i64..15, r1 in -15i64..15, which in 0usize..5) {
        let l = &lattices()[which];
        let r: Vec<i64> = [r0, r1][..l.rank()].to_vec();
        let d = l.discriminant(&ri(n), &r);
        let h = l.h_of_r(&r);
        prop_assert_eq!(d.clone() + h, ri(4 * n) * l.det());
        prop_assert_eq!(l.n_from_discriminant(&d, &r), ri(n));
    }
}

// ------------------------------------------------------------------ theta

fn box_theta(l: &GramLattice, mu: &[i64], bound: &Rat) -> BTreeSet<(Rat, Vec<i64>)> {
    let n = l.rank();
    let m = 15i64;
    let mut out = BTreeSet::new();
    let mut x = vec![-m; n];
    loop {
        if l.congruent(&x, mu) {
            let e = l.inv_quad(&x.iter().map(|&v| ri(v)).collect::<Vec<_>>()) / ri(4);
            if &e <= bound {
                out.insert((e, x.clone()));
            }
        }
        let mut i = 0;
        while i < n && x[i] == m {
            x[i] = -m;
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
    }
    out
}

#[test]
fn theta_lmu_examples() {
    let l = lat(1, &[2]);
    let t = theta_lmu(&l, &[0], &ri(2));
    let got: BTreeSet<(Rat, Vec<i64>)> = t.terms.keys().map(|k| (k.index.n.clone(), k.index.r.clone())).collect();
    let want: BTreeSet<(Rat, Vec<i64>)> =
        [(ri(0), vec![0]), (rat(1, 2), vec![2]), (rat(1, 2), vec![-2]), (ri(2), vec![4]), (ri(2), vec![-4])].into_iter().collect();
    assert_eq!(got, want);
    assert!(t.terms.values().all(|c| c.is_one()));

    let t = theta_lmu(&l, &[1], &ri(1));
    let got: BTreeSet<(Rat, Vec<i64>)> = t.terms.keys().map(|k| (k.index.n.clone(), k.index.r.clone())).collect();
    let want: BTreeSet<(Rat, Vec<i64>)> = [1i64, -1].iter().map(|&r| (rat(1, 8), vec![r])).collect();
    assert_eq!(got, want);

    assert!(theta_lmu(&l, &[1], &ri(0)).is_empty());
}

#[test]
fn theta_lmu_box_oracle() {
    for l in lattices() {
        for mu in l.classes() {
            for b in [0i64, 1, 2, 4] {
                let t = theta_lmu(&l, &mu, &ri(b));
                let got: BTreeSet<(Rat, Vec<i64>)> = t.terms.keys().map(|k| (k.index.n.clone(), k.index.r.clone())).collect();
                assert_eq!(got, box_theta(&l, &mu, &ri(b)), "L {:?} mu {mu:?} bound {b}", l.to_strings());
                for k in t.terms.keys() {
                    assert!(t.discriminant(&k.index).is_zero());
                }
            }
        }
    }
}

#[test]
fn theta_klr_examples() {
    let l = lat(1, &[1]);
    // k odd, r = 0: every lambda term carries 1 + (-1)^k
    assert!(theta_klr(3, &l, &[0], &ri(6), ThetaVariant::Printed).is_empty());
    let t = theta_klr(2, &l, &[0], &ri(4), ThetaVariant::Printed);
    let mut want = FourierExpansion::new(l.clone());
    for lam in [-2i64, -1, 0, 1, 2] {
        want.add(FourierIndex::int(lam * lam, &[2 * lam]), Profile::Constant, GaussRat::int(2));
    }
    assert_eq!(t, want);
    // lambda = 0 term: (1 + (-1)^k) zeta^r
    let l2 = lat(2, &[2, 1, 1, 2]);
    for k in [2i64, 3] {
        let t = theta_klr(k, &l2, &[1, 0], &ri(3), ThetaVariant::Printed);
        let c = t.coefficient(&FourierIndex::int(0, &[1, 0]), &Profile::Constant);
        assert_eq!(c, GaussRat::int(1 + if k % 2 == 0 { 1 } else { -1 }));
        let t = theta_klr(k, &l2, &[1, 0], &ri(3), ThetaVariant::NegatedR);
        assert_eq!(t.coefficient(&FourierIndex::int(0, &[1, 0]), &Profile::Constant), GaussRat::one());
        let sg = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(t.coefficient(&FourierIndex::int(0, &[-1, 0]), &Profile::Constant), GaussRat::int(sg));
    }
}

#[test]
fn theta_klr_brute_force() {
    let l = lat(2, &[2, 1, 1, 2]);
    let r = [1i64, -2];
    let bound = ri(5);
    for variant in [ThetaVariant::Printed, ThetaVariant::NegatedR] {
        let t = theta_klr(4, &l, &r, &bound, variant);
        let mut want = FourierExpansion::new(l.clone());
        for a in -8i64..=8 {
            for b in -8i64..=8 {
                let lam = [a, b];
                let lq = l.quad_int(&lam);
                let rl = ri(r[0] * a + r[1] * b);
                let two_l = [4 * a + 2 * b, 2 * a + 4 * b];
                for eps in [1i64, -1] {
                    let e = &lq + ri(eps) * &rl;
                    if e <= bound {
                        let rs = if eps == -1 && variant == ThetaVariant::NegatedR { -1 } else { 1 };
                        let z = vec![two_l[0] + rs * r[0], two_l[1] + rs * r[1]];
                        want.add(FourierIndex::new(e, z), Profile::Constant, GaussRat::one());
                    }
                }
            }
        }
        assert_eq!(t, want);
    }
}

// ------------------------------------------------------------- Kloosterman

/// Direct double sum with the exponent reduced as an exact rational.
fn kloosterman_oracle(c: i64, l: &GramLattice, n: i64, r: &[i64], n2: i64, r2: &[i64]) -> Cplx {
    let ctx = PrecisionContext::new(BITS + 32);
    let dim = l.rank();
    let mut acc = Cplx::zero(&ctx);
    for d in 0..c {
        if num_integer::gcd(d, c) != 1 {
            continue;
        }
        let dbar = (0..c).find(|e| (d * e) % c == 1 % c).unwrap();
        let mut lam = vec![0i64; dim];
        loop {
            let lq = l.quad_int(&lam);
            let dot = |a: &[i64]| ri(a.iter().zip(&lam).map(|(x, y)| x * y).sum::<i64>());
            let ex = (ri(dbar) * lq + ri(n2 * d) - dot(r2) + ri(dbar * n) + ri(dbar) * dot(r)) / ri(c);
            acc = &acc + &Cplx::from_rat(&ctx, &ex).e();
            let mut i = 0;
            while i < dim && lam[i] == c - 1 {
                lam[i] = 0;
                i += 1;
            }
            if i == dim {
                break;
            }
            lam[i] += 1;
        }
    }
    let rq: Vec<Rat> = r.iter().map(|&x| ri(x)).collect();
    let r2q: Vec<Rat> = r2.iter().map(|&x| ri(x)).collect();
    let pre = -l.inv_bilinear(&rq, &r2q) / ri(2 * c);
    &acc * &Cplx::from_rat(&ctx, &pre).e()
}

#[test]
fn kloosterman_examples() {
    let ctx = ctx();
    let l = lat(1, &[1]);
    // c = 1: e(-r L^{-1} r' / 2)
    for (r, r2) in [(0i64, 0i64), (1, 1), (1, 2), (3, -1)] {
        let k = kloosterman(1, &l, 2, &[r], -1, &[r2], &ctx).unwrap();
        let want = Cplx::from_rat(&ctx, &rat(-r * r2, 2)).e();
        assert!(rel_c(&k, &want) < 1e-35);
    }
    let k = kloosterman(2, &l, 1, &[0], 1, &[0], &ctx).unwrap();
    assert!(k.abs().to_f64() < 1e-35);
    assert!(matches!(kloosterman(0, &l, 1, &[0], 1, &[0], &ctx), Err(Error::Domain(_))));
}

#[test]
fn kloosterman_matches_oracle() {
    let ctx = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for l in lattices() {
        for _ in 0..6 {
            let c = rng.gen_range(1..=12);
            let r: Vec<i64> = (0..l.rank()).map(|_| rng.gen_range(-4..=4)).collect();
            let r2: Vec<i64> = (0..l.rank()).map(|_| rng.gen_range(-4..=4)).collect();
            let (n, n2) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let k = kloosterman(c as u64, &l, n, &r, n2, &r2, &ctx).unwrap();
            let o = kloosterman_oracle(c, &l, n, &r, n2, &r2);
            assert!((&k - &o).abs().to_f64() < 1e-30, "c {c}");
        }
    }
}

#[test]
fn kloosterman_symmetry() {
    let ctx = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ls = lattices();
    for t in 0..50 {
        let l = &ls[t % ls.len()];
        let c = rng.gen_range(1..=24u64);
        let r: Vec<i64> = (0..l.rank()).map(|_| rng.gen_range(-5..=5)).collect();
        let r2: Vec<i64> = (0..l.rank()).map(|_| rng.gen_range(-5..=5)).collect();
        let (n, n2) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        let a = kloosterman(c, l, n, &r, n2, &r2, &ctx).unwrap();
        let b = kloosterman(c, l, n2, &r2, n, &r, &ctx).unwrap();
        assert!((&a - &b).abs().to_f64() < 1e-30, "c {c} n {n} r {r:?} n' {n2} r' {r2:?}");
    }
}

// ------------------------------------------------------------- eigenvalue

#[test]
fn casimir_eigenvalue_values() {
    assert_eq!(casimir_eigenvalue_printed(&ri(0), 1, &ri(2)), rat(27, 8));
    assert_eq!(casimir_eigenvalue(&ri(0), 1, &ri(2)), rat(-27, 8));
    for n in 1..4usize {
        for k in -2..6i64 {
            let k = ri(k);
            let s1 = &k / ri(2) - ri(n as i64) / ri(4);
            let s2 = ri(1) + ri(n as i64) / ri(4) - &k / ri(2);
            assert!(casimir_eigenvalue(&k, n, &s1).is_zero());
            assert!(casimir_eigenvalue(&k, n, &s2).is_zero());
        }
    }
}

#[test]
fn seed_is_casimir_eigenfunction() {
    let ctx = ctx();
    let cases: Vec<(GramLattice, Rat, Rat, Rat, Vec<i64>)> = vec![
        (lat(1, &[1]), ri(0), ri(2), ri(-1), vec![1]),
        (lat(1, &[1]), ri(1), rat(5, 2), ri(2), vec![1]),
        (lat(1, &[2]), ri(3), rat(7, 3), ri(1), vec![3]),
        (lat(2, &[2, 1, 1, 2]), ri(2), rat(9, 4), ri(-1), vec![1, 0]),
        (lat(2, &[1, 0, 0, 1]), rat(5, 2), ri(3), ri(3), vec![1, 1]),
        // both roots of eigenvalue 0
        (lat(1, &[1]), ri(4), rat(7, 4), ri(1), vec![1]),
        (lat(1, &[1]), ri(4), rat(-3, 4), ri(1), vec![1]),
    ];
    for (l, k, s, n, r) in cases {
        let rep = eigen_check(&l, &k, &s, &n, &r, 3, 9, &ctx).unwrap();
        assert!(rep.residual < 1e-25, "k {k} s {s}: {}", rep.residual);
        if !rep.eigenvalue.is_zero() {
            assert!(rep.printed_residual > 1e-2);
        }
    }
}

#[test]
fn seed_errors() {
    let l = lat(1, &[1]);
    assert!(matches!(phi_seed(&l, &ri(1), &ri(2), &ri(1), &[2]), Err(Error::Domain(_))));
    assert!(matches!(phi_seed(&l, &ri(1), &ri(2), &ri(1), &[2, 1]), Err(Error::Malformed(_))));
}

// -------------------------------------------------------------- Poincare

fn params(k: i64, s: Rat, n: i64, r: &[i64], c_max: u64) -> PoincareParams {
    PoincareParams { k, s, n, r: r.to_vec(), c_max, jobs: 1 }
}

/// The c = 1 term assembled by hand from the special functions.
#[test]
fn poincare_first_term_oracle() {
    let ctx = ctx();
    let l = lat(1, &[1]);
    let y = ctx.float(0.75);
    for (k, n, r, n2, r2) in [(1i64, -1i64, 1i64, 1i64, 1i64), (2, -1, 1, -2, 1), (0, -2, 1, 3, 0)] {
        let s = rat(5, 2);
        let p = params(k, s.clone(), n, &[r], 1);
        let got = poincare_coeff_b(&l, &p, n2, &[r2], &y, &ctx).unwrap();
        let d = 4 * n - r * r;
        let d2 = 4 * n2 - r2 * r2;
        let b = BITS + 32;
        let f = |v: f64| Float::with_val(b, v);
        let pi = Float::with_val(b, rug::float::Constant::Pi);
        let wctx = PrecisionContext::new(b);
        let sgn = if d2 > 0 { 1.0 } else { -1.0 };
        let g = Float::with_val(b, f(5.0).gamma() / f(2.5 - sgn * (k as f64 / 2.0 - 0.25)).gamma());
        let x = Float::with_val(b, ((d * d2).abs() as f64).sqrt() * &pi);
        let z = if d * d2 > 0 { specfun::bessel_j(&f(4.0), &x, &wctx) } else { specfun::bessel_i(&f(4.0), &x, &wctx) }.unwrap();
        let kl = kloosterman(1, &l, n, &[r], n2, &[r2], &wctx).unwrap();
        let e = k as f64 / 2.0 - 0.75;
        let ratio = d2 as f64 / d as f64;
        let pw = Cplx::new(f(ratio.abs()), f(0.0)).pow_real(&f(e));
        let pw = if ratio < 0.0 { &pw * &Cplx::from_f64(&wctx, 0.0, std::f64::consts::PI * e).exp() } else { pw };
        let ipow = Cplx::from_f64(&wctx, 0.0, -std::f64::consts::FRAC_PI_2 * k as f64).exp();
        let pre = Float::with_val(b, f(2.0).sqrt() * &pi) * g * z;
        let constant = &(&(&kl * &ipow) * &pw) * &Cplx::new(pre, f(0.0));
        // the pi in the complex phases above is f64; compare the constant loosely
        assert!(rel_c(&got.constant, &constant) < 1e-14, "k {k}: {:?} vs {:?}", got.constant.to_f64_pair(), constant.to_f64_pair());
        let t = Float::with_val(b, f(d2 as f64) * &pi * &y);
        let w = specfun::whittaker_w_renorm(&f(2.5), &f(k as f64 - 0.5), &t, &wctx).unwrap();
        let ex = Float::with_val(b, &t / 2u32).exp();
        let value = constant.scale(&(w * ex));
        assert!(rel_c(&got.value, &value) < 1e-14);
    }
}

#[test]
fn poincare_jobs_independent() {
    let ctx = ctx();
    let l = lat(2, &[2, 1, 1, 2]);
    let y = ctx.float(1.0);
    let mut p = params(2, rat(5, 2), -1, &[1, 0], 17);
    let a = poincare_coeff_b(&l, &p, 2, &[1, 1], &y, &ctx).unwrap();
    p.jobs = 4;
    let b = poincare_coeff_b(&l, &p, 2, &[1, 1], &y, &ctx).unwrap();
    assert_eq!(a.value.to_decimal_pair(), b.value.to_decimal_pair());
    p.c_max = 0;
    let z = poincare_coeff_b(&l, &p, 2, &[1, 1], &y, &ctx).unwrap();
    assert!(z.value.is_zero());
}

#[test]
fn poincare_tail_shrinks() {
    let ctx = ctx();
    let l = lat(1, &[1]);
    let y = ctx.float(1.0);
    let a = poincare_coeff_b(&l, &params(1, ri(3), -1, &[1], 10), 1, &[1], &y, &ctx).unwrap();
    let b = poincare_coeff_b(&l, &params(1, ri(3), -1, &[1], 60), 1, &[1], &y, &ctx).unwrap();
    assert!(b.tail < a.tail);
    assert!(rel_c(&a.value, &b.value) < 1e-2);
}

#[test]
fn full_coeff_symmetrises() {
    let ctx = ctx();
    let l = lat(1, &[1]);
    let y = ctx.float(1.0);
    let p = params(2, rat(5, 2), -1, &[1], 8);
    let c = full_coeff_c(&l, &p, 2, &[1], &y, &ctx).unwrap();
    let b1 = poincare_coeff_b(&l, &p, 2, &[1], &y, &ctx).unwrap();
    let b2 = poincare_coeff_b(&l, &p, 2, &[-1], &y, &ctx).unwrap();
    assert!(rel_c(&c.value, &(&b1.value + &b2.value)) < 1e-35);
    let p = params(3, rat(5, 2), -1, &[1], 8);
    let c = full_coeff_c(&l, &p, 2, &[1], &y, &ctx).unwrap();
    let b1 = poincare_coeff_b(&l, &p, 2, &[1], &y, &ctx).unwrap();
    let b2 = poincare_coeff_b(&l, &p, 2, &[-1], &y, &ctx).unwrap();
    assert!(rel_c(&c.value, &(&b1.value - &b2.value)) < 1e-35);
}

#[test]
fn poincare_errors() {
    let ctx = ctx();
    let l = lat(1, &[1]);
    let y = ctx.float(1.0);
    let p = params(1, rat(5, 2), -1, &[1], 5);
    assert!(matches!(poincare_coeff_b(&l, &p, 1, &[2], &y, &ctx), Err(Error::Unsupported(_))));
    assert!(matches!(poincare_coeff_b(&l, &params(1, rat(5, 2), 1, &[2], 5), 1, &[1], &y, &ctx), Err(Error::Domain(_))));
    assert!(matches!(poincare_coeff_b(&l, &params(1, rat(3, 2), -1, &[1], 5), 1, &[1], &y, &ctx), Err(Error::Domain(_))));
    // Gamma(s - (k/2 - N/4)) with s = 9/4, k = 9, D' > 0
    assert!(matches!(poincare_coeff_b(&l, &params(9, rat(9, 4), -1, &[1], 5), 1, &[1], &y, &ctx), Err(Error::Pole(_))));
}

#[test]
fn duality_ratio_constant() {
    let ctx = ctx();
    let l = lat(1, &[1]);
    let s = rat(5, 2);
    let mixed = vec![((-1, vec![1]), (1, vec![1])), ((-2, vec![1]), (1, vec![0])), ((-1, vec![0]), (3, vec![1])), ((-3, vec![2]), (2, vec![2]))];
    let neg = vec![((-1, vec![1]), (-1, vec![1])), ((-1, vec![1]), (-2, vec![3])), ((-2, vec![1]), (-1, vec![0])), ((-1, vec![0]), (-3, vec![1]))];
    for k in [0i64, 1, 2] {
        for pairs in [&mixed, &neg] {
            let rep = duality_report(&l, k, &s, pairs, 50, 2, &ctx).unwrap();
            assert_eq!(rep.dual_k, 3 - k);
            assert!(rep.spread < 1e-6, "k {k}: spread {}", rep.spread);
        }
    }
}

#[test]
fn skew_coefficients() {
    let ctx = ctx();
    let l = lat(1, &[1]);
    let a = skew_poincare_coeff(&l, 3, 1, &[1], 2, &[1], 20, 1, &ctx).unwrap();
    let b = skew_poincare_coeff(&l, 3, 1, &[1], 2, &[-1], 20, 1, &ctx).unwrap();
    // c(n', -r') = -c(n', r') for odd k
    assert!(rel_c(&b.c, &a.c.scale_f64(-1.0)) < 1e-30);
    assert!(matches!(skew_poincare_coeff(&l, 2, 1, &[1], 2, &[1], 5, 1, &ctx), Err(Error::Domain(_))));
    assert!(matches!(skew_poincare_coeff(&l, 3, -1, &[1], 2, &[1], 5, 1, &ctx), Err(Error::Domain(_))));
    // the skew profile is killed by the heat operator
    let mut f = FourierExpansion::new(l.clone());
    f.add(FourierIndex::int(2, &[1]), Profile::ExpHalf, GaussRat::one());
    assert!(heat_residual(&f, 3, 1, &ctx).unwrap() < 1e-30);
    let l2 = lat(2, &[2, 1, 1, 2]);
    let t = skew_term(&l2, &ri(3), &[1, -1], GaussRat::one()).unwrap();
    let op = build_heat(&l2.index_data());
    assert!(operator_residual(&op, &ri(1), &t, 2, 3, 2, &ctx).unwrap() < 1e-30);
}

// ---------------------------------------------------------- Fourier terms

#[test]
fn maass_terms_are_harmonic() {
    let ctx = ctx();
    for l in [lat(1, &[1]), lat(2, &[2, 1, 1, 2])] {
        let n = l.rank();
        let r = vec![1i64; n];
        for k in [ri(1), ri(3), rat(5, 2)] {
            let cp = maass_fourier_term(&l, MaassKind::CPlus, &k, &ri(2), &r, GaussRat::one()).unwrap();
            assert!(casimir_residual(&cp, &k, 3, 1, &ctx).unwrap() < 1e-30);
            let cm = maass_fourier_term(&l, MaassKind::CMinus, &k, &ri(-1), &r, GaussRat::one()).unwrap();
            assert!(casimir_residual(&cm, &k, 3, 1, &ctx).unwrap() < 1e-25);
            let r0 = vec![0i64; n];
            let c0 = maass_fourier_term(&l, MaassKind::C0, &k, &ri(0), &r0, GaussRat::one()).unwrap();
            assert!(casimir_residual(&c0, &k, 3, 1, &ctx).unwrap() < 1e-30);
        }
    }
}

#[test]
fn printed_y_power_is_not_harmonic() {
    let ctx = ctx();
    let l = lat(1, &[1]);
    let k = ri(2);
    // y^{N/2 - k} is the y-power profile with k + 1
    let mut f = FourierExpansion::new(l.clone());
    f.add(FourierIndex::int(0, &[0]), Profile::YPower { k: &k + ri(1) }, GaussRat::one());
    assert!(casimir_residual(&f, &k, 3, 1, &ctx).unwrap() > 1e-2);
}

#[test]
fn maass_term_errors() {
    let l = lat(1, &[1]);
    assert!(matches!(maass_fourier_term(&l, MaassKind::C0, &ri(1), &ri(1), &[1], GaussRat::one()), Err(Error::Domain(_))));
    assert!(matches!(maass_fourier_term(&l, MaassKind::CMinus, &ri(1), &ri(1), &[1], GaussRat::one()), Err(Error::Domain(_))));
    assert!(matches!(maass_fourier_term(&l, MaassKind::CMinus, &ri(1), &ri(1), &[2], GaussRat::one()), Err(Error::Domain(_))));
    assert!("c+".parse::<MaassKind>().is_ok());
    assert!("c*".parse::<MaassKind>().is_err());
}

#[test]
fn mixed_mock_rank_one() {
    let ctx = ctx();
    for (m, r, nu, h) in [(1i64, 1i64, rat(1, 3), rat(1, 2)), (2, 3, rat(-1, 2), rat(2, 1)), (3, -1, rat(1, 1), rat(1, 3))] {
        let l = lat(1, &[m]);
        let n = mixed_mock_admissible_n(&l, &[r], &nu, &[h.clone()]);
        let f = mixed_mock_term(&l, &n, &[r], &nu, &[h.clone()], GaussRat::one()).unwrap();
        assert!(casimir_residual(&f, &ri(1), 3, 4, &ctx).unwrap() < 1e-25);
        assert!(casimir_residual(&f, &ri(2), 3, 4, &ctx).unwrap() > 1e-3);
    }
    assert_eq!(mixed_mock_weight(1), ri(1));
}

#[test]
fn mixed_mock_rank_two() {
    let ctx = ctx();
    let cases = [
        (lat(2, &[2, 1, 1, 2]), vec![rat(1, 2), ri(1)], vec![1i64, 1]),
        (lat(2, &[1, 0, 0, 3]), vec![ri(1), ri(0)], vec![1, 1]),
        (lat(2, &[2, 1, 1, 2]), vec![ri(2), ri(1)], vec![2, 3]),
    ];
    let nu = rat(1, 3);
    for (l, h, r) in cases {
        let n = mixed_mock_admissible_n(&l, &r, &nu, &h);
        let f = mixed_mock_term(&l, &n, &r, &nu, &h, GaussRat::one()).unwrap();
        assert!(casimir_residual(&f, &mixed_mock_weight(2), 3, 4, &ctx).unwrap() < 1e-25);
        assert!(casimir_residual(&f, &ri(1), 3, 4, &ctx).unwrap() > 1e-6);
    }
}

#[test]
fn mixed_mock_vanishing_term() {
    let ctx = ctx();
    let l = lat(1, &[1]);
    let f = mixed_mock_term(&l, &ri(1), &[1], &ri(0), &[ri(0)], GaussRat::one()).unwrap();
    let p = jacobi_core::group_core::Point::new(Cplx::from_f64(&ctx, 0.3, 1.1), vec![Cplx::from_f64(&ctx, 0.2, 0.4)]).unwrap();
    assert!(f.evaluate(&p, &ctx).unwrap().is_zero());
}

// ---------------------------------------------------------- decomposition

#[test]
fn theta_decomposition_delta() {
    for l in lattices() {
        for mu0 in l.classes() {
            let f = theta_lmu(&l, &mu0, &ri(3));
            let dec = theta_decompose_semi(&f).unwrap();
            for mu in l.classes() {
                let c = dec.coefficient(&mu, &ri(0), &Profile::Constant);
                let want = if mu == mu0 { GaussRat::one() } else { GaussRat::zero() };
                assert_eq!(c, want);
            }
            assert_eq!(dec.reassemble(&ri(3)), f);
        }
    }
}

fn random_admissible(l: &GramLattice, rng: &mut ChaCha8Rng, skew: bool, bound: &Rat) -> FourierExpansion {
    let four_det = l.det() * ri(4);
    let mut comps = std::collections::BTreeMap::new();
    for mu in l.classes() {
        let mut h = std::collections::BTreeMap::new();
        for _ in 0..rng.gen_range(0..4) {
            let d = ri(rng.gen_range(-6..6));
            let e = if skew { -&d / &four_det } else { &d / &four_det };
            let profile = if skew {
                Profile::Constant
            } else {
                [Profile::Constant, Profile::HProfile { k: ri(2) }, Profile::ExpQuarter][rng.gen_range(0..3)].clone()
            };
            let c = GaussRat::frac(rng.gen_range(-5..5), rng.gen_range(1..4)) + GaussRat::i() * GaussRat::int(rng.gen_range(-3..3));
            if !c.is_zero() {
                h.insert(ComponentKey { exponent: e, profile }, c);
            }
        }
        comps.insert(mu, h);
    }
    let kind = if skew { DecompositionKind::Skew } else { DecompositionKind::Semi };
    ThetaComponents { lattice: l.clone(), kind, components: comps }.reassemble(bound)
}

#[test]
fn theta_decomposition_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for l in lattices() {
        for _ in 0..4 {
            let bound = ri(3);
            let f = random_admissible(&l, &mut rng, false, &bound);
            let dec = theta_decompose_semi(&f).unwrap();
            assert_eq!(dec.reassemble(&bound), f);
            let g = random_admissible(&l, &mut rng, true, &bound);
            let dec = theta_decompose_skew(&g).unwrap();
            assert_eq!(dec.kind, DecompositionKind::Skew);
            assert_eq!(dec.reassemble(&bound), g);
        }
    }
}

#[test]
fn theta_decomposition_conjugates_skew() {
    let l = lat(1, &[1]);
    let mut f = FourierExpansion::new(l.clone());
    f.add(FourierIndex::int(1, &[1]), Profile::ExpHalf, GaussRat::new(ri(2), ri(3)));
    let dec = theta_decompose_skew(&f).unwrap();
    // D = 3, exponent -D/4|L|
    assert_eq!(dec.coefficient(&[0], &rat(-3, 4), &Profile::Constant), GaussRat::new(ri(2), ri(-3)));
}

#[test]
fn theta_decomposition_rejects_violations() {
    let l = lat(1, &[1]);
    let mut f = FourierExpansion::new(l.clone());
    // same D = 3 and class, different coefficients
    f.add(FourierIndex::int(1, &[1]), Profile::Constant, GaussRat::one());
    f.add(FourierIndex::int(1, &[-1]), Profile::Constant, GaussRat::int(2));
    assert!(matches!(theta_decompose_semi(&f), Err(Error::NotSemiHolomorphic(_))));
    let mut g = FourierExpansion::new(l.clone());
    g.add(FourierIndex::int(1, &[1]), Profile::Constant, GaussRat::one());
    assert!(matches!(theta_decompose_skew(&g), Err(Error::NotSemiHolomorphic(_))));
    let h = mixed_mock_term(&l, &ri(1), &[1], &ri(1), &[ri(1)], GaussRat::one()).unwrap();
    assert!(matches!(theta_decompose_semi(&h), Err(Error::NotSemiHolomorphic(_))));
}

// ------------------------------------------------------------ JSON, eval

#[test]
fn expansion_json_round_trip() {
    let l = GramLattice::parse("2,1/2;1/2,1").unwrap();
    let mut f = FourierExpansion::new(l.clone());
    f.add(FourierIndex::new(rat(3, 7), vec![1, -2]), Profile::Constant, GaussRat::new(rat(1, 3), ri(-2)));
    f.add(FourierIndex::int(-1, &[0, 1]), Profile::HProfile { k: rat(5, 2) }, GaussRat::one());
    f.add(FourierIndex::int(2, &[3, 1]), Profile::WProfile { k: ri(2), s: rat(7, 3) }, GaussRat::i());
    f.add(FourierIndex::int(2, &[3, 1]), Profile::MProfile { k: ri(2), s: rat(7, 3) }, GaussRat::i());
    f.add(FourierIndex::int(0, &[0, 0]), Profile::YPower { k: ri(1) }, GaussRat::int(4));
    f.add(FourierIndex::int(1, &[1, 1]), Profile::ExpQuarter, GaussRat::int(-1));
    f.add(FourierIndex::int(1, &[1, 0]), Profile::ExpHalf, GaussRat::int(5));
    f.add(FourierIndex::int(1, &[1, 0]), Profile::EProfile { nu: rat(1, 2), h: vec![ri(1), rat(-1, 3)] }, GaussRat::int(5));
    let s = f.to_json();
    let g = FourierExpansion::from_json(&s).unwrap();
    assert_eq!(f, g);
    assert_eq!(g.to_json(), s);
    assert!(FourierExpansion::from_json("{").is_err());
    assert!(FourierExpansion::from_json(&s.replace("H-profile", "Q-profile")).is_err());
}

#[test]
fn expansion_evaluates_theta() {
    // theta_{(1),0} at z = 0 is sum_r q^{r^2/4}
    let ctx = ctx();
    let l = lat(1, &[1]);
    let f = theta_lmu(&l, &[0], &ri(40));
    let tau = Cplx::from_f64(&ctx, 0.1, 0.8);
    let p = jacobi_core::group_core::Point::new(tau.clone(), vec![Cplx::zero(&ctx)]).unwrap();
    let v = f.evaluate(&p, &ctx).unwrap();
    let mut want = Cplx::zero(&ctx);
    for r in -12i64..=12 {
        want = &want + &tau.scale(&ctx.rat(&rat(r * r, 4))).e();
    }
    assert!(rel_c(&v, &want) < 1e-30);
}

// ---------------------------------------------------------- specialization

#[test]
fn specialization_at_zero_restricts() {
    let ctx = ctx();
    let l = lat(2, &[2, 1, 1, 2]);
    let f = maass_fourier_term(&l, MaassKind::CMinus, &ri(2), &ri(-1), &[1, 1], GaussRat::one()).unwrap();
    let t = Arc::new(f.term_fn(f.terms.keys().next().unwrap()));
    let g = specialize_torsion(t.clone(), &[ri(0), ri(0)], &[ri(0), ri(0)]).unwrap();
    let tau = Cplx::from_f64(&ctx, -0.2, 1.3);
    let p = jacobi_core::group_core::Point::new(tau.clone(), vec![Cplx::zero(&ctx), Cplx::zero(&ctx)]).unwrap();
    assert!(rel_c(&g.eval(&tau).unwrap(), &f.evaluate(&p, &ctx).unwrap()) < 1e-35);
}

#[test]
fn specialization_chain_rule() {
    let ctx = ctx();
    let l = lat(2, &[2, 1, 1, 2]);
    let h = vec![rat(1, 2), ri(1)];
    let n = mixed_mock_admissible_n(&l, &[1, 1], &rat(1, 3), &h);
    let f = mixed_mock_term(&l, &n, &[1, 1], &rat(1, 3), &h, GaussRat::one()).unwrap();
    let t: Arc<dyn JetFn> = Arc::new(f.term_fn(f.terms.keys().next().unwrap()));
    let g = specialize_torsion(t, &[rat(1, 3), rat(1, 2)], &[rat(1, 4), ri(0)]).unwrap();
    for tau in [Cplx::from_f64(&ctx, 0.1, 0.9), Cplx::from_f64(&ctx, -0.4, 1.7)] {
        let (lhs, rhs) = g.chain_rule(&tau).unwrap();
        assert!(lhs.abs().to_f64() > 1e-10);
        assert!(rel_c(&lhs, &rhs) < 1e-30);
    }
}

#[test]
fn specialized_term_substitution() {
    let ctx = ctx();
    let l = lat(2, &[1, 0, 0, 2]);
    let idx = FourierIndex::int(3, &[2, -1]);
    let lam = [rat(1, 2), rat(1, 3)];
    let mu = [rat(1, 5), rat(-1, 4)];
    let st = specialize_term(&idx, &lam, &mu).unwrap();
    assert_eq!(st.exponent, ri(3) + ri(1) - rat(1, 3));
    assert_eq!(st.phase, rat(2, 5) + rat(1, 4));
    let mut f = FourierExpansion::new(l.clone());
    f.add(idx, Profile::Constant, GaussRat::one());
    let t = Arc::new(f.term_fn(f.terms.keys().next().unwrap()));
    let g = specialize_torsion(t, &lam, &mu).unwrap();
    let tau = Cplx::from_f64(&ctx, 0.3, 0.6);
    assert!(rel_c(&g.eval(&tau).unwrap(), &st.eval(&tau)) < 1e-35);
    assert!(specialize_term(&FourierIndex::int(1, &[1]), &lam, &mu).is_err());
}
