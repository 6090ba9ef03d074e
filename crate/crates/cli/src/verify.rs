//! Verification suites. Each check is reported with an exact status or a
//! residual against a fixed tolerance; the command exits 0 iff all pass.

use crate::config::{pick, pick_rat, Common, ConfigFile};
use crate::error::{CliError, CliResult};
use crate::output;
use clap::Args;
use jacobi_core::arith_series::*;
use jacobi_core::enveloping::casimir_centrality;
use jacobi_core::exact::gauss::rat_to_string;
use jacobi_core::exact::GaussRat;
use jacobi_core::group_core::{act, cocycle_a, cocycle_beta, jacobi_mul, slash, Point, PointFn};
use jacobi_core::numeric::cplx::rel_diff;
use jacobi_core::numeric::{Cplx, PrecisionContext};
use jacobi_core::opcalc::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::sync::Arc;

pub const SUITES: &[&str] =
    &["centrality", "commutators", "casimir-equality", "bridge", "cocycle", "covariance", "eigen", "duality", "kloosterman-symmetry"];

const TOL_COCYCLE: f64 = 1e-25;
const TOL_COVARIANCE: f64 = 1e-22;
const TOL_EIGEN: f64 = 1e-10;
const TOL_DUALITY: f64 = 1e-6;
const TOL_KLOOSTERMAN: f64 = 1e-30;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name
    pub suite: String,
    /// Weight (suite-specific default)
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Spectral parameter (default 5/2)
    #[arg(long)]
    pub s: Option<String>,
    /// Random samples for numeric suites (default 100)
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

fn exact(name: impl Into<String>, pass: bool) -> Value {
    json!({ "name": name.into(), "status": "exact", "pass": pass })
}

fn numeric(name: impl Into<String>, residual: f64, tol: f64) -> Value {
    json!({ "name": name.into(), "status": "numeric", "residual": residual, "tolerance": tol, "pass": residual < tol })
}

fn ri(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

struct Settings {
    k: Option<Rat>,
    s: Rat,
    samples: usize,
    seed: u64,
}

fn int_k(k: &Option<Rat>, default: i64) -> CliResult<i64> {
    match k {
        None => Ok(default),
        Some(q) if q.is_integer() => q.to_integer().try_into().map_err(|_| CliError::usage("k out of range")),
        Some(q) => Err(CliError::usage(format!("this suite needs an integral weight, got {q}"))),
    }
}

pub fn run(a: &VerifyArgs, c: &Common, file: &ConfigFile) -> CliResult<(String, bool)> {
    if !SUITES.contains(&a.suite.as_str()) {
        return Err(CliError::usage(format!("unknown suite {:?}; known suites: {}", a.suite, SUITES.join(", "))));
    }
    let k = match &a.k {
        Some(t) => Some(crate::config::parse_rational(t)?),
        None => file.get_rat("k")?,
    };
    let set = Settings {
        k,
        s: pick_rat(a.s.as_deref(), file, "s", Rat::new(5.into(), 2.into()))?,
        samples: pick(a.samples, file, "samples", 100usize)?,
        seed: pick(a.seed, file, "seed", 1u64)?,
    };
    if set.samples == 0 {
        return Err(CliError::usage("samples must be positive"));
    }
    let ctx = PrecisionContext::new(c.precision_bits);
    let (checks, extra) = match a.suite.as_str() {
        "centrality" => centrality(c)?,
        "commutators" => commutators(c)?,
        "casimir-equality" => casimir_equality(c)?,
        "bridge" => bridge(c)?,
        "cocycle" => cocycle(c, &set, &ctx)?,
        "covariance" => covariance(c, &set, &ctx)?,
        "eigen" => eigen(c, &set, &ctx)?,
        "duality" => duality(c, &set, &ctx)?,
        "kloosterman-symmetry" => kloosterman_symmetry(c, &set, &ctx)?,
        _ => unreachable!(),
    };
    let pass = checks.iter().all(|v| v["pass"] == json!(true));
    let mut report = json!({
        "command": "verify",
        "suite": a.suite,
        "N": c.rank(),
        "L": output::lattice(&c.lattice),
        "precision_bits": c.precision_bits,
        "checks": checks,
        "pass": pass,
    });
    if let Value::Object(m) = extra {
        for (key, v) in m {
            report[key] = v;
        }
    }
    Ok((output::pretty(&report), pass))
}

type Suite = CliResult<(Vec<Value>, Value)>;

fn centrality(c: &Common) -> Suite {
    let bad = casimir_centrality(c.rank(), false)?;
    let names: Vec<&str> = bad.iter().map(|(n, _)| n.as_str()).collect();
    Ok((vec![exact("[Omega_N, x] = 0 for every generator x", bad.is_empty())], json!({ "nonzero_commutators": names })))
}

fn commutators(c: &Common) -> Suite {
    let id = c.lattice.index_data();
    let checks = commutator_table(&id).iter().map(|t| exact(t.name.clone(), t.holds())).collect();
    Ok((checks, json!({})))
}

fn casimir_equality(c: &Common) -> Suite {
    let id = c.lattice.index_data();
    let cas = build_casimir_op(&id);
    Ok((
        vec![
            exact("Casimir operator equals its raising/lowering form", cas == build_casimir_rl(&id)),
            exact("semi-holomorphic restriction matches the closed form", cas.restrict_semiholomorphic() == expected_semiholomorphic_casimir(&id)),
        ],
        json!({ "casimir_order": cas.order() }),
    ))
}

fn bridge(c: &Common) -> Suite {
    let br = bridge_identity(&c.lattice.index_data())?;
    Ok((
        vec![
            exact("image of Omega_N is free of the Lie coordinates", br.x_u_free),
            exact("uea_to_op(Omega_N) = det(frakL)(k(k - N - 2) - 2 C)", br.holds()),
        ],
        json!({}),
    ))
}

fn test_function(n: usize) -> Arc<dyn PointFn> {
    Arc::new(move |p: &Point<Cplx>| -> jacobi_core::Result<Cplx> {
        let ctx = p.tau.ctx();
        let mut s = p.tau.mul_i().scale_f64(1.3);
        for (j, z) in p.z.iter().enumerate().take(n) {
            s = &s + &(&(z * z).scale_f64(0.4 + j as f64 * 0.1) - &z.mul_i().scale_f64(0.7));
        }
        Ok(&s.exp() + &Cplx::from_f64(&ctx, 0.25, 0.0))
    })
}

fn cocycle(c: &Common, set: &Settings, ctx: &PrecisionContext) -> Suite {
    let n = c.rank();
    let k = set.k.clone().unwrap_or_else(|| ri(3));
    let kp = ri(0);
    let l = c.lattice.to_mat().to_cplx(ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(set.seed);
    let (mut act_res, mut beta_res, mut a_res, mut slash_res) = (0f64, 0f64, 0f64, 0f64);
    let f = test_function(n);
    for _ in 0..set.samples {
        let g = random_group_element(n, &mut rng, ctx)?;
        let h = random_group_element(n, &mut rng, ctx)?;
        let p = random_point(n, &mut rng, ctx)?;
        let gh = jacobi_mul(&g, &h)?;
        let hp = act(&h, &p)?;
        let lhs = act(&gh, &p)?;
        let rhs = act(&g, &hp)?;
        act_res = act_res.max(rel_diff(&lhs.tau, &rhs.tau));
        for (a, b) in lhs.z.iter().zip(&rhs.z) {
            act_res = act_res.max(rel_diff(a, b));
        }
        let b1 = cocycle_beta(&gh.m, &p.tau)?;
        let b2 = &cocycle_beta(&g.m, &hp.tau)? * &cocycle_beta(&h.m, &p.tau)?;
        beta_res = beta_res.max(rel_diff(&b1, &b2));
        let a1 = cocycle_a(&gh, &p)?;
        let a2 = cocycle_a(&g, &hp)?.add(&cocycle_a(&h, &p)?);
        a_res = a_res.max(a1.sub(&a2).max_abs());
        let fg = Arc::new(slash(f.clone(), &k, &kp, &l, &g)?);
        let two_step = slash(fg, &k, &kp, &l, &h)?.eval(&p)?;
        let direct = slash(f.clone(), &k, &kp, &l, &gh)?.eval(&p)?;
        slash_res = slash_res.max(rel_diff(&two_step, &direct));
    }
    Ok((
        vec![
            numeric("action: (gh)p = g(hp)", act_res, TOL_COCYCLE),
            numeric("beta(gh, p) = beta(g, hp) beta(h, p)", beta_res, TOL_COCYCLE),
            numeric("a(gh, p) = a(g, hp) + a(h, p)", a_res, TOL_COCYCLE),
            numeric("f|[gh] = (f|[g])|[h]", slash_res, TOL_COCYCLE),
        ],
        json!({ "samples": set.samples, "k": rat_to_string(&k) }),
    ))
}

fn covariance(c: &Common, set: &Settings, ctx: &PrecisionContext) -> Suite {
    let n = c.rank();
    let l = c.lattice.to_mat();
    let id = c.lattice.index_data();
    let k = set.k.clone().unwrap_or_else(|| ri(3));
    let rl = build_raising_lowering(&id);
    let hk = Rat::new((n as i64).into(), 2.into());
    let kc = Rat::new((n as i64 % 2).into(), 2.into());
    let lap_c = jacobi_core::exact::Mat::from_fn(n, n, |i, j| if i == j { GaussRat::int(3) } else { GaussRat::one() });
    let mut ops: Vec<(String, DiffOp, CovarianceWeights)> = vec![
        ("X+".into(), rl.x_plus.op.clone(), CovarianceWeights::plain(k.clone(), &k + ri(2))),
        ("X-".into(), rl.x_minus.op.clone(), CovarianceWeights::plain(k.clone(), &k - ri(2))),
        ("Casimir".into(), build_casimir_op(&id), CovarianceWeights::invariant(k.clone())),
        ("Laplace".into(), build_laplace(&id, &lap_c)?, CovarianceWeights::invariant(k.clone())),
        ("heat".into(), build_heat(&id), CovarianceWeights { k: hk.clone(), kc: kc.clone(), k_out: &hk + ri(2), kc_out: kc }),
        ("D-".into(), build_d_minus(&id), CovarianceWeights::plain(ri(2), ri(0))),
    ];
    for j in 0..n {
        ops.push((format!("Y+{}", j + 1), rl.y_plus[j].op.clone(), CovarianceWeights::plain(k.clone(), &k + ri(1))));
        ops.push((format!("Y-{}", j + 1), rl.y_minus[j].op.clone(), CovarianceWeights::plain(k.clone(), &k - ri(1))));
    }
    let mut checks = vec![];
    for (name, op, w) in ops {
        let rep = covariance_check(&op, &w, &l, &l, set.samples, set.seed, ctx)?;
        checks.push(numeric(format!("{name} intertwines the slash actions"), rep.max_residual, TOL_COVARIANCE));
    }
    Ok((checks, json!({ "samples": set.samples, "k": rat_to_string(&k) })))
}

/// Some (n, r) with D(n, r) != 0, preferring r = e_1.
fn seed_index(l: &GramLattice) -> (Rat, Vec<i64>) {
    let mut r = vec![0i64; l.rank()];
    r[0] = 1;
    for n in [1, 2, -1] {
        if l.discriminant(&ri(n), &r) != ri(0) {
            return (ri(n), r);
        }
    }
    (ri(3), r)
}

fn eigen(c: &Common, set: &Settings, ctx: &PrecisionContext) -> Suite {
    let l = &c.lattice;
    let nn = l.rank() as i64;
    let (n, r) = seed_index(l);
    let ks = match &set.k {
        Some(k) => vec![k.clone()],
        None => vec![ri(1), ri(3), Rat::new(5.into(), 2.into()), ri(4)],
    };
    let samples = set.samples.min(5);
    let mut checks = vec![];
    let mut skipped = vec![];
    for k in &ks {
        let root1 = k / ri(2) - ri(nn) / ri(4);
        let root2 = ri(1) + ri(nn) / ri(4) - k / ri(2);
        for s in [set.s.clone(), Rat::new(7.into(), 3.into()), root1, root2] {
            let two_s = &s * ri(2);
            if two_s.is_integer() && two_s <= ri(0) {
                // M-Whittaker pole: the seed does not exist here
                skipped.push(json!({ "k": rat_to_string(k), "s": rat_to_string(&s) }));
                continue;
            }
            let rep = eigen_check(l, k, &s, &n, &r, samples, set.seed, ctx)?;
            let name = format!("C phi = lambda phi at k = {k}, s = {s} (lambda = {})", rep.eigenvalue);
            checks.push(numeric(name, rep.residual, TOL_EIGEN));
        }
    }
    Ok((checks, json!({ "n": rat_to_string(&n), "r": r, "samples_per_point": samples, "skipped_poles": skipped })))
}

type Pair = ((i64, Vec<i64>), (i64, Vec<i64>));

/// Index pairs in the two sign regimes D < 0 < D' and D, D' < 0.
fn duality_pairs(l: &GramLattice) -> (Vec<Pair>, Vec<Pair>) {
    let nr = l.rank();
    let mut neg = vec![];
    let mut pos = vec![];
    let side = 5usize;
    for n in -3i64..=3 {
        for idx in 0..side.pow(nr as u32) {
            let mut t = idx;
            let r: Vec<i64> = (0..nr)
                .map(|_| {
                    let v = (t % side) as i64 - 2;
                    t /= side;
                    v
                })
                .collect();
            let d = l.discriminant(&ri(n), &r);
            if d < ri(0) {
                neg.push((n, r));
            } else if d > ri(0) {
                pos.push((n, r));
            }
        }
    }
    // small |D| first so the c-sums converge quickly
    let key = |x: &(i64, Vec<i64>)| {
        let d = l.discriminant(&ri(x.0), &x.1);
        (if d < ri(0) { -d } else { d }, x.0, x.1.clone())
    };
    neg.sort_by_key(key);
    pos.sort_by_key(key);
    let mixed = (0..5).map(|i| (neg[i % neg.len()].clone(), pos[(i * 2) % pos.len()].clone())).collect();
    let both = (0..5).map(|i| (neg[i].clone(), neg[(i + 1 + i % 2) % neg.len()].clone())).collect();
    (mixed, both)
}

fn duality(c: &Common, set: &Settings, ctx: &PrecisionContext) -> Suite {
    let l = &c.lattice;
    let k = int_k(&set.k, 1)?;
    let (mixed, both) = duality_pairs(l);
    let mut checks = vec![];
    let mut tables = vec![];
    for (regime, pairs) in [("D < 0 < D'", &mixed), ("D < 0, D' < 0", &both)] {
        let rep = duality_report(l, k, &set.s, pairs, c.cmax, c.jobs, ctx)?;
        checks.push(numeric(format!("ratio constant for {regime}"), rep.spread, TOL_DUALITY));
        let rows: Vec<Value> = rep
            .rows
            .iter()
            .map(|row| {
                json!({
                    "n": row.n, "r": row.r, "n2": row.n2, "r2": row.r2,
                    "lhs": output::cplx(&row.lhs), "rhs": output::cplx(&row.rhs), "ratio": output::cplx(&row.ratio),
                })
            })
            .collect();
        tables.push(json!({ "regime": regime, "k": rep.k, "dual_k": rep.dual_k, "spread": rep.spread, "rows": rows }));
    }
    Ok((checks, json!({ "s": rat_to_string(&set.s), "cmax": c.cmax, "tables": tables })))
}

fn kloosterman_symmetry(c: &Common, set: &Settings, ctx: &PrecisionContext) -> Suite {
    let l = &c.lattice;
    let nr = l.rank();
    let cmax = c.cmax.min(24);
    let mut rng = ChaCha8Rng::seed_from_u64(set.seed);
    let tuples = 50;
    let mut worst = 0f64;
    for _ in 0..tuples {
        let m = rng.gen_range(1..=cmax);
        let r: Vec<i64> = (0..nr).map(|_| rng.gen_range(-5..=5)).collect();
        let r2: Vec<i64> = (0..nr).map(|_| rng.gen_range(-5..=5)).collect();
        let (n, n2) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        let a = kloosterman(m, l, n, &r, n2, &r2, ctx)?;
        let b = kloosterman(m, l, n2, &r2, n, &r, ctx)?;
        worst = worst.max((&a - &b).abs().to_f64());
    }
    // c = 1 closed form e(-r^T L^{-1} r' / 2)
    let mut c1 = 0f64;
    for _ in 0..10 {
        let r: Vec<i64> = (0..nr).map(|_| rng.gen_range(-5..=5)).collect();
        let r2: Vec<i64> = (0..nr).map(|_| rng.gen_range(-5..=5)).collect();
        let k = kloosterman(1, l, rng.gen_range(-4..=4), &r, rng.gen_range(-4..=4), &r2, ctx)?;
        let rq: Vec<Rat> = r.iter().map(|&x| ri(x)).collect();
        let r2q: Vec<Rat> = r2.iter().map(|&x| ri(x)).collect();
        let want = Cplx::from_rat(ctx, &(-l.inv_bilinear(&rq, &r2q) / ri(2))).e();
        c1 = c1.max((&k - &want).abs().to_f64());
    }
    Ok((
        vec![
            numeric(format!("K(n, r, n', r') = K(n', r', n, r), {tuples} tuples, c <= {cmax}"), worst, TOL_KLOOSTERMAN),
            numeric("c = 1 closed form", c1, TOL_KLOOSTERMAN),
        ],
        json!({ "tuples": tuples, "c_max": cmax }),
    ))
}
