//! Computation subcommands. Each returns the JSON text it prints and goes
//! through the result cache.

use crate::cache::cached;
use crate::config::{parse_ints, parse_rational, parse_rats, pick, pick_rat, Common, ConfigFile};
use crate::error::{CliError, CliResult};
use crate::output;
use clap::{Args, ValueEnum};
use jacobi_core::arith_series::*;
use jacobi_core::exact::gauss::rat_to_string;
use jacobi_core::group_core::Point;
use jacobi_core::numeric::{Cplx, PrecisionContext};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

fn ri(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn index_vec(text: Option<&str>, rank: usize, what: &str) -> CliResult<Vec<i64>> {
    match text {
        None => Ok(vec![0; rank]),
        Some(s) => {
            let v = parse_ints(s)?;
            if v.len() != rank {
                return Err(CliError::usage(format!("{what} must have {rank} entries, got {}", v.len())));
            }
            Ok(v)
        }
    }
}

fn ctx(c: &Common) -> PrecisionContext {
    PrecisionContext::new(c.precision_bits)
}

#[derive(Args, Debug)]
pub struct KloostermanArgs {
    /// A single modulus; without it every c = 1..=cmax is tabulated
    #[arg(long)]
    pub c: Option<u64>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub n: i64,
    /// Comma-separated integers (default zero vector)
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub n2: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
}

pub fn kloosterman(a: &KloostermanArgs, c: &Common) -> CliResult<String> {
    let l = &c.lattice;
    let r = index_vec(a.r.as_deref(), l.rank(), "--r")?;
    let r2 = index_vec(a.r2.as_deref(), l.rank(), "--r2")?;
    let moduli: Vec<u64> = match a.c {
        Some(0) => return Err(CliError::usage("--c must be positive")),
        Some(m) => vec![m],
        None => (1..=c.cmax).collect(),
    };
    let cfg = json!({ "L": output::lattice(l), "n": a.n, "r": r, "n2": a.n2, "r2": r2, "c": moduli });
    cached("kloosterman", &cfg, c.precision_bits, c.no_cache, || {
        let ctx = ctx(c);
        let rq: Vec<Rat> = r.iter().map(|&x| ri(x)).collect();
        let r2q: Vec<Rat> = r2.iter().map(|&x| ri(x)).collect();
        let mut rows = vec![];
        for &m in &moduli {
            let value = jacobi_core::arith_series::kloosterman(m, l, a.n, &r, a.n2, &r2, &ctx)?;
            let hist = kloosterman_histogram(m, l, a.n, &r, a.n2, &r2)?;
            let phase = -l.inv_bilinear(&rq, &r2q) / ri(2 * m as i64);
            rows.push(json!({
                "c": m,
                "value": output::cplx(&value),
                // K = e(prefactor_phase) sum_j histogram[j] e(j / c)
                "prefactor_phase": output::rat(&phase),
                "histogram": hist,
            }));
        }
        Ok(output::pretty(&json!({
            "command": "kloosterman",
            "L": output::lattice(l),
            "n": a.n, "r": r, "n2": a.n2, "r2": r2,
            "rows": rows,
        })))
    })
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    Printed,
    NegatedR,
}

#[derive(Args, Debug)]
pub struct ThetaArgs {
    /// Class representative mu for theta_{L,mu}
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Weight k for theta_{k,L}^{(r)} (needs --r)
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Sign convention of the second summand of theta_{k,L}^{(r)}
    #[arg(long, value_enum, default_value_t = VariantArg::Printed)]
    pub variant: VariantArg,
}

pub fn theta(a: &ThetaArgs, c: &Common) -> CliResult<String> {
    let l = &c.lattice;
    let bound = rat_to_string(&c.bound);
    match (&a.mu, a.k) {
        (Some(mu), None) => {
            if a.r.is_some() {
                return Err(CliError::usage("--r belongs to the --k mode"));
            }
            let mu = index_vec(Some(mu), l.rank(), "--mu")?;
            let cfg = json!({ "L": output::lattice(l), "mode": "mu", "mu": mu, "bound": bound });
            cached("theta", &cfg, c.precision_bits, c.no_cache, || Ok(theta_lmu(l, &mu, &c.bound).to_json()))
        }
        (None, Some(k)) => {
            let r = index_vec(Some(a.r.as_deref().ok_or_else(|| CliError::usage("--k needs --r"))?), l.rank(), "--r")?;
            let variant = match a.variant {
                VariantArg::Printed => ThetaVariant::Printed,
                VariantArg::NegatedR => ThetaVariant::NegatedR,
            };
            let cfg = json!({ "L": output::lattice(l), "mode": "k-r", "k": k, "r": r, "bound": bound, "variant": format!("{variant:?}") });
            cached("theta", &cfg, c.precision_bits, c.no_cache, || Ok(theta_klr(k, l, &r, &c.bound, variant).to_json()))
        }
        _ => Err(CliError::usage("give exactly one of --mu or --k/--r")),
    }
}

#[derive(Args, Debug)]
pub struct PoincareArgs {
    /// Weight (default 1)
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// Spectral parameter, rational or decimal (default 5/2)
    #[arg(long)]
    pub s: Option<String>,
    /// Seed index n
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    pub n: i64,
    /// Seed index r (default zero vector)
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Target n'
    #[arg(long, allow_hyphen_values = true)]
    pub n2: Option<i64>,
    /// Target r' (default zero vector)
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
    /// Target by discriminant D' instead of n'
    #[arg(long = "Dprime", allow_hyphen_values = true)]
    pub dprime: Option<String>,
    /// Tabulate every target with |n'|, |r'_i| <= W and D' != 0
    #[arg(long)]
    pub window: Option<i64>,
    /// Imaginary part of tau for the y-dependent profile (default 1)
    #[arg(long)]
    pub y: Option<String>,
    /// Report c(n', r') = b(n', r') + (-1)^k b(n', -r') instead of b
    #[arg(long)]
    pub full: bool,
}

fn coeff_json(v: &CoeffValue) -> Value {
    json!({
        "value": output::cplx(&v.value),
        "constant": output::cplx(&v.constant),
        "c_sum": output::cplx(&v.c_sum),
        "tail_estimate": v.tail,
        "c_max": v.c_max,
    })
}

pub fn poincare(a: &PoincareArgs, c: &Common, file: &ConfigFile) -> CliResult<String> {
    let l = &c.lattice;
    let k = pick(a.k, file, "k", 1i64)?;
    let s = pick_rat(a.s.as_deref(), file, "s", Rat::new(5.into(), 2.into()))?;
    let y = pick_rat(a.y.as_deref(), file, "y", ri(1))?;
    if y <= ri(0) {
        return Err(CliError::usage("y must be positive"));
    }
    let r = index_vec(a.r.as_deref(), l.rank(), "--r")?;
    let mut targets: Vec<(i64, Vec<i64>)> = vec![];
    let mut skipped = vec![];
    match (a.n2, &a.dprime, a.window) {
        (Some(n2), None, None) => targets.push((n2, index_vec(a.r2.as_deref(), l.rank(), "--r2")?)),
        (None, Some(d), None) => {
            let r2 = index_vec(a.r2.as_deref(), l.rank(), "--r2")?;
            let n2 = l.n_from_discriminant(&parse_rational(d)?, &r2);
            if !n2.is_integer() {
                return Err(CliError::invalid(format!("D' = {d} with r' = {r2:?} gives non-integral n' = {n2}")));
            }
            let n2 = n2.to_integer().try_into().map_err(|_| CliError::invalid("n' out of range"))?;
            targets.push((n2, r2));
        }
        (None, None, Some(w)) => {
            if w < 0 {
                return Err(CliError::usage("--window must be nonnegative"));
            }
            let side = (2 * w + 1) as usize;
            let count = side.pow(l.rank() as u32);
            for n2 in -w..=w {
                for idx in 0..count {
                    let mut t = idx;
                    let r2: Vec<i64> = (0..l.rank())
                        .map(|_| {
                            let v = (t % side) as i64 - w;
                            t /= side;
                            v
                        })
                        .collect();
                    if l.discriminant(&ri(n2), &r2) == ri(0) {
                        skipped.push(json!({ "n2": n2, "r2": r2, "reason": "D' = 0" }));
                    } else {
                        targets.push((n2, r2));
                    }
                }
            }
        }
        _ => return Err(CliError::usage("give exactly one of --n2, --Dprime or --window")),
    }
    let cfg = json!({
        "L": output::lattice(l), "k": k, "s": rat_to_string(&s), "y": rat_to_string(&y), "n": a.n, "r": r,
        "targets": targets, "cmax": c.cmax, "full": a.full,
    });
    cached("poincare", &cfg, c.precision_bits, c.no_cache, || {
        let ctx = ctx(c);
        let p = PoincareParams { k, s: s.clone(), n: a.n, r: r.clone(), c_max: c.cmax, jobs: c.jobs };
        let yf = ctx.rat(&y);
        let mut rows = vec![];
        for (n2, r2) in &targets {
            let v = if a.full { full_coeff_c(l, &p, *n2, r2, &yf, &ctx)? } else { poincare_coeff_b(l, &p, *n2, r2, &yf, &ctx)? };
            let mut row = coeff_json(&v);
            row["n2"] = json!(n2);
            row["r2"] = json!(r2);
            row["D2"] = output::rat(&l.discriminant(&ri(*n2), r2));
            rows.push(row);
        }
        Ok(output::pretty(&json!({
            "command": "poincare",
            "L": output::lattice(l),
            "k": k, "s": rat_to_string(&s), "y": rat_to_string(&y),
            "n": a.n, "r": r, "D": output::rat(&l.discriminant(&ri(a.n), &r)),
            "coefficient": if a.full { "c" } else { "b" },
            "cmax": c.cmax,
            "rows": rows,
            "skipped": skipped,
        })))
    })
}

#[derive(Args, Debug)]
pub struct SkewArgs {
    /// Weight, at least 3 (default 3)
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub n2: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
}

pub fn skew_poincare(a: &SkewArgs, c: &Common, file: &ConfigFile) -> CliResult<String> {
    let l = &c.lattice;
    let k = pick(a.k, file, "k", 3i64)?;
    let r = index_vec(a.r.as_deref(), l.rank(), "--r")?;
    let r2 = index_vec(a.r2.as_deref(), l.rank(), "--r2")?;
    let cfg = json!({ "L": output::lattice(l), "k": k, "n": a.n, "r": r, "n2": a.n2, "r2": r2, "cmax": c.cmax });
    cached("skew-poincare", &cfg, c.precision_bits, c.no_cache, || {
        let v = skew_poincare_coeff(l, k, a.n, &r, a.n2, &r2, c.cmax, c.jobs, &ctx(c))?;
        Ok(output::pretty(&json!({
            "command": "skew-poincare",
            "L": output::lattice(l),
            "k": k, "n": a.n, "r": r, "n2": a.n2, "r2": r2, "cmax": c.cmax,
            "b": output::cplx(&v.b),
            "c": output::cplx(&v.c),
            "tail_estimate": v.tail,
        })))
    })
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Semi,
    Skew,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Expansion file as written by `theta`
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = KindArg::Semi)]
    pub kind: KindArg,
}

fn read_input(path: &PathBuf) -> CliResult<(String, FourierExpansion)> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let f = FourierExpansion::from_json(&text)?;
    Ok((hex::encode(Sha256::digest(text.as_bytes())), f))
}

pub fn decompose(a: &DecomposeArgs, c: &Common) -> CliResult<String> {
    let (digest, f) = read_input(&a.input)?;
    let cfg = json!({ "input_sha256": digest, "kind": format!("{:?}", a.kind) });
    cached("decompose", &cfg, c.precision_bits, c.no_cache, || {
        let dec = match a.kind {
            KindArg::Semi => theta_decompose_semi(&f)?,
            KindArg::Skew => theta_decompose_skew(&f)?,
        };
        let comps: Vec<Value> = dec
            .components
            .iter()
            .map(|(mu, h)| {
                let terms: Vec<Value> = h
                    .iter()
                    .map(|(key, cf)| {
                        json!({
                            "exponent": output::rat(&key.exponent),
                            "profile": key.profile.tag(),
                            "params": key.profile.params(),
                            "coeff": [rat_to_string(&cf.re), rat_to_string(&cf.im)],
                        })
                    })
                    .collect();
                json!({ "mu": mu, "terms": terms })
            })
            .collect();
        Ok(output::pretty(&json!({
            "command": "decompose",
            "kind": format!("{:?}", a.kind).to_lowercase(),
            "L": output::lattice(&f.lattice),
            "components": comps,
        })))
    })
}

#[derive(Args, Debug)]
pub struct SpecializeArgs {
    /// Expansion file as written by `theta`
    #[arg(long)]
    pub input: PathBuf,
    /// Comma-separated rationals
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    /// Evaluate at tau = "x,y" as well
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
}

pub fn specialize(a: &SpecializeArgs, c: &Common) -> CliResult<String> {
    let (digest, f) = read_input(&a.input)?;
    let lambda = parse_rats(&a.lambda)?;
    let mu = parse_rats(&a.mu)?;
    let n = f.lattice.rank();
    if lambda.len() != n || mu.len() != n {
        return Err(CliError::usage(format!("--lambda and --mu need {n} entries")));
    }
    let tau = match &a.tau {
        None => None,
        Some(t) => {
            let v = parse_rats(t)?;
            if v.len() != 2 || v[1] <= ri(0) {
                return Err(CliError::usage("--tau must be \"x,y\" with y > 0"));
            }
            Some(v)
        }
    };
    let strs = |v: &[Rat]| v.iter().map(rat_to_string).collect::<Vec<_>>();
    let cfg = json!({
        "input_sha256": digest, "lambda": strs(&lambda), "mu": strs(&mu), "tau": tau.as_ref().map(|t| strs(t)),
    });
    cached("specialize", &cfg, c.precision_bits, c.no_cache, || {
        let mut terms = vec![];
        for (key, cf) in &f.terms {
            let st = specialize_term(&key.index, &lambda, &mu)?;
            terms.push(json!({
                "n": output::rat(&key.index.n),
                "r": key.index.r,
                "profile": key.profile.tag(),
                "coeff": [rat_to_string(&cf.re), rat_to_string(&cf.im)],
                // coeff * P * e(phase) q^exponent
                "exponent": output::rat(&st.exponent),
                "phase": output::rat(&st.phase),
            }));
        }
        let mut out = json!({
            "command": "specialize",
            "L": output::lattice(&f.lattice),
            "lambda": strs(&lambda),
            "mu": strs(&mu),
            "terms": terms,
        });
        if let Some(t) = &tau {
            let ctx = ctx(c);
            let tc = Cplx::new(ctx.rat(&t[0]), ctx.rat(&t[1]));
            let z = lambda.iter().zip(&mu).map(|(l, m)| &tc.scale(&ctx.rat(l)) + &Cplx::from_rat(&ctx, m)).collect();
            let p = Point::new(tc, z)?;
            out["tau"] = json!(strs(t));
            out["value"] = output::cplx(&f.evaluate(&p, &ctx)?);
        }
        Ok(output::pretty(&out))
    })
}

#[derive(Args, Debug)]
pub struct EigenArgs {
    /// Weight, rational (default 1)
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Spectral parameter (default 5/2)
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Seed index n, rational (default 1)
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Sample points (default 3)
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn eigen(a: &EigenArgs, c: &Common, file: &ConfigFile) -> CliResult<String> {
    let l = &c.lattice;
    let k = pick_rat(a.k.as_deref(), file, "k", ri(1))?;
    let s = pick_rat(a.s.as_deref(), file, "s", Rat::new(5.into(), 2.into()))?;
    let n = match &a.n {
        Some(t) => parse_rational(t)?,
        None => ri(1),
    };
    let r = index_vec(a.r.as_deref(), l.rank(), "--r")?;
    let samples = pick(a.samples, file, "samples", 3usize)?;
    let seed = pick(a.seed, file, "seed", 1u64)?;
    let cfg = json!({
        "L": output::lattice(l), "k": rat_to_string(&k), "s": rat_to_string(&s), "n": rat_to_string(&n), "r": r,
        "samples": samples, "seed": seed,
    });
    cached("eigen", &cfg, c.precision_bits, c.no_cache, || {
        let rep = eigen_check(l, &k, &s, &n, &r, samples, seed, &ctx(c))?;
        Ok(output::pretty(&json!({
            "command": "eigen",
            "L": output::lattice(l),
            "k": rat_to_string(&k), "s": rat_to_string(&s), "n": rat_to_string(&n), "r": r,
            "D": output::rat(&l.discriminant(&n, &r)),
            "eigenvalue": output::rat(&rep.eigenvalue),
            "printed_eigenvalue": output::rat(&rep.printed),
            "samples": rep.samples,
            "residual": rep.residual,
            "printed_residual": rep.printed_residual,
        })))
    })
}
