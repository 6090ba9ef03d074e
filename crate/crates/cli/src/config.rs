//! Resolution of settings: command-line flags, then the config file, then
//! built-in defaults.

use crate::error::{CliError, CliResult};
use jacobi_core::arith_series::{GramLattice, Rat};
use jacobi_core::exact::gauss::parse_rat;
use num_bigint::BigInt;
use std::path::Path;
use std::str::FromStr;

/// Flat key/value settings read from a TOML file.
#[derive(Default)]
pub struct ConfigFile {
    table: toml::Table,
}

pub const KNOWN_KEYS: &[&str] =
    &["precision_bits", "cmax", "bound", "N", "L", "out", "no_cache", "jobs", "k", "s", "y", "samples", "seed"];

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
        let table: toml::Table = text.parse().map_err(|e| CliError::usage(format!("config file {}: {e}", path.display())))?;
        for (k, v) in &table {
            if !KNOWN_KEYS.contains(&k.as_str()) {
                return Err(CliError::usage(format!("config file: unknown key {k}")));
            }
            if v.is_table() || v.is_array() {
                return Err(CliError::usage(format!("config file: key {k} must be a scalar")));
            }
        }
        Ok(ConfigFile { table })
    }

    /// The value as text, so that every key goes through the same parser as
    /// its flag.
    fn text(&self, key: &str) -> Option<String> {
        self.table.get(key).map(|v| match v {
            toml::Value::String(s) => s.clone(),
            other => other.to_string(),
        })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.text(key) {
            None => Ok(None),
            Some(s) => s.parse().map(Some).map_err(|_| CliError::usage(format!("config file: bad value for {key}: {s}"))),
        }
    }

    pub fn get_rat(&self, key: &str) -> CliResult<Option<Rat>> {
        match self.text(key) {
            None => Ok(None),
            Some(s) => parse_rational(&s).map(Some).map_err(|_| CliError::usage(format!("config file: bad value for {key}: {s}"))),
        }
    }
}

/// flag > file > default
pub fn pick<T: FromStr>(flag: Option<T>, file: &ConfigFile, key: &str, default: T) -> CliResult<T> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(file.get(key)?.unwrap_or(default)),
    }
}

pub fn pick_rat(flag: Option<&str>, file: &ConfigFile, key: &str, default: Rat) -> CliResult<Rat> {
    match flag {
        Some(s) => parse_rational(s),
        None => Ok(file.get_rat(key)?.unwrap_or(default)),
    }
}

/// "5/2", "-3" or a terminating decimal such as "2.5".
pub fn parse_rational(s: &str) -> CliResult<Rat> {
    let t = s.trim();
    let bad = || CliError::usage(format!("not a rational number: {s:?}"));
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        if frac.is_empty() && int.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) || !int.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let q = Rat::new(num, den);
        Ok(if neg { -q } else { q })
    } else {
        parse_rat(t).ok_or_else(bad)
    }
}

pub fn parse_ints(s: &str) -> CliResult<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| CliError::usage(format!("not an integer list: {s:?}")))).collect()
}

pub fn parse_rats(s: &str) -> CliResult<Vec<Rat>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(parse_rational).collect()
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug)]
pub struct Common {
    pub precision_bits: u32,
    pub cmax: u64,
    pub bound: Rat,
    pub lattice: GramLattice,
    pub out: Option<String>,
    pub no_cache: bool,
    pub jobs: usize,
}

impl Common {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

pub struct GlobalFlags<'a> {
    pub precision_bits: Option<u32>,
    pub cmax: Option<u64>,
    pub bound: Option<&'a str>,
    pub n: Option<usize>,
    pub l: Option<&'a str>,
    pub out: Option<String>,
    pub no_cache: bool,
    pub jobs: Option<usize>,
}

pub fn resolve_common(g: GlobalFlags, file: &ConfigFile) -> CliResult<Common> {
    let precision_bits = pick(g.precision_bits, file, "precision_bits", 128u32)?;
    if !(32..=16384).contains(&precision_bits) {
        return Err(CliError::usage("precision_bits must lie in 32..=16384"));
    }
    let cmax = pick(g.cmax, file, "cmax", 50u64)?;
    if cmax == 0 {
        return Err(CliError::usage("cmax must be positive"));
    }
    let bound = pick_rat(g.bound, file, "bound", Rat::from_integer(2.into()))?;
    if bound <= Rat::from_integer(0.into()) {
        return Err(CliError::usage("bound must be positive"));
    }
    let default_jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let jobs = pick(g.jobs, file, "jobs", default_jobs)?;
    if jobs == 0 {
        return Err(CliError::usage("jobs must be positive"));
    }
    let n_flag = match g.n {
        Some(n) => Some(n),
        None => file.get::<usize>("N")?,
    };
    let l_text = match g.l {
        Some(l) => Some(l.to_string()),
        None => file.get::<String>("L")?,
    };
    let lattice = match (l_text, n_flag) {
        (Some(l), n) => {
            let lat = GramLattice::parse(&l)?;
            if let Some(n) = n {
                if n != lat.rank() {
                    return Err(CliError::usage(format!("--N {n} does not match the rank {} of --L", lat.rank())));
                }
            }
            lat
        }
        (None, n) => {
            let n = n.unwrap_or(1);
            if n == 0 {
                return Err(CliError::usage("N must be positive"));
            }
            let id: Vec<i64> = (0..n * n).map(|i| i64::from(i % (n + 1) == 0)).collect();
            GramLattice::from_i64(n, &id)?
        }
    };
    let out = g.out.or(file.get::<String>("out")?);
    let no_cache = g.no_cache || file.get::<bool>("no_cache")?.unwrap_or(false);
    Ok(Common { precision_bits, cmax, bound, lattice, out, no_cache, jobs })
}
