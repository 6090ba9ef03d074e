//! `jacobi`: verification suites and series computations for Jacobi forms
//! of lattice index. Every command prints JSON; failures print a JSON error
//! object and exit with one of the codes listed in [`error::CliError`].

mod cache;
mod commands;
mod config;
mod error;
mod output;
mod verify;

use clap::{Args, Parser, Subcommand};
use config::{ConfigFile, GlobalFlags};
use error::{CliError, CliResult, EXIT_VERIFY_FAILED};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "jacobi", version, about = "Jacobi forms of lattice index: verification suites and series")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Working precision in bits (default 128)
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    /// Largest modulus c in Kloosterman and Poincare sums (default 50)
    #[arg(long, global = true)]
    cmax: Option<u64>,
    /// Largest q-exponent kept in truncated expansions (default 2)
    #[arg(long, global = true, allow_hyphen_values = true)]
    bound: Option<String>,
    /// Lattice rank; without --L the identity Gram matrix is used (default 1)
    #[arg(long = "N", id = "rank", global = true)]
    n: Option<usize>,
    /// Gram matrix, e.g. "2" or "1,1/2,1/2,1" or "1,1/2;1/2,1"
    #[arg(long = "L", id = "gram", global = true)]
    l: Option<String>,
    /// Write the JSON result to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,
    /// Recompute even if a cached result exists
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for c-sums
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Flat TOML file with default settings; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite: centrality, commutators, casimir-equality,
    /// bridge, cocycle, covariance, eigen, duality, kloosterman-symmetry
    Verify(verify::VerifyArgs),
    /// Kloosterman sums K_{c,L}(n, r, n', r')
    Kloosterman(commands::KloostermanArgs),
    /// Theta series theta_{L,mu} or theta_{k,L}^{(r)}
    Theta(commands::ThetaArgs),
    /// Fourier coefficients of the Maass-Jacobi Poincare series
    Poincare(commands::PoincareArgs),
    /// Fourier coefficients of the skew-holomorphic Poincare series
    SkewPoincare(commands::SkewArgs),
    /// theta-decomposition of an expansion file
    Decompose(commands::DecomposeArgs),
    /// Specialize an expansion file to z = lambda tau + mu
    Specialize(commands::SpecializeArgs),
    /// Casimir eigenvalue check of the Poincare seed
    Eigen(commands::EigenArgs),
}

fn run(cli: Cli) -> CliResult<i32> {
    let file = match &cli.global.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let g = &cli.global;
    let common = config::resolve_common(
        GlobalFlags {
            precision_bits: g.precision_bits,
            cmax: g.cmax,
            bound: g.bound.as_deref(),
            n: g.n,
            l: g.l.as_deref(),
            out: g.out.clone(),
            no_cache: g.no_cache,
            jobs: g.jobs,
        },
        &file,
    )?;
    let (text, code) = match &cli.command {
        Command::Verify(a) => {
            let (text, pass) = verify::run(a, &common, &file)?;
            (text, if pass { 0 } else { EXIT_VERIFY_FAILED })
        }
        Command::Kloosterman(a) => (commands::kloosterman(a, &common)?, 0),
        Command::Theta(a) => (commands::theta(a, &common)?, 0),
        Command::Poincare(a) => (commands::poincare(a, &common, &file)?, 0),
        Command::SkewPoincare(a) => (commands::skew_poincare(a, &common, &file)?, 0),
        Command::Decompose(a) => (commands::decompose(a, &common)?, 0),
        Command::Specialize(a) => (commands::specialize(a, &common)?, 0),
        Command::Eigen(a) => (commands::eigen(a, &common, &file)?, 0),
    };
    match &common.out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| CliError::io(format!("{path}: {e}")))?,
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(code)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let err = CliError::usage(e.to_string().trim().to_string());
            println!("{}", serde_json::to_string_pretty(&err.to_json()).unwrap());
            std::process::exit(err.code);
        }
    };
    let code = match run(cli) {
        Ok(c) => c,
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&e.to_json()).unwrap());
            e.code
        }
    };
    std::process::exit(code);
}
