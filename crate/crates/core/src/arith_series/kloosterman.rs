//! Generalised Kloosterman sums K_{c,L}(n, r, n', r').

use super::lattice::{ints, GramLattice, Rat};
use crate::error::{Error, Result};
use crate::numeric::{Cplx, PrecisionContext};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// e(-r^T L^{-1} r' / 2c) sum_{d mod c, gcd(d,c)=1} sum_{lambda mod c}
/// e((dbar L[lambda] + n' d - r'.lambda + dbar n + dbar r.lambda) / c).
///
/// The inner exponent is an integer over c, so the double sum is collected
/// as a histogram of residues mod c before any floating point work.
pub fn kloosterman(
    c: u64,
    lattice: &GramLattice,
    n: i64,
    r: &[i64],
    n2: i64,
    r2: &[i64],
    ctx: &PrecisionContext,
) -> Result<Cplx> {
    let hist = kloosterman_histogram(c, lattice, n, r, n2, r2)?;
    let cc = c as i64;
    let mut acc = Cplx::zero(ctx);
    let two_pi = ctx.pi() * 2u32;
    for (j, &cnt) in hist.iter().enumerate() {
        if cnt == 0 {
            continue;
        }
        let ang = rug::Float::with_val(ctx.bits, &two_pi * j as u64) / cc;
        let (s, co) = ang.sin_cos(rug::Float::new(ctx.bits));
        acc = &acc + &Cplx::new(co * cnt, s * cnt);
    }
    let pre = lattice.inv_bilinear(&ints(r), &ints(r2)) / Rat::from_integer(BigInt::from(2 * cc));
    let e = Cplx::from_rat(ctx, &-pre).e();
    Ok(&acc * &e)
}

/// Counts of the residues j mod c of the exponent numerator.
pub fn kloosterman_histogram(c: u64, lattice: &GramLattice, n: i64, r: &[i64], n2: i64, r2: &[i64]) -> Result<Vec<i64>> {
    if c == 0 {
        return Err(Error::Domain("Kloosterman modulus must be positive".into()));
    }
    let dim = lattice.rank();
    if r.len() != dim || r2.len() != dim {
        return Err(Error::Malformed("index vectors must have length N".into()));
    }
    let cc = c as i64;
    // 2L as an integer matrix
    let m: Vec<Vec<i64>> = (0..dim)
        .map(|i| (0..dim).map(|j| (lattice.entry(i, j) * Rat::from_integer(2.into())).to_integer().to_i64().unwrap()).collect())
        .collect();
    let mut hist = vec![0i64; c as usize];
    let mut lam = vec![0i64; dim];
    let total = (c as usize).pow(dim as u32);
    let units: Vec<(i64, i64)> = (0..cc)
        .filter(|&d| gcd(d, cc) == 1)
        .map(|d| {
            let dbar = (0..cc).find(|e| (d * e).rem_euclid(cc) == 1 % cc).unwrap_or(0);
            (d, dbar)
        })
        .collect();
    for idx in 0..total {
        let mut t = idx;
        for l in lam.iter_mut() {
            *l = (t % c as usize) as i64;
            t /= c as usize;
        }
        let mut q2 = 0i64;
        for i in 0..dim {
            for j in 0..dim {
                q2 += lam[i] * m[i][j] * lam[j];
            }
        }
        let lq = q2 / 2;
        let r2l: i64 = r2.iter().zip(&lam).map(|(a, b)| a * b).sum();
        let rl: i64 = r.iter().zip(&lam).map(|(a, b)| a * b).sum();
        for &(d, dbar) in &units {
            let num = dbar * lq + n2 * d - r2l + dbar * n + dbar * rl;
            hist[num.rem_euclid(cc) as usize] += 1;
        }
    }
    Ok(hist)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a.rem_euclid(b))
    }
}
