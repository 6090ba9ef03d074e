use super::pbw::PbwElement;
use super::zmat::det_adj;
use crate::error::{Error, Result};
use crate::exact::{GaussRat, Poly};
use crate::group_core::{Basis, BasisElt};

/// Which bilinear form det(Z) x^T Z^-1 y to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bilinear {
    /// det(Z) e^T Z^-1 f
    EF,
    /// det(Z) f^T Z^-1 f
    FF,
    /// det(Z) e^T Z^-1 e
    EE,
}

fn low(b: &Basis, first: bool, kind: Bilinear, i: usize) -> usize {
    let is_e = match kind {
        Bilinear::EF => first,
        Bilinear::FF => false,
        Bilinear::EE => true,
    };
    b.index(if is_e { BasisElt::LowE(i) } else { BasisElt::LowF(i) })
}

/// sum_ij adj(Z)_ij x_i y_j. All factors are already in PBW order, so the
/// commutative product is the normally ordered element.
pub fn adjugate_substitute(n: usize, kind: Bilinear) -> PbwElement {
    let b = Basis::new(n);
    let dim = b.dim();
    let (_, adj) = det_adj(n);
    let mut p = Poly::zero(dim);
    for i in 0..n {
        for j in 0..n {
            let x = Poly::var(dim, low(&b, true, kind, i));
            let y = Poly::var(dim, low(&b, false, kind, j));
            p.add_assign_ref(&(&(&adj[i][j] * &x) * &y));
        }
    }
    PbwElement::from_ordered_poly(n, &p)
}

pub fn det_z(n: usize) -> PbwElement {
    PbwElement::from_ordered_poly(n, &det_adj(n).0)
}

/// Exact division by det(Z); the coefficient of every non-central monomial
/// must be divisible as a polynomial in the Z_ij.
pub fn divide_by_det(a: &PbwElement) -> Result<PbwElement> {
    let (d, _) = det_adj(a.n);
    let q = a.to_ordered_poly().div_exact(&d).map_err(|e| match e {
        Error::NotDivisible(s) => Error::NotDivisible(s),
        other => other,
    })?;
    Ok(PbwElement::from_ordered_poly(a.n, &q))
}

/// The quartic numerator sum (adj_bc adj_ad - adj_ab adj_cd) e_a e_b f_c f_d.
pub fn quartic_numerator(n: usize) -> PbwElement {
    let b = Basis::new(n);
    let dim = b.dim();
    let (_, adj) = det_adj(n);
    let mut p = Poly::zero(dim);
    for a in 0..n {
        for bb in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let coef = &(&adj[bb][c] * &adj[a][d]) - &(&adj[a][bb] * &adj[c][d]);
                    if coef.is_zero() {
                        continue;
                    }
                    let mono = [
                        b.index(BasisElt::LowE(a)),
                        b.index(BasisElt::LowE(bb)),
                        b.index(BasisElt::LowF(c)),
                        b.index(BasisElt::LowF(d)),
                    ];
                    let mut m = Poly::one(dim);
                    for v in mono {
                        m = &m * &Poly::var(dim, v);
                    }
                    p.add_assign_ref(&(&coef * &m));
                }
            }
        }
    }
    PbwElement::from_ordered_poly(n, &p)
}

/// The Casimir element of degree N + 2:
///
/// det(Z)(H^2 - (N+2)H + 4EF) - (H - (N+3)/2) B_ef + E B_ff - B_ee F
/// + (1/4) det(Z)^-1 sum (adj_bc adj_ad - adj_ab adj_cd) e_a e_b f_c f_d,
///
/// with B_xy = det(Z) x^T Z^-1 y.
pub fn build_casimir(n: usize) -> Result<PbwElement> {
    if n == 0 {
        return Err(Error::Domain("rank must be at least 1".into()));
    }
    let g = |e| PbwElement::gen(n, e);
    let (e, f, h) = (g(BasisElt::E), g(BasisElt::F), g(BasisElt::H));
    let d = det_z(n);
    let sl2 = h
        .mul(&h)
        .sub(&h.scale(&GaussRat::int(n as i64 + 2)))
        .add(&e.mul(&f).scale(&GaussRat::int(4)));
    let bef = adjugate_substitute(n, Bilinear::EF);
    let bff = adjugate_substitute(n, Bilinear::FF);
    let bee = adjugate_substitute(n, Bilinear::EE);
    let hshift = h.sub(&PbwElement::scalar(n, GaussRat::frac(n as i64 + 3, 2)));
    let quart = divide_by_det(&quartic_numerator(n))?;
    Ok(d.mul(&sl2)
        .sub(&hshift.mul(&bef))
        .add(&e.mul(&bff))
        .sub(&bee.mul(&f))
        .add(&quart.scale(&GaussRat::frac(1, 4))))
}

/// Nonzero commutators [a, g] over all basis generators g.
pub fn check_centrality(a: &PbwElement) -> Vec<(String, PbwElement)> {
    let b = Basis::new(a.n);
    b.all()
        .into_iter()
        .filter_map(|x| {
            let c = a.commutator(&PbwElement::gen(a.n, x));
            (!c.is_zero()).then(|| (b.name(x), c))
        })
        .collect()
}

/// Default rank cap for the centrality suites.
pub const CENTRALITY_RANK_CAP: usize = 3;

/// Centrality of the Casimir element with the rank cap enforced unless
/// `override_cap` is set.
pub fn casimir_centrality(n: usize, override_cap: bool) -> Result<Vec<(String, PbwElement)>> {
    if n > CENTRALITY_RANK_CAP && !override_cap {
        return Err(Error::Unsupported(format!("rank {n} exceeds the centrality cap {CENTRALITY_RANK_CAP}")));
    }
    Ok(check_centrality(&build_casimir(n)?))
}
