//! Raising/lowering operators, the Casimir operator in coordinates and in
//! raising/lowering form, Laplace, heat and D_- operators, and the Lie
//! slash action of the algebra and its enveloping algebra.

use super::coeff::{IndexData, Ring, PI, Y};
use super::diffop::DiffOp;
use crate::enveloping::PbwElement;
use crate::error::{Error, Result};
use crate::exact::{GaussRat, Mat};
use crate::group_core::{AlgebraElement, Basis, BasisElt};
use std::collections::HashMap;

/// An operator with a weight shift. Its coefficients are written for input
/// weight k; in a product each factor is evaluated at the weight its
/// input actually carries.
#[derive(Clone, Debug)]
pub struct WeightedOp {
    pub op: DiffOp,
    pub shift: i64,
}

impl WeightedOp {
    pub fn new(op: DiffOp, shift: i64) -> Self {
        WeightedOp { op, shift }
    }
}

/// Product A_1 A_2 ... A_m where A_j is taken at weight k + (sum of the
/// shifts of A_{j+1}..A_m).
pub fn chain(ops: &[&WeightedOp]) -> WeightedOp {
    let n = ops.first().map(|o| o.op.n).unwrap_or(1);
    let mut acc = DiffOp::identity(n);
    let mut w = 0i64;
    for o in ops.iter().rev() {
        acc = o.op.shift_k(w).compose(&acc);
        w += o.shift;
    }
    WeightedOp { op: acc, shift: w }
}

/// [A, B] = AB - BA with shift bookkeeping.
pub fn chain_commutator(a: &WeightedOp, b: &WeightedOp) -> DiffOp {
    chain(&[a, b]).op.sub(&chain(&[b, a]).op)
}

#[derive(Clone, Debug)]
pub struct RaisingLowering {
    pub n: usize,
    pub x_plus: WeightedOp,
    pub x_minus: WeightedOp,
    pub y_plus: Vec<WeightedOp>,
    pub y_minus: Vec<WeightedOp>,
}

fn gi(re: i64, im: i64) -> GaussRat {
    GaussRat::new(crate::exact::rat_int(re), crate::exact::rat_int(im))
}

pub fn build_raising_lowering(idx: &IndexData) -> RaisingLowering {
    let n = idx.n;
    let r = idx.ring();
    let y = r.var(Y);
    let yinv = r.pow(Y, -1);
    let i = GaussRat::i();
    // X_- = -2iy (y d_taubar + v^T d_zbar)
    let mut xm = DiffOp::deriv(n, DiffOp::d_taubar(n), r.pow(Y, 2).scale(&gi(0, -2)));
    for j in 0..n {
        xm = xm.add(&DiffOp::deriv(n, DiffOp::d_zbar(n, j), (&y * &r.var(r.v(j))).scale(&gi(0, -2))));
    }
    // X_+ = 2i (d_tau + y^-1 v^T d_z + y^-2 frakL[v]) + k y^-1
    let mut xp = DiffOp::deriv(n, DiffOp::d_tau(n), r.c(gi(0, 2)));
    for j in 0..n {
        xp = xp.add(&DiffOp::deriv(n, DiffOp::d_z(n, j), (&yinv * &r.var(r.v(j))).scale(&gi(0, 2))));
    }
    let zeroth = &(&r.pow(Y, -2) * &idx.frak_quad_v()).scale(&gi(0, 2)) + &(&r.k() * &yinv);
    xp = xp.add(&DiffOp::mult(n, zeroth));
    let mut yp = Vec::new();
    let mut ym = Vec::new();
    for j in 0..n {
        ym.push(WeightedOp::new(DiffOp::deriv(n, DiffOp::d_zbar(n, j), y.scale(&-&i)), -1));
        let p = DiffOp::deriv(n, DiffOp::d_z(n, j), r.c(i.clone()))
            .add(&DiffOp::mult(n, (&yinv * &idx.frak_v(j)).scale(&gi(0, 2))));
        yp.push(WeightedOp::new(p, 1));
    }
    RaisingLowering { n, x_plus: WeightedOp::new(xp, 2), x_minus: WeightedOp::new(xm, -2), y_plus: yp, y_minus: ym }
}

/// One named entry of the commutator table: computed and expected.
#[derive(Clone, Debug)]
pub struct CommutatorCheck {
    pub name: String,
    pub computed: DiffOp,
    pub expected: DiffOp,
}

impl CommutatorCheck {
    pub fn holds(&self) -> bool {
        self.computed == self.expected
    }
}

/// The full commutator table of the raising and lowering operators.
pub fn commutator_table(idx: &IndexData) -> Vec<CommutatorCheck> {
    let n = idx.n;
    let r = idx.ring();
    let rl = build_raising_lowering(idx);
    let zero = DiffOp::zero(n);
    let mut out = Vec::new();
    let mut push = |name: String, computed: DiffOp, expected: DiffOp| out.push(CommutatorCheck { name, computed, expected });
    push(
        "[X-,X+] = -k".into(),
        chain_commutator(&rl.x_minus, &rl.x_plus),
        DiffOp::mult(n, r.k().scale(&GaussRat::int(-1))),
    );
    for a in 0..n {
        for b in 0..n {
            push(
                format!("[Y-{},Y+{}] = i L{}{}", a + 1, b + 1, a + 1, b + 1),
                chain_commutator(&rl.y_minus[a], &rl.y_plus[b]),
                DiffOp::mult(n, idx.frak(a, b).scale(&GaussRat::i())),
            );
            push(format!("[Y+{},Y+{}] = 0", a + 1, b + 1), chain_commutator(&rl.y_plus[a], &rl.y_plus[b]), zero.clone());
            push(format!("[Y-{},Y-{}] = 0", a + 1, b + 1), chain_commutator(&rl.y_minus[a], &rl.y_minus[b]), zero.clone());
        }
        push(
            format!("[X-,Y+{}] = -Y-{}", a + 1, a + 1),
            chain_commutator(&rl.x_minus, &rl.y_plus[a]),
            rl.y_minus[a].op.scale(&GaussRat::int(-1)),
        );
        push(format!("[Y-{},X+] = Y+{}", a + 1, a + 1), chain_commutator(&rl.y_minus[a], &rl.x_plus), rl.y_plus[a].op.clone());
        push(format!("[X+,Y+{}] = 0", a + 1), chain_commutator(&rl.x_plus, &rl.y_plus[a]), zero.clone());
        push(format!("[X-,Y-{}] = 0", a + 1), chain_commutator(&rl.x_minus, &rl.y_minus[a]), zero.clone());
    }
    out
}

/// Delta_kappa = 4 y^2 d_tau d_taubar - 2 i kappa y d_taubar, with kappa given
/// as a coefficient.
fn laplacian_weight(r: Ring, kappa: &super::coeff::CoeffPoly) -> DiffOp {
    let n = r.n;
    let mut m = vec![0u8; DiffOp::nder(n)];
    m[0] = 1;
    m[1] = 1;
    let mut op = DiffOp::zero(n);
    op.add_term(m, r.pow(Y, 2).scale(&GaussRat::int(4)));
    op.add(&DiffOp::deriv(n, DiffOp::d_taubar(n), (kappa * &r.var(Y)).scale(&gi(0, -2))))
}

fn mono(n: usize, ds: &[usize]) -> Vec<u8> {
    let mut m = vec![0u8; DiffOp::nder(n)];
    for &d in ds {
        m[d] += 1;
    }
    m
}

/// The Casimir operator in the coordinates (tau, z), coefficients written
/// to the left of the derivatives.
pub fn build_casimir_op(idx: &IndexData) -> DiffOp {
    let n = idx.n;
    let r = idx.ring();
    let ni = n as i64;
    let y = r.var(Y);
    let y2 = r.pow(Y, 2);
    let dt = DiffOp::d_tau(n);
    let dtb = DiffOp::d_taubar(n);
    let dz = |j| DiffOp::d_z(n, j);
    let dzb = |j| DiffOp::d_zbar(n, j);
    let v = |j| r.var(r.v(j));
    let li = |a, b| idx.frak_inv(a, b);
    let mut op = DiffOp::zero(n);
    let mut add = |ds: &[usize], c: super::coeff::CoeffPoly| op.add_term(mono(n, ds), c);

    // -2 Delta_{k - N/2}
    let kappa = &r.k() - &r.c(GaussRat::frac(ni, 2));
    let lap = laplacian_weight(r, &kappa).scale(&GaussRat::int(-2));
    for a in 0..n {
        for b in 0..n {
            // 2 y^2 (d_taubar L^-1[d_z] + d_tau L^-1[d_zbar])
            add(&[dtb, dz(a), dz(b)], (&y2 * &li(a, b)).scale(&GaussRat::int(2)));
            add(&[dt, dzb(a), dzb(b)], (&y2 * &li(a, b)).scale(&GaussRat::int(2)));
        }
    }
    for j in 0..n {
        // -8 y v_j d_tau d_zbar_j
        add(&[dt, dzb(j)], (&y * &v(j)).scale(&GaussRat::int(-8)));
    }
    let mhalf = GaussRat::frac(-1, 2);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    // -1/2 y^2 (L^-1[d_zbar] L^-1[d_z] - (d_zbar^T L^-1 d_z)^2)
                    add(&[dzb(a), dzb(b), dz(c), dz(d)], (&(&y2 * &li(a, b)) * &li(c, d)).scale(&mhalf));
                    add(&[dzb(a), dz(b), dzb(c), dz(d)], (&(&y2 * &li(a, b)) * &li(c, d)).scale(&GaussRat::frac(1, 2)));
                }
            }
        }
    }
    // 2 y (v^T d_zbar) d_z^T L^-1 d_u with d_u = d_z + d_zbar
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let co = (&(&y * &v(a)) * &li(b, c)).scale(&GaussRat::int(2));
                add(&[dzb(a), dz(b), dz(c)], co.clone());
                add(&[dzb(a), dz(b), dzb(c)], co);
            }
        }
    }
    // -1/2 (2k - N + 1) i y d_zbar^T L^-1 d_u
    let k2 = &r.k().scale(&GaussRat::int(2)) + &r.int(1 - ni);
    for a in 0..n {
        for b in 0..n {
            let co = (&(&k2 * &y) * &li(a, b)).scale(&GaussRat::new(crate::exact::rat(0, 1), crate::exact::rat(-1, 2)));
            add(&[dzb(a), dz(b)], co.clone());
            add(&[dzb(a), dzb(b)], co);
        }
    }
    // 2 v^T (v^T d_zbar) d_zbar
    for a in 0..n {
        for b in 0..n {
            add(&[dzb(a), dzb(b)], (&v(a) * &v(b)).scale(&GaussRat::int(2)));
        }
    }
    // (2k - N - 1) i v^T d_zbar
    let k3 = &r.k().scale(&GaussRat::int(2)) + &r.int(-1 - ni);
    for j in 0..n {
        add(&[dzb(j)], (&k3 * &v(j)).scale(&GaussRat::i()));
    }
    op.add(&lap)
}

/// The Casimir operator assembled from raising and lowering operators.
pub fn build_casimir_rl(idx: &IndexData) -> DiffOp {
    let n = idx.n;
    let r = idx.ring();
    let ni = n as i64;
    let rl = build_raising_lowering(idx);
    let (xp, xm, yp, ym) = (&rl.x_plus, &rl.x_minus, &rl.y_plus, &rl.y_minus);
    let i = GaussRat::i();
    let mut acc = chain(&[xp, xm]).op.scale(&GaussRat::int(-2));
    for a in 0..n {
        for b in 0..n {
            let lab = idx.frak_inv(a, b);
            // i (X+ L^-1[Y-] - L^-1[Y+] X-)
            let t = chain(&[xp, &ym[a], &ym[b]]).op.sub(&chain(&[&yp[a], &yp[b], xm]).op);
            acc = acc.add(&t.lmul(&lab).scale(&i));
            // -1/2 (2k - N - 3) i Y+^T L^-1 Y-
            let k4 = &r.k().scale(&GaussRat::int(2)) + &r.int(-3 - ni);
            let co = (&k4 * &lab).scale(&GaussRat::new(crate::exact::rat(0, 1), crate::exact::rat(-1, 2)));
            acc = acc.add(&chain(&[&yp[a], &ym[b]]).op.lmul(&co));
        }
    }
    // -1/2 (L^-1[Y+] L^-1[Y-] - sum Y+a Y+b L^-1_bc Y-c L^-1_ad Y-d)
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let word = chain(&[&yp[a], &yp[b], &ym[c], &ym[d]]).op;
                    let co = &(&idx.frak_inv(a, b) * &idx.frak_inv(c, d)) - &(&idx.frak_inv(b, c) * &idx.frak_inv(a, d));
                    acc = acc.add(&word.lmul(&co).scale(&GaussRat::frac(-1, 2)));
                }
            }
        }
    }
    acc
}

/// Laplace operator X+ X- + Y+^T C Y- for a symmetric positive definite C.
pub fn build_laplace(idx: &IndexData, c: &Mat<GaussRat>) -> Result<DiffOp> {
    let n = idx.n;
    if c.rows != n || c.cols != n || !c.is_symmetric() {
        return Err(Error::Malformed("C must be a symmetric N x N matrix".into()));
    }
    if !is_positive_definite(c) {
        return Err(Error::Domain("C must be positive definite".into()));
    }
    let rl = build_raising_lowering(idx);
    let r = idx.ring();
    let mut acc = chain(&[&rl.x_plus, &rl.x_minus]).op;
    for a in 0..n {
        for b in 0..n {
            let cab = c.get(a, b);
            if cab.is_zero() {
                continue;
            }
            acc = acc.add(&chain(&[&rl.y_plus[a], &rl.y_minus[b]]).op.lmul(&r.c(cab.clone())));
        }
    }
    Ok(acc)
}

/// Sylvester's criterion on leading principal minors (real part only).
pub fn is_positive_definite(c: &Mat<GaussRat>) -> bool {
    if !c.data.iter().all(|x| x.is_real()) {
        return false;
    }
    (1..=c.rows).all(|m| {
        let sub = c.block(0, 0, m, m);
        let d = sub.det();
        d.re > crate::exact::rat(0, 1)
    })
}

/// Heat operator 2 d_tau - 1/2 L^-1[d_z].
pub fn build_heat(idx: &IndexData) -> DiffOp {
    let n = idx.n;
    let r = idx.ring();
    let mut op = DiffOp::deriv(n, DiffOp::d_tau(n), r.int(2));
    for a in 0..n {
        for b in 0..n {
            op.add_term(mono(n, &[DiffOp::d_z(n, a), DiffOp::d_z(n, b)]), idx.frak_inv(a, b).scale(&GaussRat::frac(-1, 2)));
        }
    }
    op
}

/// D_- = X_- - (i/2) L^-1[Y_-].
pub fn build_d_minus(idx: &IndexData) -> DiffOp {
    let n = idx.n;
    let rl = build_raising_lowering(idx);
    let mut acc = rl.x_minus.op.clone();
    let c = GaussRat::new(crate::exact::rat(0, 1), crate::exact::rat(-1, 2));
    for a in 0..n {
        for b in 0..n {
            acc = acc.add(&chain(&[&rl.y_minus[a], &rl.y_minus[b]]).op.lmul(&idx.frak_inv(a, b)).scale(&c));
        }
    }
    acc
}

/// The operator by which a basis element acts under the slash action.
pub fn lie_slash_basis(idx: &IndexData, x: BasisElt) -> DiffOp {
    let n = idx.n;
    let r = idx.ring();
    let dt = DiffOp::d_tau(n);
    let dtb = DiffOp::d_taubar(n);
    let tau = r.tau();
    let taub = r.taubar();
    match x {
        BasisElt::E => DiffOp::deriv(n, dt, r.one()).add(&DiffOp::deriv(n, dtb, r.one())),
        BasisElt::F => {
            let mut op = DiffOp::deriv(n, dt, (&tau * &tau).scale(&GaussRat::int(-1)));
            op = op.add(&DiffOp::deriv(n, dtb, (&taub * &taub).scale(&GaussRat::int(-1))));
            for j in 0..n {
                op = op.add(&DiffOp::deriv(n, DiffOp::d_z(n, j), (&tau * &r.z(j)).scale(&GaussRat::int(-1))));
                op = op.add(&DiffOp::deriv(n, DiffOp::d_zbar(n, j), (&taub * &r.zbar(j)).scale(&GaussRat::int(-1))));
            }
            let zeroth = &(&r.k() * &tau).scale(&GaussRat::int(-1)) - &idx.frak_quad_z();
            op.add(&DiffOp::mult(n, zeroth))
        }
        BasisElt::H => {
            let mut op = DiffOp::deriv(n, dt, tau.scale(&GaussRat::int(2)));
            op = op.add(&DiffOp::deriv(n, dtb, taub.scale(&GaussRat::int(2))));
            for j in 0..n {
                op = op.add(&DiffOp::deriv(n, DiffOp::d_z(n, j), r.z(j)));
                op = op.add(&DiffOp::deriv(n, DiffOp::d_zbar(n, j), r.zbar(j)));
            }
            op.add(&DiffOp::mult(n, r.k()))
        }
        BasisElt::LowE(i) => {
            DiffOp::deriv(n, DiffOp::d_z(n, i), r.one()).add(&DiffOp::deriv(n, DiffOp::d_zbar(n, i), r.one()))
        }
        BasisElt::LowF(i) => DiffOp::deriv(n, DiffOp::d_z(n, i), tau)
            .add(&DiffOp::deriv(n, DiffOp::d_zbar(n, i), taub))
            .add(&DiffOp::mult(n, idx.frak_z(i).scale(&GaussRat::int(2)))),
        BasisElt::Z(i, j) => DiffOp::mult(n, idx.frak(i, j)),
    }
}

/// Lie slash action of an algebra element (linear in the element).
pub fn build_lie_slash(idx: &IndexData, y: &AlgebraElement<GaussRat>) -> Result<DiffOp> {
    let n = idx.n;
    if y.n() != n {
        return Err(Error::Malformed("rank mismatch between element and index".into()));
    }
    let basis = Basis::new(n);
    let coeffs = y.coeffs();
    let mut acc = DiffOp::zero(n);
    for (g, c) in basis.all().into_iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&lie_slash_basis(idx, g).scale(&c));
        }
    }
    Ok(acc)
}

/// Image of an enveloping-algebra element: the word Y_1 ... Y_m acts by
/// rho(Y_m) o ... o rho(Y_1).
pub fn uea_to_op(idx: &IndexData, a: &PbwElement) -> Result<DiffOp> {
    let n = idx.n;
    if a.n != n {
        return Err(Error::Malformed("rank mismatch between element and index".into()));
    }
    let basis = Basis::new(n);
    let gens: Vec<DiffOp> = basis.all().into_iter().map(|g| lie_slash_basis(idx, g)).collect();
    // memo over word prefixes (as flat generator lists)
    let mut memo: HashMap<Vec<usize>, DiffOp> = HashMap::new();
    memo.insert(vec![], DiffOp::identity(n));
    let mut acc = DiffOp::zero(n);
    for (m, c) in &a.terms {
        let word: Vec<usize> = m.iter().enumerate().flat_map(|(g, &e)| std::iter::repeat(g).take(e as usize)).collect();
        let op = word_op(&word, &gens, &mut memo);
        acc = acc.add(&op.scale(c));
    }
    Ok(acc)
}

fn word_op(word: &[usize], gens: &[DiffOp], memo: &mut HashMap<Vec<usize>, DiffOp>) -> DiffOp {
    if let Some(op) = memo.get(word) {
        return op.clone();
    }
    let (last, prefix) = word.split_last().unwrap();
    let p = word_op(prefix, gens, memo);
    let op = gens[*last].compose(&p);
    memo.insert(word.to_vec(), op.clone());
    op
}

/// Both sides of uea_to_op(Omega_N) = det(frakL) (k (k - N - 2) - 2 C).
#[derive(Clone, Debug)]
pub struct BridgeReport {
    pub lhs: DiffOp,
    pub rhs: DiffOp,
    pub x_u_free: bool,
}

impl BridgeReport {
    pub fn holds(&self) -> bool {
        self.x_u_free && self.lhs == self.rhs
    }
    /// Casimir operator recovered from the left-hand side.
    pub fn derived_casimir(&self, idx: &IndexData) -> DiffOp {
        let n = idx.n;
        let r = idx.ring();
        let det = idx.frak_det();
        let mut inv_det = r.zero();
        for (e, c) in &det.terms {
            let ne: Vec<i32> = e.iter().map(|x| -x).collect();
            inv_det.add_term(ne, c.inv().unwrap());
        }
        let kk = &r.k() * &(&r.k() + &r.int(-(n as i64) - 2));
        let scaled = self.lhs.lmul(&inv_det);
        DiffOp::mult(n, kk).sub(&scaled).scale(&GaussRat::frac(1, 2))
    }
}

pub fn bridge_identity(idx: &IndexData) -> Result<BridgeReport> {
    let n = idx.n;
    let r = idx.ring();
    let omega = crate::enveloping::build_casimir(n)?;
    let lhs = uea_to_op(idx, &omega)?;
    let cas = build_casimir_op(idx);
    let kk = &r.k() * &(&r.k() + &r.int(-(n as i64) - 2));
    let rhs = DiffOp::mult(n, kk).sub(&cas.scale(&GaussRat::int(2))).lmul(&idx.frak_det());
    let x_u_free = !lhs.involves_x_or_u();
    Ok(BridgeReport { lhs, rhs, x_u_free })
}

/// The semi-holomorphic restriction of the Casimir operator as expected:
/// -2 Delta_{k-N/2} + 2 y^2 d_taubar L^-1[d_z].
pub fn expected_semiholomorphic_casimir(idx: &IndexData) -> DiffOp {
    let n = idx.n;
    let r = idx.ring();
    let kappa = &r.k() - &r.c(GaussRat::frac(n as i64, 2));
    let mut op = laplacian_weight(r, &kappa).scale(&GaussRat::int(-2));
    for a in 0..n {
        for b in 0..n {
            op.add_term(
                mono(n, &[DiffOp::d_taubar(n), DiffOp::d_z(n, a), DiffOp::d_z(n, b)]),
                (&r.pow(Y, 2) * &idx.frak_inv(a, b)).scale(&GaussRat::int(2)),
            );
        }
    }
    op
}

/// Powers of the formal pi appearing in an operator, as a sanity aid.
pub fn pi_degrees(op: &DiffOp) -> Vec<i32> {
    let mut v: Vec<i32> = op.terms.values().flat_map(|c| c.terms.keys().map(|e| e[PI])).collect();
    v.sort();
    v.dedup();
    v
}
