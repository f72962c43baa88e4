//! Free-field realizations of the corner W-algebras, their null field,
//! highest-weight data and screening currents.

use crate::fock::{Engine, Field, FockError, FockSpace, FockVector, NormMode, Op, SectorId, State, TruncatedOperator};
use crate::ratfun::Scalar;
use crate::report::{negative_control, Check, VerificationReport};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalgError {
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error("no consistent mode offset: {0}")]
    NoConsistentOffset(String),
    #[error("unsupported configuration ({0},{1},{2}); expected one of (0,0,1), (0,0,2), (0,1,1)")]
    UnsupportedConfig(usize, usize, usize),
}

/// Generators of a free-field W-algebra. `w[k]` has conformal weight `k + 1`.
#[derive(Clone)]
pub struct WFieldSet {
    pub config: (usize, usize, usize),
    pub space: FockSpace,
    pub btilde: Option<Field>,
    pub w: Vec<Field>,
}

impl WFieldSet {
    pub fn w1(&self) -> &Field {
        &self.w[0]
    }

    pub fn w2(&self) -> Option<&Field> {
        self.w.get(1)
    }

    pub fn w3(&self) -> Option<&Field> {
        self.w.get(2)
    }

    pub fn label(&self) -> String {
        let (a, b, c) = self.config;
        format!("{a}{b}{c}")
    }

    /// Same fields with `W2` replaced, for negative controls.
    pub fn with_w2(&self, w2: Field) -> WFieldSet {
        let mut s = self.clone();
        s.w[1] = w2;
        s
    }
}

fn hb(k: usize) -> Scalar {
    Scalar::hbar(k)
}

/// The Heisenberg algebra: one boson of color 3.
pub fn build_w001(mode: NormMode) -> WFieldSet {
    let space = FockSpace::screening_order(0, 0, 1, mode);
    WFieldSet { config: (0, 0, 1), space, btilde: None, w: vec![Field::boson(0)] }
}

/// Virasoro times Heisenberg on two color-3 bosons.
pub fn build_w002(mode: NormMode) -> WFieldSet {
    let space = FockSpace::screening_order(0, 0, 2, mode);
    let (b1, b2) = (Field::boson(0), Field::boson(1));
    let bt = b1.minus(&b2);
    let w2 = Field::lin(vec![
        (-(hb(1) * hb(2)) / Scalar::int(4), bt.nop(&bt)),
        (-hb(3) / Scalar::int(2), bt.d(1)),
    ]);
    WFieldSet { config: (0, 0, 2), space, btilde: Some(bt), w: vec![b1.plus(&b2), w2] }
}

/// One color-2 and one color-3 boson, in screening order (color 3 first).
pub fn build_w011(mode: NormMode) -> WFieldSet {
    let space = FockSpace::screening_order(0, 1, 1, mode);
    build_w011_on(space)
}

/// The W011 fields on any space holding at least one boson of colors 2 and 3.
pub fn build_w011_on(space: FockSpace) -> WFieldSet {
    let i2 = space.find(2, 0).expect("a color-2 boson");
    let i3 = space.find(3, 0).expect("a color-3 boson");
    let (b2, b3) = (Field::boson(i2), Field::boson(i3));
    let bt = Field::lin(vec![(hb(3), b2.clone()), (-hb(2), b3.clone())]);
    let w2 = Field::lin(vec![(Scalar::rat(1, 2), bt.nop(&bt)), (Scalar::rat(1, 2), bt.d(1))]);
    let w3 = Field::lin(vec![
        (Scalar::int(4), bt.nop(&bt.nop(&bt))),
        (Scalar::int(6), bt.nop(&bt.d(1))),
        (Scalar::one(), bt.d(2)),
    ]);
    WFieldSet { config: (0, 1, 1), space, btilde: Some(bt), w: vec![b2.plus(&b3), w2, w3] }
}

pub fn build(config: (usize, usize, usize), mode: NormMode) -> Result<WFieldSet, WalgError> {
    match config {
        (0, 0, 1) => Ok(build_w001(mode)),
        (0, 0, 2) => Ok(build_w002(mode)),
        (0, 1, 1) => Ok(build_w011(mode)),
        (a, b, c) => Err(WalgError::UnsupportedConfig(a, b, c)),
    }
}

/// `X = (W3 W3) - k (W2 (W2 W2)) - 76 (dW2 dW2) - 112 (d^2W2 W2) + (32/3) d^4 W2`, `k = 128` unperturbed.
pub fn null_field(w: &WFieldSet, k: Scalar) -> Field {
    let w2 = w.w2().expect("W2");
    let w3 = w.w3().expect("W3");
    Field::lin(vec![
        (Scalar::one(), w3.nop(w3)),
        (-k, w2.nop(&w2.nop(w2))),
        (Scalar::int(-76), w2.d(1).nop(&w2.d(1))),
        (Scalar::int(-112), w2.d(2).nop(w2)),
        (Scalar::rat(32, 3), w2.d(4)),
    ])
}

/// Symbolic momenta `p1, p2, ...`, one per boson.
pub fn generic_momenta(n: usize) -> Vec<Scalar> {
    (1..=n).map(|i| Scalar::sym(&format!("p{i}"))).collect()
}

/// `X_m` for `|m| <= n` on levels `0..=n` of the given sector.
pub fn null_field_modes(w: &WFieldSet, n: usize, momenta: Vec<Scalar>, k: Scalar) -> Vec<(i64, TruncatedOperator)> {
    let x = null_field(w, k);
    let e = Engine::new(w.space.clone());
    let sec = e.sector(momenta);
    let n_i = n as i64;
    (-n_i..=n_i).map(|m| (m, e.truncate(&Op::mode(&x, m), sec, n))).collect()
}

pub fn check_null_field(w: &WFieldSet, n: usize, k: Scalar) -> Check {
    let modes = null_field_modes(w, n, generic_momenta(w.space.len()), k.clone());
    let bad = modes.iter().find(|(_, t)| !t.is_zero());
    let c = Check::new(format!("null-field/k={}", k.to_text()), "null field X")
        .param("levels", n)
        .param("modes", format!("-{n}..{n}"))
        .param("config", w.label());
    match bad {
        None => c.outcome(true, "0"),
        Some((m, t)) => c.outcome(false, t.residual_text()).detail(format!("X_{m} is nonzero")),
    }
}

/// `(w1, w2, w3)` from the closed formulas: `q = (q1 - q2)/h1`,
/// `w1 = -q1/(h1 h3) - q2/(h1 h2)`, `w2 = q(q+1)/2`, `w3 = -2q(q+1)(2q+1)`.
pub fn hw_eigenvalues(q1: &Scalar, q2: &Scalar) -> (Scalar, Scalar, Scalar) {
    let q = (q1 - q2) / hb(1);
    let one = Scalar::one();
    let w1 = -(q1 / (hb(1) * hb(3))) - q2 / (hb(1) * hb(2));
    let w2 = &q * (&q + &one) / Scalar::int(2);
    let w3 = Scalar::int(-2) * &q * (&q + &one) * (Scalar::int(2) * &q + &one);
    (w1, w2, w3)
}

/// `w3^2 - 16 w2^2 (8 w2 + 1)`.
pub fn zhu_residual(w2: &Scalar, w3: &Scalar) -> Scalar {
    w3 * w3 - Scalar::int(16) * w2 * w2 * (Scalar::int(8) * w2 + Scalar::one())
}

/// Momenta of the W011 bosons for charges `q1` (color 2) and `q2` (color 3): `p = q g`.
pub fn w011_momenta(space: &FockSpace, q1: &Scalar, q2: &Scalar) -> Vec<Scalar> {
    let mut p = vec![Scalar::zero(); space.len()];
    let i2 = space.find(2, 0).expect("color-2 boson");
    let i3 = space.find(3, 0).expect("color-3 boson");
    p[i2] = q1 * space.norm(i2);
    p[i3] = q2 * space.norm(i3);
    p
}

/// Eigenvalues of the zero modes `W_{k,0}` on the highest-weight vector of a sector.
/// `None` for a generator whose zero mode does not act diagonally there.
pub fn zero_mode_eigenvalues(w: &WFieldSet, momenta: Vec<Scalar>) -> Vec<Option<Scalar>> {
    let e = Engine::new(w.space.clone());
    let sec = e.sector(momenta);
    let vac = e.vacuum();
    w.w
        .iter()
        .map(|f| {
            let v = e.field_state(f, 0, sec, &vac);
            let c = v.coeff(&vac);
            (v.len() <= 1 && (v.is_zero() || !c.is_zero())).then_some(c)
        })
        .collect()
}

/// Zhu constraint from both sources; passes iff the closed formulas agree with
/// the zero modes and the constraint vanishes identically.
pub fn check_zhu(mode: NormMode) -> Check {
    let w = build_w011(mode);
    let (q1, q2) = (Scalar::sym("q1"), Scalar::sym("q2"));
    let closed = hw_eigenvalues(&q1, &q2);
    let zm = zero_mode_eigenvalues(&w, w011_momenta(&w.space, &q1, &q2));
    let closed_v = [closed.0.clone(), closed.1.clone(), closed.2.clone()];
    let mut residuals = Vec::new();
    for (a, b) in closed_v.iter().zip(&zm) {
        match b {
            Some(b) => residuals.push(a - b),
            None => residuals.push(a.clone() + Scalar::one()),
        }
    }
    residuals.push(zhu_residual(&closed.1, &closed.2));
    if let (Some(z2), Some(z3)) = (&zm[1], &zm[2]) {
        residuals.push(zhu_residual(z2, z3));
    }
    Check::new("zhu", "Zhu constraint w3^2 = 16 w2^2 (8 w2 + 1)")
        .param("mode", mode.name())
        .residuals(&residuals)
        .detail(format!("w2 = {}, w3 = {}", closed.1, closed.2))
}

/// Virasoro relation for `W2` on levels `0..=n`, `|m|, |k| <= mmax`, in the
/// generic sector. Returns the check and the central charge read off from
/// `[L2, L-2]` on the highest-weight vector.
pub fn check_virasoro(w: &WFieldSet, mmax: i64, n: usize) -> (Check, Option<Scalar>) {
    let l = w.w2().expect("W2").clone();
    let e = Engine::new(w.space.clone());
    let sec = e.sector(generic_momenta(w.space.len()));
    let vac = e.vacuum();
    let lm = |m: i64| Op::mode(&l, m);
    let c2 = e.apply_state(&Op::comm(&lm(2), &lm(-2)), sec, &vac).coeff(&vac);
    let l0 = e.apply_state(&lm(0), sec, &vac).coeff(&vac);
    let c = Scalar::int(2) * (c2 - Scalar::int(4) * l0);
    let id = format!("virasoro/{}", w.space.mode.name());
    let base = Check::new(id, "Virasoro relation")
        .param("config", w.label())
        .param("mode", w.space.mode.name())
        .param("levels", n)
        .param("mmax", mmax);
    let pairs: Vec<(i64, i64)> = (-mmax..=mmax).flat_map(|a| (a..=mmax).map(move |b| (a, b))).collect();
    let states: Vec<State> = (0..=n).flat_map(|k| crate::fock::basis(w.space.len(), k)).collect();
    let bad = pairs.par_iter().find_map_first(|&(a, b)| {
        let lhs = Op::comm(&lm(a), &lm(b));
        let central = &c * Scalar::rat(a * a * a - a, 12);
        let rhs = if a + b == 0 {
            Op::lin(vec![(Scalar::int(a - b), lm(0)), (central, Op::identity())])
        } else {
            lm(a + b).scaled(Scalar::int(a - b))
        };
        let diff = lhs.minus(&rhs);
        states.iter().find_map(|s| {
            let v = e.apply_state(&diff, sec, s);
            v.first_nonzero().map(|(_, r)| ((a, b), r.clone()))
        })
    });
    match bad {
        None => (base.outcome(true, "0").detail(format!("c = {}", c.to_text())), Some(c)),
        Some(((a, b), r)) => (
            base.outcome(false, r.leading_term_text()).detail(format!("fails at (m, n) = ({a}, {b}); c read off as {}", c.to_text())),
            None,
        ),
    }
}

/// `[W1_m, W_k,n] = 0` for every other generator, `|m|, |n| <= mmax`, levels `0..=n`.
pub fn check_decoupling(w: &WFieldSet, mmax: i64, n: usize) -> Check {
    let e = Engine::new(w.space.clone());
    let sec = e.sector(generic_momenta(w.space.len()));
    let states: Vec<State> = (0..=n).flat_map(|k| crate::fock::basis(w.space.len(), k)).collect();
    let mut residual = None;
    'outer: for f in &w.w[1..] {
        for a in -mmax..=mmax {
            for b in -mmax..=mmax {
                let op = Op::comm(&Op::mode(w.w1(), a), &Op::mode(f, b));
                for s in &states {
                    if let Some((_, r)) = e.apply_state(&op, sec, s).first_nonzero() {
                        residual = Some(r.clone());
                        break 'outer;
                    }
                }
            }
        }
    }
    let c = Check::new("decoupling", "W1 decouples").param("config", w.label()).param("levels", n).param("mmax", mmax);
    match residual {
        None => c.outcome(true, "0"),
        Some(r) => c.outcome(false, r.leading_term_text()),
    }
}

/// A product of two vertex operators, one per listed boson.
#[derive(Clone, Debug, PartialEq)]
pub struct ScreeningCurrent {
    pub label: String,
    /// `(position, color, alpha)`; positions follow the screening boson order.
    pub factors: Vec<(usize, u8, Scalar)>,
}

impl ScreeningCurrent {
    /// Charge vector over all bosons of `space`.
    pub fn charges(&self, space: &FockSpace) -> Vec<Scalar> {
        let mut a = vec![Scalar::zero(); space.len()];
        for (pos, color, alpha) in &self.factors {
            assert_eq!(space.bosons[*pos].color, *color, "screening current does not fit this space");
            a[*pos] = alpha.clone();
        }
        a
    }
}

/// The `m - 1` screening currents of `W_{r1,r2,r3}`. Bosons are ordered
/// `r3` of color 3, `r2` of color 2, `r1` of color 1.
pub fn screening_set(r1: usize, r2: usize, r3: usize) -> Vec<ScreeningCurrent> {
    let colors: Vec<u8> =
        std::iter::repeat_n(3, r3).chain(std::iter::repeat_n(2, r2)).chain(std::iter::repeat_n(1, r1)).collect();
    // charge carried by both factors of a same-color current
    let same = |c: u8| match c {
        3 => 1,
        2 => 3,
        _ => 2,
    };
    let mut out = Vec::new();
    for i in 0..colors.len().saturating_sub(1) {
        let (a, b) = (colors[i], colors[i + 1]);
        let (x, y) = if a == b {
            (same(a), same(a))
        } else {
            // the remaining index for the first factor
            (6 - a as usize - same(a), same(b))
        };
        out.push(ScreeningCurrent {
            label: format!("S{a}{b}_{}", i + 1),
            factors: vec![(i, a, -hb(x)), (i + 1, b, hb(y))],
        });
    }
    out
}

/// Conformal weight of the screening current: `kappa - e`, where `kappa` is the
/// jump of the `W2,0` eigenvalue between highest-weight vectors and `e` the
/// zero-mode exponent, after checking `[W2,0, O_j] = (j + kappa) O_j` on levels
/// `0..=n` of the vacuum sector. Returns the offset, which must equal 1.
pub fn calibrate_screening(s: &ScreeningCurrent, w: &WFieldSet, n: usize) -> Result<Scalar, WalgError> {
    let alpha = s.charges(&w.space);
    if alpha.iter().all(|a| a.is_zero()) {
        return Ok(Scalar::zero());
    }
    let l = w.w2().ok_or_else(|| WalgError::NoConsistentOffset("no W2".into()))?;
    let e = Engine::new(w.space.clone());
    let vac_sec = e.vacuum_sector();
    let vac = e.vacuum();
    let l0 = Op::mode(l, 0);
    let probe = Op::vertex(&w.space, &alpha, 0);
    let tgt = e.target(&probe, vac_sec);
    let h_src = e.apply_state(&l0, vac_sec, &vac).coeff(&vac);
    let v = e.apply_state(&l0, tgt, &vac);
    if v.len() > 1 {
        return Err(WalgError::NoConsistentOffset("W2,0 is not diagonal on the target highest-weight vector".into()));
    }
    let kappa = v.coeff(&vac) - h_src;
    for lvl in 0..=n {
        for st in crate::fock::basis(w.space.len(), lvl) {
            for j in -(lvl as i64)..=(n - lvl) as i64 {
                let o = Op::vertex(&w.space, &alpha, j);
                let oj = e.apply_state(&o, vac_sec, &st);
                let lhs = e.apply(&l0, tgt, &oj).sub(&e.apply(&o, vac_sec, &e.apply_state(&l0, vac_sec, &st)));
                let r = lhs.sub(&oj.scaled(&(Scalar::int(j) + &kappa)));
                if let Some((_, x)) = r.first_nonzero() {
                    return Err(WalgError::NoConsistentOffset(format!(
                        "O_{j} on {st} is not graded: residual {}",
                        x.leading_term_text()
                    )));
                }
            }
        }
    }
    let ex = crate::fock::zero_mode_exponent(&alpha, &e.momenta(vac_sec));
    let h = kappa - ex;
    if !h.is_one() {
        return Err(WalgError::NoConsistentOffset(format!("current has weight {}, not 1", h.to_text())));
    }
    Ok(h)
}

/// All words `W_{i1,-n1} ... W_{ik,-nk} |0>` of total level `<= n`, as (label, vector).
pub fn w_descendants(w: &WFieldSet, e: &Engine, sec: SectorId, n: usize) -> Vec<(String, FockVector)> {
    let mut out = vec![("|0>".to_string(), FockVector::basis(e.vacuum()))];
    let mut frontier = out.clone();
    for _ in 0..n {
        let mut next = Vec::new();
        for (label, v) in &frontier {
            let lvl = v.iter().next().map(|(s, _)| s.level()).unwrap_or(0);
            for (k, f) in w.w.iter().enumerate() {
                for m in 1..=(n - lvl) as i64 {
                    let u = e.field_vec(f, -m, sec, v);
                    if !u.is_zero() {
                        next.push((format!("W{}[{}] {label}", k + 1, -m), u));
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `S_0` kills every W-descendant of the highest-weight vector of `momenta` up to level `n`.
/// Reported as skipped when the zero mode does not exist in that sector.
pub fn kernel_check(s: &ScreeningCurrent, w: &WFieldSet, n: usize, momenta: Option<Vec<Scalar>>) -> Check {
    let id = format!("screening/{}/{}/kernel", w.label(), s.label);
    let c = Check::new(id, "screening kernel").param("levels", n);
    let offset = match calibrate_screening(s, w, n) {
        Ok(h) => h,
        Err(err) => return c.outcome(false, "-").detail(err.to_string()),
    };
    let e = Engine::new(w.space.clone());
    let sec = match momenta {
        None => e.vacuum_sector(),
        Some(p) => e.sector(p),
    };
    let c = c.param("sector", crate::fock::sector_label(&e.momenta(sec))).param("offset", offset.to_text());
    let alpha = s.charges(&w.space);
    let s0 = match crate::fock::vertex_mode_op(&e, &alpha, &offset, 0, sec) {
        Ok(op) => op,
        Err(err) => return c.skipped(err.to_string()),
    };
    for (label, v) in w_descendants(w, &e, sec, n) {
        let r = e.apply(&s0, sec, &v);
        if let Some((_, x)) = r.first_nonzero() {
            return c.outcome(false, x.leading_term_text()).detail(format!("S_0 {label} != 0"));
        }
    }
    c.outcome(true, "0")
}

/// Negative control: `S_0 b_{-1}|0>` for the first boson of the current must not vanish.
pub fn raw_boson_control(s: &ScreeningCurrent, w: &WFieldSet) -> Check {
    let id = format!("screening/{}/{}/raw-boson-control", w.label(), s.label);
    let c = Check::new(id, "screening kernel (negative control)");
    let offset = match calibrate_screening(s, w, 1) {
        Ok(h) => h,
        Err(err) => return c.outcome(false, "-").detail(err.to_string()),
    };
    let e = Engine::new(w.space.clone());
    let sec = e.vacuum_sector();
    let alpha = s.charges(&w.space);
    let s0 = match crate::fock::vertex_mode_op(&e, &alpha, &offset, 0, sec) {
        Ok(op) => op,
        Err(err) => return c.skipped(err.to_string()),
    };
    let i = s.factors[0].0;
    let st = e.vacuum().with_created(i, 1);
    let r = e.apply_state(&s0, sec, &st);
    match r.first_nonzero() {
        Some((_, x)) => c.outcome(true, x.leading_term_text()).detail("nonzero, as expected"),
        None => c.outcome(false, "0").detail("S_0 annihilates a raw boson state"),
    }
}

/// Negative control: perturbing the derivative term of `W2` must break the calibration.
pub fn perturbed_calibration_control(w: &WFieldSet) -> Check {
    let (r1, r2, r3) = w.config;
    let s = &screening_set(r1, r2, r3)[0];
    let bt = w.btilde.clone().expect("btilde");
    let w2 = w.w2().expect("W2").plus(&bt.d(1).scaled(Scalar::h1()));
    let pw = w.with_w2(w2);
    let id = format!("screening/{}/{}/perturbed-calibration-control", w.label(), s.label);
    let c = Check::new(id, "screening calibration (negative control)");
    match calibrate_screening(s, &pw, 2) {
        Err(WalgError::NoConsistentOffset(why)) => c.outcome(true, "-").detail(why),
        Err(err) => c.outcome(false, "-").detail(err.to_string()),
        Ok(h) => c.outcome(false, h.to_text()).detail("calibration unexpectedly succeeded"),
    }
}

#[derive(Clone, Debug)]
pub struct WalgParams {
    pub config: (usize, usize, usize),
    pub mode: NormMode,
    pub level: usize,
    pub mmax: i64,
    pub null_level: usize,
    pub kernel_level: usize,
}

impl Default for WalgParams {
    fn default() -> Self {
        WalgParams { config: (0, 1, 1), mode: NormMode::Standard, level: 4, mmax: 3, null_level: 4, kernel_level: 3 }
    }
}

/// Checks for one configuration.
pub fn walgebra_suite(p: &WalgParams) -> Result<VerificationReport, WalgError> {
    let w = build(p.config, p.mode)?;
    let mut checks = Vec::new();
    if w.w.len() > 1 {
        checks.push(check_decoupling(&w, 2, p.level.min(3)));
    }
    if p.config == (0, 0, 2) {
        checks.push(check_virasoro(&w, p.mmax, p.level).0);
    }
    if p.config == (0, 1, 1) {
        checks.push(check_zhu(p.mode));
        checks.push(check_null_field(&w, p.null_level, Scalar::int(128)));
        checks.push(negative_control(check_null_field(&w, p.null_level.min(2), Scalar::int(127)), "null-field/k=127-control"));
    }
    let (r1, r2, r3) = p.config;
    for s in screening_set(r1, r2, r3) {
        checks.push(kernel_check(&s, &w, p.kernel_level, None));
        let mut generic = kernel_check(&s, &w, 1, Some(generic_momenta(w.space.len())));
        generic.id.push_str("-generic-sector");
        checks.push(generic);
        checks.push(raw_boson_control(&s, &w));
    }
    if w.btilde.is_some() {
        checks.push(perturbed_calibration_control(&w));
    }
    let mut rep = VerificationReport::new(format!("walgebra/{}", w.label()), checks);
    rep.params.insert("config".into(), format!("{r1},{r2},{r3}"));
    rep.params.insert("mode".into(), p.mode.name().into());
    rep.params.insert("level".into(), p.level.to_string());
    Ok(rep)
}
