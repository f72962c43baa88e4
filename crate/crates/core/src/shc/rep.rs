//! Fock representations of SH^c and relation checks on them.

use super::formal::{b_element, coassociativity, SHElement, SHGenerator, SHTensor, Word};
use super::rewrite::{check_rewriting, RewriteChain};
use super::series::{big_phi_coeffs, central_series, CentralValues};
use super::ShcError;
use crate::fock::{basis, Engine, FockSpace, NormMode, NormalOrderedExpr, Op, SectorId, State};
use crate::geom::{psi_eigen_series, ChernData};
use crate::ratfun::Scalar;
use crate::report::{negative_control, Check, VerificationReport};
use parking_lot::Mutex;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use std::sync::Arc;

/// How `f(0,0)` acts. The relation list sets it to zero; the G-identity on a
/// Fock module needs it to be the level operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ZeroModeConvention {
    Zero,
    #[default]
    Level,
}

impl ZeroModeConvention {
    pub fn name(self) -> &'static str {
        match self {
            ZeroModeConvention::Zero => "zero",
            ZeroModeConvention::Level => "level",
        }
    }
}

/// Map from SH^c to the Yangian generators.
///
/// `Literal` sends `f(1,l), f(-1,l), G_l` to `e_l, f_l, psi_l`. `Signed` uses
/// `e_l = (-1)^l f(1,l)`, `f_l = (-1)^{l+1} f(-1,l)`, `psi_l = (-1)^{l+1} G_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum YangianMap {
    #[default]
    Signed,
    Literal,
}

impl YangianMap {
    pub fn name(self) -> &'static str {
        match self {
            YangianMap::Signed => "signed",
            YangianMap::Literal => "literal",
        }
    }
}

/// One tensor factor: a boson of the given color with Chern root `mu`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub boson: usize,
    pub color: u8,
    pub mu: Scalar,
}

fn other_hbars(color: u8) -> (Scalar, Scalar) {
    match color {
        1 => (Scalar::h2(), Scalar::h3()),
        2 => (Scalar::h1(), Scalar::h3()),
        3 => (Scalar::h1(), Scalar::h2()),
        _ => panic!("color {color}"),
    }
}

/// The free-field `f(0,1)` on one boson, with every sum cut at total mode `modes`.
pub fn f01_expr(space: &FockSpace, boson: usize, color: u8, mu: &Scalar, modes: usize) -> NormalOrderedExpr {
    let (ha, hb) = other_hbars(color);
    let cubic = (&ha * &ha) * (&hb * &hb) / Scalar::int(2);
    let k = modes as i64;
    let i = boson;
    let mut e = NormalOrderedExpr::zero();
    for l in 1..k {
        for m in 1..=k - l {
            e = e.add(&NormalOrderedExpr::word(space, &[(i, -l - m), (i, l), (i, m)], cubic.clone()));
            e = e.add(&NormalOrderedExpr::word(space, &[(i, -l), (i, -m), (i, l + m)], cubic.clone()));
        }
    }
    for l in 1..=k {
        let c = Scalar::sigma3() * Scalar::rat(l - 1, 2) + mu * &ha * &hb;
        e = e.add(&NormalOrderedExpr::word(space, &[(i, -l), (i, l)], c));
    }
    e
}

/// The two-boson `f(0,1)` for colors 2 and 3 as displayed in the text, term by term.
pub fn display_two_boson_f01(space: &FockSpace, mu2: &Scalar, mu3: &Scalar, modes: usize) -> NormalOrderedExpr {
    let (h1, h2, h3) = (Scalar::h1(), Scalar::h2(), Scalar::h3());
    let s3 = Scalar::sigma3();
    let i2 = space.find(2, 0).expect("color-2 boson");
    let i3 = space.find(3, 0).expect("color-3 boson");
    let k = modes as i64;
    let half = Scalar::rat(1, 2);
    let w = |modes: &[(usize, i64)], c: Scalar| NormalOrderedExpr::word(space, modes, c);
    let mut e = NormalOrderedExpr::zero();
    for l in 1..=k {
        e = e.add(&w(&[(i2, -l), (i2, l)], &s3 * &half * Scalar::int(l - 1)));
        e = e.add(&w(&[(i3, -l), (i3, l)], &s3 * &half * Scalar::int(l - 1)));
        e = e.add(&w(&[(i2, -l), (i2, l)], mu2 * &h1 * &h3));
        e = e.add(&w(&[(i3, -l), (i3, l)], mu3 * &h1 * &h2));
        e = e.add(&w(&[(i2, l), (i3, -l)], &s3 * Scalar::int(l)));
    }
    let c2 = h1.pow(2) * h3.pow(2) * &half;
    let c3 = h1.pow(2) * h2.pow(2) * &half;
    for l in 1..k {
        for m in 1..=k - l {
            for (i, c) in [(i2, &c2), (i3, &c3)] {
                e = e.add(&w(&[(i, -l - m), (i, l), (i, m)], c.clone()));
                e = e.add(&w(&[(i, -l), (i, -m), (i, l + m)], c.clone()));
            }
        }
    }
    e
}

type OpPoly = Vec<(Scalar, Vec<Op>)>;

fn poly_to_op(p: &OpPoly) -> Op {
    let terms: Vec<(Scalar, Op)> = p
        .iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, ops)| (c.clone(), if ops.is_empty() { Op::identity() } else { Op::product(ops) }))
        .collect();
    if terms.is_empty() {
        Op::zero(0)
    } else {
        Op::lin(terms)
    }
}

fn poly_mul(a: &OpPoly, b: &OpPoly) -> OpPoly {
    let mut out = Vec::new();
    for (x, u) in a {
        for (y, v) in b {
            out.push((x * y, u.iter().chain(v).cloned().collect()));
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    F1(usize),
    Fm1(usize),
    F0(usize),
    G(usize),
    B(i64),
}

/// SH^c acting on a tensor product of one-boson Fock modules.
pub struct SHRepresentation {
    engine: Arc<Engine>,
    sector: SectorId,
    factors: Vec<Factor>,
    central: CentralValues,
    /// States of level `0..=level` are checked.
    pub level: usize,
    /// Cut for the infinite mode sums; large enough for every state reached.
    modes: usize,
    convention: ZeroModeConvention,
    f01_expr: NormalOrderedExpr,
    ops: Mutex<FxHashMap<Key, Op>>,
}

impl SHRepresentation {
    /// Bosons of `colors` with Chern roots `mus` on the sector with the given
    /// momenta (zero when `None`). `lmax` bounds the generator index used later.
    pub fn new(
        colors: &[u8],
        mus: &[Scalar],
        momenta: Option<Vec<Scalar>>,
        level: usize,
        lmax: usize,
        convention: ZeroModeConvention,
    ) -> Result<SHRepresentation, ShcError> {
        assert_eq!(colors.len(), mus.len());
        assert!(!colors.is_empty(), "at least one factor");
        let space = FockSpace::new(colors, NormMode::Standard);
        let engine = Arc::new(Engine::new(space.clone()));
        let sector = engine.sector(momenta.unwrap_or_else(|| vec![Scalar::zero(); colors.len()]));
        let factors: Vec<Factor> =
            colors.iter().zip(mus).enumerate().map(|(i, (&color, mu))| Factor { boson: i, color, mu: mu.clone() }).collect();
        let modes = level + lmax.max(2) + 2;
        let mut t = SHTensor::from_element(&SHElement::gen(SHGenerator::F0(1)));
        while t.arity < factors.len() {
            t = t.delta_at(t.arity - 1, modes)?;
        }
        let mut f01 = NormalOrderedExpr::zero();
        for (words, c) in t.terms() {
            let mut x = NormalOrderedExpr::scalar(c.clone());
            for (f, w) in factors.iter().zip(words) {
                x = x.mul(&space, &factor_word(&space, f, w, modes)?);
            }
            f01 = f01.add(&x);
        }
        Ok(SHRepresentation {
            engine,
            sector,
            central: CentralValues::from_charges(colors, mus),
            factors,
            level,
            modes,
            convention,
            f01_expr: f01,
            ops: Mutex::new(FxHashMap::default()),
        })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn sector(&self) -> SectorId {
        self.sector
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn central(&self) -> &CentralValues {
        &self.central
    }

    pub fn convention(&self) -> ZeroModeConvention {
        self.convention
    }

    pub fn f01_expr(&self) -> &NormalOrderedExpr {
        &self.f01_expr
    }

    fn cached(&self, k: Key, build: impl FnOnce() -> Op) -> Op {
        if let Some(o) = self.ops.lock().get(&k) {
            return o.clone();
        }
        let o = build();
        self.ops.lock().entry(k).or_insert(o).clone()
    }

    /// `B_l = sum_i b^(i)_l` for `l != 0`.
    pub fn b(&self, l: i64) -> Op {
        assert!(l != 0);
        self.cached(Key::B(l), || Op::lin(self.factors.iter().map(|f| (Scalar::one(), Op::boson(f.boson, l))).collect()))
    }

    pub fn f1(&self, l: usize) -> Op {
        self.cached(Key::F1(l), || if l == 0 { self.b(-1) } else { Op::comm(&self.f0(1), &self.f1(l - 1)) })
    }

    pub fn fm1(&self, l: usize) -> Op {
        self.cached(Key::Fm1(l), || {
            if l == 0 {
                self.b(1)
            } else {
                Op::comm(&self.f0(1), &self.fm1(l - 1)).scaled(Scalar::int(-1))
            }
        })
    }

    /// `f(0,l)`. For `l >= 2` it is solved from the G-identity at order
    /// `t^{l+3}`, with `G_{l+2}` taken as `[f(1,0), f(-1,l+2)]`.
    pub fn f0(&self, l: usize) -> Op {
        self.cached(Key::F0(l), || match l {
            0 => match self.convention {
                ZeroModeConvention::Zero => Op::zero(0),
                ZeroModeConvention::Level => Op::level(),
            },
            1 => Op::expr(self.f01_expr.clone()),
            _ => {
                let n = l + 3;
                let rest = self.series_coeff(n, l - 1);
                let g = Op::comm(&self.f1(0), &self.fm1(l + 2));
                let lead = big_phi_coeffs(l, n)[l][n].clone();
                Op::lin(vec![(-Scalar::sigma3() / &lead, g), (-lead.inv(), rest)])
            }
        })
    }

    /// `G_l` from `1 - h1 h2 h3 sum G_l t^{l+1} = C(t) exp(sum f(0,l) Phi_l(t))`.
    pub fn g(&self, l: usize) -> Op {
        self.cached(Key::G(l), || self.series_coeff(l + 1, l).scaled(-Scalar::sigma3().inv()))
    }

    /// Coefficient of `t^n` in `C(t) exp(sum_{l <= upto} f(0,l) Phi_l(t))`.
    fn series_coeff(&self, n: usize, upto: usize) -> Op {
        let phis = big_phi_coeffs(upto, n);
        let f: Vec<OpPoly> = (0..=n)
            .map(|j| {
                (0..=upto)
                    .filter(|l| !phis[*l][j].is_zero())
                    .map(|l| (phis[l][j].clone(), vec![self.f0(l)]))
                    .collect()
            })
            .collect();
        let mut e: Vec<OpPoly> = vec![vec![(Scalar::one(), Vec::new())]];
        for m in 1..=n {
            let mut acc = Vec::new();
            for k in 1..=m {
                let scale = Scalar::rat(k as i64, m as i64);
                for (c, ops) in poly_mul(&f[k], &e[m - k]) {
                    acc.push((c * &scale, ops));
                }
            }
            e.push(acc);
        }
        let c = central_series(&self.central, n);
        let mut total = Vec::new();
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            for (x, ops) in &e[n - j] {
                total.push((cj * x, ops.clone()));
            }
        }
        poly_to_op(&total)
    }

    /// The value of a central letter, summed over factors.
    fn central_letter(&self, g: SHGenerator) -> Scalar {
        match g {
            SHGenerator::C(k, l) => self.central.c(k, l as usize),
            _ => unreachable!(),
        }
    }

    /// A formal element as an operator; every word must have grading `grading`.
    pub fn eval(&self, e: &SHElement, grading: i64) -> Op {
        let mut terms = Vec::new();
        for (w, c) in e.terms() {
            let mut coeff = c.clone();
            let mut ops = Vec::new();
            for g in w {
                match *g {
                    SHGenerator::C(..) => coeff = coeff * self.central_letter(*g),
                    SHGenerator::F1(l) => ops.push(self.f1(l as usize)),
                    SHGenerator::Fm1(l) => ops.push(self.fm1(l as usize)),
                    SHGenerator::F0(l) => ops.push(self.f0(l as usize)),
                    SHGenerator::B(0) => ops.push(self.g(1)),
                    SHGenerator::B(l) => ops.push(self.b(l)),
                }
            }
            let op = if ops.is_empty() { Op::identity() } else { Op::product(&ops) };
            assert_eq!(op.grading(), grading, "word {w:?} has the wrong grading");
            terms.push((coeff, op));
        }
        if terms.is_empty() {
            Op::zero(grading)
        } else {
            Op::lin(terms)
        }
    }

    /// Basis states of levels `0..=n`, in basis order.
    pub fn states(&self, n: usize) -> Vec<State> {
        (0..=n).flat_map(|l| basis(self.factors.len(), l)).collect()
    }

    /// First basis state (levels `0..=n`) where `op` acts nontrivially.
    pub fn residual(&self, op: &Op, n: usize) -> Option<(State, Scalar)> {
        let states = self.states(n);
        states.par_iter().find_map_first(|s| {
            let v = self.engine.apply_state(op, self.sector, s);
            v.first_nonzero().map(|(_, c)| (s.clone(), c.clone()))
        })
    }

    /// `Ok(c)` if `op` is `c` times the identity on levels `0..=n`.
    pub fn scalar_value(&self, op: &Op, n: usize) -> Result<Scalar, String> {
        let mut c: Option<Scalar> = None;
        for s in self.states(n) {
            let v = self.engine.apply_state(op, self.sector, &s);
            let x = v.coeff(&s);
            if v.len() > usize::from(!x.is_zero()) {
                let (t, y) = v.sorted_terms().into_iter().find(|(t, _)| **t != s).map(|(t, y)| (t.clone(), y.clone())).unwrap();
                return Err(format!("off-diagonal entry {} on {s} -> {t}", y.leading_term_text()));
            }
            match &c {
                None => c = Some(x),
                Some(y) if *y == x => {}
                Some(y) => return Err(format!("eigenvalue {} on {s} differs from {}", x.to_text(), y.to_text())),
            }
        }
        Ok(c.unwrap_or_default())
    }

    /// Checks `lhs = rhs` on levels `0..=n`.
    pub fn identity_check(&self, id: impl Into<String>, anchor: &str, lhs: &Op, rhs: &Op, n: usize) -> Check {
        let c = Check::new(id, anchor);
        match self.residual(&lhs.minus(rhs), n) {
            None => c.outcome(true, "0"),
            Some((s, r)) => c.outcome(false, r.leading_term_text()).detail(format!("first nonzero on {s}")),
        }
    }

    /// `(e_l, f_l, psi_l)` under the given map.
    pub fn yangian(&self, map: YangianMap, l: usize) -> (Op, Op, Op) {
        let sign = |odd: bool| Scalar::int(if odd { -1 } else { 1 });
        match map {
            YangianMap::Literal => (self.f1(l), self.fm1(l), self.g(l)),
            YangianMap::Signed => (
                self.f1(l).scaled(sign(l % 2 == 1)),
                self.fm1(l).scaled(sign(l.is_multiple_of(2))),
                self.g(l).scaled(sign(l.is_multiple_of(2))),
            ),
        }
    }
}

fn factor_letter(space: &FockSpace, f: &Factor, g: SHGenerator, modes: usize) -> Result<NormalOrderedExpr, ShcError> {
    let cv = CentralValues::from_charges(&[f.color], std::slice::from_ref(&f.mu));
    Ok(match g {
        SHGenerator::C(k, l) => NormalOrderedExpr::scalar(cv.c(k, l as usize)),
        SHGenerator::B(0) => NormalOrderedExpr::scalar(-central_series(&cv, 2)[2].clone() / Scalar::sigma3()),
        SHGenerator::B(l) => NormalOrderedExpr::mode(f.boson, l),
        SHGenerator::F1(0) => NormalOrderedExpr::mode(f.boson, -1),
        SHGenerator::Fm1(0) => NormalOrderedExpr::mode(f.boson, 1),
        SHGenerator::F0(1) => f01_expr(space, f.boson, f.color, &f.mu, modes),
        other => return Err(ShcError::UnsupportedGenerator(other.to_string())),
    })
}

fn factor_word(space: &FockSpace, f: &Factor, w: &Word, modes: usize) -> Result<NormalOrderedExpr, ShcError> {
    let mut x = NormalOrderedExpr::scalar(Scalar::one());
    for g in w {
        x = x.mul(space, &factor_letter(space, f, *g, modes)?);
    }
    Ok(x)
}

/// One boson of color `color` with Chern root `mu`.
pub fn fock_rep(color: u8, mu: Scalar, level: usize, lmax: usize) -> SHRepresentation {
    SHRepresentation::new(&[color], &[mu], None, level, lmax, ZeroModeConvention::Level).expect("generating set")
}

/// The iterated coproduct of `f(0,1)` evaluated on one boson per color.
pub fn tensor_rep(colors: &[u8], mus: &[Scalar], level: usize, lmax: usize) -> SHRepresentation {
    SHRepresentation::new(colors, mus, None, level, lmax, ZeroModeConvention::Level).expect("generating set")
}

/// The SH^c relations and the Yangian relations under `map`, for indices up
/// to `lmax`, on levels `0..=n`.
pub fn check_relations_on_rep(rep: &SHRepresentation, lmax: usize, n: usize, map: YangianMap) -> Vec<Check> {
    let mut out = Vec::new();
    for k in 0..lmax {
        let lhs = Op::comm(&rep.f0(1), &rep.f1(k));
        out.push(rep.identity_check(format!("rel/f01-f1/k={k}"), "[f(0,1), f(1,k)] = f(1,k+1)", &lhs, &rep.f1(k + 1), n));
        let lhs = Op::comm(&rep.f0(1), &rep.fm1(k));
        let rhs = rep.fm1(k + 1).scaled(Scalar::int(-1));
        out.push(rep.identity_check(format!("rel/f01-fm1/k={k}"), "[f(0,1), f(-1,k)] = -f(-1,k+1)", &lhs, &rhs, n));
    }
    for tot in 0..=lmax {
        for l in 0..=tot {
            let lhs = Op::comm(&rep.f1(l), &rep.fm1(tot - l));
            let id = format!("rel/G/l={l},k={}", tot - l);
            out.push(rep.identity_check(id, "[f(1,l), f(-1,k)] = G_{l+k}", &lhs, &rep.g(tot), n));
        }
    }
    // (Y4') and (Y5') use psi_2 even when lmax < 2
    let y: Vec<(Op, Op, Op)> = (0..=lmax.max(2)).map(|l| rep.yangian(map, l)).collect();
    let tag = map.name();
    for i in 0..=lmax {
        for j in i + 1..=lmax {
            let lhs = Op::comm(&y[i].2, &y[j].2);
            out.push(rep.identity_check(format!("yangian/{tag}/Y0/{i},{j}"), "(Y0)", &lhs, &Op::zero(0), n));
        }
    }
    for i in 0..=lmax {
        for j in 0..=lmax - i {
            let lhs = Op::comm(&y[i].0, &y[j].1);
            out.push(rep.identity_check(format!("yangian/{tag}/Y3/{i},{j}"), "(Y3)", &lhs, &y[i + j].2, n));
        }
    }
    for j in 0..=lmax {
        for (p, c) in [(0usize, 0i64), (1, 0), (2, 2)] {
            let lhs = Op::comm(&y[p].2, &y[j].0);
            let rhs = if c == 0 { Op::zero(1) } else { y[j].0.scaled(Scalar::int(c)) };
            out.push(rep.identity_check(format!("yangian/{tag}/Y4p/psi{p},e{j}"), "(Y4')", &lhs, &rhs, n));
            let lhs = Op::comm(&y[p].2, &y[j].1);
            let rhs = if c == 0 { Op::zero(-1) } else { y[j].1.scaled(Scalar::int(-c)) };
            out.push(rep.identity_check(format!("yangian/{tag}/Y5p/psi{p},f{j}"), "(Y5')", &lhs, &rhs, n));
        }
    }
    out
}

/// Nested-commutator `B_l` against the boson modes, and the Heisenberg relations among them.
/// The vacuum eigenvalue of `psi(z) = 1 - s3 sum_j psi_j z^{-j-1}` against the
/// fixed-point formula with the same framing roots and `n = 0`.
pub fn check_vacuum_psi(rep: &SHRepresentation, lmax: usize) -> Check {
    let e = rep.engine();
    let vac = e.vacuum();
    let cd = ChernData::new(Vec::new(), rep.central().mus.clone());
    let geom = psi_eigen_series(&cd, lmax + 1);
    let s3 = Scalar::sigma3();
    let mut res = vec![&geom[0] - &Scalar::one()];
    for j in 0..=lmax {
        let (_, _, psi) = rep.yangian(YangianMap::Signed, j);
        let v = e.apply_state(&psi, rep.sector(), &vac).coeff(&vac);
        res.push(&geom[j + 1] + &(&s3 * &v));
    }
    Check::new("central/psi-vacuum", "vacuum psi(z) equals the n = 0 fixed-point product")
        .param("lmax", lmax)
        .residuals(&res)
}

pub fn check_heisenberg(rep: &SHRepresentation, bmax: i64, n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let ls: Vec<i64> = (-bmax..=bmax).filter(|l| *l != 0).collect();
    let ev: Vec<(i64, Op)> = ls.iter().map(|&l| (l, rep.eval(&b_element(l), -l))).collect();
    for (l, op) in &ev {
        out.push(rep.identity_check(format!("heisenberg/B{l}=b{l}"), "B_l acts as b_l", op, &rep.b(*l), n));
    }
    for (i, (l, a)) in ev.iter().enumerate() {
        for (m, b) in &ev[i + 1..] {
            let id = format!("heisenberg/[B{l},B{m}]");
            let c = Check::new(id, "Heisenberg subalgebra");
            let comm = Op::comm(a, b);
            let res = if l + m != 0 {
                match rep.residual(&comm, n) {
                    None => c.outcome(true, "0"),
                    Some((s, r)) => c.outcome(false, r.leading_term_text()).detail(format!("nonzero on {s}")),
                }
            } else {
                match rep.scalar_value(&comm, n) {
                    Ok(v) => c.outcome(true, "0").detail(format!("central value {}", v.to_text())),
                    Err(why) => c.outcome(false, "not scalar").detail(why),
                }
            };
            out.push(res);
        }
    }
    out
}

/// `f(0,1)` from the coproduct against the displayed two-boson expression, colors (2, 3).
pub fn check_tensor_f01(n: usize) -> Check {
    let (mu2, mu3) = (Scalar::sym("mu2_1"), Scalar::sym("mu3_1"));
    let rep = tensor_rep(&[2, 3], &[mu2.clone(), mu3.clone()], n, 0);
    let shown = display_two_boson_f01(rep.engine().space(), &mu2, &mu3, rep.modes);
    rep.identity_check("tensor/f01-two-boson", "coproduct of f(0,1) vs free-field display", &rep.f0(1), &Op::expr(shown), n)
        .param("colors", "2,3")
        .param("levels", n)
}

/// Coassociativity on the generating set.
pub fn check_coassociativity(tail: usize) -> Vec<Check> {
    use SHGenerator::*;
    [B(1), B(-1), B(2), B(-2), B(0), F0(1), C(1, 0), C(3, 2)]
        .into_iter()
        .map(|g| {
            let c = Check::new(format!("coproduct/coassociative/{g}"), "(D x id) D = (id x D) D");
            match coassociativity(g, tail) {
                Ok((a, b)) if a == b => c.outcome(true, "0").detail(format!("{} terms", a.len())),
                Ok((a, b)) => c.outcome(false, "tensors differ").detail(format!("{} vs {} terms", a.len(), b.len())),
                Err(e) => c.outcome(false, "-").detail(e.to_string()),
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ShcParams {
    pub colors: Vec<u8>,
    pub level: usize,
    pub lmax: usize,
    /// Include the two-boson coproduct and rewriting checks.
    pub two_boson: bool,
}

impl Default for ShcParams {
    fn default() -> Self {
        ShcParams { colors: vec![3], level: 4, lmax: 4, two_boson: true }
    }
}

fn charges(colors: &[u8]) -> Vec<Scalar> {
    let mut seen = [0usize; 3];
    colors
        .iter()
        .map(|&c| {
            seen[c as usize - 1] += 1;
            Scalar::sym(&format!("mu{c}_{}", seen[c as usize - 1]))
        })
        .collect()
}

pub fn shc_suite(p: &ShcParams) -> VerificationReport {
    let mus = charges(&p.colors);
    let rep = tensor_rep(&p.colors, &mus, p.level, p.lmax);
    let mut checks = check_relations_on_rep(&rep, p.lmax, p.level, YangianMap::Signed);
    checks.extend(check_heisenberg(&rep, 2, p.level.min(3)));
    checks.extend(check_coassociativity(4));

    let vac = rep.engine().vacuum();
    let g0 = rep.engine().apply_state(&rep.g(0), rep.sector(), &vac).coeff(&vac);
    checks.push(
        Check::new("central/G0", "G_0 = (h1 c0(1) + h2 c0(2) + h3 c0(3)) / (h1 h2 h3)")
            .residuals([&(&g0 - &rep.central().g0())])
            .detail(format!("G_0 = {}", g0.to_text())),
    );

    checks.push(check_vacuum_psi(&rep, p.lmax));

    let lit = check_relations_on_rep(&rep, p.lmax.min(2), p.level.min(3), YangianMap::Literal);
    let y4 = lit.into_iter().find(|c| c.id.ends_with("Y4p/psi2,e1")).expect("psi2 check");
    checks.push(negative_control(y4, "diagnostic/literal-yangian-map"));

    let zero = SHRepresentation::new(&p.colors, &mus, None, p.level.min(3), 2, ZeroModeConvention::Zero).expect("generating set");
    let lhs = Op::comm(&zero.f1(0), &zero.fm1(2));
    let g2 = zero.identity_check("rel/G/l=0,k=2", "[f(1,l), f(-1,k)] = G_{l+k}", &lhs, &zero.g(2), p.level.min(3));
    checks.push(negative_control(g2, "diagnostic/f00-zero"));

    if p.two_boson {
        checks.push(check_tensor_f01(3));
        checks.push(check_rewriting(RewriteChain::Literal, 3));
        checks.push(check_rewriting(RewriteChain::Corrected, 3));
    }
    let colors: Vec<String> = p.colors.iter().map(|c| c.to_string()).collect();
    let mut r = VerificationReport::new("shc", checks);
    r.params.insert("colors".into(), colors.join(","));
    r.params.insert("level".into(), p.level.to_string());
    r.params.insert("lmax".into(), p.lmax.to_string());
    r.params.insert("zero-mode".into(), rep.convention().name().into());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f01_on_level_one() {
        let mu = Scalar::sym("mu3_1");
        let rep = fock_rep(3, mu.clone(), 2, 0);
        let e = rep.engine();
        let vac = e.vacuum();
        assert!(e.apply_state(&rep.f0(1), rep.sector(), &vac).is_zero());
        let s = vac.with_created(0, 1);
        let v = e.apply_state(&rep.f0(1), rep.sector(), &s);
        assert_eq!(v.len(), 1);
        assert_eq!(v.coeff(&s), -mu);
    }
}
