//! Lazy, memoized evaluation of field modes and operators on basis states.

use super::expr::NormalOrderedExpr;
use super::matrix::{Block, TruncatedOperator};
use super::state::{basis, partitions, FockVector, Part, State};
use super::{FockError, FockSpace};
use crate::ratfun::Scalar;
use dashmap::DashMap;
use parking_lot::{Mutex, RwLock};
use rayon::prelude::*;
use rustc_hash::{FxBuildHasher, FxHashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn next_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// A field built from bosons by linear combination, normal-ordered product
/// and derivative. Products nest exactly as constructed.
#[derive(Clone)]
pub struct Field(Arc<FieldNode>);

struct FieldNode {
    id: u64,
    weight: Option<i64>,
    kind: FieldKind,
}

enum FieldKind {
    Boson(usize),
    Lin(Vec<(Scalar, Field)>),
    Prod(Field, Field),
    Deriv(Field, u32),
}

impl Field {
    fn mk(weight: Option<i64>, kind: FieldKind) -> Field {
        Field(Arc::new(FieldNode { id: next_id(), weight, kind }))
    }

    pub fn boson(i: usize) -> Field {
        Field::mk(Some(1), FieldKind::Boson(i))
    }

    /// Linear combination; the weight is defined when all terms share it.
    pub fn lin(terms: Vec<(Scalar, Field)>) -> Field {
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        let mut w = terms.first().and_then(|t| t.1.weight());
        if terms.iter().any(|t| t.1.weight() != w) {
            w = None;
        }
        Field::mk(w, FieldKind::Lin(terms))
    }

    pub fn scaled(&self, c: Scalar) -> Field {
        Field::lin(vec![(c, self.clone())])
    }

    pub fn plus(&self, o: &Field) -> Field {
        Field::lin(vec![(Scalar::one(), self.clone()), (Scalar::one(), o.clone())])
    }

    pub fn minus(&self, o: &Field) -> Field {
        Field::lin(vec![(Scalar::one(), self.clone()), (Scalar::int(-1), o.clone())])
    }

    /// The normal-ordered product `(self o)`.
    ///
    /// # Panics
    /// If `self` has no definite weight.
    pub fn nop(&self, o: &Field) -> Field {
        let h = self.weight().expect("left factor of a normal-ordered product needs a weight");
        Field::mk(o.weight().map(|w| w + h), FieldKind::Prod(self.clone(), o.clone()))
    }

    /// `n`-th derivative.
    pub fn d(&self, n: u32) -> Field {
        if n == 0 {
            return self.clone();
        }
        Field::mk(self.weight().map(|w| w + n as i64), FieldKind::Deriv(self.clone(), n))
    }

    pub fn weight(&self) -> Option<i64> {
        self.0.weight
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }
}

/// `(-1)^n prod_{i<n} (h + m + i)`, the mode factor of `n`-th derivatives.
pub fn derivative_factor(h: i64, n: u32, m: i64) -> i64 {
    let mut f: i64 = if n.is_multiple_of(2) { 1 } else { -1 };
    for i in 0..n as i64 {
        f *= h + m + i;
    }
    f
}

/// A linear operator between charge sectors, with definite level grading.
#[derive(Clone)]
pub struct Op(Arc<OpNode>);

struct OpNode {
    id: u64,
    grading: i64,
    shift: Vec<Scalar>,
    kind: OpKind,
}

enum OpKind {
    Mode(Field, i64),
    Expr(NormalOrderedExpr),
    Scalar(Scalar),
    Level,
    Lin(Vec<(Scalar, Op)>),
    Compose(Vec<Op>),
    Comm(Op, Op),
    Vertex(VertexData),
}

/// Creation words of one degree with their coefficients.
type CreationTerms = Vec<(Vec<Part>, Scalar)>;

struct VertexData {
    alpha: Vec<Scalar>,
    /// Per boson: `alpha_i * g_i * kappa(n) / n` depends on `n` only through `kappa`.
    ann: Vec<Scalar>,
    paper: bool,
    j: i64,
    creation: Mutex<Vec<Arc<CreationTerms>>>,
}

fn add_shift(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_vec(),
        (_, true) => a.to_vec(),
        _ => a.iter().zip(b).map(|(x, y)| x + y).collect(),
    }
}

impl Op {
    fn mk(grading: i64, shift: Vec<Scalar>, kind: OpKind) -> Op {
        let shift = if shift.iter().all(|s| s.is_zero()) { Vec::new() } else { shift };
        Op(Arc::new(OpNode { id: next_id(), grading, shift, kind }))
    }

    /// The mode `F_m`, lowering the level by `m`.
    pub fn mode(f: &Field, m: i64) -> Op {
        Op::mk(-m, Vec::new(), OpKind::Mode(f.clone(), m))
    }

    pub fn boson(i: usize, m: i64) -> Op {
        Op::mode(&Field::boson(i), m)
    }

    /// # Panics
    /// If the expression mixes mode degrees.
    pub fn expr(e: NormalOrderedExpr) -> Op {
        let g = e.grading().expect("normal-ordered expression must be homogeneous");
        Op::mk(g, Vec::new(), OpKind::Expr(e))
    }

    pub fn scalar(c: Scalar) -> Op {
        Op::mk(0, Vec::new(), OpKind::Scalar(c))
    }

    pub fn identity() -> Op {
        Op::scalar(Scalar::one())
    }

    /// Multiplication by the level.
    pub fn level() -> Op {
        Op::mk(0, Vec::new(), OpKind::Level)
    }

    pub fn zero(grading: i64) -> Op {
        Op::mk(grading, Vec::new(), OpKind::Lin(Vec::new()))
    }

    /// # Panics
    /// If the terms differ in grading or charge shift, or the list is empty.
    pub fn lin(terms: Vec<(Scalar, Op)>) -> Op {
        assert!(!terms.is_empty(), "use Op::zero for an empty combination");
        let g = terms[0].1.grading();
        let sh = terms[0].1.0.shift.clone();
        for (_, o) in &terms {
            assert_eq!(o.grading(), g, "linear combination of operators with different gradings");
            assert!(o.0.shift == sh, "linear combination of operators with different charge shifts");
        }
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        Op::mk(g, sh, OpKind::Lin(terms))
    }

    pub fn scaled(&self, c: Scalar) -> Op {
        Op::lin(vec![(c, self.clone())])
    }

    pub fn plus(&self, o: &Op) -> Op {
        Op::lin(vec![(Scalar::one(), self.clone()), (Scalar::one(), o.clone())])
    }

    pub fn minus(&self, o: &Op) -> Op {
        Op::lin(vec![(Scalar::one(), self.clone()), (Scalar::int(-1), o.clone())])
    }

    /// `ops[0] ops[1] ... ops[k]`; the last factor acts first.
    pub fn product(ops: &[Op]) -> Op {
        assert!(!ops.is_empty());
        if ops.len() == 1 {
            return ops[0].clone();
        }
        let g = ops.iter().map(|o| o.grading()).sum();
        let sh = ops.iter().fold(Vec::new(), |acc, o| add_shift(&acc, &o.0.shift));
        Op::mk(g, sh, OpKind::Compose(ops.to_vec()))
    }

    pub fn comm(a: &Op, b: &Op) -> Op {
        Op::mk(a.grading() + b.grading(), add_shift(&a.0.shift, &b.0.shift), OpKind::Comm(a.clone(), b.clone()))
    }

    /// `O_j`: the coefficient of `z^j` in the oscillator part of `V[alpha](z)`,
    /// maps `F_p` to `F_{p + delta}` with `delta_i = -alpha_i g_i`.
    pub fn vertex(space: &FockSpace, alpha: &[Scalar], j: i64) -> Op {
        assert_eq!(alpha.len(), space.len());
        let shift: Vec<Scalar> = alpha.iter().enumerate().map(|(i, a)| -(a * space.norm(i))).collect();
        let ann = alpha.iter().enumerate().map(|(i, a)| a * space.norm(i)).collect();
        let data = VertexData {
            alpha: alpha.to_vec(),
            ann,
            paper: space.mode == super::NormMode::Paper,
            j,
            creation: Mutex::new(Vec::new()),
        };
        Op::mk(j, shift, OpKind::Vertex(data))
    }

    /// Level change: a basis state of level `l` maps to level `l + grading`.
    pub fn grading(&self) -> i64 {
        self.0.grading
    }

    /// Charge shift; empty when the operator preserves the sector.
    pub fn shift(&self) -> &[Scalar] {
        &self.0.shift
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }
}

impl fmt::Debug for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Op#{}(grading {})", self.0.id, self.0.grading)
    }
}

pub type SectorId = u32;

type Key = (u64, i64, SectorId, State);

#[derive(Default)]
struct Sectors {
    list: Vec<Arc<Vec<Scalar>>>,
    index: FxHashMap<Vec<Scalar>, SectorId>,
}

/// Evaluation context: a Fock space, interned charge sectors and the memo table.
pub struct Engine {
    space: FockSpace,
    sectors: RwLock<Sectors>,
    cache: DashMap<Key, Arc<FockVector>, FxBuildHasher>,
}

impl Engine {
    pub fn new(space: FockSpace) -> Engine {
        Engine { space, sectors: RwLock::new(Sectors::default()), cache: DashMap::default() }
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    /// Interns the sector with the given `b_0` eigenvalues.
    pub fn sector(&self, momenta: Vec<Scalar>) -> SectorId {
        assert_eq!(momenta.len(), self.space.len(), "one momentum per boson");
        if let Some(&id) = self.sectors.read().index.get(&momenta) {
            return id;
        }
        let mut w = self.sectors.write();
        if let Some(&id) = w.index.get(&momenta) {
            return id;
        }
        let id = w.list.len() as SectorId;
        w.list.push(Arc::new(momenta.clone()));
        w.index.insert(momenta, id);
        id
    }

    pub fn vacuum_sector(&self) -> SectorId {
        self.sector(vec![Scalar::zero(); self.space.len()])
    }

    pub fn momenta(&self, s: SectorId) -> Arc<Vec<Scalar>> {
        self.sectors.read().list[s as usize].clone()
    }

    pub fn target(&self, op: &Op, s: SectorId) -> SectorId {
        if op.shift().is_empty() {
            return s;
        }
        let p = self.momenta(s);
        self.sector(p.iter().zip(op.shift()).map(|(a, b)| a + b).collect())
    }

    pub fn vacuum(&self) -> State {
        State::vacuum(self.space.len())
    }

    /// Drops memoized results.
    pub fn clear_cache(&self) {
        self.cache.clear();
    }

    fn memo(&self, key: Key, f: impl FnOnce() -> FockVector) -> Arc<FockVector> {
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let v = Arc::new(f());
        self.cache.insert(key, v.clone());
        v
    }

    /// `b^(i)_m` on a basis state.
    pub fn boson(&self, i: usize, m: i64, sec: SectorId, s: &State) -> Option<(State, Scalar)> {
        if m < 0 {
            let n = u8::try_from(-m).expect("mode fits in u8");
            Some((s.with_created(i, n), Scalar::one()))
        } else if m == 0 {
            let p = self.momenta(sec)[i].clone();
            (!p.is_zero()).then(|| (s.clone(), p))
        } else {
            let n = u8::try_from(m).ok()?;
            let r = s.multiplicity(i, n);
            if r == 0 {
                return None;
            }
            let c = self.space.norm(i) * Scalar::int(r as i64 * self.space.mode.kappa(m));
            Some((s.with_removed(i, n), c))
        }
    }

    /// `F_m` applied to a basis state.
    pub fn field_state(&self, f: &Field, m: i64, sec: SectorId, s: &State) -> Arc<FockVector> {
        let level = s.level() as i64;
        if level - m < 0 {
            return Arc::new(FockVector::zero());
        }
        match &f.0.kind {
            FieldKind::Boson(i) => Arc::new(match self.boson(*i, m, sec, s) {
                Some((t, c)) => FockVector::term(t, c),
                None => FockVector::zero(),
            }),
            FieldKind::Deriv(g, n) => {
                let h = g.weight().expect("derivative of a field without weight");
                let k = derivative_factor(h, *n, m);
                if k == 0 {
                    return Arc::new(FockVector::zero());
                }
                Arc::new(self.field_state(g, m, sec, s).scaled(&Scalar::int(k)))
            }
            FieldKind::Lin(terms) => self.memo((f.id(), m, sec, s.clone()), || {
                let mut out = FockVector::zero();
                for (c, g) in terms {
                    out.add_scaled(&self.field_state(g, m, sec, s), c);
                }
                out
            }),
            FieldKind::Prod(a, b) => self.memo((f.id(), m, sec, s.clone()), || {
                let h = a.weight().expect("weighted left factor");
                let mut out = FockVector::zero();
                // sum_{n <= -h} a_n b_{m-n}
                for n in (m - level)..=(-h) {
                    let v = self.field_state(b, m - n, sec, s);
                    for (t, c) in v.iter() {
                        out.add_scaled(&self.field_state(a, n, sec, t), c);
                    }
                }
                // sum_{n > -h} b_{m-n} a_n
                for n in (-h + 1)..=level {
                    let v = self.field_state(a, n, sec, s);
                    for (t, c) in v.iter() {
                        out.add_scaled(&self.field_state(b, m - n, sec, t), c);
                    }
                }
                out
            }),
        }
    }

    pub fn field_vec(&self, f: &Field, m: i64, sec: SectorId, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (s, c) in v.iter() {
            out.add_scaled(&self.field_state(f, m, sec, s), c);
        }
        out
    }

    /// A normal-ordered expression on a basis state: modes act right to left.
    pub fn expr_state(&self, e: &NormalOrderedExpr, sec: SectorId, s: &State) -> FockVector {
        let mut out = FockVector::zero();
        let level = s.level() as i64;
        'mono: for (mono, c) in e.terms() {
            if mono.annihilation_degree() > level {
                continue;
            }
            let mut cur = s.clone();
            let mut coeff = c.clone();
            for &(i, m) in mono.0.iter().rev() {
                match self.boson(i as usize, m as i64, sec, &cur) {
                    Some((t, x)) => {
                        cur = t;
                        coeff = coeff * x;
                    }
                    None => continue 'mono,
                }
            }
            out.add_term(cur, coeff);
        }
        out
    }

    /// `op` on a basis state of sector `sec`; the result lies in `target(op, sec)`.
    pub fn apply_state(&self, op: &Op, sec: SectorId, s: &State) -> Arc<FockVector> {
        if s.level() as i64 + op.grading() < 0 {
            return Arc::new(FockVector::zero());
        }
        match &op.0.kind {
            OpKind::Mode(f, m) => self.field_state(f, *m, sec, s),
            OpKind::Expr(e) => Arc::new(self.expr_state(e, sec, s)),
            OpKind::Scalar(c) => Arc::new(FockVector::term(s.clone(), c.clone())),
            OpKind::Level => Arc::new(FockVector::term(s.clone(), Scalar::int(s.level() as i64))),
            OpKind::Lin(terms) => {
                let mut out = FockVector::zero();
                for (c, o) in terms {
                    out.add_scaled(&self.apply_state(o, sec, s), c);
                }
                Arc::new(out)
            }
            OpKind::Compose(ops) => self.memo((op.id(), 0, sec, s.clone()), || {
                let mut v = FockVector::basis(s.clone());
                let mut cur = sec;
                for o in ops.iter().rev() {
                    v = self.apply(o, cur, &v);
                    cur = self.target(o, cur);
                    if v.is_zero() {
                        break;
                    }
                }
                v
            }),
            OpKind::Comm(a, b) => self.memo((op.id(), 0, sec, s.clone()), || {
                let sb = self.target(b, sec);
                let sa = self.target(a, sec);
                let ab = self.apply(a, sb, &self.apply_state(b, sec, s));
                let ba = self.apply(b, sa, &self.apply_state(a, sec, s));
                ab.sub(&ba)
            }),
            OpKind::Vertex(d) => self.memo((op.id(), 0, sec, s.clone()), || self.vertex_state(d, s)),
        }
    }

    pub fn apply(&self, op: &Op, sec: SectorId, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (s, c) in v.iter() {
            out.add_scaled(&self.apply_state(op, sec, s), c);
        }
        out
    }

    /// Like [`Engine::apply`], but checks that `v` was produced in the sector the caller claims.
    pub fn apply_checked(
        &self,
        op: &Op,
        sec: SectorId,
        v: &FockVector,
        v_sector: SectorId,
    ) -> Result<FockVector, FockError> {
        if sec != v_sector {
            return Err(FockError::ChargeMismatch {
                expected: sector_text(&self.momenta(sec)),
                got: sector_text(&self.momenta(v_sector)),
            });
        }
        Ok(self.apply(op, sec, v))
    }

    fn creation_table(&self, d: &VertexData, a: usize) -> Arc<Vec<(Vec<Part>, Scalar)>> {
        let mut tab = d.creation.lock();
        while tab.len() <= a {
            let k = tab.len();
            let nb = d.alpha.len();
            let mut out = Vec::new();
            for comp in compositions(k, nb) {
                let lists: Vec<Vec<Part>> = comp.iter().map(|&l| partitions(l)).collect();
                for choice in cartesian(&lists) {
                    let mut c = Scalar::one();
                    for (i, p) in choice.iter().enumerate() {
                        c = c * creation_coeff(&d.alpha[i], p);
                    }
                    if !c.is_zero() {
                        out.push((choice, c));
                    }
                }
            }
            tab.push(Arc::new(out));
        }
        tab[a].clone()
    }

    fn vertex_state(&self, d: &VertexData, s: &State) -> FockVector {
        let level = s.level() as i64;
        let mut out = FockVector::zero();
        for k in 0..=level {
            let a = d.j + k;
            if a < 0 {
                continue;
            }
            let lowered = Engine::annihilate(d, s, k as usize);
            if lowered.is_empty() {
                continue;
            }
            let tab = self.creation_table(d, a as usize);
            for (t, c) in &lowered {
                for (parts, x) in tab.iter() {
                    let mut st = t.clone();
                    for (i, p) in parts.iter().enumerate() {
                        for &n in p {
                            st = st.with_created(i, n);
                        }
                    }
                    out.add_term(st, c * x);
                }
            }
        }
        out
    }

    /// `A_k s`, where `A(z) = exp(sum_{n>0} alpha b_n z^-n / n)`.
    fn annihilate(d: &VertexData, s: &State, k: usize) -> Vec<(State, Scalar)> {
        // distinct (boson, part, multiplicity)
        let mut slots = Vec::new();
        for i in 0..s.nbosons() {
            let p = s.part(i);
            let mut j = 0;
            while j < p.len() {
                let n = p[j];
                let r = p[j..].iter().take_while(|&&x| x == n).count();
                slots.push((i, n, r));
                j += r;
            }
        }
        let mut out = Vec::new();
        let mut take = vec![0usize; slots.len()];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            d: &VertexData,
            slots: &[(usize, u8, usize)],
            idx: usize,
            left: usize,
            take: &mut Vec<usize>,
            s: &State,
            out: &mut Vec<(State, Scalar)>,
        ) {
            if idx == slots.len() {
                if left != 0 {
                    return;
                }
                let mut st = s.clone();
                let mut c = Scalar::one();
                for (t, &(i, n, r)) in take.iter().zip(slots) {
                    if *t == 0 {
                        continue;
                    }
                    for _ in 0..*t {
                        st = st.with_removed(i, n);
                    }
                    // alpha g kappa(n)/n per removed part, times C(r, t)
                    let per = if d.paper { &d.ann[i] / Scalar::int(n as i64) } else { d.ann[i].clone() };
                    c = c * per.pow(*t as i32) * Scalar::int(binom(r, *t));
                }
                if !c.is_zero() {
                    out.push((st, c));
                }
                return;
            }
            let (_, n, r) = slots[idx];
            for t in 0..=r {
                let used = t * n as usize;
                if used > left {
                    break;
                }
                take[idx] = t;
                rec(d, slots, idx + 1, left - used, take, s, out);
            }
            take[idx] = 0;
        }
        rec(d, &slots, 0, k, &mut take, s, &mut out);
        out
    }

    /// Materializes `op` on source levels `0..=n` of sector `sec`; columns run in parallel.
    pub fn truncate(&self, op: &Op, sec: SectorId, n: usize) -> TruncatedOperator {
        let tsec = self.target(op, sec);
        let nb = self.space.len();
        let mut blocks = std::collections::BTreeMap::new();
        for l in 0..=n {
            let tl = l as i64 + op.grading();
            let cols = basis(nb, l);
            if tl < 0 {
                blocks.insert(l, Block::zero(0, cols.len()));
                continue;
            }
            let rows = basis(nb, tl as usize);
            let index: FxHashMap<&State, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let colv: Vec<Arc<FockVector>> = cols.par_iter().map(|s| self.apply_state(op, sec, s)).collect();
            let mut b = Block::zero(rows.len(), cols.len());
            for (j, v) in colv.iter().enumerate() {
                for (s, c) in v.iter() {
                    let i = index[s];
                    b.set(i, j, c.clone());
                }
            }
            blocks.insert(l, b);
        }
        TruncatedOperator::new(self.momenta(sec).to_vec(), self.momenta(tsec).to_vec(), nb, op.grading(), n, blocks)
    }
}

pub(crate) fn sector_text(p: &[Scalar]) -> String {
    let v: Vec<String> = p.iter().map(|x| x.to_text()).collect();
    format!("({})", v.join(", "))
}

fn binom(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// `prod_n (-alpha/n)^{c_n} / c_n!` for a partition with multiplicities `c_n`.
fn creation_coeff(alpha: &Scalar, p: &Part) -> Scalar {
    let mut c = Scalar::one();
    let mut j = 0;
    while j < p.len() {
        let n = p[j];
        let r = p[j..].iter().take_while(|&&x| x == n).count();
        let mut fact: i64 = 1;
        for i in 1..=r as i64 {
            fact *= i;
        }
        c = c * (-(alpha / Scalar::int(n as i64))).pow(r as i32) / Scalar::int(fact);
        j += r;
    }
    c
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if k == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cartesian(lists: &[Vec<Part>]) -> Vec<Vec<Part>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for prefix in &out {
            for p in l {
                let mut v = prefix.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}
