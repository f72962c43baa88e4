//! Interned denominator factors ("atoms"): monic, pairwise distinct polynomials
//! that scalars keep their denominators factored over.

use super::gcd::gcd;
use super::poly::{probe_point, MPoly};
use super::rat::{mulmod, Q, MOD_P};
use super::symbols::Var;
use dashmap::DashMap;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use rustc_hash::FxHashMap;
use std::sync::Arc;

pub type AtomId = u32;

pub struct Atom {
    pub poly: MPoly,
    vars: Vec<Var>,
    degree: u32,
    kind: AtomKind,
}

enum AtomKind {
    Var(Var),
    /// pivot = -(c0 + sum a_i x_i) / a_pivot
    Linear { pivot: Var, c0: Q, rest: Vec<(Var, Q)>, inv_neg: Q },
    General,
}

#[derive(Default)]
struct Table {
    atoms: Vec<Arc<Atom>>,
    index: FxHashMap<MPoly, AtomId>,
}

static TABLE: Lazy<RwLock<Table>> = Lazy::new(|| RwLock::new(Table::default()));

/// `poly = unit * prod atom^e`.
#[derive(Clone, Debug)]
pub struct Factored {
    pub unit: Q,
    pub factors: Vec<(AtomId, u32)>,
}

static FACTOR_CACHE: Lazy<DashMap<MPoly, Arc<Factored>>> = Lazy::new(DashMap::new);
static POWER_CACHE: Lazy<DashMap<(AtomId, u32), Arc<MPoly>>> = Lazy::new(DashMap::new);

const PROBE_SALT: u64 = 0x5eed;

pub fn get(id: AtomId) -> Arc<Atom> {
    TABLE.read().atoms[id as usize].clone()
}

fn intern(monic: MPoly) -> AtomId {
    if let Some(id) = TABLE.read().index.get(&monic) {
        return *id;
    }
    let mut t = TABLE.write();
    if let Some(id) = t.index.get(&monic) {
        return *id;
    }
    let vars = monic.vars();
    let degree = monic.total_degree();
    let kind = if monic.len() == 1 && degree == 1 {
        AtomKind::Var(vars[0])
    } else if degree == 1 {
        let mut c0 = Q::ZERO;
        let mut lin: Vec<(Var, Q)> = Vec::new();
        for (m, c) in monic.terms() {
            if m.is_one() {
                c0 = c.clone();
            } else {
                lin.push((m.pairs()[0].0, c.clone()));
            }
        }
        let (pivot, a) = lin.remove(0);
        AtomKind::Linear { pivot, c0, rest: lin, inv_neg: -&a.inv() }
    } else {
        AtomKind::General
    };
    let id = t.atoms.len() as AtomId;
    t.atoms.push(Arc::new(Atom { poly: monic.clone(), vars, degree, kind }));
    t.index.insert(monic, id);
    id
}

impl Atom {
    /// Quotient `p / self` when exact.
    pub fn divide(&self, p: &MPoly) -> Option<MPoly> {
        if p.is_zero() {
            return Some(MPoly::zero());
        }
        match &self.kind {
            AtomKind::Var(v) => {
                if p.terms().iter().all(|t| t.0.exp(*v) > 0) {
                    p.div_exact(&self.poly)
                } else {
                    None
                }
            }
            AtomKind::Linear { pivot, c0, rest, inv_neg } => {
                if p.total_degree() < 1 {
                    return None;
                }
                let pt = probe_point(PROBE_SALT);
                let mut s = c0.mod_p().unwrap_or(0);
                for (v, a) in rest {
                    s = (s + mulmod(a.mod_p().unwrap_or(0), pt(*v))) % MOD_P;
                }
                let root = mulmod(s, inv_neg.mod_p().unwrap_or(0));
                let pv = *pivot;
                let val = p.eval_mod_p(&|v: Var| if v == pv { root } else { pt(v) });
                if let Some(x) = val {
                    if x != 0 {
                        return None;
                    }
                }
                p.div_exact(&self.poly)
            }
            AtomKind::General => {
                if p.total_degree() < self.degree {
                    return None;
                }
                let pv = p.vars();
                if !self.vars.iter().all(|v| pv.contains(v)) {
                    return None;
                }
                p.div_exact(&self.poly)
            }
        }
    }
}

/// `atom^e` expanded, cached.
pub fn power(id: AtomId, e: u32) -> Arc<MPoly> {
    if let Some(p) = POWER_CACHE.get(&(id, e)) {
        return p.clone();
    }
    let p = Arc::new(get(id).poly.pow(e));
    POWER_CACHE.insert((id, e), p.clone());
    p
}

/// Expands a factored denominator into a polynomial.
pub fn expand(den: &[(AtomId, u32)]) -> MPoly {
    let mut acc = MPoly::one();
    for &(id, e) in den {
        acc = acc.mul(&power(id, e));
    }
    acc
}

/// Factors `p` over the atom table, creating atoms for any new factor.
pub fn factor(p: &MPoly) -> Arc<Factored> {
    assert!(!p.is_zero(), "factoring zero");
    if let Some(f) = FACTOR_CACHE.get(p) {
        return f.clone();
    }
    let f = Arc::new(factor_uncached(p));
    FACTOR_CACHE.insert(p.clone(), f.clone());
    f
}

fn factor_uncached(p: &MPoly) -> Factored {
    let (unit, monic) = p.make_monic();
    let mut factors: Vec<(AtomId, u32)> = Vec::new();
    let mc = monic.mono_content();
    for &(v, e) in mc.pairs() {
        factors.push((intern(MPoly::var(v)), e as u32));
    }
    let mut rest = if mc.is_one() {
        monic
    } else {
        monic.div_exact(&MPoly::term(mc.clone(), Q::ONE)).unwrap()
    };
    if !rest.is_constant() {
        split_into(&mut rest, &mut factors);
    }
    debug_assert!(rest.is_one());
    factors.sort_unstable();
    let mut merged: Vec<(AtomId, u32)> = Vec::new();
    for (id, e) in factors {
        match merged.last_mut() {
            Some(l) if l.0 == id => l.1 += e,
            _ => merged.push((id, e)),
        }
    }
    Factored { unit, factors: merged }
}

/// Splits the monic, monomial-free polynomial `r` into atoms, leaving 1 behind.
fn split_into(r: &mut MPoly, out: &mut Vec<(AtomId, u32)>) {
    if r.total_degree() == 1 {
        out.push((intern(r.make_monic().1), 1));
        *r = MPoly::one();
        return;
    }
    // trial division by known atoms
    let known: Vec<(AtomId, Arc<Atom>)> = {
        let t = TABLE.read();
        t.atoms.iter().enumerate().map(|(i, a)| (i as AtomId, a.clone())).collect()
    };
    let rv = r.vars();
    for (id, a) in known.iter() {
        if matches!(a.kind, AtomKind::Var(_)) || a.degree > r.total_degree() {
            continue;
        }
        if !a.vars.iter().all(|v| rv.contains(v)) {
            continue;
        }
        let mut e = 0;
        while let Some(q) = a.divide(r) {
            *r = q;
            e += 1;
        }
        if e > 0 {
            out.push((*id, e));
        }
        if r.is_constant() {
            *r = MPoly::one();
            return;
        }
    }
    *r = r.make_monic().1;
    if r.total_degree() == 1 {
        out.push((intern(r.clone()), 1));
        *r = MPoly::one();
        return;
    }
    // square-free split
    let v = r.vars()[0];
    let d = r.derivative(v);
    let g = gcd(r, &d);
    if !g.is_constant() {
        let mut a = g.clone();
        let mut b = r.div_exact(&g).unwrap().make_monic().1;
        split_into(&mut a, out);
        split_into(&mut b, out);
        *r = MPoly::one();
        return;
    }
    // common factors with non-linear atoms
    for (_, a) in known.iter() {
        if !matches!(a.kind, AtomKind::General) {
            continue;
        }
        let g = gcd(r, &a.poly);
        if !g.is_constant() && g != *r {
            let mut x = g.clone();
            let mut y = r.div_exact(&g).unwrap().make_monic().1;
            split_into(&mut x, out);
            split_into(&mut y, out);
            *r = MPoly::one();
            return;
        }
    }
    out.push((intern(r.clone()), 1));
    *r = MPoly::one();
}
