//! Sparse multivariate polynomials over `Q` in graded-lex order.

use super::rat::{addmod, mulmod, powmod, Q, MOD_P};
use super::symbols::{self, Var};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector, stored sparsely as `(var, exp)` pairs sorted by var.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(SmallVec<[(Var, u16); 4]>);

impl Mono {
    pub fn one() -> Mono {
        Mono(SmallVec::new())
    }

    pub fn var(v: Var) -> Mono {
        Mono::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Mono {
        let mut m = Mono::one();
        if e > 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0.iter().find(|p| p.0 == v).map(|p| p.1).unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Var, u16)] {
        &self.0
    }

    pub fn from_pairs(mut p: Vec<(Var, u16)>) -> Mono {
        p.sort_unstable();
        let mut out: SmallVec<[(Var, u16); 4]> = SmallVec::new();
        for (v, e) in p {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Mono(out)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        if o.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return o.clone();
        }
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// True iff `o` divides `self`.
    pub fn divisible_by(&self, o: &Mono) -> bool {
        let mut i = 0;
        for &(v, e) in o.0.iter() {
            while i < self.0.len() && self.0[i].0 < v {
                i += 1;
            }
            if i == self.0.len() || self.0[i].0 != v || self.0[i].1 < e {
                return false;
            }
        }
        true
    }

    /// `self / o`; caller guarantees divisibility.
    pub fn div(&self, o: &Mono) -> Mono {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(v, e) in self.0.iter() {
            let sub = if j < o.0.len() && o.0[j].0 == v {
                j += 1;
                o.0[j - 1].1
            } else {
                0
            };
            if e > sub {
                out.push((v, e - sub));
            }
        }
        Mono(out)
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut out = SmallVec::new();
        for &(v, e) in self.0.iter() {
            let f = o.exp(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Mono(out)
    }

    /// Removes `v`, returning the remaining monomial and the exponent of `v`.
    pub fn split(&self, v: Var) -> (Mono, u16) {
        let mut out = SmallVec::new();
        let mut e0 = 0;
        for &(w, e) in self.0.iter() {
            if w == v {
                e0 = e;
            } else {
                out.push((w, e));
            }
        }
        (Mono(out), e0)
    }
}

/// Graded lex: total degree first, then the exponent of the lowest-index variable.
fn grlex(a: &Mono, b: &Mono) -> Ordering {
    let d = a.deg().cmp(&b.deg());
    if d != Ordering::Equal {
        return d;
    }
    let (x, y) = (&a.0, &b.0);
    let n = x.len().min(y.len());
    for i in 0..n {
        if x[i].0 != y[i].0 {
            return if x[i].0 < y[i].0 { Ordering::Greater } else { Ordering::Less };
        }
        if x[i].1 != y[i].1 {
            return x[i].1.cmp(&y[i].1);
        }
    }
    x.len().cmp(&y.len())
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        grlex(self, o)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(v, e) in self.0.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", symbols::name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Polynomial with terms sorted in decreasing monomial order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Mono, Q)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Q::ONE)
    }

    pub fn constant(q: Q) -> MPoly {
        if q.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(Mono::one(), q)] }
        }
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(Q::int(n))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly { terms: vec![(Mono::var(v), Q::ONE)] }
    }

    pub fn term(m: Mono, q: Q) -> MPoly {
        if q.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, q)] }
        }
    }

    pub fn from_terms(ts: impl IntoIterator<Item = (Mono, Q)>) -> MPoly {
        let mut acc: FxHashMap<Mono, Q> = FxHashMap::default();
        for (m, q) in ts {
            if q.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(c) => *c = &*c + &q,
                None => {
                    acc.insert(m, q);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Mono, Q>) -> MPoly {
        let mut terms: Vec<(Mono, Q)> = acc.into_iter().filter(|(_, q)| !q.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.terms.is_empty() {
            Some(Q::ZERO)
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Q {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.deg()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.iter().flat_map(|t| t.0.pairs().iter().map(|p| p.0)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.merge(o, true)
    }

    fn merge(&self, o: &MPoly, negate: bool) -> MPoly {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let q = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), q));
                    j += 1;
                }
                Ordering::Equal => {
                    let q = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !q.is_zero() {
                        out.push((a[i].0.clone(), q));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let q = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), q));
        }
        MPoly { terms: out }
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect() }
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        MPoly { terms: self.terms.iter().map(|(m, q)| (m.clone(), q * c)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(n, q)| (n.mul(m), q * c)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: FxHashMap<Mono, Q> = FxHashMap::default();
        acc.reserve(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(x) => *x = &*x + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let inv = dc.inv();
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !m.divisible_by(dm) {
                    return None;
                }
                out.push((m.div(dm), c * &inv));
            }
            return Some(MPoly { terms: out });
        }
        if self.total_degree() < d.total_degree() {
            return None;
        }
        let (dm, dc) = (&d.terms[0].0, &d.terms[0].1);
        let inv = dc.inv();
        let mut rem: BTreeMap<Mono, Q> = self.terms.iter().cloned().collect();
        let mut quo: Vec<(Mono, Q)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !m.divisible_by(dm) {
                return None;
            }
            let qm = m.div(dm);
            let qc = &c * &inv;
            for (tm, tc) in d.terms[1..].iter() {
                let k = tm.mul(&qm);
                let delta = tc * &qc;
                match rem.get_mut(&k) {
                    Some(x) => {
                        let nx = &*x - &delta;
                        if nx.is_zero() {
                            rem.remove(&k);
                        } else {
                            *x = nx;
                        }
                    }
                    None => {
                        rem.insert(k, -delta);
                    }
                }
            }
            quo.push((qm, qc));
        }
        Some(MPoly { terms: quo })
    }

    /// Evaluates modulo `MOD_P`; `None` when a coefficient denominator vanishes.
    pub fn eval_mod_p(&self, point: &dyn Fn(Var) -> u64) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.mod_p()?;
            for &(v, e) in m.pairs() {
                t = mulmod(t, powmod(point(v), e as u64));
            }
            acc = addmod(acc, t);
        }
        Some(acc)
    }

    /// Coefficients as a polynomial in `v`: entry `k` multiplies `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, Q)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                // dropping one variable keeps relative order within a bucket except across degrees
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MPoly { terms: ts }
            })
            .collect()
    }

    pub fn from_coeffs_in(v: Var, cs: &[MPoly]) -> MPoly {
        let mut acc = MPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul_term(&Mono::var_pow(v, k as u16), &Q::ONE));
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let ts = self.terms.iter().filter_map(|(m, c)| {
            let (rest, e) = m.split(v);
            if e == 0 {
                None
            } else {
                Some((rest.mul(&Mono::var_pow(v, e - 1)), c * &Q::int(e as i64)))
            }
        });
        MPoly::from_terms(ts)
    }

    pub fn substitute(&self, v: Var, by: &MPoly) -> MPoly {
        let cs = self.coeffs_in(v);
        // Horner
        let mut acc = MPoly::zero();
        for c in cs.iter().rev() {
            acc = acc.mul(by).add(c);
        }
        acc
    }

    /// Greatest common divisor of all exponent vectors.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let mut g = match it.next() {
            Some(t) => t.0.clone(),
            None => return Mono::one(),
        };
        for t in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(&t.0);
        }
        g
    }

    /// Makes the leading coefficient 1; returns the factor removed.
    pub fn make_monic(&self) -> (Q, MPoly) {
        if self.is_zero() {
            return (Q::ONE, MPoly::zero());
        }
        let lc = self.lc().clone();
        (lc.clone(), self.scale(&lc.inv()))
    }

    pub fn to_string_with(&self, out: &mut String) {
        use std::fmt::Write;
        if self.terms.is_empty() {
            out.push('0');
            return;
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                let _ = write!(out, "{a}");
            } else if a.is_one() {
                let _ = write!(out, "{m}");
            } else {
                let _ = write!(out, "{a}*{m}");
            }
        }
    }
}

impl PartialOrd for MPoly {
    fn partial_cmp(&self, o: &MPoly) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for MPoly {
    fn cmp(&self, o: &MPoly) -> Ordering {
        for (a, b) in self.terms.iter().zip(o.terms.iter()) {
            let c = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&o.terms.len())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.to_string_with(&mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Deterministic evaluation point for the mod-p filters.
pub fn probe_point(salt: u64) -> impl Fn(Var) -> u64 {
    move |v: Var| {
        let mut x = (v as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt.wrapping_mul(0xD6E8_FEB8_6659_FD93);
        x ^= x >> 31;
        x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
        x ^= x >> 29;
        x % MOD_P
    }
}
