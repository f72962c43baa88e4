//! Polynomials in boson modes, kept normal ordered.

use super::FockSpace;
use crate::ratfun::Scalar;
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;

/// A normal-ordered word of modes `(boson, mode)`: creation modes first,
/// then zero modes, then annihilation modes, each group sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ModeMono(pub SmallVec<[(u16, i32); 4]>);

fn key(x: (u16, i32)) -> (u8, u16, i32) {
    let class = match x.1 {
        m if m < 0 => 0,
        0 => 1,
        _ => 2,
    };
    (class, x.0, x.1)
}

impl ModeMono {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|x| x.1 as i64).sum()
    }

    /// Total level removed by the annihilation modes.
    pub fn annihilation_degree(&self) -> i64 {
        self.0.iter().filter(|x| x.1 > 0).map(|x| x.1 as i64).sum()
    }
}

impl fmt::Display for ModeMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let v: Vec<String> = self.0.iter().map(|(i, m)| format!("b{}[{}]", i + 1, m)).collect();
        write!(f, "{}", v.join(" "))
    }
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct NormalOrderedExpr {
    terms: BTreeMap<ModeMono, Scalar>,
}

impl NormalOrderedExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(ModeMono::default(), c);
        e
    }

    /// A single mode `b^(i)_m`.
    pub fn mode(i: usize, m: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(ModeMono(SmallVec::from_slice(&[(i as u16, m as i32)])), Scalar::one());
        e
    }

    /// `c` times the word `modes` (leftmost acts last), normal ordered.
    pub fn word(space: &FockSpace, modes: &[(usize, i64)], c: Scalar) -> Self {
        let w: Vec<(u16, i32)> = modes.iter().map(|&(i, m)| (i as u16, m as i32)).collect();
        let mut e = Self::zero();
        order_into(space, &w, c, &mut e);
        e
    }

    fn add_term(&mut self, m: ModeMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ModeMono, &Scalar)> {
        self.terms.iter()
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

    /// Level change `-(total mode degree)`, if homogeneous.
    pub fn grading(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| -m.degree());
        let g = it.next().unwrap_or(0);
        it.all(|x| x == g).then_some(g)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut e = self.clone();
        for (m, c) in &o.terms {
            e.add_term(m.clone(), c.clone());
        }
        e
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut e = Self::zero();
        for (m, x) in &self.terms {
            e.add_term(m.clone(), x * c);
        }
        e
    }

    pub fn mul(&self, space: &FockSpace, o: &Self) -> Self {
        let mut e = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let w: Vec<(u16, i32)> = a.0.iter().chain(b.0.iter()).copied().collect();
                order_into(space, &w, x * y, &mut e);
            }
        }
        e
    }

    pub fn commutator(space: &FockSpace, a: &Self, b: &Self) -> Self {
        a.mul(space, b).sub(&b.mul(space, a))
    }

    /// Re-normal-orders every term. A no-op on canonical input.
    pub fn normal_order(&self, space: &FockSpace) -> Self {
        let mut e = Self::zero();
        for (m, c) in &self.terms {
            order_into(space, &m.0, c.clone(), &mut e);
        }
        e
    }
}

fn order_into(space: &FockSpace, w: &[(u16, i32)], c: Scalar, out: &mut NormalOrderedExpr) {
    if c.is_zero() {
        return;
    }
    let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| key(w[i]) > key(w[i + 1])) else {
        out.add_term(ModeMono(SmallVec::from_slice(w)), c);
        return;
    };
    let (x, y) = (w[i], w[i + 1]);
    let mut swapped = w.to_vec();
    swapped.swap(i, i + 1);
    order_into(space, &swapped, c.clone(), out);
    let k = space.commutator(x.0 as usize, x.1 as i64, y.0 as usize, y.1 as i64);
    if !k.is_zero() {
        let mut rest = w[..i].to_vec();
        rest.extend_from_slice(&w[i + 2..]);
        order_into(space, &rest, c * k, out);
    }
}

impl fmt::Display for NormalOrderedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NormalOrderedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
