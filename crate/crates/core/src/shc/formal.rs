//! Formal words in the generators of SH^c and the coproduct on the generating set.

use super::ShcError;
use crate::ratfun::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// A generator. Central generators sort first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SHGenerator {
    /// `c_l^(k)`.
    C(u8, u32),
    /// `f_{1,l}`.
    F1(u32),
    /// `f_{-1,l}`.
    Fm1(u32),
    /// `f_{0,l}`.
    F0(u32),
    /// The Heisenberg element `B_l` kept as a letter; see [`b_element`] for its word.
    B(i64),
}

impl SHGenerator {
    pub fn is_central(&self) -> bool {
        matches!(self, SHGenerator::C(..))
    }
}

impl fmt::Display for SHGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SHGenerator::C(k, l) => write!(f, "c({k},{l})"),
            SHGenerator::F1(l) => write!(f, "f(1,{l})"),
            SHGenerator::Fm1(l) => write!(f, "f(-1,{l})"),
            SHGenerator::F0(l) => write!(f, "f(0,{l})"),
            SHGenerator::B(l) => write!(f, "B[{l}]"),
        }
    }
}

pub type Word = Vec<SHGenerator>;

/// Moves central letters to the front, sorted; the rest keep their order.
fn normalize(w: Word) -> Word {
    let (mut c, rest): (Word, Word) = w.into_iter().partition(|g| g.is_central());
    c.sort();
    c.extend(rest);
    c
}

fn word_text(w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

fn add_into<K: Ord>(m: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let v = m.entry(k).or_default();
    *v = &*v + &c;
    if v.is_zero() {
        m.retain(|_, x| !x.is_zero());
    }
}

/// A formal linear combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SHElement {
    terms: BTreeMap<Word, Scalar>,
}

impl SHElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new(), Scalar::one())
    }

    pub fn gen(g: SHGenerator) -> Self {
        Self::word(vec![g], Scalar::one())
    }

    pub fn word(w: Word, c: Scalar) -> Self {
        let mut e = Self::zero();
        add_into(&mut e.terms, normalize(w), c);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut e = self.clone();
        for (w, c) in &o.terms {
            add_into(&mut e.terms, w.clone(), c.clone());
        }
        e
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut e = Self::zero();
        for (w, x) in &self.terms {
            add_into(&mut e.terms, w.clone(), x * c);
        }
        e
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let w: Word = a.iter().chain(b).copied().collect();
                add_into(&mut e.terms, normalize(w), x * y);
            }
        }
        e
    }

    pub fn comm(a: &Self, b: &Self) -> Self {
        a.mul(b).sub(&b.mul(a))
    }
}

impl fmt::Display for SHElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let v: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c}) {}", word_text(w))).collect();
        write!(f, "{}", v.join(" + "))
    }
}

/// `B_l` as a nested commutator: `B_{-l} = ad(f(1,1))^{l-1} f(1,0) / (l-1)!`,
/// `B_l = [..[f(-1,0), f(-1,1)], .., f(-1,1)] / (l-1)!`, and `B_0 = [f(1,1), f(-1,0)]`.
pub fn b_element(l: i64) -> SHElement {
    use SHGenerator::*;
    if l == 0 {
        return SHElement::comm(&SHElement::gen(F1(1)), &SHElement::gen(Fm1(0)));
    }
    let n = l.unsigned_abs() as usize - 1;
    let fact: i64 = (1..=n as i64).product();
    let mut e;
    if l < 0 {
        e = SHElement::gen(F1(0));
        for _ in 0..n {
            e = SHElement::comm(&SHElement::gen(F1(1)), &e);
        }
    } else {
        e = SHElement::gen(Fm1(0));
        for _ in 0..n {
            e = SHElement::comm(&e, &SHElement::gen(Fm1(1)));
        }
    }
    e.scale(&Scalar::rat(1, fact))
}

/// A formal sum of pure tensors, one word per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SHTensor {
    pub arity: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl SHTensor {
    pub fn zero(arity: usize) -> Self {
        SHTensor { arity, terms: BTreeMap::new() }
    }

    /// An element viewed as a one-factor tensor.
    pub fn from_element(e: &SHElement) -> Self {
        let mut t = SHTensor::zero(1);
        for (w, c) in e.terms() {
            add_into(&mut t.terms, vec![w.clone()], c.clone());
        }
        t
    }

    pub fn pure(words: Vec<Word>, c: Scalar) -> Self {
        let mut t = SHTensor::zero(words.len());
        add_into(&mut t.terms, words.into_iter().map(normalize).collect(), c);
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity);
        let mut t = self.clone();
        for (w, c) in &o.terms {
            add_into(&mut t.terms, w.clone(), c.clone());
        }
        t
    }

    /// Factorwise product.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity);
        let mut t = SHTensor::zero(self.arity);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let w = a.iter().zip(b).map(|(u, v)| normalize(u.iter().chain(v).copied().collect())).collect();
                add_into(&mut t.terms, w, x * y);
            }
        }
        t
    }

    /// Applies the coproduct to factor `pos`, extended multiplicatively over its word.
    pub fn delta_at(&self, pos: usize, tail: usize) -> Result<SHTensor, ShcError> {
        assert!(pos < self.arity);
        let mut out = SHTensor::zero(self.arity + 1);
        for (words, c) in &self.terms {
            let mut d = SHTensor::pure(vec![Vec::new(), Vec::new()], Scalar::one());
            for g in &words[pos] {
                d = d.mul(&coproduct_c(*g, tail)?);
            }
            for (pair, x) in &d.terms {
                let mut w = words[..pos].to_vec();
                w.extend(pair.iter().cloned());
                w.extend(words[pos + 1..].iter().cloned());
                add_into(&mut out.terms, w, c * x);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SHTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let v: Vec<String> = self
            .terms
            .iter()
            .map(|(ws, c)| format!("({c}) {}", ws.iter().map(word_text).collect::<Vec<_>>().join(" (x) ")))
            .collect();
        write!(f, "{}", v.join(" + "))
    }
}

fn primitive(g: SHGenerator) -> SHTensor {
    SHTensor::pure(vec![vec![g], Vec::new()], Scalar::one()).add(&SHTensor::pure(vec![Vec::new(), vec![g]], Scalar::one()))
}

/// The coproduct on the generating set; the sum in `f(0,1)` stops at `l = tail`.
pub fn coproduct_c(g: SHGenerator, tail: usize) -> Result<SHTensor, ShcError> {
    use SHGenerator::*;
    match g {
        C(..) => Ok(primitive(g)),
        B(l) if l != 0 => Ok(primitive(g)),
        B(_) => {
            let mut t = primitive(g);
            for k in 1..=3u8 {
                t = t.add(&SHTensor::pure(vec![vec![C(k, 0)], vec![C(k, 0)]], Scalar::hbar(k as usize)));
            }
            Ok(t)
        }
        F0(1) => {
            let mut t = primitive(g);
            for l in 1..=tail as i64 {
                t = t.add(&SHTensor::pure(vec![vec![B(l)], vec![B(-l)]], Scalar::sigma3() * Scalar::int(l)));
            }
            Ok(t)
        }
        other => Err(ShcError::UnsupportedGenerator(other.to_string())),
    }
}

/// `(Delta (x) id) Delta(g)` and `(id (x) Delta) Delta(g)`.
pub fn coassociativity(g: SHGenerator, tail: usize) -> Result<(SHTensor, SHTensor), ShcError> {
    let d = coproduct_c(g, tail)?;
    Ok((d.delta_at(0, tail)?, d.delta_at(1, tail)?))
}

#[cfg(test)]
mod tests {
    use super::SHGenerator::*;
    use super::*;

    #[test]
    fn b_elements() {
        assert_eq!(b_element(-1), SHElement::gen(F1(0)));
        let b2 = SHElement::comm(&SHElement::gen(F1(1)), &SHElement::gen(F1(0)));
        assert_eq!(b_element(-2), b2);
        let inner = SHElement::comm(&SHElement::gen(Fm1(0)), &SHElement::gen(Fm1(1)));
        assert_eq!(b_element(2), inner);
        let b3 = SHElement::comm(&inner, &SHElement::gen(Fm1(1))).scale(&Scalar::rat(1, 2));
        assert_eq!(b_element(3), b3);
    }

    #[test]
    fn central_letters_move_front() {
        let e = SHElement::word(vec![F1(0), C(3, 1), B(2), C(1, 0)], Scalar::one());
        let (w, _) = e.terms().next().unwrap();
        assert_eq!(w, &vec![C(1, 0), C(3, 1), F1(0), B(2)]);
    }

    #[test]
    fn coproduct_table() {
        assert_eq!(coproduct_c(B(2), 3).unwrap().len(), 2);
        assert_eq!(coproduct_c(C(3, 0), 3).unwrap().len(), 2);
        let d = coproduct_c(B(0), 3).unwrap();
        let cross = d.terms().find(|(w, _)| w[0] == vec![C(3, 0)] && w[1] == vec![C(3, 0)]).unwrap();
        assert_eq!(cross.1, &Scalar::h3());
        assert_eq!(coproduct_c(F0(1), 4).unwrap().len(), 6);
        assert!(matches!(coproduct_c(F1(2), 3), Err(ShcError::UnsupportedGenerator(_))));
    }

    #[test]
    fn coassociative_on_generators() {
        for g in [B(1), B(-1), B(2), B(-2), B(0), F0(1), C(2, 1), C(3, 0)] {
            let (a, b) = coassociativity(g, 3).unwrap();
            assert_eq!(a, b, "{g}");
        }
    }
}
