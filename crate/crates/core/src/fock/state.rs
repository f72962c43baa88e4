//! Basis states and vectors of multi-boson Fock modules.

use crate::ratfun::Scalar;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::fmt;

/// Parts of one partition, in non-increasing order.
pub type Part = SmallVec<[u8; 8]>;

/// One partition per boson: the creation modes applied to the charged vacuum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub Box<[Part]>);

impl State {
    pub fn vacuum(nbosons: usize) -> State {
        State(vec![Part::new(); nbosons].into_boxed_slice())
    }

    pub fn from_parts(parts: Vec<Vec<u8>>) -> State {
        State(
            parts
                .into_iter()
                .map(|mut p| {
                    p.sort_unstable_by(|a, b| b.cmp(a));
                    Part::from_vec(p)
                })
                .collect(),
        )
    }

    pub fn level(&self) -> usize {
        self.0.iter().map(|p| p.iter().map(|&x| x as usize).sum::<usize>()).sum()
    }

    pub fn nbosons(&self) -> usize {
        self.0.len()
    }

    pub fn part(&self, i: usize) -> &Part {
        &self.0[i]
    }

    pub fn multiplicity(&self, i: usize, n: u8) -> usize {
        self.0[i].iter().filter(|&&x| x == n).count()
    }

    pub fn with_created(&self, i: usize, n: u8) -> State {
        let mut parts = self.0.clone();
        let p = &mut parts[i];
        let pos = p.iter().position(|&x| x <= n).unwrap_or(p.len());
        p.insert(pos, n);
        State(parts)
    }

    /// Removes one copy of `n` from boson `i`; caller checks multiplicity.
    pub fn with_removed(&self, i: usize, n: u8) -> State {
        let mut parts = self.0.clone();
        let p = &mut parts[i];
        let pos = p.iter().position(|&x| x == n).expect("part present");
        p.remove(pos);
        State(parts)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", s.join(","))?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Partitions of `n` in reverse-lexicographic order: (3), (2,1), (1,1,1).
pub fn partitions(n: usize) -> Vec<Part> {
    fn rec(n: usize, max: usize, cur: &mut Part, out: &mut Vec<Part>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k as u8);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Part::new(), &mut out);
    out
}

/// Basis of the given level: boson levels are distributed with boson 0 taking
/// the most first; within a distribution, partitions vary lexicographically
/// across bosons, each in reverse-lex order.
pub fn basis(nbosons: usize, level: usize) -> Vec<State> {
    fn comps(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 1 {
            return vec![vec![n]];
        }
        let mut out = Vec::new();
        for first in (0..=n).rev() {
            for mut rest in comps(n - first, k - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    if nbosons == 0 {
        return if level == 0 { vec![State(Box::new([]))] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for c in comps(level, nbosons) {
        let lists: Vec<Vec<Part>> = c.iter().map(|&l| partitions(l)).collect();
        let mut idx = vec![0usize; nbosons];
        loop {
            out.push(State(idx.iter().enumerate().map(|(b, &i)| lists[b][i].clone()).collect()));
            let mut b = nbosons;
            loop {
                if b == 0 {
                    break;
                }
                b -= 1;
                idx[b] += 1;
                if idx[b] < lists[b].len() {
                    break;
                }
                idx[b] = 0;
                if b == 0 {
                    b = usize::MAX;
                    break;
                }
            }
            if b == usize::MAX {
                break;
            }
        }
    }
    out
}

/// Sparse vector over basis states.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FockVector {
    pub(crate) map: FxHashMap<State, Scalar>,
}

impl FockVector {
    pub fn zero() -> FockVector {
        FockVector::default()
    }

    pub fn basis(s: State) -> FockVector {
        FockVector::term(s, Scalar::one())
    }

    pub fn term(s: State, c: Scalar) -> FockVector {
        let mut v = FockVector::zero();
        v.add_term(s, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn coeff(&self, s: &State) -> Scalar {
        self.map.get(s).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, s: State, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&s) {
            Some(x) => {
                let y = &*x + &c;
                if y.is_zero() {
                    self.map.remove(&s);
                } else {
                    *x = y;
                }
            }
            None => {
                self.map.insert(s, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &FockVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (s, x) in &o.map {
            let t = if one { x.clone() } else { x * c };
            self.add_term(s.clone(), t);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> FockVector {
        let mut v = FockVector::zero();
        v.add_scaled(self, c);
        v
    }

    pub fn sub(&self, o: &FockVector) -> FockVector {
        let mut v = self.clone();
        v.add_scaled(o, &Scalar::int(-1));
        v
    }

    pub fn add(&self, o: &FockVector) -> FockVector {
        let mut v = self.clone();
        v.add_scaled(o, &Scalar::one());
        v
    }

    /// Terms sorted by state, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(&State, &Scalar)> {
        let mut v: Vec<_> = self.map.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (&State, &Scalar)> {
        self.map.iter()
    }

    /// Some nonzero coefficient, chosen deterministically.
    pub fn first_nonzero(&self) -> Option<(&State, &Scalar)> {
        self.sorted_terms().into_iter().next()
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        let p3: Vec<Vec<u8>> = partitions(3).into_iter().map(|p| p.to_vec()).collect();
        assert_eq!(p3, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn two_boson_basis() {
        assert_eq!(basis(2, 2).len(), 5);
        assert_eq!(basis(2, 4).len(), 20);
        let b = basis(2, 1);
        assert_eq!(format!("{:?}", b), "[|1;>, |;1>]");
    }
}
