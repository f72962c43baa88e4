//! Operators materialized as exact matrices on levels `0..=N`.

use super::engine::sector_text;
use super::state::{basis, FockVector};
use super::FockError;
use crate::ratfun::Scalar;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Dense block from the basis of one source level to the target level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Block {
    pub fn zero(rows: usize, cols: usize) -> Block {
        Block { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Scalar) {
        self.data[i * self.cols + j] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    fn zip(&self, o: &Block, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Block {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Block { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn mul(&self, o: &Block) -> Block {
        assert_eq!(self.cols, o.rows);
        let mut out = Block::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

/// Blocks keyed by source level; block `l` maps level `l` to `l + grading`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedOperator {
    pub source: Vec<Scalar>,
    pub target: Vec<Scalar>,
    pub nbosons: usize,
    pub grading: i64,
    /// Source levels `0..=max_level` are exact.
    pub max_level: usize,
    blocks: BTreeMap<usize, Block>,
}

impl TruncatedOperator {
    pub fn new(
        source: Vec<Scalar>,
        target: Vec<Scalar>,
        nbosons: usize,
        grading: i64,
        max_level: usize,
        blocks: BTreeMap<usize, Block>,
    ) -> TruncatedOperator {
        TruncatedOperator { source, target, nbosons, grading, max_level, blocks }
    }

    pub fn block(&self, level: usize) -> Option<&Block> {
        self.blocks.get(&level)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (usize, &Block)> {
        self.blocks.iter().map(|(l, b)| (*l, b))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero())
    }

    /// First nonzero entry as (source level, row, col, value), in block order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, &Scalar)> {
        for (l, b) in &self.blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    let c = b.get(i, j);
                    if !c.is_zero() {
                        return Some((*l, i, j, c));
                    }
                }
            }
        }
        None
    }

    /// "0", or the leading term of the first nonzero entry.
    pub fn residual_text(&self) -> String {
        match self.first_nonzero() {
            None => "0".into(),
            Some((_, _, _, c)) => c.leading_term_text(),
        }
    }

    /// Restriction to source levels `0..=n`.
    pub fn restrict(&self, n: usize) -> TruncatedOperator {
        let mut t = self.clone();
        t.blocks.retain(|l, _| *l <= n);
        t.max_level = t.max_level.min(n);
        t
    }

    fn same_shape(&self, o: &TruncatedOperator) -> Result<(), FockError> {
        if self.source != o.source || self.target != o.target {
            return Err(FockError::ChargeMismatch {
                expected: format!("{} -> {}", sector_text(&self.source), sector_text(&self.target)),
                got: format!("{} -> {}", sector_text(&o.source), sector_text(&o.target)),
            });
        }
        assert_eq!(self.grading, o.grading, "combining operators of different grading");
        Ok(())
    }

    pub fn lin(&self, a: &Scalar, o: &TruncatedOperator, b: &Scalar) -> Result<TruncatedOperator, FockError> {
        self.same_shape(o)?;
        let n = self.max_level.min(o.max_level);
        let blocks = (0..=n).map(|l| (l, self.blocks[&l].zip(&o.blocks[&l], |x, y| x * a + y * b))).collect();
        Ok(TruncatedOperator { max_level: n, blocks, ..self.clone() })
    }

    pub fn sub(&self, o: &TruncatedOperator) -> Result<TruncatedOperator, FockError> {
        self.lin(&Scalar::one(), o, &Scalar::int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> TruncatedOperator {
        let blocks = self
            .blocks
            .iter()
            .map(|(l, b)| (*l, Block { data: b.data.iter().map(|x| x * c).collect(), ..b.clone() }))
            .collect();
        TruncatedOperator { blocks, ..self.clone() }
    }

    /// `self * o` on every source level where both factors are exact.
    pub fn compose(&self, o: &TruncatedOperator) -> Result<TruncatedOperator, FockError> {
        if o.target != self.source {
            return Err(FockError::ChargeMismatch {
                expected: sector_text(&self.source),
                got: sector_text(&o.target),
            });
        }
        let lim = self.max_level as i64 - o.grading.max(0);
        let n = (o.max_level as i64).min(lim);
        if n < 0 {
            return Err(FockError::TruncationInsufficient {
                have: self.max_level.min(o.max_level),
                ga: self.grading,
                gb: o.grading,
            });
        }
        let g = self.grading + o.grading;
        let mut blocks = BTreeMap::new();
        for l in 0..=n as usize {
            let ob = &o.blocks[&l];
            let mid = l as i64 + o.grading;
            let rows = if l as i64 + g < 0 { 0 } else { basis(self.nbosons, (l as i64 + g) as usize).len() };
            let b = if mid < 0 { Block::zero(rows, ob.cols) } else { self.blocks[&(mid as usize)].mul(ob) };
            blocks.insert(l, b);
        }
        Ok(TruncatedOperator {
            source: o.source.clone(),
            target: self.target.clone(),
            nbosons: self.nbosons,
            grading: g,
            max_level: n as usize,
            blocks,
        })
    }

    /// If every block is `c` times the identity, returns `c`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.grading != 0 || self.source != self.target {
            return None;
        }
        let mut c: Option<Scalar> = None;
        for b in self.blocks.values() {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    let x = b.get(i, j);
                    if i != j {
                        if !x.is_zero() {
                            return None;
                        }
                    } else {
                        match &c {
                            None => c = Some(x.clone()),
                            Some(y) if y == x => {}
                            Some(_) => return None,
                        }
                    }
                }
            }
        }
        c
    }

    /// Acts on a vector supported on levels `0..=max_level`.
    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        let mut by_level: BTreeMap<usize, Vec<_>> = BTreeMap::new();
        for (s, c) in v.iter() {
            by_level.entry(s.level()).or_default().push((s, c));
        }
        for (l, items) in by_level {
            let b = self.blocks.get(&l).expect("vector outside the truncation");
            let cols = basis(self.nbosons, l);
            let tl = l as i64 + self.grading;
            if tl < 0 {
                continue;
            }
            let rows = basis(self.nbosons, tl as usize);
            for (s, c) in items {
                let j = cols.iter().position(|x| x == s).expect("basis state");
                for (i, r) in rows.iter().enumerate() {
                    let x = b.get(i, j);
                    if !x.is_zero() {
                        out.add_term(r.clone(), x * c);
                    }
                }
            }
        }
        out
    }

    /// Sparse JSON: sectors, grading, and every nonzero entry with its
    /// source level, row and column in the documented basis order.
    pub fn to_json(&self) -> Value {
        let mut entries = Vec::new();
        for (l, b) in &self.blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    let c = b.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let (num, den) = c.numer_denom_text();
                    entries.push(json!({"level": l, "row": i, "col": j, "num": num, "den": den}));
                }
            }
        }
        let txt = |p: &[Scalar]| p.iter().map(|x| x.to_text()).collect::<Vec<_>>();
        json!({
            "source": txt(&self.source),
            "target": txt(&self.target),
            "grading": self.grading,
            "max_level": self.max_level,
            "entries": entries,
        })
    }
}

/// `AB - BA` on levels `0..=n - max(|grading A|, |grading B|)`.
pub fn commutator_matrix(
    a: &TruncatedOperator,
    b: &TruncatedOperator,
    n: usize,
) -> Result<TruncatedOperator, FockError> {
    let margin = a.grading.unsigned_abs().max(b.grading.unsigned_abs()) as usize;
    if n < margin || a.max_level < n || b.max_level < n {
        return Err(FockError::TruncationInsufficient { have: a.max_level.min(b.max_level), ga: a.grading, gb: b.grading });
    }
    let valid = n - margin;
    let ab = a.compose(b)?.restrict(valid);
    let ba = b.compose(a)?.restrict(valid);
    ab.sub(&ba)
}
