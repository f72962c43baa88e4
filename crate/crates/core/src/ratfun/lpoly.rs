//! Polynomials in `lam_1..lam_n` with `Scalar` coefficients.

use super::scalar::Scalar;
use super::RatfunError;
use std::collections::BTreeMap;
use std::fmt;

/// Dense exponent vector, compared lexicographically (`lam_1` most significant).
pub type Exps = Vec<u16>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exps, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Scalar::one())
    }

    /// `lam_i` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Scalar::one())
    }

    pub fn monomial(exps: Exps, c: Scalar) -> Poly {
        let nvars = exps.len();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u16]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// The constant coefficient, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.iter().all(|&x| x == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exps, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Renames variables: `lam_i` becomes `lam_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0u16; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                f[perm[i]] = x;
            }
            r.terms.insert(f, c.clone());
        }
        r
    }

    /// Embeds into a ring with `n` variables, placing `lam_i` at `lam_{offset+i}`.
    pub fn embed(&self, n: usize, offset: usize) -> Poly {
        let mut r = Poly::zero(n);
        for (e, c) in &self.terms {
            let mut f = vec![0u16; n];
            for (i, &x) in e.iter().enumerate() {
                f[offset + i] = x;
            }
            r.terms.insert(f, c.clone());
        }
        r
    }

    /// Exact division; fails with `NotDivisible` if a remainder would be left.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly, RatfunError> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return Err(RatfunError::DivisionByZero);
        }
        let (dl, dc) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let dinv = dc.inv();
        let mut rem = self.terms.clone();
        let mut quo = Poly::zero(self.nvars);
        while let Some((e, c)) = rem.pop_last() {
            if e.iter().zip(&dl).any(|(a, b)| a < b) {
                return Err(RatfunError::NotDivisible);
            }
            let qe: Exps = e.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let qc = &c * &dinv;
            for (te, tc) in d.terms.iter().rev().skip(1) {
                let k: Exps = te.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let delta = tc * &qc;
                let nx = match rem.get(&k) {
                    Some(x) => x - &delta,
                    None => -delta,
                };
                if nx.is_zero() {
                    rem.remove(&k);
                } else {
                    rem.insert(k, nx);
                }
            }
            quo.terms.insert(qe, qc);
        }
        Ok(quo)
    }

    /// Invariance under every adjacent transposition.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(i, i + 1);
            self.permute(&perm) == *self
        })
    }

    /// Substitutes `lam_i := vals[i]` and returns the scalar value.
    pub fn eval(&self, vals: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = &t * &vals[i].pow(x as i32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*l{}", i + 1)?,
                    _ => write!(f, "*l{}^{}", i + 1, x)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
