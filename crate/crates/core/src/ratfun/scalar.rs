//! Rational functions with factored denominators.

use super::atoms::{self, AtomId};
use super::poly::{MPoly, Mono};
use super::rat::Q;
use super::symbols::{self, Var, H1, H2};
use super::RatfunError;
use smallvec::SmallVec;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

type Den = SmallVec<[(AtomId, u32); 4]>;

/// `num / prod atom^e`. The numerator carries every constant; atoms are monic.
/// No atom in the denominator divides the numerator, so two scalars are equal
/// iff their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    num: MPoly,
    den: Den,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::default()
    }

    pub fn one() -> Scalar {
        Scalar::from_poly(MPoly::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::from_poly(MPoly::int(n))
    }

    pub fn rat(n: i64, d: i64) -> Scalar {
        Scalar::from_q(Q::new(n, d))
    }

    pub fn from_q(q: Q) -> Scalar {
        Scalar::from_poly(MPoly::constant(q))
    }

    pub fn from_poly(p: MPoly) -> Scalar {
        Scalar { num: p, den: Den::new() }
    }

    pub fn var(v: Var) -> Scalar {
        Scalar::from_poly(MPoly::var(v))
    }

    /// The variable registered under `name`.
    pub fn sym(name: &str) -> Scalar {
        if name == "h3" {
            return Scalar::h3();
        }
        Scalar::var(symbols::intern(name))
    }

    pub fn h1() -> Scalar {
        Scalar::var(H1)
    }

    pub fn h2() -> Scalar {
        Scalar::var(H2)
    }

    pub fn h3() -> Scalar {
        -&(&Scalar::h1() + &Scalar::h2())
    }

    /// `h_k` for k in 1..=3.
    pub fn hbar(k: usize) -> Scalar {
        match k {
            1 => Scalar::h1(),
            2 => Scalar::h2(),
            3 => Scalar::h3(),
            _ => panic!("hbar index {k} out of range"),
        }
    }

    pub fn sigma2() -> Scalar {
        let (a, b, c) = (Scalar::h1(), Scalar::h2(), Scalar::h3());
        &(&(&a * &b) + &(&b * &c)) + &(&a * &c)
    }

    pub fn sigma3() -> Scalar {
        &(&Scalar::h1() * &Scalar::h2()) * &Scalar::h3()
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> MPoly {
        atoms::expand(&self.den)
    }

    pub fn denom_factors(&self) -> Vec<(MPoly, u32)> {
        let mut v: Vec<(MPoly, u32)> = self.den.iter().map(|&(id, e)| (atoms::get(id).poly.clone(), e)).collect();
        v.sort();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The value as a rational number, if it does not depend on any symbol.
    pub fn as_q(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_q().and_then(|q| q.to_i64())
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        for &(id, _) in &self.den {
            v.extend(atoms::get(id).poly.vars());
        }
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.vars().contains(&v)
    }

    fn build(num: MPoly, den: Den) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        Scalar { num, den }
    }

    /// Removes every atom of `den` that divides `num`.
    fn cancel(mut num: MPoly, mut den: Den) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_empty() {
            return Scalar { num, den };
        }
        let mut i = 0;
        while i < den.len() {
            let a = atoms::get(den[i].0);
            while den[i].1 > 0 {
                match a.divide(&num) {
                    Some(q) => {
                        num = q;
                        den[i].1 -= 1;
                    }
                    None => break,
                }
            }
            if den[i].1 == 0 {
                den.remove(i);
            } else {
                i += 1;
            }
        }
        Scalar::build(num, den)
    }

    /// Divides atoms of `den` out of `num` as far as possible; returns the reduced pair.
    fn cross_cancel(num: &MPoly, den: &Den) -> (MPoly, Den) {
        let mut n = num.clone();
        let mut d = den.clone();
        let mut i = 0;
        while i < d.len() {
            let a = atoms::get(d[i].0);
            while d[i].1 > 0 {
                match a.divide(&n) {
                    Some(q) => {
                        n = q;
                        d[i].1 -= 1;
                    }
                    None => break,
                }
            }
            if d[i].1 == 0 {
                d.remove(i);
            } else {
                i += 1;
            }
        }
        (n, d)
    }

    fn merge_dens(a: &Den, b: &Den) -> Den {
        let mut out = Den::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 < b[j].0 {
                out.push(a[i]);
                i += 1;
            } else if a[i].0 > b[j].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    fn add_impl(&self, o: &Scalar, negate: bool) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -o } else { o.clone() };
        }
        if self.den == o.den {
            let n = if negate { self.num.sub(&o.num) } else { self.num.add(&o.num) };
            return Scalar::cancel(n, self.den.clone());
        }
        // lcm of the two factored denominators
        let mut lcm = Den::new();
        let mut fa: Vec<(AtomId, u32)> = Vec::new();
        let mut fb: Vec<(AtomId, u32)> = Vec::new();
        let (a, b) = (&self.den, &o.den);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                lcm.push(a[i]);
                fb.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                lcm.push(b[j]);
                fa.push(b[j]);
                j += 1;
            } else {
                let (ea, eb) = (a[i].1, b[j].1);
                lcm.push((a[i].0, ea.max(eb)));
                if eb > ea {
                    fa.push((a[i].0, eb - ea));
                } else if ea > eb {
                    fb.push((a[i].0, ea - eb));
                }
                i += 1;
                j += 1;
            }
        }
        let x = self.num.mul(&atoms::expand(&fa));
        let y = o.num.mul(&atoms::expand(&fb));
        let n = if negate { x.sub(&y) } else { x.add(&y) };
        Scalar::cancel(n, lcm)
    }

    fn mul_impl(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_empty() && o.den.is_empty() {
            return Scalar::build(self.num.mul(&o.num), Den::new());
        }
        let (n1, d2) = Scalar::cross_cancel(&self.num, &o.den);
        let (n2, d1) = Scalar::cross_cancel(&o.num, &self.den);
        Scalar::build(n1.mul(&n2), Scalar::merge_dens(&d1, &d2))
    }

    pub fn try_inv(&self) -> Result<Scalar, RatfunError> {
        if self.is_zero() {
            return Err(RatfunError::DivisionByZero);
        }
        let f = atoms::factor(&self.num);
        let num = atoms::expand(&self.den).scale(&f.unit.inv());
        Ok(Scalar::build(num, f.factors.iter().copied().collect()))
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("division by zero")
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, RatfunError> {
        if o.is_zero() {
            return Err(RatfunError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        if o.den.is_empty() {
            if let Some(c) = o.num.constant_value() {
                return Ok(Scalar::build(self.num.scale(&c.inv()), self.den.clone()));
            }
        }
        let f = atoms::factor(&o.num);
        // o = unit * F / Do, self = N / Ds; result = N * Do / (unit * F * Ds)
        let mut ds = self.den.clone();
        let mut extra: Vec<(AtomId, u32)> = Vec::new();
        for &(id, e) in o.den.iter() {
            if let Some(p) = ds.iter_mut().find(|p| p.0 == id) {
                let k = p.1.min(e);
                p.1 -= k;
                if e > k {
                    extra.push((id, e - k));
                }
            } else {
                extra.push((id, e));
            }
        }
        ds.retain(|p| p.1 > 0);
        let fden: Den = f.factors.iter().copied().collect();
        let (n, fden) = Scalar::cross_cancel(&self.num, &fden);
        let n = n.mul(&atoms::expand(&extra)).scale(&f.unit.inv());
        Ok(Scalar::build(n, Scalar::merge_dens(&ds, &fden)))
    }

    pub fn pow(&self, e: i32) -> Scalar {
        if e < 0 {
            return self.inv().pow(-e);
        }
        if self.den.is_empty() {
            return Scalar::from_poly(self.num.pow(e as u32));
        }
        let den = self.den.iter().map(|&(id, k)| (id, k * e as u32)).collect();
        Scalar::build(self.num.pow(e as u32), den)
    }

    pub fn scale_q(&self, q: &Q) -> Scalar {
        Scalar::build(self.num.scale(q), self.den.clone())
    }

    /// Substitutes `v := by` everywhere.
    pub fn subs(&self, v: Var, by: &Scalar) -> Scalar {
        if !self.depends_on(v) {
            return self.clone();
        }
        let n = subs_poly(&self.num, v, by);
        let mut d = Scalar::one();
        for &(id, e) in &self.den {
            d = &d * &subs_poly(&atoms::get(id).poly, v, by).pow(e as i32);
        }
        &n / &d
    }

    /// Canonical text, independent of atom numbering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if self.den.is_empty() {
            self.num.to_string_with(&mut s);
            return s;
        }
        if self.num.len() > 1 {
            s.push('(');
            self.num.to_string_with(&mut s);
            s.push(')');
        } else {
            self.num.to_string_with(&mut s);
        }
        s.push('/');
        wrap_text(&self.denom(), &mut s);
        s
    }

    /// Leading numerator term, used for compact residual summaries.
    pub fn leading_term_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (m, c) = &self.num.terms()[0];
        let lead = MPoly::term(m.clone(), c.clone());
        let mut s = String::new();
        lead.to_string_with(&mut s);
        if !self.den.is_empty() {
            s.push('/');
            wrap_text(&self.denom(), &mut s);
        }
        s
    }

    pub fn numer_denom_text(&self) -> (String, String) {
        (self.num.to_string(), self.denom().to_string())
    }

    /// Series coefficients in `1/v` at `v = infinity`, orders 0..=order.
    pub fn series_at_infinity(&self, v: Var, order: usize) -> Result<Vec<Scalar>, RatfunError> {
        let n = self.num.coeffs_in(v);
        let d = self.denom().coeffs_in(v);
        let (dn, dd) = (n.len() - 1, d.len() - 1);
        if self.num.is_zero() {
            return Ok(vec![Scalar::zero(); order + 1]);
        }
        if dn > dd {
            return Err(RatfunError::PoleAtInfinity);
        }
        let shift = dd - dn;
        let lead = Scalar::from_poly(d[dd].clone());
        let mut c: Vec<Scalar> = Vec::with_capacity(order + 1);
        for i in 0..=order {
            if i < shift {
                c.push(Scalar::zero());
                continue;
            }
            let k = i - shift;
            let mut acc = if k <= dn { Scalar::from_poly(n[dn - k].clone()) } else { Scalar::zero() };
            for j in 1..=k.min(dd) {
                let dj = &d[dd - j];
                if dj.is_zero() {
                    continue;
                }
                acc = &acc - &(&Scalar::from_poly(dj.clone()) * &c[i - j]);
            }
            c.push(&acc / &lead);
        }
        Ok(c)
    }
}

fn subs_poly(p: &MPoly, v: Var, by: &Scalar) -> Scalar {
    let cs = p.coeffs_in(v);
    let mut acc = Scalar::zero();
    for c in cs.iter().rev() {
        acc = &(&acc * by) + &Scalar::from_poly(c.clone());
    }
    acc
}

/// Parenthesizes anything but a bare power product.
fn wrap_text(p: &MPoly, s: &mut String) {
    let mut t = String::new();
    p.to_string_with(&mut t);
    if p.len() > 1 || t.contains('*') || t.starts_with('-') {
        s.push('(');
        s.push_str(&t);
        s.push(')');
    } else {
        s.push_str(&t);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl From<Q> for Scalar {
    fn from(q: Q) -> Scalar {
        Scalar::from_q(q)
    }
}

impl From<MPoly> for Scalar {
    fn from(p: MPoly) -> Scalar {
        Scalar::from_poly(p)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.add_impl(o, false)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.add_impl(o, true)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_impl(o)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.try_div(o).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(it: I) -> Scalar {
        it.fold(Scalar::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(it: I) -> Scalar {
        it.fold(Scalar::one(), |a, b| &a * &b)
    }
}

/// Monomial `v^e` as a scalar.
pub fn var_pow(v: Var, e: u16) -> Scalar {
    Scalar::from_poly(MPoly::term(Mono::var_pow(v, e), Q::ONE))
}
