//! The shuffle algebra on symmetric polynomials, the assignment `e_r -> lam^r`
//! of the positive half of the affine Yangian, and its relation checks.

use crate::ratfun::{symbols, Poly, RatfunError, Scalar};
use crate::report::{negative_control, Check, VerificationReport};
use rayon::prelude::*;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShuffleError {
    #[error(transparent)]
    Ratfun(#[from] RatfunError),
    #[error("payload is not symmetric")]
    NotSymmetric,
    #[error("closed-form coproduct only for degree 1; degree {degree} returned unexpanded")]
    DegreeUnsupported { degree: usize, unexpanded: Vec<DrinfeldTerm> },
}

/// Element of degree `n`: a symmetric polynomial in `lam_1..lam_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShElement {
    payload: Poly,
}

impl ShElement {
    pub fn unit() -> ShElement {
        ShElement { payload: Poly::one(0) }
    }

    pub fn scalar(c: Scalar) -> ShElement {
        ShElement { payload: Poly::constant(0, c) }
    }

    pub fn new(payload: Poly) -> Result<ShElement, ShuffleError> {
        if !payload.is_symmetric() {
            return Err(ShuffleError::NotSymmetric);
        }
        Ok(ShElement { payload })
    }

    pub fn degree(&self) -> usize {
        self.payload.nvars()
    }

    pub fn payload(&self) -> &Poly {
        &self.payload
    }

    pub fn add(&self, o: &ShElement) -> ShElement {
        ShElement { payload: self.payload.add(&o.payload) }
    }

    pub fn sub(&self, o: &ShElement) -> ShElement {
        ShElement { payload: self.payload.sub(&o.payload) }
    }

    pub fn scale(&self, s: &Scalar) -> ShElement {
        ShElement { payload: self.payload.scale(s) }
    }

    pub fn is_zero(&self) -> bool {
        self.payload.is_zero()
    }
}

impl fmt::Display for ShElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree(), self.payload)
    }
}

/// `e_r -> lam^r`.
pub fn e_gen(r: u16) -> ShElement {
    ShElement { payload: Poly::monomial(vec![r], Scalar::one()) }
}

/// The three weights entering `fac`. `standard()` uses `h1, h2, h3`; negative
/// controls perturb one of them.
#[derive(Clone, Debug)]
pub struct FacKernel {
    pub weights: [Scalar; 3],
}

impl FacKernel {
    pub fn standard() -> FacKernel {
        FacKernel { weights: [Scalar::h1(), Scalar::h2(), Scalar::h3()] }
    }

    /// `h1 -> 2 h1` in the first weight only.
    pub fn perturbed() -> FacKernel {
        FacKernel { weights: [Scalar::h1() * Scalar::int(2), Scalar::h2(), Scalar::h3()] }
    }

    /// `prod_k (lam_a - lam_b - w_k)` in `n` variables.
    fn numerator(&self, n: usize, a: usize, b: usize) -> Poly {
        let x = Poly::var(n, a).sub(&Poly::var(n, b));
        let mut p = Poly::one(n);
        for w in &self.weights {
            p = p.mul(&x.sub(&Poly::constant(n, w.clone())));
        }
        p
    }
}

impl Default for FacKernel {
    fn default() -> FacKernel {
        FacKernel::standard()
    }
}

/// Index sets of the (n, m)-shuffles: positions taken by the first factor.
fn shuffles(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, left: usize, total: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=total - left {
            cur.push(i);
            rec(i + 1, left - 1, total, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, n + m, &mut Vec::new(), &mut out);
    out
}

fn vandermonde(n: usize) -> Poly {
    let mut p = Poly::one(n);
    for a in 0..n {
        for b in a + 1..n {
            p = p.mul(&Poly::var(n, a).sub(&Poly::var(n, b)));
        }
    }
    p
}

pub fn shuffle_mul(f: &ShElement, g: &ShElement) -> Result<ShElement, ShuffleError> {
    shuffle_mul_with(&FacKernel::standard(), f, g)
}

/// Sum over shuffles of `sigma(f g fac)`, cleared over the common
/// Vandermonde denominator and divided once at the end.
pub fn shuffle_mul_with(k: &FacKernel, f: &ShElement, g: &ShElement) -> Result<ShElement, ShuffleError> {
    let (n, m) = (f.degree(), g.degree());
    if n == 0 {
        let c = f.payload.as_constant().unwrap();
        return Ok(g.scale(&c));
    }
    if m == 0 {
        let c = g.payload.as_constant().unwrap();
        return Ok(f.scale(&c));
    }
    let big = n + m;
    let fe = f.payload.embed(big, 0);
    let ge = g.payload.embed(big, n);
    let fg = fe.mul(&ge);
    let terms: Vec<Poly> = shuffles(n, m)
        .into_par_iter()
        .map(|first| {
            let second: Vec<usize> = (0..big).filter(|i| !first.contains(i)).collect();
            let mut perm = vec![0usize; big];
            for (s, &p) in first.iter().enumerate() {
                perm[s] = p;
            }
            for (t, &p) in second.iter().enumerate() {
                perm[n + t] = p;
            }
            let mut t = fg.permute(&perm);
            let mut sign = Scalar::one();
            for &a in &first {
                for &b in &second {
                    t = t.mul(&k.numerator(big, a, b));
                    if a > b {
                        sign = -sign;
                    }
                }
            }
            // Vandermonde factors not cancelled by this shuffle's denominator
            for grp in [&first, &second] {
                for (i, &a) in grp.iter().enumerate() {
                    for &b in &grp[i + 1..] {
                        t = t.mul(&Poly::var(big, a).sub(&Poly::var(big, b)));
                    }
                }
            }
            t.scale(&sign)
        })
        .collect();
    let mut total = Poly::zero(big);
    for t in &terms {
        total = total.add(t);
    }
    let q = total.exact_div(&vandermonde(big))?;
    Ok(ShElement { payload: q })
}

pub fn commutator(k: &FacKernel, a: &ShElement, b: &ShElement) -> Result<ShElement, ShuffleError> {
    Ok(shuffle_mul_with(k, a, b)?.sub(&shuffle_mul_with(k, b, a)?))
}

pub fn anticommutator(k: &FacKernel, a: &ShElement, b: &ShElement) -> Result<ShElement, ShuffleError> {
    Ok(shuffle_mul_with(k, a, b)?.add(&shuffle_mul_with(k, b, a)?))
}

fn residual_check(mut c: Check, r: Result<ShElement, ShuffleError>) -> Check {
    match r {
        Ok(x) => {
            let coeffs: Vec<Scalar> = x.payload.terms().values().cloned().collect();
            c = c.residuals(coeffs.iter());
            c
        }
        Err(e) => c.outcome(false, format!("error: {e}")),
    }
}

/// LHS - RHS of the Y1 relation in degree 2.
pub fn y1_residual(k: &FacKernel, i: u16, j: u16) -> Result<ShElement, ShuffleError> {
    let e = e_gen;
    let c = |a: u16, b: u16| commutator(k, &e(a), &e(b));
    let s2 = Scalar::sigma2();
    let s3 = Scalar::sigma3();
    let lhs = c(i + 3, j)?
        .sub(&c(i + 2, j + 1)?.scale(&Scalar::int(3)))
        .add(&c(i + 1, j + 2)?.scale(&Scalar::int(3)))
        .sub(&c(i, j + 3)?)
        .add(&c(i + 1, j)?.sub(&c(i, j + 1)?).scale(&s2));
    let rhs = anticommutator(k, &e(i), &e(j))?.scale(&-s3);
    Ok(lhs.sub(&rhs))
}

pub fn check_y1(i: u16, j: u16) -> Check {
    check_y1_with(&FacKernel::standard(), i, j)
}

pub fn check_y1_with(k: &FacKernel, i: u16, j: u16) -> Check {
    let c = Check::new(format!("y1/{i}/{j}"), "Y1 relation").param("i", i).param("j", j);
    residual_check(c, y1_residual(k, i, j))
}

/// `Sym_{S3} [e_{i1}, [e_{i2}, e_{i3+1}]]` in degree 3.
pub fn serre_residual(k: &FacKernel, i: [u16; 3]) -> Result<ShElement, ShuffleError> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut acc = ShElement { payload: Poly::zero(3) };
    for p in PERMS {
        let (a, b, c) = (i[p[0]], i[p[1]], i[p[2]]);
        let inner = commutator(k, &e_gen(b), &e_gen(c + 1))?;
        acc = acc.add(&commutator(k, &e_gen(a), &inner)?);
    }
    Ok(acc)
}

pub fn check_serre(i1: u16, i2: u16, i3: u16) -> Check {
    check_serre_with(&FacKernel::standard(), i1, i2, i3)
}

pub fn check_serre_with(k: &FacKernel, i1: u16, i2: u16, i3: u16) -> Check {
    let c = Check::new(format!("serre/{i1}/{i2}/{i3}"), "Serre relation Y6")
        .param("i1", i1)
        .param("i2", i2)
        .param("i3", i3);
    residual_check(c, serre_residual(k, [i1, i2, i3]))
}

/// `lam^a * lam^b - lam^b * lam^a` against `-2 s3 (l1^a l2^b - l1^b l2^a)/(l1 - l2)`.
pub fn commutator_closed_form_residual(a: u16, b: u16) -> Result<ShElement, ShuffleError> {
    let k = FacKernel::standard();
    let lhs = commutator(&k, &e_gen(a), &e_gen(b))?;
    let mono = |x: u16, y: u16| Poly::monomial(vec![x, y], Scalar::one());
    let anti = mono(a, b).sub(&mono(b, a));
    let l12 = Poly::var(2, 0).sub(&Poly::var(2, 1));
    let rhs = anti.exact_div(&l12)?.scale(&(Scalar::int(-2) * Scalar::sigma3()));
    Ok(ShElement { payload: lhs.payload.sub(&rhs) })
}

pub fn check_commutator_closed_form(a: u16, b: u16) -> Check {
    let c = Check::new(format!("commutator/{a}/{b}"), "shuffle commutator closed form").param("a", a).param("b", b);
    residual_check(c, commutator_closed_form_residual(a, b))
}

/// `lam^a * lam^b + lam^b * lam^a = (l1^a l2^b + l1^b l2^a) 2((l1 - l2)^2 + s2)`.
pub fn anticommutator_closed_form_residual(a: u16, b: u16) -> Result<ShElement, ShuffleError> {
    let k = FacKernel::standard();
    let lhs = anticommutator(&k, &e_gen(a), &e_gen(b))?;
    let mono = |x: u16, y: u16| Poly::monomial(vec![x, y], Scalar::one());
    let l12 = Poly::var(2, 0).sub(&Poly::var(2, 1));
    let q = l12.mul(&l12).add(&Poly::constant(2, Scalar::sigma2())).scale(&Scalar::int(2));
    let rhs = mono(a, b).add(&mono(b, a)).mul(&q);
    Ok(ShElement { payload: lhs.payload.sub(&rhs) })
}

/// `P(z, s+) psi(z) lam^j + P(s+, z) lam^j psi(z) = 0`, with the conjugation
/// `psi(z) lam^j psi(z)^-1` expanded factor by factor and `s+` acting as
/// multiplication by `lam`. Compares coefficients of `z^3 .. z^-order`.
pub fn y4_conjugation_residual(j: u16, order: usize) -> Vec<Scalar> {
    if order == 0 {
        return Vec::new();
    }
    let lam = Scalar::sym("lam");
    let len = order + 4; // conjugation series needed to z^-(order+3)
    // (z - a - h)/(z - a + h) = 1 - 2h sum_{k>=1} (a - h)^(k-1) z^-k
    let mut conj = vec![Scalar::zero(); len];
    conj[0] = Scalar::one();
    for k in 1..=3 {
        let h = Scalar::hbar(k);
        let base = &lam - &h;
        let mut f = vec![Scalar::zero(); len];
        f[0] = Scalar::one();
        let mut pw = Scalar::one();
        for c in f.iter_mut().skip(1) {
            *c = Scalar::int(-2) * &h * &pw;
            pw = &pw * &base;
        }
        let mut prod = vec![Scalar::zero(); len];
        for a in 0..len {
            if conj[a].is_zero() {
                continue;
            }
            for b in 0..len - a {
                prod[a + b] = &prod[a + b] + &(&conj[a] * &f[b]);
            }
        }
        conj = prod;
    }
    let lj = lam.pow(j as i32);
    // P(z, lam) = prod_k (z - lam + h_k): coefficients of z^3..z^0
    let pz = poly_in_z(&(-&lam));
    // P(lam, z) = prod_k (lam - z + h_k) = -prod_k (z - lam - h_k)
    let pl: Vec<Scalar> = poly_in_z_minus(&lam).iter().map(|c| -c).collect();
    // result index r <-> z^(3-r), r = 0..order+3
    let mut out = vec![Scalar::zero(); order + 4];
    for (r, o) in out.iter_mut().enumerate() {
        let mut acc = Scalar::zero();
        for (d, pc) in pz.iter().enumerate() {
            // pz[d] multiplies z^(3-d); need conj index r - d
            if r >= d && r - d < len {
                acc = &acc + &(pc * &conj[r - d]);
            }
        }
        acc = &acc * &lj;
        if r < 4 {
            acc = &acc + &(&pl[r] * &lj);
        }
        *o = acc;
    }
    out
}

/// Coefficients (z^3, z^2, z^1, z^0) of prod_k (z + shift + h_k).
fn poly_in_z(shift: &Scalar) -> Vec<Scalar> {
    let mut p = vec![Scalar::one()];
    for k in 1..=3 {
        let c = shift + &Scalar::hbar(k);
        let mut q = vec![Scalar::zero(); p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            q[i] = &q[i] + a;
            q[i + 1] = &q[i + 1] + &(a * &c);
        }
        p = q;
    }
    p
}

/// Coefficients of prod_k (z - a - h_k).
fn poly_in_z_minus(a: &Scalar) -> Vec<Scalar> {
    let mut p = vec![Scalar::one()];
    for k in 1..=3 {
        let c = -(a + &Scalar::hbar(k));
        let mut q = vec![Scalar::zero(); p.len() + 1];
        for (i, x) in p.iter().enumerate() {
            q[i] = &q[i] + x;
            q[i + 1] = &q[i + 1] + &(x * &c);
        }
        p = q;
    }
    p
}

pub fn check_y4_conjugation(j: u16, order: usize) -> Check {
    let c = Check::new(format!("y4conj/{j}/{order}"), "Cartan conjugation of e_j")
        .param("j", j)
        .param("order", order);
    let r = y4_conjugation_residual(j, order);
    c.residuals(r.iter())
}

/// One summand of the Drinfeld coproduct of a degree-n element:
/// `prod_{t in B} psi(lam_t) P(lam_A (x) lam_B) / fac(lam_B | lam_A)`
/// with `A = [1, a]`, `B = [a+1, n]`, kept unevaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldTerm {
    pub a: usize,
    pub b: usize,
    pub payload: Poly,
}

impl fmt::Display for DrinfeldTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.a + self.b;
        let idx = |r: std::ops::Range<usize>| r.map(|i| format!("l{}", i + 1)).collect::<Vec<_>>().join(",");
        let psi: Vec<String> = (self.a..n).map(|t| format!("psi(l{})", t + 1)).collect();
        if n == 1 {
            let p = self.payload.to_string().replace("l1", "l");
            return if self.a == 0 { write!(f, "psi(l) (x) {p}") } else { write!(f, "{p} (x) 1") };
        }
        write!(
            f,
            "{} P({} | {}) / fac({} | {})",
            if psi.is_empty() { "1".to_string() } else { psi.join("*") },
            idx(0..self.a),
            idx(self.a..n),
            idx(self.a..n),
            idx(0..self.a)
        )
    }
}

pub fn drinfeld_coproduct_deg1(p: &ShElement) -> Result<Vec<DrinfeldTerm>, ShuffleError> {
    let n = p.degree();
    let terms: Vec<DrinfeldTerm> = (0..=n).map(|a| DrinfeldTerm { a, b: n - a, payload: p.payload.clone() }).collect();
    if n == 1 {
        Ok(terms)
    } else {
        Err(ShuffleError::DegreeUnsupported { degree: n, unexpanded: terms })
    }
}

#[derive(Clone, Debug)]
pub struct ShuffleParams {
    pub y1_max: u16,
    pub serre_max: u16,
    pub commutator_max: u16,
    pub order: usize,
    pub y4_max: u16,
}

impl Default for ShuffleParams {
    fn default() -> ShuffleParams {
        ShuffleParams { y1_max: 4, serre_max: 2, commutator_max: 6, order: 6, y4_max: 4 }
    }
}

/// Y1 and Serre relations plus the negative controls.
pub fn yangian_suite(p: &ShuffleParams) -> VerificationReport {
    let mut jobs: Vec<Box<dyn Fn() -> Check + Send + Sync>> = Vec::new();
    for i in 0..=p.y1_max {
        for j in 0..=p.y1_max {
            jobs.push(Box::new(move || check_y1(i, j)));
        }
    }
    for a in 0..=p.serre_max {
        for b in 0..=p.serre_max {
            for c in 0..=p.serre_max {
                jobs.push(Box::new(move || check_serre(a, b, c)));
            }
        }
    }
    jobs.push(Box::new(|| negative_control(check_y1_with(&FacKernel::perturbed(), 0, 0), "y1/perturbed")));
    jobs.push(Box::new(|| negative_control(check_serre_with(&FacKernel::perturbed(), 0, 0, 0), "serre/perturbed")));
    let checks = jobs.par_iter().map(|f| f()).collect();
    VerificationReport::new("yangian", checks)
}

/// Closed-form commutator/anticommutator identities and the Cartan conjugation.
pub fn shuffle_suite(p: &ShuffleParams) -> VerificationReport {
    let mut jobs: Vec<Box<dyn Fn() -> Check + Send + Sync>> = Vec::new();
    for a in 0..=p.commutator_max {
        for b in 0..=p.commutator_max {
            jobs.push(Box::new(move || check_commutator_closed_form(a, b)));
        }
    }
    for a in 0..=p.commutator_max.min(4) {
        for b in 0..=p.commutator_max.min(4) {
            jobs.push(Box::new(move || {
                let c = Check::new(format!("anticommutator/{a}/{b}"), "shuffle anticommutator closed form")
                    .param("a", a)
                    .param("b", b);
                residual_check(c, anticommutator_closed_form_residual(a, b))
            }));
        }
    }
    for j in 0..=p.y4_max {
        let order = p.order;
        jobs.push(Box::new(move || check_y4_conjugation(j, order)));
    }
    jobs.push(Box::new(|| {
        let x = Poly::var(1, 0);
        let mut pos = Poly::one(1);
        let mut neg = Poly::one(1);
        for k in 1..=3 {
            pos = pos.mul(&x.add(&Poly::constant(1, Scalar::hbar(k))));
            neg = neg.mul(&x.sub(&Poly::constant(1, Scalar::hbar(k))));
        }
        let r = pos.sub(&neg).sub(&Poly::constant(1, Scalar::int(2) * Scalar::sigma3()));
        let c = Check::new("cubic-difference", "(X+h1)(X+h2)(X+h3) - (X-h1)(X-h2)(X-h3) = 2 h1 h2 h3");
        c.residuals(r.terms().values())
    }));
    let checks = jobs.par_iter().map(|f| f()).collect();
    VerificationReport::new("shuffle", checks)
}

/// Turns a check that is expected to fail into a passing control (and vice versa).
/// Ensures the symbol used by the conjugation check is registered.
pub fn lam_var() -> symbols::Var {
    symbols::intern("lam")
}
