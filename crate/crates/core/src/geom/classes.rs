//! Torus characters, Euler classes and the lambda_{-1/z} series of the class F.

use crate::ratfun::{symbols, Scalar};
use crate::report::Check;

/// A virtual sum of torus characters, stored as (weight, multiplicity).
///
/// A character of weight `w` contributes `w` to the Euler class and `z - w`
/// to the lambda series in the variable `z`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KClass {
    terms: Vec<(Scalar, i64)>,
}

impl KClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_weight(&mut self, w: Scalar, m: i64) {
        if m == 0 {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|(x, _)| *x == w) {
            self.terms[pos].1 += m;
            if self.terms[pos].1 == 0 {
                self.terms.remove(pos);
            }
        } else {
            self.terms.push((w, m));
        }
    }

    /// `sum_i m_i * e^{w_i}` from a weight list with a common multiplicity.
    pub fn from_weights<'a>(ws: impl IntoIterator<Item = &'a Scalar>, m: i64) -> Self {
        let mut k = Self::zero();
        for w in ws {
            k.add_weight(w.clone(), m);
        }
        k
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut k = self.clone();
        for (w, m) in &o.terms {
            k.add_weight(w.clone(), *m);
        }
        k
    }

    pub fn neg(&self) -> Self {
        KClass { terms: self.terms.iter().map(|(w, m)| (w.clone(), -m)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Tensor with the character of weight `s`.
    pub fn shift(&self, s: &Scalar) -> Self {
        let mut k = Self::zero();
        for (w, m) in &self.terms {
            k.add_weight(w + s, *m);
        }
        k
    }

    /// `Hom(A, B) = A^* (x) B`.
    pub fn hom(a: &Self, b: &Self) -> Self {
        let mut k = Self::zero();
        for (x, m) in &a.terms {
            for (y, n) in &b.terms {
                k.add_weight(y - x, m * n);
            }
        }
        k
    }

    pub fn rank(&self) -> i64 {
        self.terms.iter().map(|(_, m)| m).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Equality as multisets, independent of term order.
    pub fn same_as(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    pub fn eu(&self) -> Scalar {
        self.terms.iter().map(|(w, m)| w.pow(*m as i32)).product()
    }

    /// `prod (z - w)^m`, the cohomological shadow of `lambda_{-1/z}` for rank zero.
    pub fn lambda_at(&self, z: &Scalar) -> Scalar {
        self.terms.iter().map(|(w, m)| (z - w).pow(*m as i32)).product()
    }
}

/// Chern roots `lambda_d` of the tautological bundle and `mu_a^(k)` of the framings.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernData {
    pub lambdas: Vec<Scalar>,
    pub mus: [Vec<Scalar>; 3],
}

impl ChernData {
    pub fn new(lambdas: Vec<Scalar>, mus: [Vec<Scalar>; 3]) -> Self {
        ChernData { lambdas, mus }
    }

    /// Roots `lam1..lam{n}` and `mu{k}_{a}` for `a <= r_k`.
    pub fn symbolic(n: usize, r: [usize; 3]) -> Self {
        let lambdas = (1..=n).map(|d| Scalar::sym(&format!("lam{d}"))).collect();
        let mus = [0, 1, 2].map(|k| (1..=r[k]).map(|a| Scalar::sym(&format!("mu{}_{a}", k + 1))).collect());
        ChernData { lambdas, mus }
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn r(&self) -> [usize; 3] {
        [0, 1, 2].map(|k| self.mus[k].len())
    }

    pub fn v(&self) -> KClass {
        KClass::from_weights(&self.lambdas, 1)
    }

    pub fn e(&self, k: usize) -> KClass {
        KClass::from_weights(&self.mus[k - 1], 1)
    }

    pub fn with_lambdas(&self, lambdas: Vec<Scalar>) -> Self {
        ChernData { lambdas, mus: self.mus.clone() }
    }
}

/// `(q1 - q1^-1 + q2 - q2^-1 + q3 - q3^-1) V`.
pub fn q_antisym(v: &KClass) -> KClass {
    let mut k = KClass::zero();
    for i in 1..=3 {
        let h = Scalar::hbar(i);
        k = k.add(&v.shift(&h)).sub(&v.shift(&-&h));
    }
    k
}

/// `F(V, E) = (sum_i q_i - q_i^-1) V + sum_k (q_k^-1 - 1) E_{r_k}`.
pub fn f_class(cd: &ChernData) -> KClass {
    let mut k = q_antisym(&cd.v());
    for c in 1..=3 {
        let e = cd.e(c);
        k = k.add(&e.shift(&-Scalar::hbar(c))).sub(&e);
    }
    k
}

fn z_var() -> Scalar {
    Scalar::var(symbols::intern("z"))
}

fn at_infinity(f: &Scalar, order: usize) -> Vec<Scalar> {
    f.series_at_infinity(symbols::intern("z"), order).expect("rank-zero class has no pole at infinity")
}

/// `psi(z)` on the fixed point with roots `cd` as a rational function of `z`:
/// `prod (z - mu^(k) + h_k)/(z - mu^(k)) * prod_d prod_i (z - lam_d - h_i)/(z - lam_d + h_i)`.
pub fn psi_rational(cd: &ChernData, z: &Scalar) -> Scalar {
    f_class(cd).lambda_at(z)
}

/// Coefficients of `z^0, z^-1, .., z^-order` of `psi(z)`.
pub fn psi_eigen_series(cd: &ChernData, order: usize) -> Vec<Scalar> {
    at_infinity(&psi_rational(cd, &z_var()), order)
}

/// `prod_t prod_i (z - nu_t - h_i)/(z - nu_t + h_i)` expanded at `z = infinity`.
pub fn cartan_conj_factor(nus: &[Scalar], order: usize) -> Vec<Scalar> {
    at_infinity(&q_antisym(&KClass::from_weights(nus, 1)).lambda_at(&z_var()), order)
}

pub fn series_product(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    crate::shc::series_mul(a, b, a.len().min(b.len()) - 1)
}

fn roots(prefix: &str, n: usize) -> Vec<Scalar> {
    (1..=n).map(|i| Scalar::sym(&format!("{prefix}{i}"))).collect()
}

/// The F-class splitting for roots `nu_1..nu_n1` (new) and `lam_1..lam_n2`:
/// both the class identity and its lambda series to `order`.
pub fn check_fl(n1: usize, n2: usize, r: [usize; 3], order: usize) -> Check {
    let (nus, lams) = (roots("nu", n1), roots("lam", n2));
    let small = ChernData::symbolic(0, r).with_lambdas(lams.clone());
    let all = small.with_lambdas(nus.iter().chain(&lams).cloned().collect());

    let class_diff = f_class(&all).sub(&f_class(&small));
    let class_ok = class_diff.same_as(&q_antisym(&KClass::from_weights(&nus, 1)));

    let lhs = psi_eigen_series(&all, order);
    let rhs = series_product(&psi_eigen_series(&small, order), &cartan_conj_factor(&nus, order));
    let residuals: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    let c = Check::new(
        format!("FL/n1={n1},n2={n2},r={},{},{}", r[0], r[1], r[2]),
        "F(V_n, E) - F(V_n2, E) = (q1 - q1^-1 + q2 - q2^-1 + q3 - q3^-1) V_n1",
    )
    .param("n1", n1)
    .param("n2", n2)
    .param("order", order)
    .param("r", format!("{},{},{}", r[0], r[1], r[2]))
    .residuals(&residuals);
    if class_ok {
        c
    } else {
        c.outcome(false, "class mismatch").detail("K-class difference is not (sum q_i - q_i^-1) V_n1")
    }
}

/// Left side of the Euler switch: the tangent-type Hom difference between a
/// line `V1` of weight `lam` and `V_n`, plus the three framing factors.
pub fn euler_switch_lhs(cd: &ChernData, lam: &Scalar) -> Scalar {
    let v1 = KClass::from_weights([lam], 1);
    let v = cd.v();
    let mut k = KClass::zero();
    for i in 1..=3 {
        let h = Scalar::hbar(i);
        k = k.add(&KClass::hom(&v1, &v.shift(&h))).sub(&KClass::hom(&v, &v1.shift(&h)));
    }
    for c in 1..=3 {
        // q_a q_b with {a, b, c} = {1, 2, 3} has weight -h_c.
        let e = cd.e(c);
        k = k.add(&KClass::hom(&v1, &e.shift(&-Scalar::hbar(c)))).sub(&KClass::hom(&e, &v1));
    }
    k.eu()
}

/// Right side: `(-1)^{3n + r1 + r2 + r3} psi(lam)`.
pub fn euler_switch_rhs(cd: &ChernData, lam: &Scalar) -> Scalar {
    let r = cd.r();
    let sign = if (3 * cd.n() + r[0] + r[1] + r[2]).is_multiple_of(2) { 1 } else { -1 };
    Scalar::int(sign) * psi_rational(cd, lam)
}

/// The Euler-class switch for symbolic roots, as an identity of rational functions in `lam`.
pub fn check_euler_switch(n: usize, r: [usize; 3]) -> Check {
    let cd = ChernData::symbolic(n, r);
    let lam = Scalar::sym("lam");
    let res = euler_switch_lhs(&cd, &lam) - euler_switch_rhs(&cd, &lam);
    Check::new(
        format!("euler-switch/n={n},r={},{},{}", r[0], r[1], r[2]),
        "eu(Hom(V1, V + E) - Hom(V + E, V1)) = (-1)^{3n+r1+r2+r3} psi(lam)",
    )
    .param("n", n)
    .param("r", format!("{},{},{}", r[0], r[1], r[2]))
    .residuals([&res])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_series_is_geometric() {
        let cd = ChernData::symbolic(0, [0, 0, 1]);
        let mu = Scalar::sym("mu3_1");
        let s = psi_eigen_series(&cd, 3);
        let h3 = Scalar::h3();
        assert_eq!(s, vec![Scalar::one(), h3.clone(), &h3 * &mu, &h3 * &mu.pow(2)]);
        let s = psi_eigen_series(&ChernData::symbolic(0, [0, 0, 0]), 4);
        assert_eq!(s[0], Scalar::one());
        assert!(s[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn single_root_starts_at_third_order() {
        // log of the product is -2 s3 / (z - lam)^3 + O(z^-5); the z^-2 term vanishes.
        let s = psi_eigen_series(&ChernData::symbolic(1, [0, 0, 0]), 4);
        assert!(s[1].is_zero() && s[2].is_zero());
        assert_eq!(s[3], Scalar::int(-2) * Scalar::sigma3());
        let c = cartan_conj_factor(&[Scalar::sym("nu1")], 3);
        assert!(c[1].is_zero() && c[2].is_zero());
        assert_eq!(c[3], s[3]);
    }

    #[test]
    fn conj_factor_is_multiplicative() {
        let (a, b) = (Scalar::sym("nu1"), Scalar::sym("nu2"));
        let both = cartan_conj_factor(&[a.clone(), b.clone()], 6);
        let split = series_product(&cartan_conj_factor(&[a], 6), &cartan_conj_factor(&[b], 6));
        assert_eq!(both, split);
    }

    #[test]
    fn hom_weights() {
        let a = KClass::from_weights([&Scalar::sym("lam1")], 1);
        let b = KClass::from_weights([&Scalar::sym("mu1_1")], 2);
        let h = KClass::hom(&a, &b);
        assert_eq!(h.rank(), 2);
        assert_eq!(h.eu(), (Scalar::sym("mu1_1") - Scalar::sym("lam1")).pow(2));
        assert!(f_class(&ChernData::symbolic(2, [1, 1, 1])).rank() == 0);
    }

    #[test]
    fn fl_and_switch_small() {
        assert!(check_fl(1, 0, [0, 0, 1], 4).passed());
        assert!(check_fl(2, 1, [1, 0, 0], 3).passed());
        assert!(check_euler_switch(0, [0, 0, 0]).passed());
        assert!(check_euler_switch(1, [1, 0, 0]).passed());
        assert!(check_euler_switch(2, [0, 1, 1]).passed());
    }
}
