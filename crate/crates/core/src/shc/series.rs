//! Truncated t-series: phi_l, Phi_l and the central factor of the G-identity.

use crate::ratfun::Scalar;

/// `a * b` keeping coefficients of `t^0..=order`.
pub fn series_mul(a: &[Scalar], b: &[Scalar], order: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// `exp(a)` for a series without constant term, via `n E_n = sum k a_k E_{n-k}`.
pub fn series_exp(a: &[Scalar], order: usize) -> Vec<Scalar> {
    assert!(a.first().is_none_or(|c| c.is_zero()), "exp needs a series without constant term");
    let mut e = vec![Scalar::zero(); order + 1];
    e[0] = Scalar::one();
    for n in 1..=order {
        let mut s = Scalar::zero();
        for k in 1..=n.min(a.len().saturating_sub(1)) {
            if !a[k].is_zero() {
                s = s + Scalar::int(k as i64) * &a[k] * &e[n - k];
            }
        }
        e[n] = s / Scalar::int(n as i64);
    }
    e
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |r, i| r * (n - i) as i64 / (i + 1) as i64)
}

/// `phi_l(t, h)` to order `t^order`: the coefficient of `(-1)^{l+1} a^l` in
/// `log((1 + t(a - h)) / (1 + t a))`.
pub fn phi_series(h: &Scalar, l: usize, order: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); order + 1];
    let sign_l = if l.is_multiple_of(2) { -1 } else { 1 };
    for (n, slot) in out.iter_mut().enumerate().skip(l + 1) {
        let sign_n = if n % 2 == 0 { -1 } else { 1 };
        let c = Scalar::rat(sign_l * sign_n * binom(n, l), n as i64);
        *slot = c * (-h).pow((n - l) as i32);
    }
    out
}

/// `phi_0 .. phi_lmax` for `h = h_color`.
pub fn phi_coeffs(color: u8, lmax: usize, order: usize) -> Vec<Vec<Scalar>> {
    let h = Scalar::hbar(color as usize);
    (0..=lmax).map(|l| phi_series(&h, l, order)).collect()
}

/// `Phi_l = sum_k phi_l(t, h_k) - phi_l(t, -h_k)`.
pub fn big_phi_coeffs(lmax: usize, order: usize) -> Vec<Vec<Scalar>> {
    (0..=lmax)
        .map(|l| {
            let mut s = vec![Scalar::zero(); order + 1];
            for k in 1..=3 {
                let h = Scalar::hbar(k);
                let (p, m) = (phi_series(&h, l, order), phi_series(&-&h, l, order));
                for n in 0..=order {
                    s[n] = &s[n] + &(&p[n] - &m[n]);
                }
            }
            s
        })
        .collect()
}

/// Values of the central generators: `c_0^(k) = r_k`, `c_l^(k) = p_l(mu^(k))`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralValues {
    pub mus: [Vec<Scalar>; 3],
}

impl CentralValues {
    /// Charges `mus[i]` for a boson of color `colors[i]`.
    pub fn from_charges(colors: &[u8], mus: &[Scalar]) -> CentralValues {
        let mut cv = CentralValues { mus: Default::default() };
        for (c, m) in colors.iter().zip(mus) {
            cv.mus[*c as usize - 1].push(m.clone());
        }
        cv
    }

    pub fn r(&self, k: u8) -> usize {
        self.mus[k as usize - 1].len()
    }

    /// `c_l^(k)`.
    pub fn c(&self, k: u8, l: usize) -> Scalar {
        let m = &self.mus[k as usize - 1];
        if l == 0 {
            return Scalar::int(m.len() as i64);
        }
        m.iter().map(|x| x.pow(l as i32)).sum()
    }

    /// `G_0 = (h1 c_0^(1) + h2 c_0^(2) + h3 c_0^(3)) / (h1 h2 h3)`.
    pub fn g0(&self) -> Scalar {
        (1..=3u8).map(|k| Scalar::hbar(k as usize) * self.c(k, 0)).sum::<Scalar>() / Scalar::sigma3()
    }
}

/// The specialization `SH^(r1,r2,r3)` with symbolic Chern roots `mu{k}_{a}`.
pub fn specialize_r(r1: usize, r2: usize, r3: usize) -> CentralValues {
    let mut cv = CentralValues { mus: Default::default() };
    for (k, r) in [r1, r2, r3].into_iter().enumerate() {
        cv.mus[k] = (1..=r).map(|a| Scalar::sym(&format!("mu{}_{a}", k + 1))).collect();
    }
    cv
}

/// `prod_k exp(sum_l (-1)^{l+1} c_l^(k) phi_l(t, h_k))` to order `t^order`.
pub fn central_series(cv: &CentralValues, order: usize) -> Vec<Scalar> {
    let mut arg = vec![Scalar::zero(); order + 1];
    for k in 1..=3u8 {
        let h = Scalar::hbar(k as usize);
        for l in 0..order {
            let c = cv.c(k, l);
            if c.is_zero() {
                continue;
            }
            let c = if l % 2 == 0 { -c } else { c };
            for (n, x) in phi_series(&h, l, order).iter().enumerate() {
                if !x.is_zero() {
                    arg[n] = &arg[n] + &(&c * x);
                }
            }
        }
    }
    series_exp(&arg, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(a: &Scalar, order: usize) -> Vec<Scalar> {
        // 1 / (1 + t a)
        (0..=order).map(|n| (-a).pow(n as i32)).collect()
    }

    #[test]
    fn phi0_is_minus_log() {
        let h = Scalar::h1();
        let p = phi_series(&h, 0, 4);
        assert!(p[0].is_zero());
        assert_eq!(p[1], h);
        assert_eq!(p[2], h.pow(2) / Scalar::int(2));
        assert_eq!(p[4], h.pow(4) / Scalar::int(4));
    }

    #[test]
    fn phi_round_trip() {
        let order = 6;
        let a = Scalar::sym("lam");
        let h = Scalar::h2();
        let mut arg = vec![Scalar::zero(); order + 1];
        for l in 0..order {
            let c = a.pow(l as i32) * Scalar::int(if l % 2 == 0 { -1 } else { 1 });
            for (n, x) in phi_series(&h, l, order).iter().enumerate() {
                arg[n] = &arg[n] + &(&c * x);
            }
        }
        let lhs = series_exp(&arg, order);
        let num = vec![Scalar::one(), &a - &h];
        let rhs = series_mul(&num, &geometric(&a, order), order);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn big_phi_low_orders_vanish() {
        let p = big_phi_coeffs(2, 7);
        for (l, s) in p.iter().enumerate() {
            assert!(s[..l + 3].iter().all(|x| x.is_zero()), "Phi_{l}");
            assert!(!s[l + 3].is_zero());
        }
        assert_eq!(p[0][3], Scalar::int(2) * Scalar::sigma3());
    }

    #[test]
    fn central_series_matches_product() {
        let cv = specialize_r(0, 1, 2);
        let order = 5;
        let mut rhs = vec![Scalar::one()];
        for k in 1..=3u8 {
            for m in &cv.mus[k as usize - 1] {
                let num = vec![Scalar::one(), m - &Scalar::hbar(k as usize)];
                rhs = series_mul(&series_mul(&rhs, &num, order), &geometric(m, order), order);
            }
        }
        assert_eq!(central_series(&cv, order), rhs);
    }

    #[test]
    fn specializations() {
        let cv = specialize_r(0, 0, 1);
        assert_eq!(cv.c(3, 0), Scalar::int(1));
        assert_eq!(cv.c(3, 2), Scalar::sym("mu3_1").pow(2));
        assert!(cv.c(1, 3).is_zero());
        assert_eq!(cv.g0(), (Scalar::h1() * Scalar::h2()).inv());
        let cv = specialize_r(1, 1, 0);
        assert_eq!(cv.c(1, 1), Scalar::sym("mu1_1"));
        assert_eq!(cv.c(2, 1), Scalar::sym("mu2_1"));
        assert!(specialize_r(0, 0, 0).c(2, 0).is_zero());
    }
}
