//! Multivariate gcd over Q by recursive primitive pseudo-remainder sequences.

use super::poly::{MPoly, Mono};
use super::rat::Q;
use super::symbols::Var;

/// Monic gcd of `a` and `b`. `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.make_monic().1;
    }
    if b.is_zero() {
        return a.make_monic().1;
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let mg = ma.gcd(&mb);
    let a1 = strip_mono(a, &ma);
    let b1 = strip_mono(b, &mb);
    let g = gcd_no_mono(&a1, &b1);
    g.mul_term(&mg, &Q::ONE).make_monic().1
}

fn strip_mono(a: &MPoly, m: &Mono) -> MPoly {
    if m.is_one() {
        a.clone()
    } else {
        a.div_exact(&MPoly::term(m.clone(), Q::ONE)).expect("monomial content divides")
    }
}

fn gcd_no_mono(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a.total_degree() >= b.total_degree() {
        if a.div_exact(b).is_some() {
            return b.make_monic().1;
        }
    } else if b.div_exact(a).is_some() {
        return a.make_monic().1;
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        let ca = content_in(a, v);
        return gcd(&ca, b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        let cb = content_in(b, v);
        return gcd(a, &cb);
    }
    let v = *va.iter().min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v)).unwrap();
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).unwrap();
    let mut q = b.div_exact(&cb).unwrap();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        let r = prem(&p, &q, v);
        if r.is_zero() {
            break q;
        }
        if r.degree_in(v) == 0 {
            break MPoly::one();
        }
        p = q;
        q = primitive_in(&r, v);
    };
    let g = primitive_in(&g, v);
    g.mul(&c).make_monic().1
}

/// Gcd of the coefficients of `a` viewed as a polynomial in `v`.
pub fn content_in(a: &MPoly, v: Var) -> MPoly {
    let mut g = MPoly::zero();
    for c in a.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn primitive_in(a: &MPoly, v: Var) -> MPoly {
    let c = content_in(a, v);
    if c.is_one() {
        return a.clone();
    }
    a.div_exact(&c).expect("content divides")
}

fn prem(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let db = b.degree_in(v);
    let bc = b.coeffs_in(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coeffs_in(v)[dr as usize].clone();
        let shift = Mono::var_pow(v, dr - db);
        r = r.mul(&lb).sub(&b.mul(&lr).mul_term(&shift, &Q::ONE));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::symbols::{H1, H2};

    fn h(v: Var) -> MPoly {
        MPoly::var(v)
    }

    #[test]
    fn gcd_of_products() {
        let a = h(H1).add(&h(H2));
        let b = h(H1).sub(&h(H2).scale(&Q::int(2)));
        let c = h(H1).mul(&h(H1)).add(&h(H2));
        let x = a.mul(&b).mul(&c);
        let y = a.mul(&c).mul(&c).mul(&h(H2));
        let g = gcd(&x, &y);
        assert_eq!(g, a.mul(&c).make_monic().1);
    }

    #[test]
    fn coprime() {
        let a = h(H1).add(&MPoly::int(1));
        let b = h(H1).sub(&MPoly::int(1));
        assert!(gcd(&a, &b).is_one());
    }
}
