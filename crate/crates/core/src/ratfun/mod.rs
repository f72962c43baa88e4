//! Exact rational functions in `h1, h2` and declared parameters.
//!
//! `h3` is never a variable: it is always `-h1 - h2`.

mod atoms;
mod gcd;
mod lpoly;
mod parse;
mod poly;
mod rat;
mod scalar;
pub mod symbols;

pub use gcd::gcd;
pub use lpoly::{Exps, Poly};
pub use parse::Context;
pub use poly::{MPoly, Mono};
pub use rat::Q;
pub use scalar::{var_pow, Scalar};
pub use symbols::Var;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatfunError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division leaves a remainder")]
    NotDivisible,
    #[error("rational function has a pole at infinity")]
    PoleAtInfinity,
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, RatfunError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.try_div(b)?,
    })
}

pub fn exact_div(num: &Poly, den: &Poly) -> Result<Poly, RatfunError> {
    num.exact_div(den)
}

pub fn is_symmetric(p: &Poly) -> bool {
    p.is_symmetric()
}

/// Coefficients of `z^0, z^-1, ..., z^-order` in the expansion of `f` at `z = infinity`.
pub fn series_expand(f: &Scalar, z: Var, order: usize) -> Result<Vec<Scalar>, RatfunError> {
    f.series_at_infinity(z, order)
}

/// Gcd of two polynomial scalars, made monic. Fails on non-polynomial input.
pub fn poly_gcd(a: &Scalar, b: &Scalar) -> Result<Scalar, RatfunError> {
    if !a.is_polynomial() || !b.is_polynomial() {
        return Err(RatfunError::NotDivisible);
    }
    Ok(Scalar::from_poly(gcd(a.numer(), b.numer())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(&["mu", "z", "a"])
    }

    #[test]
    fn cy_constraint() {
        let c = ctx();
        assert!(c.parse("h1 + h2 + (-h1-h2)").unwrap().is_zero());
        assert!(c.parse("h1 + h2 + h3").unwrap().is_zero());
    }

    #[test]
    fn sigma2_expands() {
        let c = ctx();
        let s2 = c.parse("h1*h2 + h2*h3 + h1*h3").unwrap();
        assert_eq!(s2, c.parse("-h1^2 - h1*h2 - h2^2").unwrap());
        assert_eq!(s2.to_text(), "-h1^2 - h1*h2 - h2^2");
    }

    #[test]
    fn cancels_common_factor() {
        let c = ctx();
        let r = c.parse("(h1^2 - h2^2)/(h1 - h2)").unwrap();
        assert_eq!(r, c.parse("h1 + h2").unwrap());
        assert!(r.is_polynomial());
    }

    #[test]
    fn undeclared_symbol_rejected() {
        let c = ctx();
        assert_eq!(c.parse("q7 + 1"), Err(RatfunError::UndeclaredSymbol("q7".into())));
    }

    #[test]
    fn division_by_zero() {
        let c = ctx();
        assert_eq!(c.parse("1/(h1 - h1)"), Err(RatfunError::DivisionByZero));
        let a = Scalar::h1();
        assert_eq!(arith(&a, &Scalar::zero(), ArithOp::Div), Err(RatfunError::DivisionByZero));
    }

    #[test]
    fn geometric_series() {
        let c = ctx();
        let z = symbols::lookup("z").unwrap();
        let f = c.parse("(z - mu + h3)/(z - mu)").unwrap();
        let s = series_expand(&f, z, 3).unwrap();
        let want: Vec<Scalar> = ["1", "h3", "h3*mu", "h3*mu^2"].iter().map(|e| c.parse(e).unwrap()).collect();
        assert_eq!(s, want);
    }

    #[test]
    fn pole_at_infinity() {
        let c = ctx();
        let z = symbols::lookup("z").unwrap();
        assert_eq!(series_expand(&c.parse("z^2/(z+1)").unwrap(), z, 2), Err(RatfunError::PoleAtInfinity));
    }

    #[test]
    fn negative_power_and_text() {
        let c = ctx();
        let x = c.parse("(h1+h2)^-2 * (h1+h2)").unwrap();
        assert_eq!(x, c.parse("1/(h1+h2)").unwrap());
        assert_eq!(x.to_text(), "1/(h1 + h2)");
    }

    #[test]
    fn poly_exact_div() {
        let l1 = Poly::var(2, 0);
        let l2 = Poly::var(2, 1);
        let num = l1.mul(&l1).sub(&l2.mul(&l2));
        let q = exact_div(&num, &l1.sub(&l2)).unwrap();
        assert_eq!(q, l1.add(&l2));
        assert_eq!(exact_div(&l1.add(&l2), &l1.sub(&l2)), Err(RatfunError::NotDivisible));
        assert!(is_symmetric(&l1.add(&l2)));
        assert!(!is_symmetric(&l1.sub(&l2)));
    }
}
