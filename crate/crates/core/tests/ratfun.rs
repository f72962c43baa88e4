use proptest::prelude::*;
use yangian_forge::ratfun::{series_expand, symbols, Context, RatfunError, Scalar};

fn ctx() -> Context {
    Context::new(&["z", "mu", "lam"])
}

/// Small polynomials in h1, h2, mu with integer coefficients.
fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, 0u8..=2, 0u8..=2, 0u8..=1), 1..4).prop_map(|terms| {
        let (h1, h2, mu) = (Scalar::h1(), Scalar::h2(), Scalar::sym("mu"));
        terms.into_iter().map(|(c, a, b, m)| Scalar::int(c) * h1.pow(a as i32) * h2.pow(b as i32) * mu.pow(m as i32)).sum()
    })
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in poly(), b in poly(), c in nonzero()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a / &c) * &c, a.clone());
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn text_round_trip(a in poly(), c in nonzero()) {
        let x = &a / &c;
        prop_assert_eq!(ctx().parse(&x.to_text()).unwrap(), x);
    }

    #[test]
    fn series_of_product(a in -3i64..=3, b in -3i64..=3) {
        // (z - a)/(z - b) * (z - b)/(z - a) = 1 term by term
        let c = ctx();
        let z = symbols::lookup("z").unwrap();
        let f = c.parse(&format!("(z - ({a})*h1)/(z - ({b})*h2 - mu)")).unwrap();
        let g = c.parse(&format!("(z - ({b})*h2 - mu)/(z - ({a})*h1)")).unwrap();
        let (sf, sg) = (series_expand(&f, z, 5).unwrap(), series_expand(&g, z, 5).unwrap());
        for n in 0..=5 {
            let conv: Scalar = (0..=n).map(|k| &sf[k] * &sg[n - k]).sum();
            prop_assert_eq!(conv, if n == 0 { Scalar::one() } else { Scalar::zero() });
        }
    }
}

#[test]
fn h3_is_eliminated() {
    let c = ctx();
    assert_eq!(c.parse("h1 + h2 + h3").unwrap(), Scalar::zero());
    assert_eq!(Scalar::sigma3(), c.parse("h1*h2*h3").unwrap());
    assert_eq!(Scalar::sigma2(), c.parse("h1*h2 + h2*h3 + h1*h3").unwrap());
}

#[test]
fn geometric_series_example() {
    let c = ctx();
    let z = symbols::lookup("z").unwrap();
    let s = series_expand(&c.parse("(z - mu + h3)/(z - mu)").unwrap(), z, 3).unwrap();
    let want: Vec<Scalar> = ["1", "h3", "h3*mu", "h3*mu^2"].iter().map(|e| c.parse(e).unwrap()).collect();
    assert_eq!(s, want);
}

#[test]
fn errors() {
    let c = ctx();
    assert_eq!(c.parse("1/(mu - mu)"), Err(RatfunError::DivisionByZero));
    assert!(matches!(c.parse("nu9"), Err(RatfunError::UndeclaredSymbol(_))));
    let z = symbols::lookup("z").unwrap();
    assert_eq!(series_expand(&c.parse("z^3/(z - 1)").unwrap(), z, 2), Err(RatfunError::PoleAtInfinity));
}

#[test]
fn canonical_text_is_stable() {
    let c = ctx();
    let x = c.parse("(6*h1^2 + 13*h1*h2 + 6*h2^2)/(h1*h2)").unwrap();
    assert_eq!(x.to_text(), "(6*h1^2 + 13*h1*h2 + 6*h2^2)/(h1*h2)");
    let y = c.parse("(2*h1 + 3*h2)*(3*h1 + 2*h2)/(h2*h1)").unwrap();
    assert_eq!(x, y);
}
