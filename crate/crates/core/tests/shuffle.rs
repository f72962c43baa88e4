use proptest::prelude::*;
use yangian_forge::ratfun::Scalar;
use yangian_forge::shuffle::*;

/// `e_a * e_b` straight from the definition in degree 2:
/// `l1^a l2^b w(l1 - l2) + l2^a l1^b w(l2 - l1)`, `w(x) = (x - h1)(x - h2)(x - h3)/x`.
fn product_oracle(a: u16, b: u16, l1: &Scalar, l2: &Scalar) -> Scalar {
    let w = |x: &Scalar| (1..=3).map(|k| x - &Scalar::hbar(k)).product::<Scalar>() / x;
    l1.pow(a as i32) * l2.pow(b as i32) * w(&(l1 - l2)) + l2.pow(a as i32) * l1.pow(b as i32) * w(&(l2 - l1))
}

#[test]
fn degree_two_products_match_definition() {
    let (l1, l2) = (Scalar::sym("lam1"), Scalar::sym("lam2"));
    for a in 0..=3 {
        for b in 0..=3 {
            let p = shuffle_mul(&e_gen(a), &e_gen(b)).unwrap();
            assert_eq!(p.degree(), 2);
            assert_eq!(p.payload().eval(&[l1.clone(), l2.clone()]), product_oracle(a, b, &l1, &l2), "e{a} * e{b}");
        }
    }
}

#[test]
fn e0_squared() {
    // w(x) + w(-x) = 2(x^2 + s2) since h1 + h2 + h3 = 0
    let (l1, l2) = (Scalar::sym("lam1"), Scalar::sym("lam2"));
    let p = shuffle_mul(&e_gen(0), &e_gen(0)).unwrap();
    let d = &l1 - &l2;
    assert_eq!(p.payload().eval(&[l1, l2]), Scalar::int(2) * (&d * &d + Scalar::sigma2()));
}

#[test]
fn unit_and_scalars() {
    let e = e_gen(2);
    assert_eq!(shuffle_mul(&ShElement::unit(), &e).unwrap(), e);
    let s = ShElement::scalar(Scalar::h1());
    assert_eq!(shuffle_mul(&e, &s).unwrap(), e.scale(&Scalar::h1()));
}

#[test]
fn y1_and_serre_grid() {
    for i in 0..=2 {
        for j in 0..=2 {
            assert!(check_y1(i, j).passed(), "Y1 {i} {j}");
        }
    }
    assert!(check_serre(0, 1, 1).passed());
}

#[test]
fn perturbed_kernel_breaks_relations() {
    assert!(check_y1_with(&FacKernel::perturbed(), 0, 1).failed());
    assert!(check_serre_with(&FacKernel::perturbed(), 0, 0, 0).failed());
}

#[test]
fn y4_conjugation() {
    for j in 0..=2 {
        assert!(check_y4_conjugation(j, 5).passed(), "j = {j}");
    }
}

#[test]
fn drinfeld_coproduct_has_two_terms() {
    let t = drinfeld_coproduct_deg1(&e_gen(1)).unwrap();
    assert_eq!(t.len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn associative(a in 0u16..3, b in 0u16..3, c in 0u16..3) {
        let (x, y, z) = (e_gen(a), e_gen(b), e_gen(c));
        let left = shuffle_mul(&shuffle_mul(&x, &y).unwrap(), &z).unwrap();
        let right = shuffle_mul(&x, &shuffle_mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutator_closed_form(a in 0u16..7, b in 0u16..7) {
        prop_assert!(check_commutator_closed_form(a, b).passed());
    }

    #[test]
    fn products_are_symmetric(a in 0u16..4, b in 0u16..4) {
        let p = shuffle_mul(&e_gen(a), &e_gen(b)).unwrap();
        prop_assert!(p.payload().is_symmetric());
    }
}
