use proptest::prelude::*;
use yangian_forge::fock::Op;
use yangian_forge::ratfun::Scalar;
use yangian_forge::shc::*;

fn mu() -> Scalar {
    Scalar::sym("mu3_1")
}

/// `(1 + t(a - h)) / (1 + t a)` to order `t^order`.
fn phi_rhs(a: &Scalar, h: &Scalar, order: usize) -> Vec<Scalar> {
    let geo: Vec<Scalar> = (0..=order).map(|k| (-a).pow(k as i32)).collect();
    series_mul(&[Scalar::one(), a - h], &geo, order)
}

#[test]
fn phi_reexponentiates() {
    let order = 5;
    let a = Scalar::sym("q1");
    for h in [Scalar::h1(), Scalar::h3(), Scalar::int(2) * Scalar::h2()] {
        let mut arg = vec![Scalar::zero(); order + 1];
        for l in 0..=order {
            let sign = Scalar::int(if l % 2 == 0 { -1 } else { 1 });
            for (n, x) in phi_series(&h, l, order).iter().enumerate() {
                arg[n] = &arg[n] + &(&sign * &a.pow(l as i32) * x);
            }
        }
        assert_eq!(series_exp(&arg, order), phi_rhs(&a, &h, order));
    }
}

#[test]
fn phi_zero_is_log() {
    let h = Scalar::h2();
    let s = phi_series(&h, 0, 4);
    let want: Vec<Scalar> = (0..=4).map(|n| if n == 0 { Scalar::zero() } else { h.pow(n) / Scalar::int(n as i64) }).collect();
    assert_eq!(s, want);
    assert!(phi_series(&Scalar::zero(), 2, 5).iter().all(Scalar::is_zero));
}

#[test]
fn big_phi_has_no_linear_term() {
    for row in big_phi_coeffs(3, 5) {
        assert!(row[0].is_zero() && row[1].is_zero());
    }
}

#[test]
fn central_values() {
    let cv = specialize_r(0, 0, 1);
    assert_eq!(cv.c(3, 0), Scalar::int(1));
    assert_eq!(cv.c(3, 2), mu().pow(2));
    assert!(cv.c(1, 3).is_zero());
    assert_eq!(cv.g0(), (Scalar::h1() * Scalar::h2()).inv());
    let cv = specialize_r(1, 1, 0);
    assert_eq!(cv.c(1, 1), Scalar::sym("mu1_1"));
    assert_eq!(cv.c(2, 1), Scalar::sym("mu2_1"));
    assert!(specialize_r(0, 0, 0).g0().is_zero());
}

#[test]
fn vacuum_g_values() {
    let rep = fock_rep(3, mu(), 2, 3);
    let e = rep.engine();
    let vac = e.vacuum();
    for l in 0..=3 {
        let v = e.apply_state(&rep.g(l), rep.sector(), &vac);
        let want = (-mu()).pow(l as i32) / (Scalar::h1() * Scalar::h2());
        assert_eq!(v.coeff(&vac), want, "G_{l}");
    }
    assert_eq!(rep.scalar_value(&rep.g(0), 2).unwrap(), rep.central().g0());
    assert!(check_vacuum_psi(&rep, 3).passed());
}

#[test]
fn relations_single_boson() {
    let rep = fock_rep(3, mu(), 3, 2);
    let checks = check_relations_on_rep(&rep, 2, 3, YangianMap::Signed);
    assert!(!checks.is_empty());
    for c in &checks {
        assert!(c.passed(), "{}: {}", c.id, c.residual);
    }
}

#[test]
fn relations_two_colors() {
    let rep = tensor_rep(&[2, 3], &[Scalar::sym("mu2_1"), mu()], 2, 1);
    for c in check_relations_on_rep(&rep, 1, 2, YangianMap::Signed) {
        assert!(c.passed(), "{}: {}", c.id, c.residual);
    }
}

#[test]
fn heisenberg_subalgebra() {
    let rep = fock_rep(1, Scalar::sym("mu1_1"), 3, 2);
    for c in check_heisenberg(&rep, 2, 3) {
        assert!(c.passed(), "{}: {}", c.id, c.residual);
    }
    // [B1, B-1] is the boson norm
    let comm = Op::comm(&rep.b(1), &rep.b(-1));
    assert_eq!(rep.scalar_value(&comm, 3).unwrap(), -(Scalar::h1() / Scalar::sigma3()));
}

#[test]
fn coproduct_generating_set() {
    for c in check_coassociativity(3) {
        assert!(c.passed(), "{}", c.id);
    }
    let d = coproduct_c(SHGenerator::B(2), 3).unwrap();
    assert_eq!(d.len(), 2);
    assert!(matches!(coproduct_c(SHGenerator::F1(1), 3), Err(ShcError::UnsupportedGenerator(_))));
}

#[test]
fn b_elements() {
    assert_eq!(b_element(-1), SHElement::gen(SHGenerator::F1(0)));
    let b2 = b_element(2);
    let want = SHElement::comm(&SHElement::gen(SHGenerator::Fm1(0)), &SHElement::gen(SHGenerator::Fm1(1)));
    assert_eq!(b2, want);
}

#[test]
fn two_boson_f01_matches_display() {
    assert!(check_tensor_f01(2).passed());
}

#[test]
fn rewriting_chains() {
    assert!(rewriting_residual(RewriteChain::Corrected, 2).is_ok());
    let lit = rewriting_residual(RewriteChain::Literal, 2);
    assert!(lit.unwrap_err().contains("off-diagonal"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn exp_is_a_homomorphism(a in prop::collection::vec(-3i64..=3, 4), b in prop::collection::vec(-3i64..=3, 4)) {
        let order = 4;
        let s = |v: &[i64]| -> Vec<Scalar> {
            std::iter::once(Scalar::zero()).chain(v.iter().map(|&x| Scalar::int(x) * Scalar::h1())).collect()
        };
        let (sa, sb) = (s(&a), s(&b));
        let sum: Vec<Scalar> = sa.iter().zip(&sb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(series_exp(&sum, order), series_mul(&series_exp(&sa, order), &series_exp(&sb, order), order));
    }

    #[test]
    fn central_series_multiplies(r3 in 0usize..3, r1 in 0usize..2) {
        let a = specialize_r(r1, 0, 0);
        let b = specialize_r(0, 0, r3);
        let both = specialize_r(r1, 0, r3);
        prop_assert_eq!(central_series(&both, 4), series_mul(&central_series(&a, 4), &central_series(&b, 4), 4));
    }
}
