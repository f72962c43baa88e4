use proptest::prelude::*;
use yangian_forge::fock::{FockSpace, NormMode};
use yangian_forge::ratfun::Scalar;
use yangian_forge::walg::*;

fn h(k: usize) -> Scalar {
    Scalar::hbar(k)
}

#[test]
fn w002_central_charge() {
    // L = (1/2k) (JJ) + beta dJ with [J_m, J_n] = k m: c = 1 - 12 k beta^2
    let k = Scalar::int(-2) / (h(1) * h(2));
    let beta = -h(3) / Scalar::int(2);
    let oracle = Scalar::one() - Scalar::int(12) * &k * &beta * &beta;
    let golden = Scalar::int(6) * h(1) * h(1) + Scalar::int(13) * h(1) * h(2) + Scalar::int(6) * h(2) * h(2);
    let golden = golden / (h(1) * h(2));
    assert_eq!(oracle, golden);

    let (check, c) = check_virasoro(&build_w002(NormMode::Standard), 2, 3);
    assert!(check.passed(), "{}", check.residual);
    assert_eq!(c, Some(golden));
}

#[test]
fn paper_normalization_breaks_virasoro() {
    let (check, c) = check_virasoro(&build_w002(NormMode::Paper), 2, 2);
    assert!(check.failed());
    assert!(c.is_none());
}

#[test]
fn zhu_closed_form() {
    let q = Scalar::sym("q");
    let (q1, q2) = (&q * h(1), Scalar::zero());
    let (_, w2, w3) = hw_eigenvalues(&q1, &q2);
    let one = Scalar::one();
    assert_eq!(w2, &q * (&q + &one) / Scalar::int(2));
    assert!(zhu_residual(&w2, &w3).is_zero());
    assert!(check_zhu(NormMode::Standard).passed());
}

#[test]
fn equal_charges_kill_w2_w3() {
    let q = Scalar::sym("q1");
    let (w1, w2, w3) = hw_eigenvalues(&q, &q);
    assert!(w2.is_zero() && w3.is_zero());
    assert_eq!(w1, -(&q / (h(1) * h(3))) - &q / (h(1) * h(2)));
}

#[test]
fn null_field_vanishes_low_levels() {
    let w = build_w011(NormMode::Standard);
    assert!(check_null_field(&w, 2, Scalar::int(128)).passed());
    assert!(check_null_field(&w, 2, Scalar::int(127)).failed());
}

#[test]
fn w1_decouples() {
    assert!(check_decoupling(&build_w011(NormMode::Standard), 2, 2).passed());
    assert!(check_decoupling(&build_w002(NormMode::Standard), 2, 2).passed());
}

#[test]
fn screening_charges() {
    let s = screening_set(0, 0, 2);
    assert_eq!(s.len(), 1);
    assert_eq!(s[0].factors, vec![(0, 3, -h(1)), (1, 3, h(1))]);
    let s = screening_set(0, 1, 1);
    assert_eq!(s.len(), 1);
    assert_eq!(s[0].factors, vec![(0, 3, -h(2)), (1, 2, h(3))]);
    assert_eq!(screening_set(1, 1, 1).len(), 2);
    assert!(screening_set(0, 0, 1).is_empty());
}

#[test]
fn screening_offsets_and_kernels() {
    for cfg in [(0, 0, 2), (0, 1, 1)] {
        let w = build(cfg, NormMode::Standard).unwrap();
        let s = &screening_set(cfg.0, cfg.1, cfg.2)[0];
        assert_eq!(calibrate_screening(s, &w, 2).unwrap(), Scalar::one(), "{cfg:?}");
        assert!(kernel_check(s, &w, 2, None).passed(), "{cfg:?}");
        assert!(raw_boson_control(s, &w).passed(), "{cfg:?}");
        assert!(perturbed_calibration_control(&w).passed(), "{cfg:?}");
    }
}

#[test]
fn generic_sector_kernel_is_skipped() {
    let w = build_w011(NormMode::Standard);
    let s = &screening_set(0, 1, 1)[0];
    let c = kernel_check(s, &w, 1, Some(generic_momenta(w.space.len())));
    assert!(!c.passed() && !c.failed());
}

#[test]
fn unsupported_config() {
    assert_eq!(build((1, 1, 1), NormMode::Standard).err(), Some(WalgError::UnsupportedConfig(1, 1, 1)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn zero_modes_match_closed_formulas(a in -3i64..=3, b in -3i64..=3) {
        let w = build_w011(NormMode::Standard);
        let (q1, q2) = (Scalar::int(a) * h(1), Scalar::int(b) * h(2));
        let zm = zero_mode_eigenvalues(&w, w011_momenta(&w.space, &q1, &q2));
        let (w1, w2, w3) = hw_eigenvalues(&q1, &q2);
        prop_assert_eq!(zm, vec![Some(w1), Some(w2.clone()), Some(w3.clone())]);
        prop_assert!(zhu_residual(&w2, &w3).is_zero());
    }
}

#[test]
fn screening_space_order() {
    let sp = FockSpace::screening_order(1, 1, 1, NormMode::Standard);
    let colors: Vec<u8> = sp.bosons.iter().map(|b| b.color).collect();
    assert_eq!(colors, [3, 2, 1]);
}
