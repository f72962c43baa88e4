use proptest::prelude::*;
use yangian_forge::fock::*;
use yangian_forge::ratfun::Scalar;

fn one_boson(color: u8, mode: NormMode) -> Engine {
    Engine::new(FockSpace::new(&[color], mode))
}

fn vac_vec(e: &Engine) -> FockVector {
    FockVector::basis(e.vacuum())
}

#[test]
fn boson_annihilates_created_state() {
    for mode in [NormMode::Standard, NormMode::Paper] {
        let e = one_boson(3, mode);
        let sec = e.vacuum_sector();
        let v = e.apply(&Op::boson(0, -1), sec, &vac_vec(&e));
        let w = e.apply(&Op::boson(0, 1), sec, &v);
        let want = -(Scalar::h1() * Scalar::h2()).inv();
        assert_eq!(w, FockVector::term(e.vacuum(), want));
        assert!(e.apply(&Op::boson(0, 1), sec, &vac_vec(&e)).is_zero());
    }
}

#[test]
fn creation_builds_partitions() {
    let e = one_boson(1, NormMode::Standard);
    let sec = e.vacuum_sector();
    let v = e.apply(&Op::boson(0, -2), sec, &vac_vec(&e));
    assert_eq!(v, FockVector::basis(State::from_parts(vec![vec![2]])));
}

#[test]
fn pairing_table() {
    let s3 = Scalar::sigma3();
    for k in 1..=3u8 {
        let g = -(Scalar::hbar(k as usize) / &s3);
        assert_eq!(norm(k), g);
        assert_eq!(commutator((k, 0), 1, (k, 0), -1, NormMode::Paper), g);
        assert_eq!(commutator((k, 0), 3, (k, 0), -3, NormMode::Standard), Scalar::int(3) * &g);
        assert_eq!(commutator((k, 0), 3, (k, 0), -3, NormMode::Paper), g);
        assert!(commutator((k, 0), 2, (k, 0), -1, NormMode::Standard).is_zero());
        assert!(commutator((k, 0), 1, (k, 1), -1, NormMode::Standard).is_zero());
    }
    assert!(commutator((1, 0), 1, (2, 0), -1, NormMode::Standard).is_zero());
}

#[test]
fn derivative_factors() {
    assert_eq!(derivative_factor(1, 0, 5), 1);
    for m in -4..=4 {
        assert_eq!(derivative_factor(1, 1, m), -(m + 1));
    }
    assert_eq!(derivative_factor(1, 2, 0), 2);
}

#[test]
fn derivative_mode_matches_factor() {
    let e = one_boson(3, NormMode::Standard);
    let sec = e.sector(vec![Scalar::sym("mu")]);
    let b = Field::boson(0);
    for m in -2..=2 {
        for n in 0..=2 {
            let lhs = e.truncate(&derivative_mode(&b, n, m), sec, 3);
            let rhs = e.truncate(&Op::boson(0, m), sec, 3).scale(&Scalar::int(derivative_factor(1, n, m)));
            assert_eq!(lhs, rhs, "n={n} m={m}");
        }
    }
}

#[test]
fn normal_ordered_square_on_charged_vacuum() {
    let e = one_boson(3, NormMode::Standard);
    let p = Scalar::sym("mu");
    let sec = e.sector(vec![p.clone()]);
    let b = Field::boson(0);
    let v = vac_vec(&e);
    let zero = e.apply(&Op::mode(&b.nop(&b), 0), sec, &v);
    assert_eq!(zero, FockVector::term(e.vacuum(), &p * &p));
    let minus_one = e.apply(&Op::mode(&b.nop(&b), -1), sec, &v);
    assert_eq!(minus_one, FockVector::term(State::from_parts(vec![vec![1]]), Scalar::int(2) * &p));
    for m in 1..=3 {
        assert!(e.apply(&Op::mode(&b.nop(&b), m), e.vacuum_sector(), &v).is_zero());
    }
}

#[test]
fn vertex_operator_basics() {
    let e = one_boson(3, NormMode::Standard);
    let sec = e.vacuum_sector();
    let zero = [Scalar::zero()];
    let id = vertex_mode(&e, &zero, &Scalar::zero(), 0, sec, 3).unwrap();
    assert_eq!(id.as_scalar(), Some(Scalar::one()));
    for m in [-2, -1, 1, 2] {
        assert!(vertex_mode(&e, &zero, &Scalar::zero(), m, sec, 3).unwrap().is_zero());
    }
    let a = [Scalar::h1()];
    let v0 = e.apply(&Op::vertex(e.space(), &a, 0), sec, &vac_vec(&e));
    assert_eq!(v0.coeff(&e.vacuum()), Scalar::one());
    let q = Scalar::sym("mu");
    let gen = e.sector(vec![q]);
    assert!(matches!(vertex_mode(&e, &a, &Scalar::zero(), 0, gen, 2), Err(FockError::NonIntegralExponent(_))));
}

#[test]
fn heisenberg_truncated() {
    let e = Engine::new(FockSpace::new(&[3, 1], NormMode::Standard));
    let sec = e.vacuum_sector();
    for i in 0..2 {
        for m in 1..=3 {
            let a = e.truncate(&Op::boson(i, m), sec, 4);
            let b = e.truncate(&Op::boson(i, -m), sec, 4);
            let c = commutator_matrix(&a, &b, 4).unwrap();
            assert_eq!(c.as_scalar(), Some(e.space().commutator(i, m, i, -m)));
        }
    }
    let a = e.truncate(&Op::boson(0, -1), sec, 4);
    let b = e.truncate(&Op::boson(0, -2), sec, 4);
    assert!(commutator_matrix(&a, &b, 4).unwrap().is_zero());
    let x = e.truncate(&Op::boson(0, 1), sec, 4);
    let y = e.truncate(&Op::boson(1, -1), sec, 4);
    assert!(commutator_matrix(&x, &y, 4).unwrap().is_zero());
}

#[test]
fn truncation_too_small() {
    let e = one_boson(3, NormMode::Standard);
    let sec = e.vacuum_sector();
    let a = e.truncate(&Op::boson(0, 3), sec, 2);
    let b = e.truncate(&Op::boson(0, -3), sec, 2);
    assert!(matches!(commutator_matrix(&a, &b, 2), Err(FockError::TruncationInsufficient { .. })));
}

#[test]
fn basis_sizes() {
    let p: Vec<usize> = (0..=6).map(|n| partitions(n).len()).collect();
    assert_eq!(p, [1, 1, 2, 3, 5, 7, 11]);
    // two bosons: sum_k p(k) p(n - k)
    let two: Vec<usize> = (0..=4).map(|n| basis(2, n).len()).collect();
    assert_eq!(two, [1, 2, 5, 10, 20]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn grading_of_words(m1 in -3i64..=3, m2 in -3i64..=3, m3 in -3i64..=3) {
        let e = Engine::new(FockSpace::new(&[3, 2], NormMode::Standard));
        let sec = e.sector(vec![Scalar::sym("mu"), Scalar::zero()]);
        let op = Op::product(&[Op::boson(0, m1), Op::boson(1, m2), Op::boson(0, m3)]);
        prop_assert_eq!(op.grading(), -(m1 + m2 + m3));
        let t = e.truncate(&op, sec, 3);
        for (l, blk) in t.blocks() {
            let tl = l as i64 + op.grading();
            if tl >= 0 {
                prop_assert_eq!(blk.rows, basis(2, tl as usize).len());
            }
        }
    }

    #[test]
    fn truncation_is_consistent(m in -3i64..=3, n in 0usize..=3) {
        let e = one_boson(2, NormMode::Standard);
        let sec = e.sector(vec![Scalar::sym("mu")]);
        let b = Field::boson(0);
        let op = Op::mode(&b.nop(&b.d(1)), m);
        let big = e.truncate(&op, sec, 4);
        prop_assert_eq!(big.restrict(n), e.truncate(&op, sec, n));
    }

    #[test]
    fn normal_ordering_idempotent(w in prop::collection::vec((0usize..2, -3i64..=3), 1..5)) {
        let space = FockSpace::new(&[3, 1], NormMode::Standard);
        let e = NormalOrderedExpr::word(&space, &w, Scalar::one());
        prop_assert_eq!(e.normal_order(&space), e.clone());
        let g: i64 = -w.iter().map(|&(_, m)| m).sum::<i64>();
        if !e.is_zero() {
            prop_assert_eq!(e.grading(), Some(g));
        }
    }

    #[test]
    fn heisenberg_any_modes(m in -3i64..=3, n in -3i64..=3, paper in any::<bool>()) {
        let mode = if paper { NormMode::Paper } else { NormMode::Standard };
        let e = one_boson(1, mode);
        let sec = e.sector(vec![Scalar::sym("mu")]);
        let a = e.truncate(&Op::boson(0, m), sec, 6);
        let b = e.truncate(&Op::boson(0, n), sec, 6);
        let c = commutator_matrix(&a, &b, 6).unwrap();
        let want = e.space().commutator(0, m, 0, n);
        if want.is_zero() {
            prop_assert!(c.is_zero());
        } else {
            prop_assert_eq!(c.as_scalar(), Some(want));
        }
    }
}
