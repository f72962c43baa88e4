use proptest::prelude::*;
use yangian_forge::geom::*;
use yangian_forge::ratfun::{Scalar, Q};

fn z() -> Scalar {
    Scalar::sym("z")
}

#[test]
fn psi_one_framing_vector() {
    let s = psi_eigen_series(&ChernData::symbolic(0, [0, 0, 1]), 3);
    let (h3, mu) = (Scalar::h3(), Scalar::sym("mu3_1"));
    assert_eq!(s, vec![Scalar::one(), h3.clone(), &h3 * &mu, &h3 * &mu * &mu]);
    assert_eq!(psi_eigen_series(&ChernData::symbolic(0, [0, 0, 0]), 4), vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()]);
}

#[test]
fn psi_one_root() {
    // prod_i (w - h_i)/(w + h_i) = 1 - 2 s3 / (w^3 + s2 w + s3), w = z - lam
    let s = psi_eigen_series(&ChernData::symbolic(1, [0, 0, 0]), 4);
    let s3 = Scalar::sigma3();
    assert!(s[1].is_zero() && s[2].is_zero());
    assert_eq!(s[3], Scalar::int(-2) * &s3);
    assert_eq!(s[4], Scalar::int(-6) * &s3 * Scalar::sym("lam1"));
    assert_eq!(cartan_conj_factor(&[Scalar::sym("nu1")], 3)[3], Scalar::int(-2) * s3);
}

#[test]
fn psi_rational_closed_form() {
    let cd = ChernData::symbolic(1, [0, 0, 1]);
    let (lam, mu) = (Scalar::sym("lam1"), Scalar::sym("mu3_1"));
    let z = z();
    let mut want = (&z - &mu + Scalar::h3()) / (&z - &mu);
    for i in 1..=3 {
        let h = Scalar::hbar(i);
        want = want * (&z - &lam - &h) / (&z - &lam + &h);
    }
    assert_eq!(psi_rational(&cd, &z), want);
}

#[test]
fn fl_examples() {
    assert!(check_fl(1, 0, [0, 0, 1], 4).passed());
    assert!(check_fl(0, 2, [1, 0, 0], 3).passed());
    assert!(check_fl(2, 1, [1, 0, 0], 3).passed());
}

#[test]
fn euler_switch_examples() {
    assert!(check_euler_switch(1, [1, 0, 0]).passed());
    assert!(check_euler_switch(2, [0, 1, 1]).passed());
    let cd = ChernData::symbolic(0, [0, 0, 0]);
    let lam = Scalar::sym("lam");
    assert_eq!(euler_switch_lhs(&cd, &lam), Scalar::one());
    assert_eq!(euler_switch_rhs(&cd, &lam), Scalar::one());
}

#[test]
fn class_arithmetic() {
    let a = KClass::from_weights(&[Scalar::h1(), Scalar::sym("q1")], 1);
    assert_eq!(a.rank(), 2);
    assert!(a.sub(&a).is_zero());
    assert_eq!(q_antisym(&a).rank(), 0);
    let hom = KClass::hom(&a, &a);
    assert_eq!(hom.rank(), 4);
    assert_eq!(a.lambda_at(&z()), (z() - Scalar::h1()) * (z() - Scalar::sym("q1")));
    assert_eq!(a.eu(), Scalar::h1() * Scalar::sym("q1"));
}

#[test]
fn critical_examples() {
    assert!(check_critical(&QuiverRep::zero(3, [1, 1, 1])));
    assert!(check_critical(&partition_module(3, &[2, 1])));
    assert!(check_critical(&rank_one_correction()));
    assert!(!check_critical(&off_critical_witness()));
}

#[test]
fn stability_examples() {
    let mut q = QuiverRep::zero(1, [0, 0, 1]);
    q.i12 = Mat::from_ints(&[&[1]], 1);
    assert!(stab_n(&q) && stab_d(&q));
    assert!(!stab_n(&QuiverRep::zero(2, [1, 1, 1])));
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/jordan_n3.json")).unwrap();
    let j = QuiverRep::from_json(&src).unwrap();
    assert!(check_critical(&j) && stab_d(&j));
    assert_eq!(j.stab_d_dim(), 3);
}

#[test]
fn json_errors() {
    assert!(matches!(QuiverRep::from_json("{\"n\":1,\"r\":[0,0,1],\"B9\":[]}"), Err(GeomError::Json(_))));
    assert!(matches!(
        QuiverRep::from_json("{\"n\":2,\"r\":[0,0,1],\"I12\":[[\"1\"]]}"),
        Err(GeomError::Shape { .. })
    ));
    assert!(matches!(
        QuiverRep::from_json("{\"n\":1,\"r\":[0,0,1],\"I12\":[[\"x\"]]}"),
        Err(GeomError::Entry { .. })
    ));
    let q = QuiverRep::from_json("{\"n\":1,\"r\":[0,0,1],\"B1\":[[\"-3/4\"]],\"I12\":[[\"1\"]]}").unwrap();
    assert_eq!(*q.b[0].get(0, 0), Q::new(-3, 4));
    assert_eq!(QuiverRep::from_json(&q.to_json()).unwrap(), q);
}

#[test]
fn library_and_witness() {
    for (name, q) in sample_library() {
        assert!(check_stability_instance(&name, &q).passed(), "{name}");
    }
    assert!(check_witness().passed());
}

fn neg(m: &Mat) -> Mat {
    Mat::zeros(m.rows(), m.cols()).sub(m)
}

/// `(I + N)^-1 = sum_k (-N)^k` for nilpotent `N`.
fn unipotent_inverse(u: &Mat) -> Mat {
    let n = u.rows();
    let minus_nil = neg(&u.sub(&Mat::identity(n)));
    let (mut acc, mut p) = (Mat::identity(n), Mat::identity(n));
    for _ in 1..n {
        p = p.mul(&minus_nil);
        acc = acc.add(&p);
    }
    acc
}

fn triangular(n: usize, vals: &[i64], lower: bool) -> Mat {
    let mut m = Mat::identity(n);
    let mut it = vals.iter().cycle();
    for i in 0..n {
        for j in 0..n {
            if (lower && i > j) || (!lower && i < j) {
                m.set(i, j, Q::int(*it.next().unwrap()));
            }
        }
    }
    m
}

fn conjugate(q: &QuiverRep, g: &Mat, gi: &Mat) -> QuiverRep {
    let mut o = q.clone();
    o.b = [0, 1, 2].map(|k| g.mul(&q.b[k]).mul(gi));
    o.i12 = g.mul(&q.i12);
    o.i13 = g.mul(&q.i13);
    o.i23 = g.mul(&q.i23);
    o.j12 = q.j12.mul(gi);
    o.j13 = q.j13.mul(gi);
    o.j23 = q.j23.mul(gi);
    o
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gauge_invariance(idx in 0usize..30, vals in prop::collection::vec(-2i64..=2, 1..6)) {
        let lib = sample_library();
        let (name, q) = &lib[idx % lib.len()];
        let n = q.n;
        let (l, u) = (triangular(n, &vals, true), triangular(n, &vals, false));
        let g = l.mul(&u);
        let gi = unipotent_inverse(&u).mul(&unipotent_inverse(&l));
        prop_assert_eq!(g.mul(&gi), Mat::identity(n));
        let c = conjugate(q, &g, &gi);
        prop_assert!(check_critical(&c), "{}", name);
        prop_assert_eq!(c.stab_n_dim(), q.stab_n_dim());
        prop_assert_eq!(c.stab_d_dim(), q.stab_d_dim());
    }

    #[test]
    fn generic_data_is_off_critical(entries in prop::collection::vec(1i64..=5, 4 * 3 + 2 * 2)) {
        // positive B3 and I12 make B3 I12 nonzero
        let mut q = QuiverRep::zero(2, [0, 0, 1]);
        let mut it = entries.into_iter();
        for k in 0..3 {
            for i in 0..2 {
                for j in 0..2 {
                    q.b[k].set(i, j, Q::int(it.next().unwrap()));
                }
            }
        }
        for i in 0..2 {
            q.i12.set(i, 0, Q::int(it.next().unwrap()));
            q.j12.set(0, i, Q::int(it.next().unwrap()));
        }
        prop_assert!(!check_critical(&q));
    }

    #[test]
    fn conj_factor_multiplicative(a in 1usize..3, b in 1usize..3) {
        let nus: Vec<Scalar> = (1..=a + b).map(|i| Scalar::sym(&format!("nu{i}"))).collect();
        let order = 5;
        let whole = cartan_conj_factor(&nus, order);
        let split = series_product(&cartan_conj_factor(&nus[..a], order), &cartan_conj_factor(&nus[a..], order));
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn fl_random(n1 in 0usize..3, n2 in 0usize..2, r in prop::sample::select(vec![[0usize, 0, 1], [1, 0, 0], [0, 1, 1], [1, 1, 1]])) {
        prop_assert!(check_fl(n1, n2, r, 4).passed());
    }
}
