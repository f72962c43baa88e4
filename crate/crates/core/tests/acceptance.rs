//! The thirteen acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 9 is expected to fail: the printed subtraction chain leaves an
//! off-diagonal residual. The process exits nonzero only if some outcome
//! differs from that expectation.

use std::process::ExitCode;
use std::time::{Duration, Instant};
use yangian_forge::cli::{run_suite, RunParams, Suite};
use yangian_forge::fock::NormMode;
use yangian_forge::geom::{class_checks, sample_library, stability_checks, GeomParams};
use yangian_forge::report::{Check, Status};
use yangian_forge::shc::{check_relations_on_rep, check_rewriting, check_tensor_f01, fock_rep, RewriteChain, YangianMap};
use yangian_forge::shuffle::{check_commutator_closed_form, check_serre, check_y1, check_y4_conjugation};
use yangian_forge::ratfun::Scalar;
use yangian_forge::walg::{
    build, build_w002, build_w011, check_null_field, check_virasoro, check_zhu, generic_momenta, kernel_check, raw_boson_control,
    screening_set,
};

struct Outcome {
    pass: bool,
    note: String,
}

/// All checks must pass; the note names the first that does not.
fn all_pass(checks: &[Check]) -> Outcome {
    match checks.iter().find(|c| !c.passed()) {
        None => Outcome { pass: true, note: format!("{} checks", checks.len()) },
        Some(c) => Outcome { pass: false, note: format!("{}: {} {}", c.id, c.residual, c.detail.clone().unwrap_or_default()) },
    }
}

fn c1() -> Outcome {
    let mut v = Vec::new();
    for i in 0..=4 {
        for j in 0..=4 {
            v.push(check_y1(i, j));
        }
    }
    for a in 0..=2 {
        for b in 0..=2 {
            for c in 0..=2 {
                v.push(check_serre(a, b, c));
            }
        }
    }
    all_pass(&v)
}

fn c2() -> Outcome {
    let v: Vec<Check> = (0..=6).flat_map(|a| (0..=6).map(move |b| check_commutator_closed_form(a, b))).collect();
    all_pass(&v)
}

fn c3() -> Outcome {
    let v: Vec<Check> = (0..=4).map(|j| check_y4_conjugation(j, 6)).collect();
    all_pass(&v)
}

fn c4() -> Outcome {
    let (std, c) = check_virasoro(&build_w002(NormMode::Standard), 3, 4);
    let (paper, _) = check_virasoro(&build_w002(NormMode::Paper), 3, 4);
    let pass = std.passed() && c.is_some() && paper.failed();
    let c = c.map(|c| c.to_text()).unwrap_or_else(|| "-".into());
    Outcome { pass, note: format!("standard: {}, c = {c}; paper: {}", std.status.label(), paper.status.label()) }
}

fn c5() -> Outcome {
    let w = build_w011(NormMode::Standard);
    let null = check_null_field(&w, 4, Scalar::int(128));
    let control = check_null_field(&w, 2, Scalar::int(127));
    Outcome {
        pass: null.passed() && control.failed(),
        note: format!("k=128: {} ({}); k=127: {} ({})", null.status.label(), null.residual, control.status.label(), control.residual),
    }
}

fn c6() -> Outcome {
    all_pass(&[check_zhu(NormMode::Standard)])
}

fn c7() -> Outcome {
    let rep = fock_rep(3, Scalar::sym("mu3_1"), 4, 4);
    all_pass(&check_relations_on_rep(&rep, 4, 4, YangianMap::Signed))
}

fn c8() -> Outcome {
    all_pass(&[check_tensor_f01(3)])
}

fn c9() -> Outcome {
    let lit = check_rewriting(RewriteChain::Literal, 3);
    let cor = check_rewriting(RewriteChain::Corrected, 3);
    Outcome {
        pass: lit.passed(),
        note: format!(
            "printed chain: {}; corrected chain: {} ({})",
            lit.detail.clone().unwrap_or_default(),
            cor.status.label(),
            cor.detail.clone().unwrap_or_default()
        ),
    }
}

fn c10() -> Outcome {
    let mut v = Vec::new();
    let mut skipped = 0;
    for cfg in [(0, 0, 2), (0, 1, 1)] {
        let w = build(cfg, NormMode::Standard).expect("supported configuration");
        for s in screening_set(cfg.0, cfg.1, cfg.2) {
            v.push(kernel_check(&s, &w, 3, None));
            v.push(raw_boson_control(&s, &w));
            let g = kernel_check(&s, &w, 1, Some(generic_momenta(w.space.len())));
            // generic charges: reported skipped with the reason, never passed
            match &g.status {
                Status::Skipped(r) if r.contains("not an integer") => skipped += 1,
                _ => v.push(g.outcome(false, "generic sector not skipped")),
            }
        }
    }
    let mut o = all_pass(&v);
    o.note.push_str(&format!(", {skipped} skipped (non-integral exponent)"));
    o
}

fn c11() -> Outcome {
    let p = GeomParams { fl_n: 3, euler_n: 2, rs: vec![[0, 0, 1], [1, 0, 0], [1, 1, 0], [1, 1, 1]], order: 5, library: false };
    all_pass(&class_checks(&p))
}

fn c12() -> Outcome {
    let lib = sample_library();
    if lib.len() < 20 || lib.iter().any(|(_, q)| q.n > 4) {
        return Outcome { pass: false, note: format!("library has {} instances", lib.len()) };
    }
    let mut o = all_pass(&stability_checks());
    o.note = format!("{} instances + witness; {}", lib.len(), o.note);
    o
}

fn c13() -> Outcome {
    let p = RunParams::default();
    let a = run_suite(Suite::All, &p).expect("valid defaults").to_json();
    let b = run_suite(Suite::All, &p).expect("valid defaults").to_json();
    Outcome { pass: a == b, note: format!("{} bytes", a.len()) }
}

/// Number, name, budget in seconds, expected outcome, body.
type Criterion = (u32, &'static str, u64, bool, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "shuffle Y1 and Serre", 30, true, c1),
        (2, "commutator closed form", 10, true, c2),
        (3, "Cartan conjugation", 10, true, c3),
        (4, "Virasoro calibration", 60, true, c4),
        (5, "W011 null field", 300, true, c5),
        (6, "Zhu constraint", 30, true, c6),
        (7, "SH^c relations on V001", 120, true, c7),
        (8, "coproduct vs free field", 120, true, c8),
        (9, "f(0,1) rewriting", 300, false, c9),
        (10, "screening kernels", 300, true, c10),
        (11, "geometry identities", 60, true, c11),
        (12, "stability equivalence", 30, true, c12),
        (13, "determinism", 600, true, c13),
    ];
    let mut unexpected = 0;
    for (n, name, budget, expected, f) in criteria {
        let t = Instant::now();
        let o = f();
        let dt = t.elapsed();
        let in_budget = dt <= Duration::from_secs(budget);
        let pass = o.pass && in_budget;
        let mut line = format!("{} criterion {n} {name} [{:.2}s / {budget}s] {}", if pass { "PASS" } else { "FAIL" }, dt.as_secs_f64(), o.note);
        if !in_budget {
            line.push_str(" (over budget)");
        }
        if pass != expected {
            unexpected += 1;
            line.push_str(" UNEXPECTED");
        } else if !pass {
            line.push_str(" (expected)");
        }
        println!("{line}");
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria deviate from the documented outcomes");
        ExitCode::FAILURE
    }
}
