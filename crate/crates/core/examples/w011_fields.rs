//! The W011 free-field generators: null field, highest-weight data and the Zhu constraint.

use yangian_forge::fock::NormMode;
use yangian_forge::ratfun::Scalar;
use yangian_forge::walg::{build_w011, check_null_field, check_zhu, hw_eigenvalues};

fn main() {
    let w = build_w011(NormMode::Standard);
    let (w1, w2, w3) = hw_eigenvalues(&Scalar::sym("q1"), &Scalar::sym("q2"));
    println!("w1 = {w1}\nw2 = {w2}\nw3 = {w3}");
    for c in [check_zhu(NormMode::Standard), check_null_field(&w, 2, Scalar::int(128)), check_null_field(&w, 2, Scalar::int(127))] {
        println!("{:<6} {}  residual {}", c.status.label(), c.id, c.residual);
    }
}
