//! Fixed-point class formulas in symbolic Chern roots.

use yangian_forge::geom::{cartan_conj_factor, check_euler_switch, check_fl, psi_eigen_series, ChernData};
use yangian_forge::ratfun::Scalar;

fn main() {
    let cd = ChernData::symbolic(0, [0, 0, 1]);
    for (i, c) in psi_eigen_series(&cd, 3).iter().enumerate() {
        println!("psi [z^-{i}] = {c}");
    }
    let conj = cartan_conj_factor(&[Scalar::sym("nu1")], 4);
    println!("one-root conjugation factor, z^-3: {}", conj[3]);
    for c in [check_fl(2, 1, [1, 0, 0], 4), check_euler_switch(2, [0, 1, 1])] {
        println!("{:<6} {}", c.status.label(), c.id);
    }
}
