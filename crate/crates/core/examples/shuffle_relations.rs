//! Yangian relations in the shuffle model.

use yangian_forge::shuffle::{check_commutator_closed_form, check_serre, check_y1, check_y4_conjugation, e_gen, shuffle_mul};

fn main() {
    let p = shuffle_mul(&e_gen(1), &e_gen(0)).expect("degree 2");
    println!("e1 * e0 = {p}");
    for c in [check_y1(1, 2), check_serre(0, 1, 2), check_commutator_closed_form(2, 3), check_y4_conjugation(2, 4)] {
        println!("{:<6} {}  residual {}", c.status.label(), c.id, c.residual);
    }
}
