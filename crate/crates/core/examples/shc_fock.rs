//! SH^c on one boson of color 3: relations, G values and the Yangian map.

use yangian_forge::ratfun::Scalar;
use yangian_forge::shc::{check_relations_on_rep, fock_rep, YangianMap};

fn main() {
    let rep = fock_rep(3, Scalar::sym("mu3_1"), 3, 3);
    let e = rep.engine();
    let vac = e.vacuum();
    for l in 0..=3 {
        let g = e.apply_state(&rep.g(l), rep.sector(), &vac).coeff(&vac);
        println!("G_{l} |0> = ({g}) |0>");
    }
    let checks = check_relations_on_rep(&rep, 3, 3, YangianMap::Signed);
    let failed: Vec<_> = checks.iter().filter(|c| c.failed()).map(|c| c.id.as_str()).collect();
    println!("{} relation checks, failed: {failed:?}", checks.len());
}
