//! Load a quiver representation from JSON and test the critical locus and stability.
//!
//!     cargo run --example quiver_stability -- crates/core/examples/data/jordan_n3.json

use yangian_forge::geom::{check_critical, off_critical_witness, stab_d, stab_n, QuiverRep};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/jordan_n3.json").into());
    let src = std::fs::read_to_string(&path).expect("readable file");
    let q = QuiverRep::from_json(&src).expect("valid quiver JSON");
    println!("{path}: n = {}, r = {:?}", q.n, q.r);
    println!("critical {}  stab_N {}  stab_D {}", check_critical(&q), stab_n(&q), stab_d(&q));

    let w = off_critical_witness();
    println!("witness: critical {}  stab_N {}  stab_D {}", check_critical(&w), stab_n(&w), stab_d(&w));
}
