//! Run a suite programmatically and print its JSON report.

use yangian_forge::cli::{run_suite, RunParams, Suite};

fn main() {
    let mut p = RunParams::default();
    p.shuffle.y1_max = 2;
    let r = run_suite(Suite::Yangian, &p).expect("parameters in range");
    print!("{}", r.to_json());
}
