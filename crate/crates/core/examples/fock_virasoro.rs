//! W2 of the two-boson algebra closes into a Virasoro algebra only with the
//! standard mode factor in [b_m, b_n].

use yangian_forge::fock::NormMode;
use yangian_forge::walg::{build_w002, check_virasoro};

fn main() {
    for mode in [NormMode::Standard, NormMode::Paper] {
        let (c, _) = check_virasoro(&build_w002(mode), 3, 4);
        println!("{:<9} {}  {}", mode.name(), c.status.label(), c.detail.unwrap_or_default());
    }
}
