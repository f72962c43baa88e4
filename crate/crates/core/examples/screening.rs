//! Screening currents: weight calibration and the kernel on W-descendants.

use yangian_forge::fock::NormMode;
use yangian_forge::walg::{build, calibrate_screening, kernel_check, raw_boson_control, screening_set};

fn main() {
    for (r1, r2, r3) in [(0, 0, 2), (0, 1, 1)] {
        let w = build((r1, r2, r3), NormMode::Standard).expect("supported configuration");
        for s in screening_set(r1, r2, r3) {
            let offset = calibrate_screening(&s, &w, 3).expect("weight one");
            println!("{} on W{}: offset {offset}", s.label, w.label());
            for c in [kernel_check(&s, &w, 3, None), raw_boson_control(&s, &w)] {
                println!("  {:<6} {}  residual {}", c.status.label(), c.id, c.residual);
            }
        }
    }
}
