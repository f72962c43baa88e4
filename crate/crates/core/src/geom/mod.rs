//! Equivariant class formulas in symbolic Chern roots, and a finite checker
//! for the quiver equations and stability conditions.

mod classes;
mod quiver;
mod samples;

pub use classes::{
    cartan_conj_factor, check_euler_switch, check_fl, euler_switch_lhs, euler_switch_rhs, f_class, psi_eigen_series, psi_rational, q_antisym, series_product, ChernData, KClass,
};
pub use quiver::{check_critical, closure_dim, stab_d, stab_n, Mat, QuiverRep};
pub use samples::{check_stability_instance, check_witness, diagonal_module, off_critical_witness, partition_module, rank_one_correction, sample_library};

use crate::report::{Check, VerificationReport};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("invalid quiver JSON: {0}")]
    Json(String),
    #[error("{field} has shape {found:?}, expected {expected:?}")]
    Shape { field: String, expected: (usize, usize), found: (usize, usize) },
    #[error("{field}: cannot read {value:?} as a rational number")]
    Entry { field: String, value: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomParams {
    /// `check_fl` runs for all `n1 + n2 <= fl_n`.
    pub fl_n: usize,
    /// `check_euler_switch` runs for all `n <= euler_n`.
    pub euler_n: usize,
    pub rs: Vec<[usize; 3]>,
    pub order: usize,
    pub library: bool,
}

impl Default for GeomParams {
    fn default() -> Self {
        GeomParams { fl_n: 3, euler_n: 2, rs: vec![[0, 0, 1], [1, 0, 0], [1, 1, 0], [1, 1, 1]], order: 5, library: true }
    }
}

/// FL and Euler-switch checks for the parameter grid.
pub fn class_checks(p: &GeomParams) -> Vec<Check> {
    let mut jobs: Vec<(usize, usize, [usize; 3], bool)> = Vec::new();
    for &r in &p.rs {
        for n in 0..=p.fl_n {
            for n1 in 0..=n {
                jobs.push((n1, n - n1, r, true));
            }
        }
        for n in 0..=p.euler_n {
            jobs.push((n, 0, r, false));
        }
    }
    jobs.into_par_iter()
        .map(|(a, b, r, fl)| if fl { check_fl(a, b, r, p.order) } else { check_euler_switch(a, r) })
        .collect()
}

/// Stability equivalence on the sample library plus the off-critical witness.
pub fn stability_checks() -> Vec<Check> {
    let mut v: Vec<Check> = sample_library().par_iter().map(|(name, q)| check_stability_instance(name, q)).collect();
    v.push(check_witness());
    v
}

pub fn geom_suite(p: &GeomParams) -> VerificationReport {
    let mut checks = class_checks(p);
    if p.library {
        checks.extend(stability_checks());
    }
    let rs: Vec<String> = p.rs.iter().map(|r| format!("{},{},{}", r[0], r[1], r[2])).collect();
    let mut rep = VerificationReport::new("geom", checks);
    rep.params.insert("fl_n".into(), p.fl_n.to_string());
    rep.params.insert("euler_n".into(), p.euler_n.to_string());
    rep.params.insert("order".into(), p.order.to_string());
    rep.params.insert("r".into(), rs.join(" "));
    rep
}
