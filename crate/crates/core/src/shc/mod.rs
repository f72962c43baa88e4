//! The centrally extended algebra SH^c: generating functions, formal words,
//! the coproduct on the generating set, and Fock representations.

mod formal;
mod rep;
mod rewrite;
mod series;

pub use formal::{b_element, coassociativity, coproduct_c, SHElement, SHGenerator, SHTensor, Word};
pub use rep::{
    check_coassociativity, check_heisenberg, check_vacuum_psi, check_relations_on_rep, check_tensor_f01, display_two_boson_f01, f01_expr, fock_rep, shc_suite, tensor_rep, Factor, ShcParams,
    SHRepresentation, YangianMap, ZeroModeConvention,
};
pub use rewrite::{check_rewriting, rewriting_residual, RewriteChain};
pub use series::{central_series, phi_coeffs, phi_series, big_phi_coeffs, series_exp, series_mul, specialize_r, CentralValues};

use crate::fock::FockError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShcError {
    #[error("no coproduct formula for {0}; only c(k,l), B_l and f(0,1) are in the generating set")]
    UnsupportedGenerator(String),
    #[error(transparent)]
    Fock(#[from] FockError),
}
