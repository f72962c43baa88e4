//! Exact symbolic checks for the affine Yangian of gl(1): its shuffle model,
//! the centrally extended algebra SH^c with Fock representations, free-field
//! W-algebras with screening currents, and equivariant class formulas on
//! spiked-instanton moduli.

pub mod cli;
pub mod fock;
pub mod geom;
pub mod ratfun;
pub mod report;
pub mod shc;
pub mod shuffle;
pub mod walg;
