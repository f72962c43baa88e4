//! Free bosons, charge-sector Fock modules, composite field modes and vertex operators.
//!
//! Operators are evaluated lazily on basis states and memoized, so composite
//! fields nested several levels deep stay cheap on low levels. A
//! [`TruncatedOperator`] is the materialized matrix on levels `0..=N`.

mod engine;
mod expr;
mod matrix;
mod state;

pub use engine::{derivative_factor, Engine, Field, Op, SectorId};
pub use expr::{ModeMono, NormalOrderedExpr};
pub use matrix::{commutator_matrix, Block, TruncatedOperator};
pub use state::{basis, partitions, FockVector, Part, State};

use crate::ratfun::Scalar;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("operator expects charge sector {expected}, got {got}")]
    ChargeMismatch { expected: String, got: String },
    #[error("z-exponent {0} is not an integer in this sector")]
    NonIntegralExponent(String),
    #[error("truncation at level {have} cannot hold gradings {ga} and {gb}")]
    TruncationInsufficient { have: usize, ga: i64, gb: i64 },
    #[error("field has no definite conformal weight")]
    NoWeight,
}

/// The mode factor in `[b_m, b_n]`.
///
/// `Paper` drops the factor `m` (only its sign is kept, as antisymmetry
/// requires); `Standard` is the usual Heisenberg normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NormMode {
    #[default]
    Standard,
    Paper,
}

impl NormMode {
    pub fn kappa(self, m: i64) -> i64 {
        match self {
            NormMode::Standard => m,
            NormMode::Paper => m.signum(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NormMode::Standard => "standard",
            NormMode::Paper => "paper",
        }
    }

    pub fn parse(s: &str) -> Option<NormMode> {
        match s {
            "standard" => Some(NormMode::Standard),
            "paper" => Some(NormMode::Paper),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BosonSpec {
    /// Which `h_k` sets the norm, `k` in 1..=3.
    pub color: u8,
}

/// An ordered list of bosons and a normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct FockSpace {
    pub bosons: Vec<BosonSpec>,
    pub mode: NormMode,
    norms: Vec<Scalar>,
}

impl FockSpace {
    pub fn new(colors: &[u8], mode: NormMode) -> FockSpace {
        assert!(colors.iter().all(|c| (1..=3).contains(c)), "colors are 1, 2, 3");
        let bosons: Vec<BosonSpec> = colors.iter().map(|&color| BosonSpec { color }).collect();
        let norms = bosons.iter().map(|b| norm(b.color)).collect();
        FockSpace { bosons, mode, norms }
    }

    /// Bosons in screening order: `r3` of color 3, then `r2` of color 2, then `r1` of color 1.
    pub fn screening_order(r1: usize, r2: usize, r3: usize, mode: NormMode) -> FockSpace {
        let mut c = vec![3u8; r3];
        c.extend(std::iter::repeat_n(2, r2));
        c.extend(std::iter::repeat_n(1, r1));
        FockSpace::new(&c, mode)
    }

    pub fn len(&self) -> usize {
        self.bosons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bosons.is_empty()
    }

    /// `-h_k / (h1 h2 h3)` for the boson's color.
    pub fn norm(&self, i: usize) -> &Scalar {
        &self.norms[i]
    }

    /// Position of the `k`-th boson (0-based) of the given color.
    pub fn find(&self, color: u8, k: usize) -> Option<usize> {
        self.bosons.iter().enumerate().filter(|(_, b)| b.color == color).nth(k).map(|(i, _)| i)
    }

    /// `[b^(i)_m, b^(j)_n]`.
    pub fn commutator(&self, i: usize, m: i64, j: usize, n: i64) -> Scalar {
        if i != j || m + n != 0 {
            return Scalar::zero();
        }
        self.norms[i].clone() * Scalar::int(self.mode.kappa(m))
    }
}

pub fn norm(color: u8) -> Scalar {
    -(Scalar::hbar(color as usize) / Scalar::sigma3())
}

/// `[b_m, b_n]` for bosons given by (color, index).
pub fn commutator(a: (u8, usize), m: i64, b: (u8, usize), n: i64, mode: NormMode) -> Scalar {
    if a != b || m + n != 0 {
        return Scalar::zero();
    }
    norm(a.0) * Scalar::int(mode.kappa(m))
}

/// Momenta of a sector as text, e.g. `(0, 1/h2)`.
pub fn sector_label(p: &[Scalar]) -> String {
    engine::sector_text(p)
}

/// `(d^n F)_m` as an operator.
pub fn derivative_mode(f: &Field, n: u32, m: i64) -> Op {
    Op::mode(&f.d(n), m)
}

/// `(AB)_m` on levels `0..=n` of sector `sec`.
pub fn product_mode(e: &Engine, a: &Field, b: &Field, m: i64, sec: SectorId, n: usize) -> TruncatedOperator {
    e.truncate(&Op::mode(&a.nop(b), m), sec, n)
}

/// Exponent `e = -sum alpha_i p_i` of the zero-mode factor of `V[alpha](z)` on `F_p`.
pub fn zero_mode_exponent(alpha: &[Scalar], momenta: &[Scalar]) -> Scalar {
    -alpha.iter().zip(momenta).map(|(a, p)| a * p).sum::<Scalar>()
}

/// The coefficient of `z^(-m - offset)` in `V[alpha](z)` acting on sector `sec`.
pub fn vertex_mode_op(e: &Engine, alpha: &[Scalar], offset: &Scalar, m: i64, sec: SectorId) -> Result<Op, FockError> {
    let ex = zero_mode_exponent(alpha, &e.momenta(sec));
    let j = -(Scalar::int(m) + offset + ex);
    let j = j.as_integer().ok_or_else(|| FockError::NonIntegralExponent(j.to_text()))?;
    Ok(Op::vertex(e.space(), alpha, j))
}

pub fn vertex_mode(
    e: &Engine,
    alpha: &[Scalar],
    offset: &Scalar,
    m: i64,
    sec: SectorId,
    n: usize,
) -> Result<TruncatedOperator, FockError> {
    Ok(e.truncate(&vertex_mode_op(e, alpha, offset, m, sec)?, sec, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boson_norms() {
        let c = commutator((3, 0), 1, (3, 0), -1, NormMode::Paper);
        assert_eq!(c, -(Scalar::h1() * Scalar::h2()).inv());
        assert!(commutator((3, 0), 1, (3, 1), -1, NormMode::Paper).is_zero());
        assert!(commutator((3, 0), 2, (3, 0), -1, NormMode::Standard).is_zero());
        let s = commutator((2, 0), 3, (2, 0), -3, NormMode::Standard);
        assert_eq!(s, norm(2) * Scalar::int(3));
        assert_eq!(commutator((2, 0), -3, (2, 0), 3, NormMode::Paper), -norm(2));
    }
}
