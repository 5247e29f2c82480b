//! Membership tests, distinguished boundaries and structured singular values
//! for a family of domains in `ℂⁿ` built from 2×2 contractions: the
//! symmetrized bidisc, tetrablock, pentablock, hexablock, the domain `F` and
//! the Lie ball `L₄`.

pub mod classical;
pub mod cli;
pub mod domain_f;
pub mod error;
pub mod harness;
pub mod hexablock;
pub mod lie;
pub mod matrix;
pub mod mu;
pub mod optimize;
pub mod verdict;

pub use error::{Error, Result};
pub use matrix::{Matrix2, C64};
pub use verdict::{MembershipVerdict, Region};

/// Width of the band around a boundary inside which strict inequalities
/// are not trusted.
pub const DEFAULT_TOL: f64 = 1e-9;
