//! Exact genus-zero Gromov-Witten engine.
//!
//! Correlators are normalized by the axioms (effectivity, grading, fundamental class,
//! divisor), assembled into the truncated potential and big quantum product, checked
//! against WDVV, and reconstructed from three-point seeds by WDVV induction.

pub mod algebra;
pub mod bundled;
pub mod correlators;
pub mod quantum;
pub mod reconstruct;
pub mod target;

pub use algebra::{Cutoff, Monomial, Rational, Sign, SignRule, TruncatedSeries};
pub use correlators::{CorrelatorKey, CorrelatorTable, Provenance, TableFormat};
pub use quantum::{build_potential, Potential, QuantumElement};
pub use reconstruct::{Reconstructor, ReconstructError};
pub use target::{GwTarget, ValidationReport};

/// Any failure surfaced by the engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Target(#[from] target::TargetError),
    #[error(transparent)]
    TargetFile(#[from] target::TargetFileError),
    #[error(transparent)]
    Correlator(#[from] correlators::CorrelatorError),
    #[error(transparent)]
    Table(#[from] correlators::TableFileError),
    #[error(transparent)]
    Quantum(#[from] quantum::QuantumError),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
}
