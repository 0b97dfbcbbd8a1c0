//! Shared fixtures for the benchmarks.

use gwzero_core::reconstruct::Reconstructor;
use gwzero_core::{CorrelatorTable, GwTarget};

/// Exhaustive table of `t` up to the given cutoff.
pub fn table(t: &GwTarget, max_c1: i64, max_n: usize) -> CorrelatorTable {
    let mut r = Reconstructor::new(t).expect("reconstructible target");
    r.run(max_c1, max_n).expect("seeds present");
    r.into_table()
}
