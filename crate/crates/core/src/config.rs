//! Process-wide search limits.
//!
//! The enumeration engines are exponential. Each limit bounds one of them and
//! turns a runaway search into an [`Error::Cap`](crate::Error::Cap).

use std::sync::atomic::{AtomicU64, Ordering};

static MAX_TOTAL_SIZE: AtomicU64 = AtomicU64::new(24);
static MAX_LABELINGS: AtomicU64 = AtomicU64::new(5_000_000);
static HILBERT_BOUND: AtomicU64 = AtomicU64::new(64);

/// Largest |α| accepted by the Schur-root and canonical-decomposition searches.
pub fn max_total_size() -> i64 {
    MAX_TOTAL_SIZE.load(Ordering::Relaxed) as i64
}

pub fn set_max_total_size(v: u64) {
    MAX_TOTAL_SIZE.store(v, Ordering::Relaxed);
}

/// Maximum number of arrow labelings visited by one `si_dim` call.
pub fn max_labelings() -> u64 {
    MAX_LABELINGS.load(Ordering::Relaxed)
}

pub fn set_max_labelings(v: u64) {
    MAX_LABELINGS.store(v, Ordering::Relaxed);
}

/// Largest per-vertex box bound tried by the Hilbert-basis search.
pub fn hilbert_bound() -> i64 {
    HILBERT_BOUND.load(Ordering::Relaxed) as i64
}

pub fn set_hilbert_bound(v: u64) {
    HILBERT_BOUND.store(v, Ordering::Relaxed);
}
