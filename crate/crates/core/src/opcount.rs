//! Operation counters for the transform machinery.
//!
//! Counts F_p multiplications, recursive transform descents, executed
//! Cooley–Tukey layers, and base-case hits. Each thread increments its own
//! registered cell, so the hot path never contends on a shared cache line;
//! `snapshot` sums over every thread that has ever counted.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Default)]
struct Cells {
    fp_mults: AtomicU64,
    recursions: AtomicU64,
    layers: AtomicU64,
    base_cases: AtomicU64,
}

fn registry() -> &'static Mutex<Vec<Arc<Cells>>> {
    static REGISTRY: OnceLock<Mutex<Vec<Arc<Cells>>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(Vec::new()))
}

thread_local! {
    static LOCAL: Arc<Cells> = {
        let cells = Arc::new(Cells::default());
        registry().lock().unwrap().push(Arc::clone(&cells));
        cells
    };
}

/// Totals since the last `reset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Snapshot {
    pub fp_mults: u64,
    pub recursions: u64,
    pub layers: u64,
    pub base_cases: u64,
}

#[inline]
pub(crate) fn count_fp_mult() {
    LOCAL.with(|c| c.fp_mults.fetch_add(1, Ordering::Relaxed));
}

#[inline]
pub(crate) fn count_fp_mults(n: u64) {
    LOCAL.with(|c| c.fp_mults.fetch_add(n, Ordering::Relaxed));
}

pub(crate) fn count_recursion() {
    LOCAL.with(|c| c.recursions.fetch_add(1, Ordering::Relaxed));
}

pub(crate) fn count_layers(n: u64) {
    LOCAL.with(|c| c.layers.fetch_add(n, Ordering::Relaxed));
}

pub(crate) fn count_base_case() {
    LOCAL.with(|c| c.base_cases.fetch_add(1, Ordering::Relaxed));
}

/// This thread's counts only. Other threads never write these cells, so
/// before/after deltas are exact even while tests run in parallel.
pub fn local_snapshot() -> Snapshot {
    LOCAL.with(|c| Snapshot {
        fp_mults: c.fp_mults.load(Ordering::Relaxed),
        recursions: c.recursions.load(Ordering::Relaxed),
        layers: c.layers.load(Ordering::Relaxed),
        base_cases: c.base_cases.load(Ordering::Relaxed),
    })
}

/// Sums counters across all threads.
pub fn snapshot() -> Snapshot {
    let mut out = Snapshot::default();
    for cells in registry().lock().unwrap().iter() {
        out.fp_mults += cells.fp_mults.load(Ordering::Relaxed);
        out.recursions += cells.recursions.load(Ordering::Relaxed);
        out.layers += cells.layers.load(Ordering::Relaxed);
        out.base_cases += cells.base_cases.load(Ordering::Relaxed);
    }
    out
}

/// Zeroes every counter on every thread.
pub fn reset() {
    for cells in registry().lock().unwrap().iter() {
        cells.fp_mults.store(0, Ordering::Relaxed);
        cells.recursions.store(0, Ordering::Relaxed);
        cells.layers.store(0, Ordering::Relaxed);
        cells.base_cases.store(0, Ordering::Relaxed);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Counter tests share global state with every other test in the process,
    // so they assert monotone deltas rather than absolute values.
    #[test]
    fn increments_are_visible_and_monotone() {
        let before = snapshot();
        count_fp_mult();
        count_fp_mults(4);
        count_recursion();
        count_layers(3);
        count_base_case();
        let after = snapshot();
        assert!(after.fp_mults >= before.fp_mults + 5);
        assert!(after.recursions >= before.recursions + 1);
        assert!(after.layers >= before.layers + 3);
        assert!(after.base_cases >= before.base_cases + 1);
    }

    #[test]
    fn other_threads_counts_are_summed() {
        let before = snapshot();
        std::thread::spawn(|| count_fp_mults(10)).join().unwrap();
        let after = snapshot();
        assert!(after.fp_mults >= before.fp_mults + 10);
    }
}
