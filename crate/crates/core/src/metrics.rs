//! Per-thread instrumentation counters.
//!
//! Every constructor in [`crate::tree`] that materializes a level sequence
//! records how many entries it wrote. Generators run on the calling thread,
//! so a reset/read pair around a run measures exactly that run.

use std::cell::Cell;

thread_local! {
    static VERTEX_WRITES: Cell<u64> = const { Cell::new(0) };
}

pub(crate) fn record_writes(count: usize) {
    VERTEX_WRITES.with(|w| w.set(w.get() + count as u64));
}

/// Level-sequence entries written on this thread since the last reset.
pub fn vertex_writes() -> u64 {
    VERTEX_WRITES.with(Cell::get)
}

pub fn reset_vertex_writes() {
    VERTEX_WRITES.with(|w| w.set(0));
}
