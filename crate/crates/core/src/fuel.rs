//! A global budget on evaluation steps, so runaway normalisation can be cut off.

use core::sync::atomic::{AtomicU64, Ordering};

static LIMIT: AtomicU64 = AtomicU64::new(u64::MAX);
static USED: AtomicU64 = AtomicU64::new(0);

/// Panic message used when the budget runs out.
pub const EXHAUSTED: &str = "evaluation step limit exceeded";

/// Sets the budget and resets the counter; `None` removes the limit.
pub fn set_limit(limit: Option<u64>) {
    LIMIT.store(limit.unwrap_or(u64::MAX), Ordering::Relaxed);
    USED.store(0, Ordering::Relaxed);
}

pub fn used() -> u64 {
    USED.load(Ordering::Relaxed)
}

#[inline]
pub fn tick() {
    if USED.fetch_add(1, Ordering::Relaxed) >= LIMIT.load(Ordering::Relaxed) {
        panic!("{}", EXHAUSTED);
    }
}
