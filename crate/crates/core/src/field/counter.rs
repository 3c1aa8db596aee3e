use std::sync::atomic::{AtomicU64, Ordering};

/// Counts of semantic field operations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct OpCounts {
    pub add: u64,
    pub mul: u64,
    pub inv: u64,
}

impl OpCounts {
    pub fn total(&self) -> u64 {
        self.add + self.mul + self.inv
    }
}

/// Shared counter of field operations.
///
/// Subtractions count as additions. Negation and conjugation are free.
#[derive(Debug, Default)]
pub struct OpCounter {
    add: AtomicU64,
    mul: AtomicU64,
    inv: AtomicU64,
}

impl OpCounter {
    pub fn record_add(&self, n: u64) {
        self.add.fetch_add(n, Ordering::Relaxed);
    }

    pub fn record_mul(&self, n: u64) {
        self.mul.fetch_add(n, Ordering::Relaxed);
    }

    pub fn record_inv(&self, n: u64) {
        self.inv.fetch_add(n, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> OpCounts {
        OpCounts {
            add: self.add.load(Ordering::Relaxed),
            mul: self.mul.load(Ordering::Relaxed),
            inv: self.inv.load(Ordering::Relaxed),
        }
    }

    pub fn reset(&self) {
        self.add.store(0, Ordering::Relaxed);
        self.mul.store(0, Ordering::Relaxed);
        self.inv.store(0, Ordering::Relaxed);
    }
}
