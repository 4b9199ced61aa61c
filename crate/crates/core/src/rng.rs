//! Deterministic random streams.
//!
//! All randomness comes from ChaCha8 (`rand_chacha` 0.3) seeded with
//! `ChaCha8Rng::seed_from_u64`. The sampling primitives below are defined
//! here rather than borrowed from `rand` so that the exact number of 64-bit
//! words consumed per call is part of this crate's contract:
//!
//! * [`SimRng::next_f64`] takes one word: `(w >> 11) * 2^-53`, in `[0, 1)`.
//! * [`SimRng::bernoulli`] takes one word and succeeds iff `next_f64() < p`.
//! * [`SimRng::below`] takes one or more words (Lemire's multiply-and-reject).
//!
//! Independent streams for replications are derived with [`derive_seed`].

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct SimRng {
    inner: ChaCha8Rng,
}

impl SimRng {
    pub fn new(seed: u64) -> Self {
        SimRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Stream `stream` of the generator keyed by `seed`. Distinct streams of
    /// one key never overlap.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        SimRng { inner }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Uniform integer in `[0, bound)`. `bound` must be nonzero.
    #[inline]
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        let range = bound as u64;
        let threshold = range.wrapping_neg() % range;
        loop {
            let m = (self.next_u64() as u128) * (range as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as usize;
            }
        }
    }
}

/// Seed for replication `index` derived from `base`: the first word of stream
/// `index` of the generator keyed by `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    SimRng::with_stream(base, index).next_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = SimRng::new(42);
        let mut b = SimRng::new(42);
        let xs: Vec<u64> = (0..16).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..16).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn streams_differ() {
        assert_ne!(derive_seed(42, 0), derive_seed(42, 1));
        assert_ne!(derive_seed(42, 0), derive_seed(43, 0));
    }

    #[test]
    fn f64_in_unit_interval() {
        let mut r = SimRng::new(1);
        for _ in 0..10_000 {
            let x = r.next_f64();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn bernoulli_extremes() {
        let mut r = SimRng::new(3);
        for _ in 0..1000 {
            assert!(r.bernoulli(1.0));
            assert!(!r.bernoulli(0.0));
        }
    }

    #[test]
    fn below_is_roughly_uniform() {
        let mut r = SimRng::new(9);
        let mut counts = [0usize; 6];
        let draws = 60_000;
        for _ in 0..draws {
            counts[r.below(6)] += 1;
        }
        for c in counts {
            // sd of each bin ~ 91
            assert!((c as i64 - 10_000).abs() < 500, "{counts:?}");
        }
        assert_eq!(r.below(1), 0);
    }
}
