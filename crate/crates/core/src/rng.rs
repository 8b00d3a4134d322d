//! Portable seeded randomness.
//!
//! The stream is xoshiro256** whose state is expanded from the 64-bit seed
//! with SplitMix64 (the reference seeding procedure). Bounded draws use
//! Lemire's multiply-and-reject method, and shuffles are Fisher-Yates run from
//! the last index down. All three are fixed here so that a port to another
//! language reproduces generated instances bit for bit.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

#[derive(Debug, Clone)]
pub struct SeededRng(Xoshiro256StarStar);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform draw from `0..bound`. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mut m = (self.next_u64() as u128) * (bound as u128);
        if (m as u64) < bound {
            let threshold = bound.wrapping_neg() % bound;
            while (m as u64) < threshold {
                m = (self.next_u64() as u128) * (bound as u128);
            }
        }
        (m >> 64) as u64
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.index(i + 1);
            xs.swap(i, j);
        }
    }

    /// `count` distinct indices from `0..len`, in draw order (partial Fisher-Yates).
    pub fn distinct_indices(&mut self, len: usize, count: usize) -> Vec<usize> {
        assert!(count <= len);
        let mut pool: Vec<usize> = (0..len).collect();
        for i in 0..count {
            let j = i + self.index(len - i);
            pool.swap(i, j);
        }
        pool.truncate(count);
        pool
    }
}
