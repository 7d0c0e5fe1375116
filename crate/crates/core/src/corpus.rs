//! Seeded matrix corpora.
//!
//! Generator: Xoshiro256++ initialised with `seed_from_u64(seed)` (state
//! filled by SplitMix64). Stream `i` is that generator advanced by `i` calls
//! to `jump()` (2^128 steps each), so streams never overlap. An entry bounded
//! by `b` is `next_u64() % (2b + 1) - b`. A nonzero entry is
//! `v = next_u64() % 2b - b`, then `v + 1` when `v >= 0`. Matrices are
//! filled row-major.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone)]
pub struct CorpusRng(Xoshiro256PlusPlus);

impl CorpusRng {
    pub fn new(seed: u64) -> Self {
        CorpusRng(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    /// Stream `index` of `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        let mut rng = Self::new(seed);
        for _ in 0..index {
            rng.0.jump();
        }
        rng
    }

    /// Streams `0..count` of `seed`, in order.
    pub fn streams(seed: u64, count: usize) -> Vec<Self> {
        let mut rng = Self::new(seed);
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(rng.clone());
            rng.0.jump();
        }
        out
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[-bound, bound]`.
    pub fn integer(&mut self, bound: u64) -> i64 {
        let span = 2 * bound + 1;
        (self.next_u64() % span) as i64 - bound as i64
    }

    /// Uniform in `[-bound, bound]` without zero. `bound` must be positive.
    pub fn nonzero(&mut self, bound: u64) -> i64 {
        assert!(bound > 0, "nonzero entries need a positive bound");
        let v = (self.next_u64() % (2 * bound)) as i64 - bound as i64;
        if v >= 0 {
            v + 1
        } else {
            v
        }
    }

    pub fn integer_matrix<S: Scalar>(&mut self, n: usize, bound: u64) -> Matrix<S> {
        Matrix::from_fn(n, n, |_, _| S::from_i64(self.integer(bound)))
    }

    /// Entries `p/q` with `p` and `q` both nonzero in `[-bound, bound]`,
    /// numerator drawn first.
    pub fn rational_matrix(&mut self, n: usize, bound: u64) -> Matrix<Rational> {
        Matrix::from_fn(n, n, |_, _| {
            let p = self.nonzero(bound);
            let q = self.nonzero(bound);
            Rational::new(p, q).expect("denominator is nonzero")
        })
    }
}
