//! Fixtures shared by the benchmarks.

use sbuntwist_core::oracle::field::GaloisField;
use sbuntwist_core::oracle::geometry::ProjPoint;
use sbuntwist_core::oracle::scan::{random_configuration, sample_seed};
use sbuntwist_core::{random_chain, CycleClass};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// End cycles of `count` seeded chains of exactly `length` links.
pub fn chain_corpus(count: u64, length: usize) -> Vec<CycleClass> {
    (0..count)
        .map(|seed| random_chain(length, seed).expect("chain within coefficient bound").0)
        .collect()
}

/// `count` seeded six-point configurations over `F_q`.
pub fn configuration_corpus(q: u64, count: u64) -> (GaloisField, Vec<[ProjPoint; 6]>) {
    let f = GaloisField::for_oracle(q, 1).expect("valid characteristic");
    let pts = (0..count)
        .map(|i| random_configuration(&f, &mut ChaCha8Rng::seed_from_u64(sample_seed(0, i))))
        .collect();
    (f, pts)
}
