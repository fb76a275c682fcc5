//! Fixtures shared by the benchmarks.

use cmmp::MerkleTree;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn elements(n: usize) -> Vec<Vec<u8>> {
    (0..n)
        .map(|i| format!("element-{i}").into_bytes())
        .collect()
}

pub fn tree(n: usize) -> MerkleTree {
    MerkleTree::build(elements(n)).expect("n > 0")
}

/// `k` distinct sorted leaf indices, reproducible for a given seed.
pub fn subset(n: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = sample(&mut rng, n, k).into_vec();
    s.sort_unstable();
    s
}
