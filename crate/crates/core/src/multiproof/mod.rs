//! Multiproofs: one proof for several leaves of the same tree.
//!
//! Two encodings of the same set of sibling digests are provided:
//!
//! * [`CompactMultiproof`] stores only the sorted leaf indices next to the
//!   digests. Both prover and verifier re-derive every internal position by
//!   walking the tree bottom-up with [`sibling_pairs`] and [`advance_active`].
//! * [`StandardMultiproof`] tags every digest with its explicit
//!   `(layer, index)` position. It is the size baseline and a cross-check.
//!
//! Per layer, with `active` the sorted indices whose digests are known:
//!
//! ```text
//! pairs         = [(a & !1, (a & !1) + 1) for a in active]
//! pairs_pruned  = pairs without adjacent duplicates
//! proof digests = flatten(pairs_pruned) \ active     (ascending)
//! next active   = [even / 2 for (even, _) in pairs_pruned]
//! ```

mod compact;
mod report;
mod standard;

pub use compact::CompactMultiproof;
pub use report::{proof_size_report, SchemeSize, SizeReport};
pub use standard::{StandardEntry, StandardMultiproof};

use crate::error::{Error, Result};
use crate::hash::Digest;
use crate::tree::{tree_depth, MerkleTree};

/// Two sibling indices `[2m, 2m + 1]` sharing a parent.
pub type IndexPair = [usize; 2];

/// Pairs every active index with its immediate neighbour.
///
/// Returns the pairs in input order with multiplicity, and the same list with
/// adjacent duplicates removed. `active` must be strictly increasing.
pub fn sibling_pairs(active: &[usize]) -> Result<(Vec<IndexPair>, Vec<IndexPair>)> {
    if active.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedIndices);
    }
    let pairs: Vec<IndexPair> = active
        .iter()
        .map(|&a| {
            let even = a & !1;
            [even, even + 1]
        })
        .collect();
    let mut pruned = pairs.clone();
    pruned.dedup();
    Ok((pairs, pruned))
}

/// Parent indices of the pruned pairs: each even member halved.
pub fn advance_active(pairs_pruned: &[IndexPair]) -> Vec<usize> {
    pairs_pruned.iter().map(|[even, _]| even / 2).collect()
}

/// Bookkeeping for one layer of the bottom-up walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerState {
    pub layer: usize,
    pub active: Vec<usize>,
    pub pairs: Vec<IndexPair>,
    pub pairs_pruned: Vec<IndexPair>,
    /// Indices in `pairs_pruned` but not in `active`; their digests go into
    /// the proof, in this order.
    pub proof_indices: Vec<usize>,
}

/// The complete index walk for a leaf subset, computed from geometry alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLayout {
    leaf_count: usize,
    leaf_indices: Vec<usize>,
    layers: Vec<LayerState>,
}

impl ProofLayout {
    /// Walks from the leaves to the root. `indices` may be unsorted and
    /// contain duplicates; they must all name real (unpadded) leaves.
    pub fn new(leaf_count: usize, indices: &[usize]) -> Result<Self> {
        let depth = tree_depth(leaf_count)?;
        let leaf_indices = normalize_indices(leaf_count, indices)?;

        let mut layers = Vec::with_capacity(depth);
        let mut active = leaf_indices.clone();
        for layer in 0..depth {
            let (pairs, pairs_pruned) = sibling_pairs(&active)?;
            let proof_indices = sorted_difference(pairs_pruned.iter().flatten().copied(), &active);
            let next = advance_active(&pairs_pruned);
            layers.push(LayerState {
                layer,
                active: std::mem::replace(&mut active, next),
                pairs,
                pairs_pruned,
                proof_indices,
            });
        }
        debug_assert_eq!(active, [0]);
        Ok(Self {
            leaf_count,
            leaf_indices,
            layers,
        })
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    /// Sorted, deduplicated leaf indices.
    pub fn leaf_indices(&self) -> &[usize] {
        &self.leaf_indices
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[LayerState] {
        &self.layers
    }

    /// `(layer, index)` of every proof digest, bottom-up and ascending
    /// within each layer.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.layers
            .iter()
            .flat_map(|s| s.proof_indices.iter().map(move |&i| (s.layer, i)))
    }

    pub fn hash_count(&self) -> usize {
        self.layers.iter().map(|s| s.proof_indices.len()).sum()
    }

    /// Active index lists from the leaves up to and including the root
    /// layer, which is always `[0]`.
    pub fn active_sequence(&self) -> Vec<Vec<usize>> {
        let mut seq: Vec<_> = self.layers.iter().map(|s| s.active.clone()).collect();
        seq.push(vec![0]);
        seq
    }
}

/// Sorts and deduplicates `indices`, rejecting an empty set and any index at
/// or beyond `leaf_count`.
pub(crate) fn normalize_indices(leaf_count: usize, indices: &[usize]) -> Result<Vec<usize>> {
    if indices.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&index) = sorted.last().filter(|&&i| i >= leaf_count) {
        return Err(Error::IndexOutOfRange { index, leaf_count });
    }
    Ok(sorted)
}

/// Checks the invariants a deserialized or hand-built leaf index list must
/// already satisfy.
pub(crate) fn check_leaf_indices(leaf_count: usize, indices: &[usize]) -> Result<()> {
    tree_depth(leaf_count)?;
    if indices.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedIndices);
    }
    match indices.last() {
        Some(&index) if index >= leaf_count => Err(Error::IndexOutOfRange { index, leaf_count }),
        _ => Ok(()),
    }
}

// Both inputs ascending.
fn sorted_difference(items: impl Iterator<Item = usize>, exclude: &[usize]) -> Vec<usize> {
    let mut excluded = exclude.iter().peekable();
    items
        .filter(|&x| {
            while excluded.next_if(|&&e| e < x).is_some() {}
            excluded.peek() != Some(&&x)
        })
        .collect()
}

pub fn generate_compact(tree: &MerkleTree, leaf_indices: &[usize]) -> Result<CompactMultiproof> {
    CompactMultiproof::generate(tree, leaf_indices)
}

pub fn verify_compact(
    proof: &CompactMultiproof,
    element_hashes: &[Digest],
    expected_root: &Digest,
) -> Result<bool> {
    proof.verify(element_hashes, expected_root)
}

pub fn generate_standard(tree: &MerkleTree, leaf_indices: &[usize]) -> Result<StandardMultiproof> {
    StandardMultiproof::generate(tree, leaf_indices)
}

pub fn verify_standard(
    proof: &StandardMultiproof,
    leaf_indices: &[usize],
    element_hashes: &[Digest],
    expected_root: &Digest,
) -> Result<bool> {
    proof.verify(leaf_indices, element_hashes, expected_root)
}
