//! Complete binary Merkle trees and single-element inclusion proofs.

use crate::error::{Error, Result};
use crate::hash::{hash_leaf, hash_node, padding_digest, Digest};

/// Number of leaf slots in a tree holding `leaf_count` elements: the next
/// power of two.
pub fn padded_leaf_count(leaf_count: usize) -> Result<usize> {
    if leaf_count == 0 {
        return Err(Error::ZeroLeafCount);
    }
    leaf_count
        .checked_next_power_of_two()
        .ok_or(Error::LeafCountTooLarge(leaf_count as u64))
}

/// Number of hashing levels between the leaves and the root.
pub fn tree_depth(leaf_count: usize) -> Result<usize> {
    Ok(padded_leaf_count(leaf_count)?.trailing_zeros() as usize)
}

/// A fully materialized Merkle tree.
///
/// `layers[0]` holds the leaf digests padded with [`padding_digest`] up to a
/// power of two; each following layer is half as long and the last one holds
/// only the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MerkleTree {
    leaf_count: usize,
    layers: Vec<Vec<Digest>>,
}

impl MerkleTree {
    /// Hashes every element with [`hash_leaf`] and builds the tree over them.
    pub fn build<I>(elements: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: AsRef<[u8]>,
    {
        let leaves = elements
            .into_iter()
            .map(|e| hash_leaf(e.as_ref()))
            .collect();
        Self::from_leaf_hashes(leaves)
    }

    /// Builds a tree over already-hashed leaves.
    pub fn from_leaf_hashes(mut leaves: Vec<Digest>) -> Result<Self> {
        if leaves.is_empty() {
            return Err(Error::EmptyTree);
        }
        let leaf_count = leaves.len();
        let padded = padded_leaf_count(leaf_count)?;
        leaves.resize(padded, padding_digest());

        let mut layers = Vec::with_capacity(padded.trailing_zeros() as usize + 1);
        layers.push(leaves);
        while let Some(below) = layers.last().filter(|layer| layer.len() > 1) {
            let above = below
                .chunks_exact(2)
                .map(|pair| hash_node(&pair[0], &pair[1]))
                .collect();
            layers.push(above);
        }
        Ok(Self { leaf_count, layers })
    }

    /// Number of real (unpadded) leaves.
    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn padded_leaf_count(&self) -> usize {
        self.layers[0].len()
    }

    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layers(&self) -> &[Vec<Digest>] {
        &self.layers
    }

    /// Digest at `index` within `layer`, if that position exists.
    pub fn node(&self, layer: usize, index: usize) -> Option<&Digest> {
        self.layers.get(layer)?.get(index)
    }

    pub fn root(&self) -> Digest {
        self.layers[self.layers.len() - 1][0]
    }

    pub fn single_proof(&self, leaf_index: usize) -> Result<SingleProof> {
        if leaf_index >= self.leaf_count {
            return Err(Error::IndexOutOfRange {
                index: leaf_index,
                leaf_count: self.leaf_count,
            });
        }
        let mut current = leaf_index;
        let siblings = self.layers[..self.depth()]
            .iter()
            .map(|layer| {
                let sibling = layer[current ^ 1];
                current >>= 1;
                sibling
            })
            .collect();
        Ok(SingleProof {
            leaf_index,
            siblings,
        })
    }
}

/// Classic inclusion proof for one element: one sibling per level, bottom-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleProof {
    pub leaf_index: usize,
    pub siblings: Vec<Digest>,
}

impl SingleProof {
    pub fn verify(
        &self,
        element: &[u8],
        leaf_count: usize,
        expected_root: &Digest,
    ) -> Result<bool> {
        self.verify_hash(&hash_leaf(element), leaf_count, expected_root)
    }

    /// Folds `leaf_hash` up through the siblings and compares with the root.
    /// Fails if the sibling count does not match the depth implied by
    /// `leaf_count`, or if the index is not a real leaf.
    pub fn verify_hash(
        &self,
        leaf_hash: &Digest,
        leaf_count: usize,
        expected_root: &Digest,
    ) -> Result<bool> {
        let depth = tree_depth(leaf_count)?;
        if self.siblings.len() != depth {
            return Err(Error::DepthMismatch {
                expected: depth,
                actual: self.siblings.len(),
            });
        }
        if self.leaf_index >= leaf_count {
            return Err(Error::IndexOutOfRange {
                index: self.leaf_index,
                leaf_count,
            });
        }
        let mut current = self.leaf_index;
        let mut acc = *leaf_hash;
        for sibling in &self.siblings {
            acc = if current & 1 == 0 {
                hash_node(&acc, sibling)
            } else {
                hash_node(sibling, &acc)
            };
            current >>= 1;
        }
        Ok(acc == *expected_root)
    }
}
