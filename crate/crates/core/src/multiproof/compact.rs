use crate::error::{Error, Result};
use crate::hash::{hash_leaf, hash_node, Digest};
use crate::tree::{tree_depth, MerkleTree};

use super::{advance_active, check_leaf_indices, sibling_pairs, ProofLayout};

/// A multiproof that carries leaf indices but no internal positions.
///
/// `hashes` is ordered bottom layer first, ascending index within a layer.
/// The verifier recovers every position from `leaf_count` and
/// `leaf_indices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactMultiproof {
    leaf_count: usize,
    leaf_indices: Vec<usize>,
    hashes: Vec<Digest>,
}

impl CompactMultiproof {
    /// Assembles a proof from parts. `leaf_indices` must be non-empty,
    /// strictly increasing and below `leaf_count`.
    pub fn new(leaf_count: usize, leaf_indices: Vec<usize>, hashes: Vec<Digest>) -> Result<Self> {
        check_leaf_indices(leaf_count, &leaf_indices)?;
        Ok(Self {
            leaf_count,
            leaf_indices,
            hashes,
        })
    }

    pub fn generate(tree: &MerkleTree, leaf_indices: &[usize]) -> Result<Self> {
        let layout = ProofLayout::new(tree.leaf_count(), leaf_indices)?;
        Ok(Self::from_layout(tree, layout))
    }

    pub(crate) fn from_layout(tree: &MerkleTree, layout: ProofLayout) -> Self {
        let hashes = layout
            .positions()
            .map(|(layer, index)| tree.layers()[layer][index])
            .collect();
        Self {
            leaf_count: layout.leaf_count,
            leaf_indices: layout.leaf_indices,
            hashes,
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn leaf_indices(&self) -> &[usize] {
        &self.leaf_indices
    }

    pub fn hashes(&self) -> &[Digest] {
        &self.hashes
    }

    pub fn into_parts(self) -> (usize, Vec<usize>, Vec<Digest>) {
        (self.leaf_count, self.leaf_indices, self.hashes)
    }

    /// Checks the proof against `expected_root`. `element_hashes` are the
    /// leaf digests in the same order as [`Self::leaf_indices`].
    ///
    /// Returns `Ok(false)` on a root mismatch and an error when the proof is
    /// structurally unusable (wrong element count, too few or too many
    /// hashes).
    pub fn verify(&self, element_hashes: &[Digest], expected_root: &Digest) -> Result<bool> {
        Ok(self.fold(element_hashes, |_| {})? == *expected_root)
    }

    /// Like [`Self::verify`], also returning the active index list seen at
    /// every layer, leaves first and root (`[0]`) last.
    pub fn verify_traced(
        &self,
        element_hashes: &[Digest],
        expected_root: &Digest,
    ) -> Result<(bool, Vec<Vec<usize>>)> {
        let mut seen = Vec::new();
        let root = self.fold(element_hashes, |active| seen.push(active.to_vec()))?;
        Ok((root == *expected_root, seen))
    }

    /// Verifies raw elements given as `(leaf index, bytes)` in any order. The
    /// set of indices must equal the proof's.
    pub fn verify_elements<I, T>(&self, elements: I, expected_root: &Digest) -> Result<bool>
    where
        I: IntoIterator<Item = (usize, T)>,
        T: AsRef<[u8]>,
    {
        let mut hashed: Vec<(usize, Digest)> = elements
            .into_iter()
            .map(|(i, e)| (i, hash_leaf(e.as_ref())))
            .collect();
        hashed.sort_by_key(|&(i, _)| i);
        if hashed.len() != self.leaf_indices.len() {
            return Err(Error::ElementCountMismatch {
                expected: self.leaf_indices.len(),
                actual: hashed.len(),
            });
        }
        if hashed
            .iter()
            .map(|&(i, _)| i)
            .ne(self.leaf_indices.iter().copied())
        {
            return Err(Error::ElementIndexMismatch);
        }
        let hashes: Vec<Digest> = hashed.into_iter().map(|(_, d)| d).collect();
        self.verify(&hashes, expected_root)
    }

    /// Recomputes the root. Runs exactly `depth` layers and requires every
    /// proof hash to be consumed.
    fn fold(&self, element_hashes: &[Digest], mut observe: impl FnMut(&[usize])) -> Result<Digest> {
        if element_hashes.len() != self.leaf_indices.len() {
            return Err(Error::ElementCountMismatch {
                expected: self.leaf_indices.len(),
                actual: element_hashes.len(),
            });
        }
        let depth = tree_depth(self.leaf_count)?;
        let mut proof = self.hashes.iter();
        let mut active = self.leaf_indices.clone();
        let mut known = element_hashes.to_vec();

        for _ in 0..depth {
            observe(&active);
            let (_, pruned) = sibling_pairs(&active)?;
            let mut next = Vec::with_capacity(pruned.len());
            let mut cursor = 0;
            for &[left, right] in &pruned {
                let parent = if active[cursor] == left && active.get(cursor + 1) == Some(&right) {
                    cursor += 2;
                    hash_node(&known[cursor - 2], &known[cursor - 1])
                } else {
                    let sibling = proof.next().ok_or(Error::HashListExhausted)?;
                    let own = &known[cursor];
                    cursor += 1;
                    if active[cursor - 1] == left {
                        hash_node(own, sibling)
                    } else {
                        hash_node(sibling, own)
                    }
                };
                next.push(parent);
            }
            active = advance_active(&pruned);
            known = next;
        }
        observe(&active);

        if proof.next().is_some() {
            return Err(Error::SurplusHashes);
        }
        Ok(known[0])
    }
}
