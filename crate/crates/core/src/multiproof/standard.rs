use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hash::{hash_node, Digest};
use crate::tree::{padded_leaf_count, tree_depth, MerkleTree};

use super::ProofLayout;

/// A proof digest tagged with its tree position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardEntry {
    pub layer: u8,
    pub index: usize,
    pub digest: Digest,
}

impl StandardEntry {
    fn position(&self) -> (usize, usize) {
        (self.layer as usize, self.index)
    }
}

/// The conventional sparse multiproof: every digest carries an explicit
/// `(layer, index)` position. Entries are sorted by position and unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardMultiproof {
    leaf_count: usize,
    entries: Vec<StandardEntry>,
}

impl StandardMultiproof {
    pub fn new(leaf_count: usize, entries: Vec<StandardEntry>) -> Result<Self> {
        let padded = padded_leaf_count(leaf_count)?;
        let depth = padded.trailing_zeros() as usize;
        if entries
            .windows(2)
            .any(|w| w[0].position() >= w[1].position())
        {
            return Err(Error::UnsortedPositions);
        }
        for entry in &entries {
            let (layer, index) = entry.position();
            if layer > depth || index >= padded >> layer {
                return Err(Error::PositionOutOfRange { layer, index });
            }
        }
        Ok(Self {
            leaf_count,
            entries,
        })
    }

    pub fn generate(tree: &MerkleTree, leaf_indices: &[usize]) -> Result<Self> {
        let layout = ProofLayout::new(tree.leaf_count(), leaf_indices)?;
        Ok(Self::from_layout(tree, &layout))
    }

    pub(crate) fn from_layout(tree: &MerkleTree, layout: &ProofLayout) -> Self {
        // Layout positions are already sorted by (layer, index).
        let entries = layout
            .positions()
            .map(|(layer, index)| StandardEntry {
                layer: layer as u8,
                index,
                digest: tree.layers()[layer][index],
            })
            .collect();
        Self {
            leaf_count: layout.leaf_count(),
            entries,
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn entries(&self) -> &[StandardEntry] {
        &self.entries
    }

    pub fn into_parts(self) -> (usize, Vec<StandardEntry>) {
        (self.leaf_count, self.entries)
    }

    /// Recomputes the root from the leaves upward, taking each missing
    /// sibling from the position map.
    ///
    /// Errors if a needed sibling is absent, if a supplied digest contradicts
    /// one derived from the leaves, or if an entry goes unused.
    pub fn verify(
        &self,
        leaf_indices: &[usize],
        element_hashes: &[Digest],
        expected_root: &Digest,
    ) -> Result<bool> {
        if leaf_indices.len() != element_hashes.len() {
            return Err(Error::ElementCountMismatch {
                expected: leaf_indices.len(),
                actual: element_hashes.len(),
            });
        }
        if leaf_indices.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let depth = tree_depth(self.leaf_count)?;

        let mut known: BTreeMap<usize, Digest> = BTreeMap::new();
        for (&index, &digest) in leaf_indices.iter().zip(element_hashes) {
            if index >= self.leaf_count {
                return Err(Error::IndexOutOfRange {
                    index,
                    leaf_count: self.leaf_count,
                });
            }
            if known
                .insert(index, digest)
                .is_some_and(|prev| prev != digest)
            {
                return Err(Error::ConflictingDigest { layer: 0, index });
            }
        }

        let supplied: BTreeMap<(usize, usize), Digest> = self
            .entries
            .iter()
            .map(|e| (e.position(), e.digest))
            .collect();
        let mut used = 0;

        for layer in 0..=depth {
            for (&index, digest) in &known {
                if let Some(given) = supplied.get(&(layer, index)) {
                    if given != digest {
                        return Err(Error::ConflictingDigest { layer, index });
                    }
                    used += 1;
                }
            }
            if layer == depth {
                break;
            }

            let mut parents = BTreeMap::new();
            let mut nodes = known.iter().peekable();
            while let Some((&index, digest)) = nodes.next() {
                let sibling_index = index ^ 1;
                let sibling = match nodes.peek() {
                    Some(&(&next, next_digest)) if index & 1 == 0 && next == sibling_index => {
                        nodes.next();
                        *next_digest
                    }
                    _ => {
                        let found = supplied.get(&(layer, sibling_index)).ok_or(
                            Error::IncompleteProof {
                                layer,
                                index: sibling_index,
                            },
                        )?;
                        used += 1;
                        *found
                    }
                };
                let parent = if index & 1 == 0 {
                    hash_node(digest, &sibling)
                } else {
                    hash_node(&sibling, digest)
                };
                parents.insert(index / 2, parent);
            }
            known = parents;
        }

        if used != self.entries.len() {
            return Err(Error::SurplusHashes);
        }
        Ok(known.get(&0) == Some(expected_root))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash::hash_leaf;

    fn tree(n: usize) -> MerkleTree {
        MerkleTree::build((0..n).map(|i| format!("T{i}"))).unwrap()
    }

    fn leaf_hashes(tree: &MerkleTree, indices: &[usize]) -> Vec<Digest> {
        indices.iter().map(|&i| tree.layers()[0][i]).collect()
    }

    #[test]
    fn worked_example_positions() {
        let t = tree(16);
        let proof = StandardMultiproof::generate(&t, &[2, 3, 8, 13]).unwrap();
        let positions: Vec<_> = proof
            .entries()
            .iter()
            .map(StandardEntry::position)
            .collect();
        assert_eq!(positions, [(0, 9), (0, 12), (1, 0), (1, 5), (1, 7), (2, 1)]);
        let e = leaf_hashes(&t, &[2, 3, 8, 13]);
        assert!(proof.verify(&[2, 3, 8, 13], &e, &t.root()).unwrap());
        // Leaf order does not matter for the positional format.
        let (ri, re) = ([13, 8, 3, 2], [e[3], e[2], e[1], e[0]]);
        assert!(proof.verify(&ri, &re, &t.root()).unwrap());
    }

    #[test]
    fn single_leaf_tree() {
        let t = MerkleTree::build([b"x"]).unwrap();
        let proof = StandardMultiproof::generate(&t, &[0]).unwrap();
        assert!(proof.entries().is_empty());
        assert!(proof.verify(&[0], &[hash_leaf(b"x")], &t.root()).unwrap());
        assert!(!proof.verify(&[0], &[hash_leaf(b"y")], &t.root()).unwrap());
    }

    #[test]
    fn all_leaves_power_of_two_is_empty() {
        let t = tree(16);
        let all: Vec<usize> = (0..16).collect();
        assert!(StandardMultiproof::generate(&t, &all)
            .unwrap()
            .entries()
            .is_empty());
    }

    #[test]
    fn removing_any_entry_is_incomplete() {
        let t = tree(16);
        let idx = [2, 3, 8, 13];
        let e = leaf_hashes(&t, &idx);
        let (n, entries) = StandardMultiproof::generate(&t, &idx).unwrap().into_parts();
        for skip in 0..entries.len() {
            let mut fewer = entries.clone();
            fewer.remove(skip);
            let proof = StandardMultiproof::new(n, fewer).unwrap();
            assert!(matches!(
                proof.verify(&idx, &e, &t.root()),
                Err(Error::IncompleteProof { .. })
            ));
        }
    }

    #[test]
    fn supplied_root_cannot_replace_the_leaves() {
        let t = tree(4);
        let forged = StandardMultiproof::new(
            4,
            vec![
                StandardEntry {
                    layer: 0,
                    index: 1,
                    digest: t.layers()[0][1],
                },
                StandardEntry {
                    layer: 1,
                    index: 1,
                    digest: t.layers()[1][1],
                },
                StandardEntry {
                    layer: 2,
                    index: 0,
                    digest: t.root(),
                },
            ],
        )
        .unwrap();
        assert_eq!(
            forged.verify(&[0], &[hash_leaf(b"fake")], &t.root()),
            Err(Error::ConflictingDigest { layer: 2, index: 0 })
        );
    }

    #[test]
    fn unused_entries_are_surplus() {
        let t = tree(8);
        let (n, mut entries) = StandardMultiproof::generate(&t, &[0]).unwrap().into_parts();
        // [(0,1), (1,1), (2,1)] plus an unrelated (0,5).
        entries.insert(
            1,
            StandardEntry {
                layer: 0,
                index: 5,
                digest: t.layers()[0][5],
            },
        );
        let proof = StandardMultiproof::new(n, entries).unwrap();
        assert_eq!(
            proof.verify(&[0], &leaf_hashes(&t, &[0]), &t.root()),
            Err(Error::SurplusHashes)
        );
    }

    #[test]
    fn conflicting_leaf_duplicates() {
        let t = tree(4);
        let proof = StandardMultiproof::generate(&t, &[1]).unwrap();
        let e = [t.layers()[0][1], hash_leaf(b"other")];
        assert_eq!(
            proof.verify(&[1, 1], &e, &t.root()),
            Err(Error::ConflictingDigest { layer: 0, index: 1 })
        );
    }

    #[test]
    fn constructor_checks_geometry_and_order() {
        let d = hash_leaf(b"d");
        let at = |layer, index| StandardEntry {
            layer,
            index,
            digest: d,
        };
        assert_eq!(
            StandardMultiproof::new(4, vec![at(0, 4)]),
            Err(Error::PositionOutOfRange { layer: 0, index: 4 })
        );
        assert_eq!(
            StandardMultiproof::new(4, vec![at(3, 0)]),
            Err(Error::PositionOutOfRange { layer: 3, index: 0 })
        );
        assert_eq!(
            StandardMultiproof::new(4, vec![at(1, 0), at(0, 3)]),
            Err(Error::UnsortedPositions)
        );
        assert_eq!(
            StandardMultiproof::new(4, vec![at(0, 3), at(0, 3)]),
            Err(Error::UnsortedPositions)
        );
    }
}
