//! Merkle trees with compact multiproofs.
//!
//! A compact multiproof for `k` leaves carries the `k` sorted leaf indices and
//! the sibling digests that cannot be recomputed from those leaves. No
//! internal node positions are stored: prover and verifier derive them by
//! walking the same index arithmetic from the leaves to the root.
//!
//! ```
//! use cmmp::{hash_leaf, CompactMultiproof, MerkleTree};
//!
//! let elements: Vec<String> = (0..16).map(|i| format!("T{i}")).collect();
//! let tree = MerkleTree::build(&elements).unwrap();
//!
//! let proof = CompactMultiproof::generate(&tree, &[2, 3, 8, 13]).unwrap();
//! assert_eq!(proof.hashes().len(), 6);
//!
//! let leaves: Vec<_> = [2, 3, 8, 13].iter().map(|&i| hash_leaf(elements[i].as_bytes())).collect();
//! assert!(proof.verify(&leaves, &tree.root()).unwrap());
//! ```

pub mod codec;
mod error;
pub mod hash;
pub mod multiproof;
pub mod tree;

pub use codec::DecodeError;
pub use error::{Error, Result};
pub use hash::{hash_leaf, hash_node, padding_digest, Digest};
pub use multiproof::{
    advance_active, generate_compact, generate_standard, proof_size_report, sibling_pairs,
    verify_compact, verify_standard, CompactMultiproof, IndexPair, LayerState, ProofLayout,
    SchemeSize, SizeReport, StandardEntry, StandardMultiproof,
};
pub use tree::{padded_leaf_count, tree_depth, MerkleTree, SingleProof};
