use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised while building trees and generating or verifying proofs.
///
/// A proof that is well-formed but does not hash to the expected root is not
/// an error; verification returns `Ok(false)` for it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty tree not supported")]
    EmptyTree,
    #[error("leaf count must be positive")]
    ZeroLeafCount,
    #[error("leaf count {0} is too large")]
    LeafCountTooLarge(u64),
    #[error("at least one leaf index is required")]
    EmptyIndexSet,
    #[error("leaf index {index} out of range for {leaf_count} leaves")]
    IndexOutOfRange { index: usize, leaf_count: usize },
    #[error("indices must be strictly increasing")]
    UnsortedIndices,
    #[error("position (layer {layer}, index {index}) lies outside the tree")]
    PositionOutOfRange { layer: usize, index: usize },
    #[error("proof positions must be strictly increasing by (layer, index)")]
    UnsortedPositions,
    #[error("proof has {actual} siblings but the tree depth is {expected}")]
    DepthMismatch { expected: usize, actual: usize },
    #[error("expected {expected} element hashes, got {actual}")]
    ElementCountMismatch { expected: usize, actual: usize },
    #[error("supplied element indices do not match the proof's leaf indices")]
    ElementIndexMismatch,
    #[error("malformed proof: hash list exhausted")]
    HashListExhausted,
    #[error("malformed proof: surplus hashes")]
    SurplusHashes,
    #[error("incomplete proof: missing digest at layer {layer}, index {index}")]
    IncompleteProof { layer: usize, index: usize },
    #[error("conflicting digests at layer {layer}, index {index}")]
    ConflictingDigest { layer: usize, index: usize },
}
