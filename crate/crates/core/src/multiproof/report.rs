use crate::codec;
use crate::error::Result;

use super::ProofLayout;

/// Hash count and encoded size of one proof scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeSize {
    pub hashes: usize,
    pub bytes: usize,
}

/// Side-by-side sizes of the three ways to prove a leaf subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub leaf_count: usize,
    /// Distinct leaves proven.
    pub k: usize,
    pub depth: usize,
    /// `k` independent single proofs, each encoded on its own.
    pub single: SchemeSize,
    pub standard: SchemeSize,
    pub compact: SchemeSize,
}

impl SizeReport {
    /// Percentage of bytes saved by `scheme` relative to `baseline`.
    pub fn savings_percent(scheme: SchemeSize, baseline: SchemeSize) -> f64 {
        100.0 * (1.0 - scheme.bytes as f64 / baseline.bytes as f64)
    }

    pub fn standard_vs_single(&self) -> f64 {
        Self::savings_percent(self.standard, self.single)
    }

    pub fn compact_vs_single(&self) -> f64 {
        Self::savings_percent(self.compact, self.single)
    }

    pub fn compact_vs_standard(&self) -> f64 {
        Self::savings_percent(self.compact, self.standard)
    }
}

/// Computes proof sizes from tree geometry alone; no digests are hashed.
pub fn proof_size_report(leaf_count: usize, leaf_indices: &[usize]) -> Result<SizeReport> {
    let layout = ProofLayout::new(leaf_count, leaf_indices)?;
    let k = layout.leaf_indices().len();
    let depth = layout.depth();
    let h = layout.hash_count();
    Ok(SizeReport {
        leaf_count,
        k,
        depth,
        single: SchemeSize {
            hashes: k * depth,
            bytes: k * codec::single_encoded_len(depth),
        },
        standard: SchemeSize {
            hashes: h,
            bytes: codec::standard_encoded_len(h),
        },
        compact: SchemeSize {
            hashes: h,
            bytes: codec::compact_encoded_len(k, h),
        },
    })
}
