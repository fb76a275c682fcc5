//! Binary wire format for proofs.
//!
//! Every encoding starts with a 6-byte envelope: the ASCII magic `CMMP`, a
//! version byte (`0x01`) and a kind byte. Integers are fixed-width
//! little-endian and digests are raw 32-byte strings.
//!
//! ```text
//! compact  (0x01): leaf_count u64 | k u32 | k × index u64 | h × digest
//! standard (0x02): leaf_count u64 | h u32 | h × (layer u8 | index u64 | digest)
//! single   (0x03): leaf_count u64 | leaf_index u64 | d u32 | d × digest
//! ```
//!
//! The compact format carries no hash count: the digests run to the end of
//! the input. Decoders reject trailing bytes, so every proof has exactly one
//! encoding.

use thiserror::Error;

use crate::error::Error;
use crate::hash::Digest;
use crate::multiproof::{CompactMultiproof, StandardEntry, StandardMultiproof};
use crate::tree::{tree_depth, SingleProof};

pub const MAGIC: [u8; 4] = *b"CMMP";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 6;

const DIGEST_LEN: usize = Digest::LEN;
const STANDARD_ENTRY_LEN: usize = 1 + 8 + DIGEST_LEN;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ProofKind {
    Compact = 0x01,
    Standard = 0x02,
    Single = 0x03,
}

impl TryFrom<u8> for ProofKind {
    type Error = DecodeError;

    fn try_from(byte: u8) -> Result<Self, DecodeError> {
        match byte {
            0x01 => Ok(Self::Compact),
            0x02 => Ok(Self::Standard),
            0x03 => Ok(Self::Single),
            other => Err(DecodeError::UnknownKind(other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("truncated input")]
    Truncated,
    #[error("{0} trailing bytes after proof")]
    TrailingBytes(usize),
    #[error("bad magic {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("unsupported version {0}")]
    UnsupportedVersion(u8),
    #[error("unknown proof kind {0:#04x}")]
    UnknownKind(u8),
    #[error("expected a {expected:?} proof, found {found:?}")]
    WrongKind {
        expected: ProofKind,
        found: ProofKind,
    },
    #[error("leaf indices are not strictly increasing")]
    NonMonotonicIndices,
    #[error("leaf index {index} out of range for {leaf_count} leaves")]
    IndexOutOfRange { index: u64, leaf_count: u64 },
    #[error("proof positions are not strictly increasing")]
    NonMonotonicPositions,
    #[error("position (layer {layer}, index {index}) lies outside the tree")]
    PositionOutOfRange { layer: u8, index: u64 },
    #[error("proof contains no leaf indices")]
    EmptyIndexSet,
    #[error("invalid leaf count {0}")]
    InvalidLeafCount(u64),
    #[error("single proof has {actual} siblings, tree depth is {expected}")]
    DepthMismatch { expected: usize, actual: usize },
}

/// Encoded size of a compact proof with `k` leaf indices and `h` hashes.
pub const fn compact_encoded_len(k: usize, h: usize) -> usize {
    HEADER_LEN + 8 + 4 + 8 * k + DIGEST_LEN * h
}

/// Encoded size of a standard proof with `h` positioned hashes.
pub const fn standard_encoded_len(h: usize) -> usize {
    HEADER_LEN + 8 + 4 + STANDARD_ENTRY_LEN * h
}

/// Encoded size of a single proof in a tree of the given depth.
pub const fn single_encoded_len(depth: usize) -> usize {
    HEADER_LEN + 8 + 8 + 4 + DIGEST_LEN * depth
}

fn header(kind: ProofKind, capacity: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(capacity);
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.push(kind as u8);
    out
}

fn put_u32(out: &mut Vec<u8>, v: usize) {
    out.extend_from_slice(&u32::try_from(v).expect("count fits in u32").to_le_bytes());
}

fn put_u64(out: &mut Vec<u8>, v: usize) {
    out.extend_from_slice(&(v as u64).to_le_bytes());
}

pub fn encode_compact(proof: &CompactMultiproof) -> Vec<u8> {
    let (k, h) = (proof.leaf_indices().len(), proof.hashes().len());
    let mut out = header(ProofKind::Compact, compact_encoded_len(k, h));
    put_u64(&mut out, proof.leaf_count());
    put_u32(&mut out, k);
    for &index in proof.leaf_indices() {
        put_u64(&mut out, index);
    }
    for digest in proof.hashes() {
        out.extend_from_slice(digest.as_bytes());
    }
    out
}

pub fn decode_compact(bytes: &[u8]) -> Result<CompactMultiproof, DecodeError> {
    let mut r = Reader::open(bytes, ProofKind::Compact)?;
    let leaf_count = r.leaf_count()?;
    let k = r.u32()?;
    let raw = r.take(k.checked_mul(8).ok_or(DecodeError::Truncated)?)?;
    let mut indices = Vec::with_capacity(k);
    for chunk in raw.chunks_exact(8) {
        let index = u64::from_le_bytes(chunk.try_into().unwrap());
        if indices
            .last()
            .is_some_and(|&prev: &usize| index <= prev as u64)
        {
            return Err(DecodeError::NonMonotonicIndices);
        }
        if index >= leaf_count as u64 {
            return Err(DecodeError::IndexOutOfRange {
                index,
                leaf_count: leaf_count as u64,
            });
        }
        indices.push(index as usize);
    }
    let hashes = r.trailing_digests()?;
    CompactMultiproof::new(leaf_count, indices, hashes).map_err(structural)
}

pub fn encode_standard(proof: &StandardMultiproof) -> Vec<u8> {
    let h = proof.entries().len();
    let mut out = header(ProofKind::Standard, standard_encoded_len(h));
    put_u64(&mut out, proof.leaf_count());
    put_u32(&mut out, h);
    for entry in proof.entries() {
        out.push(entry.layer);
        put_u64(&mut out, entry.index);
        out.extend_from_slice(entry.digest.as_bytes());
    }
    out
}

pub fn decode_standard(bytes: &[u8]) -> Result<StandardMultiproof, DecodeError> {
    let mut r = Reader::open(bytes, ProofKind::Standard)?;
    let leaf_count = r.leaf_count()?;
    let h = r.u32()?;
    let raw = r.take(
        h.checked_mul(STANDARD_ENTRY_LEN)
            .ok_or(DecodeError::Truncated)?,
    )?;
    r.finish()?;

    let padded = leaf_count.next_power_of_two() as u64;
    let depth = padded.trailing_zeros() as u8;
    let mut entries: Vec<StandardEntry> = Vec::with_capacity(h);
    for chunk in raw.chunks_exact(STANDARD_ENTRY_LEN) {
        let layer = chunk[0];
        let index = u64::from_le_bytes(chunk[1..9].try_into().unwrap());
        if layer > depth || index >= padded >> layer {
            return Err(DecodeError::PositionOutOfRange { layer, index });
        }
        if entries
            .last()
            .is_some_and(|prev| (prev.layer, prev.index as u64) >= (layer, index))
        {
            return Err(DecodeError::NonMonotonicPositions);
        }
        let digest = Digest::from_bytes(chunk[9..].try_into().unwrap());
        entries.push(StandardEntry {
            layer,
            index: index as usize,
            digest,
        });
    }
    StandardMultiproof::new(leaf_count, entries).map_err(structural)
}

pub fn encode_single(proof: &SingleProof, leaf_count: usize) -> Vec<u8> {
    let d = proof.siblings.len();
    let mut out = header(ProofKind::Single, single_encoded_len(d));
    put_u64(&mut out, leaf_count);
    put_u64(&mut out, proof.leaf_index);
    put_u32(&mut out, d);
    for digest in &proof.siblings {
        out.extend_from_slice(digest.as_bytes());
    }
    out
}

/// Decodes a single proof together with the leaf count it was made for.
pub fn decode_single(bytes: &[u8]) -> Result<(SingleProof, usize), DecodeError> {
    let mut r = Reader::open(bytes, ProofKind::Single)?;
    let leaf_count = r.leaf_count()?;
    let leaf_index = r.u64()?;
    if leaf_index >= leaf_count as u64 {
        return Err(DecodeError::IndexOutOfRange {
            index: leaf_index,
            leaf_count: leaf_count as u64,
        });
    }
    let siblings = r.digests()?;
    r.finish()?;
    let depth = leaf_count.next_power_of_two().trailing_zeros() as usize;
    if siblings.len() != depth {
        return Err(DecodeError::DepthMismatch {
            expected: depth,
            actual: siblings.len(),
        });
    }
    let proof = SingleProof {
        leaf_index: leaf_index as usize,
        siblings,
    };
    Ok((proof, leaf_count))
}

// Decoders validate before constructing, so these are fallbacks.
fn structural(err: Error) -> DecodeError {
    match err {
        Error::EmptyIndexSet => DecodeError::EmptyIndexSet,
        Error::UnsortedIndices => DecodeError::NonMonotonicIndices,
        Error::UnsortedPositions => DecodeError::NonMonotonicPositions,
        Error::IndexOutOfRange { index, leaf_count } => DecodeError::IndexOutOfRange {
            index: index as u64,
            leaf_count: leaf_count as u64,
        },
        Error::PositionOutOfRange { layer, index } => DecodeError::PositionOutOfRange {
            layer: layer as u8,
            index: index as u64,
        },
        Error::LeafCountTooLarge(n) => DecodeError::InvalidLeafCount(n),
        other => unreachable!("constructor returned {other}"),
    }
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn open(bytes: &'a [u8], expected: ProofKind) -> Result<Self, DecodeError> {
        let mut r = Self { buf: bytes };
        let magic: [u8; 4] = r.take(4)?.try_into().unwrap();
        if magic != MAGIC {
            return Err(DecodeError::BadMagic(magic));
        }
        let version = r.u8()?;
        if version != VERSION {
            return Err(DecodeError::UnsupportedVersion(version));
        }
        let found = ProofKind::try_from(r.u8()?)?;
        if found != expected {
            return Err(DecodeError::WrongKind { expected, found });
        }
        Ok(r)
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], DecodeError> {
        if self.buf.len() < n {
            return Err(DecodeError::Truncated);
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Ok(head)
    }

    fn u8(&mut self) -> Result<u8, DecodeError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<usize, DecodeError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()) as usize)
    }

    fn u64(&mut self) -> Result<u64, DecodeError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// A positive leaf count whose padded size fits in `usize`.
    fn leaf_count(&mut self) -> Result<usize, DecodeError> {
        let raw = self.u64()?;
        usize::try_from(raw)
            .ok()
            .filter(|&n| tree_depth(n).is_ok())
            .ok_or(DecodeError::InvalidLeafCount(raw))
    }

    /// A u32 count followed by that many digests.
    fn digests(&mut self) -> Result<Vec<Digest>, DecodeError> {
        let n = self.u32()?;
        let raw = self.take(n.checked_mul(DIGEST_LEN).ok_or(DecodeError::Truncated)?)?;
        Ok(raw
            .chunks_exact(DIGEST_LEN)
            .map(|c| Digest::from_bytes(c.try_into().unwrap()))
            .collect())
    }

    /// Digests filling the rest of the input.
    fn trailing_digests(self) -> Result<Vec<Digest>, DecodeError> {
        let chunks = self.buf.chunks_exact(DIGEST_LEN);
        match chunks.remainder().len() {
            0 => Ok(chunks
                .map(|c| Digest::from_bytes(c.try_into().unwrap()))
                .collect()),
            n => Err(DecodeError::TrailingBytes(n)),
        }
    }

    fn finish(self) -> Result<(), DecodeError> {
        match self.buf.len() {
            0 => Ok(()),
            n => Err(DecodeError::TrailingBytes(n)),
        }
    }
}
