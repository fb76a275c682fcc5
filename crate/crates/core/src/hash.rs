//! Domain-separated SHA-256 hashing for leaves, internal nodes and padding.
//!
//! Every hash input starts with a one-byte role prefix so a leaf digest can
//! never be reinterpreted as an internal node:
//!
//! ```text
//! leaf     = SHA-256(0x00 || data)
//! node     = SHA-256(0x01 || left || right)
//! padding  = SHA-256(0x02)
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use sha2::{Digest as _, Sha256};

const LEAF_PREFIX: u8 = 0x00;
const NODE_PREFIX: u8 = 0x01;
const PADDING_PREFIX: u8 = 0x02;

/// A 32-byte SHA-256 output. All tree nodes and proof entries are digests.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest([u8; Digest::LEN]);

impl Digest {
    pub const LEN: usize = 32;

    pub const fn from_bytes(bytes: [u8; Self::LEN]) -> Self {
        Self(bytes)
    }

    pub const fn as_bytes(&self) -> &[u8; Self::LEN] {
        &self.0
    }

    /// Lowercase hex, no prefix.
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, hex::FromHexError> {
        let mut bytes = [0u8; Self::LEN];
        hex::decode_to_slice(s, &mut bytes)?;
        Ok(Self(bytes))
    }
}

impl From<[u8; Digest::LEN]> for Digest {
    fn from(bytes: [u8; Digest::LEN]) -> Self {
        Self(bytes)
    }
}

impl AsRef<[u8]> for Digest {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl FromStr for Digest {
    type Err = hex::FromHexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_hex(s)
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({})", self.to_hex())
    }
}

fn finish(hasher: Sha256) -> Digest {
    let mut out = [0u8; Digest::LEN];
    out.copy_from_slice(&hasher.finalize());
    Digest(out)
}

/// Hashes raw element bytes into a leaf digest.
pub fn hash_leaf(data: &[u8]) -> Digest {
    let mut hasher = Sha256::new();
    hasher.update([LEAF_PREFIX]);
    hasher.update(data);
    finish(hasher)
}

/// Hashes two children into their parent. Order matters: `left` is the
/// even-index child.
pub fn hash_node(left: &Digest, right: &Digest) -> Digest {
    let mut hasher = Sha256::new();
    hasher.update([NODE_PREFIX]);
    hasher.update(left.0);
    hasher.update(right.0);
    finish(hasher)
}

/// The constant filling unused leaf slots up to the next power of two.
pub fn padding_digest() -> Digest {
    static PADDING: OnceLock<Digest> = OnceLock::new();
    *PADDING.get_or_init(|| {
        let mut hasher = Sha256::new();
        hasher.update([PADDING_PREFIX]);
        finish(hasher)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen with Python's hashlib.
    const LEAF_EMPTY: &str = "6e340b9cffb37a989ca544e6bb780a2c78901d3fb33738768511a30617afa01d";
    const LEAF_A: &str = "022a6979e6dab7aa5ae4c3e5e45f7e977112a7e63593820dbec1ec738a24f93c";
    const NODE_T0_T1: &str = "850c5c413160c54e4154fea562124d76d7c0e7a8767488ca22b4f25f984e41f9";
    const PADDING: &str = "dbc1b4c900ffe48d575b5da5c638040125f65db0fe3e24494b76ea986457d986";

    #[test]
    fn golden_values() {
        assert_eq!(hash_leaf(b"").to_hex(), LEAF_EMPTY);
        assert_eq!(hash_leaf(b"a").to_hex(), LEAF_A);
        assert_eq!(
            hash_node(&hash_leaf(b"T0"), &hash_leaf(b"T1")).to_hex(),
            NODE_T0_T1
        );
        assert_eq!(padding_digest().to_hex(), PADDING);
    }

    #[test]
    fn deterministic() {
        assert_eq!(hash_leaf(b"xyz"), hash_leaf(b"xyz"));
        let (a, b) = (hash_leaf(b"a"), hash_leaf(b"b"));
        assert_eq!(hash_node(&a, &b), hash_node(&a, &b));
        assert_eq!(padding_digest(), padding_digest());
    }

    #[test]
    fn roles_are_separated() {
        let a = hash_leaf(b"a");
        assert_ne!(a, hash_node(&a, &a));
        assert_ne!(padding_digest(), hash_leaf(b""));

        // A leaf whose bytes spell out two child digests must not collide
        // with the parent of those children.
        let (l, r) = (hash_leaf(b"l"), hash_leaf(b"r"));
        let mut concat = Vec::new();
        concat.extend_from_slice(l.as_bytes());
        concat.extend_from_slice(r.as_bytes());
        assert_ne!(hash_leaf(&concat), hash_node(&l, &r));
    }

    #[test]
    fn node_is_not_commutative() {
        let (a, b) = (hash_leaf(b"a"), hash_leaf(b"b"));
        assert_ne!(hash_node(&a, &b), hash_node(&b, &a));
    }

    #[test]
    fn hex_round_trip() {
        let d = hash_leaf(b"a");
        assert_eq!(d.to_string().parse::<Digest>().unwrap(), d);
        assert!(Digest::from_hex("00").is_err());
        assert!(Digest::from_hex(&"zz".repeat(32)).is_err());
    }
}
