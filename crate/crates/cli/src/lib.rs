//! Command implementations for the `cmmp` binary.
//!
//! Every command returns its stdout and exit code instead of printing, so the
//! integration tests and the binary share one code path.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context};
use clap::{Parser, Subcommand};
use cmmp::codec::{decode_compact, encode_compact};
use cmmp::{proof_size_report, CompactMultiproof, Digest, MerkleTree, SizeReport};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Parser)]
#[command(name = "cmmp", version, about = "Merkle roots and compact multiproofs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the hex Merkle root of a newline-delimited element file.
    Root { file: PathBuf },
    /// Write a compact multiproof for the given leaf indices.
    Prove {
        file: PathBuf,
        /// Comma-separated leaf indices, e.g. 2,3,8,13.
        #[arg(long)]
        indices: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a compact multiproof. Exit 0 if valid, 1 on root mismatch, 2 if
    /// the proof or input is malformed.
    Verify {
        /// Expected root, lowercase hex.
        #[arg(long)]
        root: String,
        #[arg(long)]
        proof: PathBuf,
        /// The proven elements, one per line, in ascending leaf-index order.
        #[arg(long)]
        elements: PathBuf,
    },
    /// Compare proof sizes of single proofs, standard and compact multiproofs.
    Compare {
        #[arg(long)]
        leaf_count: usize,
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        indices: Option<String>,
        /// Prove K distinct leaves chosen at random.
        #[arg(long, value_name = "K")]
        random: Option<usize>,
        #[arg(long, requires = "random")]
        seed: Option<u64>,
    },
}

/// What a successful command run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

/// Exit code for malformed proofs and every other failure.
pub const EXIT_MALFORMED: u8 = 2;
/// Exit code for a well-formed proof that does not match the root.
pub const EXIT_INVALID: u8 = 1;

pub fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Root { file } => cmd_root(&file),
        Command::Prove { file, indices, out } => cmd_prove(&file, &indices, &out),
        Command::Verify {
            root,
            proof,
            elements,
        } => cmd_verify(&root, &proof, &elements),
        Command::Compare {
            leaf_count,
            indices,
            random,
            seed,
        } => cmd_compare(leaf_count, indices.as_deref(), random, seed),
    }
}

/// Splits file contents into elements, one per line. A final newline does
/// not start another element.
pub fn parse_elements(contents: &[u8]) -> Vec<&[u8]> {
    let body = contents.strip_suffix(b"\n").unwrap_or(contents);
    if contents.is_empty() {
        return Vec::new();
    }
    body.split(|&b| b == b'\n').collect()
}

pub fn parse_indices(list: &str) -> anyhow::Result<Vec<usize>> {
    list.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse()
                .with_context(|| format!("invalid leaf index {s:?}"))
        })
        .collect()
}

/// `k` distinct indices below `leaf_count`, sorted.
pub fn random_indices(leaf_count: usize, k: usize, seed: u64) -> anyhow::Result<Vec<usize>> {
    ensure!(k > 0, "--random needs at least one leaf");
    ensure!(
        k <= leaf_count,
        "cannot choose {k} distinct leaves from {leaf_count}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices = sample(&mut rng, leaf_count, k).into_vec();
    indices.sort_unstable();
    Ok(indices)
}

fn read_elements(path: &Path) -> anyhow::Result<Vec<Vec<u8>>> {
    let contents = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let elements: Vec<Vec<u8>> = parse_elements(&contents)
        .into_iter()
        .map(<[u8]>::to_vec)
        .collect();
    if elements.is_empty() {
        bail!("{} contains no elements", path.display());
    }
    Ok(elements)
}

pub fn cmd_root(file: &Path) -> anyhow::Result<Outcome> {
    let tree = MerkleTree::build(read_elements(file)?)?;
    Ok(Outcome::ok(format!("{}\n", tree.root())))
}

pub fn cmd_prove(file: &Path, indices: &str, out: &Path) -> anyhow::Result<Outcome> {
    let tree = MerkleTree::build(read_elements(file)?)?;
    let proof = CompactMultiproof::generate(&tree, &parse_indices(indices)?)?;
    let bytes = encode_compact(&proof);
    fs::write(out, &bytes).with_context(|| format!("cannot write {}", out.display()))?;
    Ok(Outcome::ok(format!("{}\n", bytes.len())))
}

pub fn cmd_verify(root: &str, proof: &Path, elements: &Path) -> anyhow::Result<Outcome> {
    let root: Digest = root
        .parse()
        .with_context(|| format!("invalid root digest {root:?}"))?;
    let bytes = fs::read(proof).with_context(|| format!("cannot read {}", proof.display()))?;
    let proof = decode_compact(&bytes).context("malformed proof")?;
    let elements = read_elements(elements)?;
    ensure!(
        elements.len() == proof.leaf_indices().len(),
        "proof covers {} leaves but {} elements were given",
        proof.leaf_indices().len(),
        elements.len()
    );
    let pairs = proof.leaf_indices().iter().copied().zip(elements);
    if proof.verify_elements(pairs, &root)? {
        Ok(Outcome::ok("OK\n".into()))
    } else {
        Ok(Outcome {
            stdout: "INVALID\n".into(),
            code: EXIT_INVALID,
        })
    }
}

pub fn cmd_compare(
    leaf_count: usize,
    indices: Option<&str>,
    random: Option<usize>,
    seed: Option<u64>,
) -> anyhow::Result<Outcome> {
    ensure!(leaf_count > 0, "leaf count must be positive");
    let (indices, seed) = match (indices, random) {
        (Some(list), _) => (parse_indices(list)?, None),
        (None, Some(k)) => {
            let seed = seed.unwrap_or_else(rand::random);
            (random_indices(leaf_count, k, seed)?, Some(seed))
        }
        (None, None) => bail!("either --indices or --random is required"),
    };
    let report = proof_size_report(leaf_count, &indices)?;
    let mut sorted = indices;
    sorted.sort_unstable();
    sorted.dedup();
    Ok(Outcome::ok(render_report(&report, &sorted, seed)))
}

/// Two-decimal percentage, the precision the compare table prints.
pub fn format_percent(value: f64) -> String {
    format!("{value:.2}%")
}

pub fn render_report(report: &SizeReport, indices: &[usize], seed: Option<u64>) -> String {
    let list: Vec<String> = indices.iter().map(usize::to_string).collect();
    let mut out = String::new();
    writeln!(
        out,
        "leaf count: {} (depth {})",
        report.leaf_count, report.depth
    )
    .unwrap();
    writeln!(out, "indices:    {} (k = {})", list.join(","), report.k).unwrap();
    if let Some(seed) = seed {
        writeln!(out, "seed:       {seed}").unwrap();
    }
    writeln!(out).unwrap();
    writeln!(
        out,
        "{:<24} {:>8} {:>10} {:>18}",
        "scheme", "hashes", "bytes", "saved vs single"
    )
    .unwrap();
    let rows = [
        ("single proofs", report.single, 0.0),
        (
            "standard multiproof",
            report.standard,
            report.standard_vs_single(),
        ),
        (
            "compact multiproof",
            report.compact,
            report.compact_vs_single(),
        ),
    ];
    for (name, size, saved) in rows {
        writeln!(
            out,
            "{:<24} {:>8} {:>10} {:>18}",
            name,
            size.hashes,
            size.bytes,
            format_percent(saved)
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    writeln!(
        out,
        "compact vs standard: {} smaller",
        format_percent(report.compact_vs_standard())
    )
    .unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_lines() {
        assert!(parse_elements(b"").is_empty());
        assert_eq!(parse_elements(b"a"), [b"a"]);
        assert_eq!(parse_elements(b"a\n"), [b"a"]);
        assert_eq!(parse_elements(b"a\nb"), [&b"a"[..], b"b"]);
        assert_eq!(parse_elements(b"\n"), [b""]);
        assert_eq!(parse_elements(b"a\n\nb\n"), [&b"a"[..], b"", b"b"]);
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_indices("2,3,8,13").unwrap(), [2, 3, 8, 13]);
        assert_eq!(parse_indices(" 1 , 0").unwrap(), [1, 0]);
        let err = parse_indices("1,x").unwrap_err().to_string();
        assert!(err.contains("\"x\""), "{err}");
        assert!(parse_indices("").is_err());
        assert!(parse_indices("-1").is_err());
    }

    #[test]
    fn seeded_sampling_is_stable() {
        let a = random_indices(1 << 20, 32, 7).unwrap();
        assert_eq!(a, random_indices(1 << 20, 32, 7).unwrap());
        assert_eq!(a.len(), 32);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(random_indices(4, 5, 0).is_err());
        assert!(random_indices(4, 0, 0).is_err());
        assert_eq!(random_indices(4, 4, 1).unwrap(), [0, 1, 2, 3]);
    }

    #[test]
    fn compare_three_of_eight() {
        let out = cmd_compare(8, Some("5,0,2"), None, None).unwrap().stdout;
        assert!(out.contains("indices:    0,2,5 (k = 3)"), "{out}");
        let single = out
            .lines()
            .find(|l| l.starts_with("single proofs"))
            .unwrap();
        let compact = out
            .lines()
            .find(|l| l.starts_with("compact multiproof"))
            .unwrap();
        assert_eq!(single.split_whitespace().nth(2), Some("9"));
        assert_eq!(compact.split_whitespace().nth(2), Some("4"));
    }

    #[test]
    fn compare_rejects_bad_geometry() {
        assert!(cmd_compare(8, Some("8"), None, None).is_err());
        assert!(cmd_compare(8, None, Some(9), Some(1)).is_err());
        assert!(cmd_compare(0, Some("0"), None, None).is_err());
    }
}
