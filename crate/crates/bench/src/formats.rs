//! On-disk formats.
//!
//! * clopen set / tree: `depth=d` on the first line, the little-endian hex
//!   leaf vector on the second;
//! * tree directory: every `*.tree` file, in file-name order;
//! * cover: JSON array of 0/1 strings;
//! * family: JSON array whose members are element-index arrays or hex
//!   subset strings.

use std::fs;
use std::path::{Path, PathBuf};

use cantor_star_core::group::{FiniteAbelianGroup, GroupSubset, SetFamily};
use cantor_star_core::{BinaryWord, BitVec, ClopenSet, ClosedTree, Cover};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.into(),
        source,
    })
}

fn parse_err(path: &Path, message: impl ToString) -> FormatError {
    FormatError::Parse {
        path: path.into(),
        message: message.to_string(),
    }
}

pub fn clopen_to_text(set: &ClopenSet) -> String {
    format!("depth={}\n{}\n", set.depth(), set.leaves().to_hex())
}

pub fn clopen_from_text(text: &str) -> Result<ClopenSet, String> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or("empty file")?;
    let depth: usize = header
        .strip_prefix("depth=")
        .ok_or_else(|| format!("expected depth=<d>, found {header:?}"))?
        .parse()
        .map_err(|e| format!("bad depth: {e}"))?;
    if depth > cantor_star_core::cantor::MAX_DEPTH {
        return Err(format!("depth {depth} is too large"));
    }
    let hex = lines.next().ok_or("missing leaf vector")?;
    if lines.next().is_some() {
        return Err("trailing content after the leaf vector".into());
    }
    let leaves = BitVec::from_hex(hex, 1 << depth).map_err(|e| e.to_string())?;
    ClopenSet::from_leaves(depth, leaves).map_err(|e| e.to_string())
}

pub fn read_clopen(path: &Path) -> Result<ClopenSet, FormatError> {
    clopen_from_text(&read(path)?).map_err(|m| parse_err(path, m))
}

pub fn read_tree(path: &Path) -> Result<ClosedTree, FormatError> {
    read_clopen(path).map(ClosedTree::new)
}

pub fn write_clopen(path: &Path, set: &ClopenSet) -> Result<(), FormatError> {
    fs::write(path, clopen_to_text(set)).map_err(|source| FormatError::Io {
        path: path.into(),
        source,
    })
}

/// `*.tree` files of a directory, sorted by name.
pub fn read_tree_dir(dir: &Path) -> Result<Vec<(PathBuf, ClosedTree)>, FormatError> {
    let entries = fs::read_dir(dir).map_err(|source| FormatError::Io {
        path: dir.into(),
        source,
    })?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|source| FormatError::Io {
            path: dir.into(),
            source,
        })?;
        let path = entry.path();
        if path.extension().is_some_and(|e| e == "tree") {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| read_tree(&p).map(|t| (p, t)))
        .collect()
}

pub fn words_to_json(words: &[BinaryWord]) -> serde_json::Value {
    words.iter().map(|w| w.to_bit_string()).collect()
}

pub fn words_from_json(text: &str) -> Result<Vec<BinaryWord>, String> {
    let raw: Vec<String> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    raw.iter()
        .map(|s| s.parse::<BinaryWord>().map_err(|e| e.to_string()))
        .collect()
}

pub fn read_words(path: &Path) -> Result<Vec<BinaryWord>, FormatError> {
    words_from_json(&read(path)?).map_err(|m| parse_err(path, m))
}

pub fn read_cover(path: &Path) -> Result<Cover, FormatError> {
    read_words(path).map(Cover::new)
}

pub fn write_words(path: &Path, words: &[BinaryWord]) -> Result<(), FormatError> {
    let text = serde_json::to_string_pretty(&words_to_json(words)).expect("strings serialize");
    fs::write(path, text + "\n").map_err(|source| FormatError::Io {
        path: path.into(),
        source,
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawMember {
    Elements(Vec<usize>),
    Hex(String),
}

pub fn family_from_json(group: &FiniteAbelianGroup, text: &str) -> Result<SetFamily, String> {
    let raw: Vec<RawMember> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let members = raw
        .into_iter()
        .map(|m| match m {
            RawMember::Elements(xs) => GroupSubset::from_indices(group, &xs),
            RawMember::Hex(h) => GroupSubset::from_hex(group, &h),
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    SetFamily::new(group, members).map_err(|e| e.to_string())
}

pub fn read_family(group: &FiniteAbelianGroup, path: &Path) -> Result<SetFamily, FormatError> {
    family_from_json(group, &read(path)?).map_err(|m| parse_err(path, m))
}

pub fn family_to_json(family: &SetFamily) -> serde_json::Value {
    family
        .members()
        .iter()
        .map(|a| a.elements().map(|x| x.index()).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into()
}
