use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use fpgroups::permrep::{Perm, PermGroup};
use fpgroups::presentation::catalog;
use fpgroups::{Presentation, Word};

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub source: String,
    pub sha256: String,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads a presentation from a file, `-` (standard input), or
/// `catalog:NAME[:p1,p2,..]`.
pub fn load(source: &str) -> Result<(Presentation, InputDigest)> {
    let text = if let Some(entry) = source.strip_prefix("catalog:") {
        let (name, params) = match entry.split_once(':') {
            Some((n, p)) => (n, p),
            None => (entry, ""),
        };
        let params: Vec<i64> = params
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<i64>().with_context(|| format!("bad catalog parameter `{s}`")))
            .collect::<Result<_>>()?;
        catalog(name, &params)?.presentation.serialize()
    } else if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(source).with_context(|| format!("cannot read {source}"))?
    };
    let p = Presentation::parse(&text).with_context(|| format!("cannot parse {source}"))?;
    let d = InputDigest {
        source: source.to_string(),
        sha256: digest(text.as_bytes()),
    };
    Ok((p, d))
}

pub fn words(p: &Presentation, texts: &[String]) -> Result<Vec<Word>> {
    texts
        .iter()
        .map(|t| p.word(t).with_context(|| format!("bad word `{t}`")))
        .collect()
}

pub fn perms(texts: &[String], degree: Option<usize>) -> Result<Vec<Perm>> {
    let n = degree.unwrap_or_else(|| texts.iter().map(|t| Perm::max_point(t)).max().unwrap_or(1).max(1));
    texts
        .iter()
        .map(|t| Perm::parse_cycles(t, n).map_err(Into::into))
        .collect()
}

pub fn group(texts: &[String], degree: Option<usize>) -> Result<PermGroup> {
    if texts.is_empty() {
        bail!("a permutation group needs at least one generator");
    }
    Ok(PermGroup::new(
        degree.unwrap_or_else(|| texts.iter().map(|t| Perm::max_point(t)).max().unwrap_or(1).max(1)),
        perms(texts, degree)?,
    )?)
}

/// Writes a presentation and returns the digest of what was written.
pub fn write_presentation(path: &Path, p: &Presentation) -> Result<InputDigest> {
    let text = format!("{}\n", p.serialize());
    fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(InputDigest {
        source: path.display().to_string(),
        sha256: digest(text.as_bytes()),
    })
}
