//! Disk cache for summation rules.
//!
//! One rule per file, `rule_<n>.json`, holding decimal floats at 17
//! significant digits so the round trip is bit-exact for f64. Writes go
//! through a temp file plus atomic rename; loads validate the rule
//! invariants before returning.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rule::SummationRule;

const CACHE_VERSION: u32 = 1;

pub fn cache_file_name(n: usize) -> String {
    format!("rule_{n}.json")
}

fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// The cache-file JSON form of a rule: decimal floats at 17 significant
/// digits, newline-terminated.
pub fn rule_to_json(rule: &SummationRule) -> String {
    let mut body = String::new();
    body.push_str(&format!(
        "{{\n  \"version\": {CACHE_VERSION},\n  \"n\": {},\n  \"nodes\": [\n",
        rule.n()
    ));
    for (i, z) in rule.nodes().iter().enumerate() {
        let sep = if i + 1 == rule.n() { "" } else { "," };
        body.push_str(&format!("    {}{sep}\n", format_float(*z)));
    }
    body.push_str("  ],\n  \"weights\": [\n");
    for (i, w) in rule.weights().iter().enumerate() {
        let sep = if i + 1 == rule.n() { "" } else { "," };
        body.push_str(&format!("    {}{sep}\n", format_float(*w)));
    }
    body.push_str("  ]\n}\n");
    body
}

/// Serializes a rule to its cache file under `dir`.
pub fn rule_cache_store(rule: &SummationRule, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(cache_file_name(rule.n()));
    let body = rule_to_json(rule);

    let tmp = dir.join(format!("{}.tmp.{}", cache_file_name(rule.n()), std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(body.as_bytes())?;
        file.sync_all()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

#[derive(Deserialize)]
struct CacheFile {
    version: u32,
    n: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Loads the cached n-point rule from `dir`, validating invariants.
pub fn rule_cache_load(n: usize, dir: &Path) -> Result<SummationRule> {
    let path = dir.join(cache_file_name(n));
    let text = match fs::read_to_string(&path) {
        Ok(text) => text,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => {
            return Err(Error::CacheNotFound { path });
        }
        Err(err) => return Err(err.into()),
    };
    let parsed: CacheFile = serde_json::from_str(&text).map_err(|err| Error::CacheCorrupt {
        path: path.clone(),
        reason: err.to_string(),
    })?;
    if parsed.version != CACHE_VERSION {
        return Err(Error::CacheCorrupt {
            path,
            reason: format!("unsupported cache version {}", parsed.version),
        });
    }
    if parsed.n != n {
        return Err(Error::CacheCorrupt {
            path,
            reason: format!("file claims n = {}, expected {n}", parsed.n),
        });
    }
    SummationRule::from_parts(parsed.n, parsed.nodes, parsed.weights).map_err(|err| {
        Error::CacheCorrupt {
            path,
            reason: err.to_string(),
        }
    })
}
