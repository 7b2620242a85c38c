//! Optional `key = value` config files. Keys are long flag names without
//! the leading dashes; `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;

use cmpl_core::{Error, Result};

pub fn load(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("reading {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", n + 1)))?;
        let v = v.trim().trim_matches('"');
        out.insert(k.trim().replace('_', "-"), v.to_string());
    }
    Ok(out)
}
