//! Fan input: the JSON document, the plain `x y` line format, and built-in
//! names.

use std::path::Path;

use serde::{Deserialize, Serialize};
use toric_additive_core::builtins::builtin;
use toric_additive_core::lattice::{primitive, LatticeVec};
use toric_additive_core::{Error, Fan2};

/// `{"rays": [[x, y], ...], "name"?: str, "normalize_rays"?: bool}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub rays: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalize_rays: Option<bool>,
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON fan document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: expected two integers `x y`, found {text:?}")]
    Line { line: usize, text: String },
    #[error("fan document has no rays")]
    Empty,
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("invalid fan: {0}")]
    Fan(#[from] Error),
}

impl InputError {
    /// Invalid fans exit with 2, everything else here is a parse error.
    pub fn exit_code(&self) -> i32 {
        match self {
            InputError::Fan(_) => 2,
            _ => 1,
        }
    }
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse_document(text: &str) -> Result<FanDocument, InputError> {
    let doc = if text.trim_start().starts_with('{') {
        serde_json::from_str::<FanDocument>(text)?
    } else {
        parse_lines(text)?
    };
    if doc.rays.is_empty() {
        return Err(InputError::Empty);
    }
    Ok(doc)
}

/// One ray per line as `x y`; blank lines and `#` comments are skipped.
pub fn parse_lines(text: &str) -> Result<FanDocument, InputError> {
    let mut rays = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || InputError::Line {
            line: i + 1,
            text: raw.to_string(),
        };
        let nums: Vec<i64> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let [x, y] = nums[..] else { return Err(bad()) };
        rays.push([x, y]);
    }
    Ok(FanDocument {
        rays,
        name: None,
        normalize_rays: None,
    })
}

pub fn read_document(path: &Path) -> Result<FanDocument, InputError> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut doc = parse_document(&text)?;
    if doc.name.is_none() {
        doc.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(doc)
}

pub fn example_document(name: &str) -> Result<FanDocument, InputError> {
    let (name, rays) = builtin(name).ok_or_else(|| InputError::UnknownExample(name.to_string()))?;
    Ok(FanDocument {
        rays,
        name: Some(name),
        normalize_rays: None,
    })
}

/// Validates the document, dividing rays by their content first when
/// `normalize` is set.
pub fn build(doc: &FanDocument, normalize: bool) -> Result<Fan2, InputError> {
    let normalize = normalize || doc.normalize_rays.unwrap_or(false);
    let mut rays = Vec::with_capacity(doc.rays.len());
    for &r in &doc.rays {
        let v = LatticeVec::from(r);
        rays.push(if normalize { primitive(&v)?.0 } else { v });
    }
    Ok(Fan2::new(rays)?)
}
