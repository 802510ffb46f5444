//! Algebra spec files: UTF-8 `key = value` lines, `#` starts a comment.
//!
//! ```text
//! kind  = group_algebra      # or matrix, trunc_nil_free, direct_sum, quotient
//! field = F3                 # F<p> or Q
//! group = Q8                 # group_algebra
//! n = 2                      # matrix
//! degree = 6                 # trunc_nil_free
//! left = a.alg               # direct_sum, paths relative to this file
//! right = b.alg
//! base = fg.alg              # quotient: algebra file and ideal JSON
//! ideal = radical.json
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use lpi_core::algebra::{AlgebraError, FiniteAlgebra};
use lpi_core::group::group_catalog;
use lpi_core::scalar::FieldSpec;
use thiserror::Error;

use crate::codec::{self, CodecError};

const MAX_NESTING: usize = 8;

#[derive(Debug, Error)]
pub enum AlgFileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Syntax { path: String, line: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{path}: {source}")]
    Algebra { path: String, source: AlgebraError },
    #[error("{path}: {source}")]
    Codec { path: String, source: CodecError },
}

/// A constructed algebra plus every file read to build it, in read order.
#[derive(Debug)]
pub struct LoadedAlgebra {
    pub algebra: FiniteAlgebra,
    pub sources: Vec<(String, Vec<u8>)>,
}

pub fn load_algebra(path: &Path) -> Result<LoadedAlgebra, AlgFileError> {
    let mut sources = Vec::new();
    let algebra = load(path, 0, &mut sources)?;
    Ok(LoadedAlgebra { algebra, sources })
}

fn read(path: &Path, sources: &mut Vec<(String, Vec<u8>)>) -> Result<String, AlgFileError> {
    let name = path.display().to_string();
    let bytes = fs::read(path).map_err(|source| AlgFileError::Io { path: name.clone(), source })?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| AlgFileError::Invalid { path: name.clone(), message: "not valid UTF-8".into() })?;
    sources.push((name, bytes));
    Ok(text)
}

fn load(path: &Path, depth: usize, sources: &mut Vec<(String, Vec<u8>)>) -> Result<FiniteAlgebra, AlgFileError> {
    let name = path.display().to_string();
    if depth > MAX_NESTING {
        return Err(AlgFileError::Invalid { path: name, message: format!("nesting deeper than {MAX_NESTING}") });
    }
    let text = read(path, sources)?;
    let spec = parse_spec(&text).map_err(|(line, message)| AlgFileError::Syntax { path: name.clone(), line, message })?;
    let dir = path.parent().unwrap_or(Path::new("."));
    build(&spec, &name, dir, depth, sources)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spec {
    entries: BTreeMap<String, (usize, String)>,
}

const KEYS: [&str; 9] = ["kind", "field", "group", "n", "degree", "left", "right", "base", "ideal"];

/// Parses the key-value lines; errors carry a 1-based line number.
pub fn parse_spec(text: &str) -> Result<Spec, (usize, String)> {
    let mut entries = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or((i + 1, format!("expected `key = value`, found `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err((i + 1, format!("unknown key `{key}`")));
        }
        if value.is_empty() {
            return Err((i + 1, format!("empty value for `{key}`")));
        }
        if entries.insert(key.to_string(), (i + 1, value.to_string())).is_some() {
            return Err((i + 1, format!("duplicate key `{key}`")));
        }
    }
    Ok(Spec { entries })
}

impl Spec {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }
}

fn build(
    spec: &Spec,
    name: &str,
    dir: &Path,
    depth: usize,
    sources: &mut Vec<(String, Vec<u8>)>,
) -> Result<FiniteAlgebra, AlgFileError> {
    let invalid = |message: String| AlgFileError::Invalid { path: name.to_string(), message };
    let algebra_err = |source| AlgFileError::Algebra { path: name.to_string(), source };
    let require = |key: &str| spec.get(key).ok_or_else(|| invalid(format!("missing key `{key}`")));
    let allowed: &[&str] = match require("kind")? {
        "group_algebra" => &["kind", "field", "group"],
        "matrix" => &["kind", "field", "n"],
        "trunc_nil_free" => &["kind", "field", "degree"],
        "direct_sum" => &["kind", "field", "left", "right"],
        "quotient" => &["kind", "field", "base", "ideal"],
        other => return Err(invalid(format!("unknown kind `{other}`"))),
    };
    if let Some(key) = spec.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(invalid(format!("key `{key}` does not apply to kind `{}`", require("kind")?)));
    }
    let field = match spec.get("field") {
        Some(f) => Some(f.parse::<FieldSpec>().map_err(|e| invalid(e.to_string()))?),
        None => None,
    };
    let need_field = || field.ok_or_else(|| invalid("missing key `field`".into()));
    let int = |key: &str| -> Result<usize, AlgFileError> {
        require(key)?.parse().map_err(|_| invalid(format!("`{key}` must be a nonnegative integer")))
    };
    let path_of = |key: &str| -> Result<PathBuf, AlgFileError> { Ok(dir.join(require(key)?)) };

    let algebra = match require("kind")? {
        "group_algebra" => {
            let g = group_catalog(require("group")?).map_err(|e| invalid(e.to_string()))?;
            FiniteAlgebra::group_algebra(need_field()?, &g)
        }
        "matrix" => FiniteAlgebra::matrix_algebra(need_field()?, int("n")?).map_err(algebra_err)?,
        "trunc_nil_free" => FiniteAlgebra::trunc_nil_free(need_field()?, int("degree")?).map_err(algebra_err)?,
        "direct_sum" => {
            let left = load(&path_of("left")?, depth + 1, sources)?;
            let right = load(&path_of("right")?, depth + 1, sources)?;
            FiniteAlgebra::direct_sum(&left, &right).map_err(algebra_err)?
        }
        _ => {
            let base = load(&path_of("base")?, depth + 1, sources)?;
            let ideal_path = path_of("ideal")?;
            let text = read(&ideal_path, sources)?;
            let codec_err = |source| AlgFileError::Codec { path: ideal_path.display().to_string(), source };
            let value = codec::parse_json(&text).map_err(codec_err)?;
            let ideal = codec::ideal_from_json(&base, &value).map_err(codec_err)?;
            base.quotient(&ideal).map_err(algebra_err)?.0
        }
    };
    if let Some(f) = field {
        if f != algebra.field() {
            return Err(invalid(format!("declared field {f} but the algebra is over {}", algebra.field())));
        }
    }
    Ok(algebra)
}
