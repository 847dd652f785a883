//! Input documents describing a root datum, in TOML or JSON.
//!
//! ```toml
//! matrix = [[2, -2], [-2, 2]]
//! # Optional: the lattice Y and the simple (co)roots in its standard basis.
//! rank_Y = 2
//! coroots = [[1, 0], [0, 1]]
//! roots = [[2, -2], [-2, 2]]
//! ```
//!
//! Without `rank_Y`, `coroots` and `roots` the simply connected datum is used.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{simply_connected_datum, validate_matrix, RootDataError, RootDatum};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("cannot parse datum document: {0}")]
    Parse(String),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentFormat {
    Toml,
    Json,
}

impl DocumentFormat {
    /// From a file extension; anything other than `.json` is read as TOML.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => DocumentFormat::Json,
            _ => DocumentFormat::Toml,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDocument {
    pub matrix: Vec<Vec<i64>>,
    #[serde(rename = "rank_Y", default, skip_serializing_if = "Option::is_none")]
    pub rank_y: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coroots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl DatumDocument {
    pub fn parse(text: &str, format: DocumentFormat) -> Result<Self, IoError> {
        match format {
            DocumentFormat::Toml => toml::from_str(text).map_err(|e| IoError::Parse(e.to_string())),
            DocumentFormat::Json => serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string())),
        }
    }

    /// Validates the matrix and builds the datum.
    pub fn to_datum(&self) -> Result<RootDatum, IoError> {
        let mut a = validate_matrix(&self.matrix)?;
        if let Some(labels) = &self.labels {
            if labels.len() != a.rank() {
                return Err(IoError::Parse(format!("expected {} labels, got {}", a.rank(), labels.len())));
            }
            a = a.with_labels(labels.clone());
        }
        match (&self.rank_y, &self.coroots, &self.roots) {
            (None, None, None) => Ok(simply_connected_datum(&a)),
            (Some(n), Some(c), Some(r)) => Ok(RootDatum::new(a, *n, c.clone(), r.clone())?),
            _ => Err(IoError::Parse("rank_Y, coroots and roots must be given together".into())),
        }
    }
}

/// Reads and validates a datum document from disk.
pub fn load_datum(path: &Path) -> Result<RootDatum, IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| IoError::Read { path: path.display().to_string(), message: e.to_string() })?;
    DatumDocument::parse(&text, DocumentFormat::from_path(path))?.to_datum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_and_json_agree() {
        let t = DatumDocument::parse("matrix = [[2, -1], [-1, 2]]\n", DocumentFormat::Toml).unwrap();
        let j = DatumDocument::parse(r#"{"matrix": [[2, -1], [-1, 2]]}"#, DocumentFormat::Json).unwrap();
        assert_eq!(t, j);
        assert_eq!(t.to_datum().unwrap().rank_y(), 2);
    }

    #[test]
    fn explicit_lattice() {
        let doc = r#"{"matrix": [[2,-2],[-2,2]], "rank_Y": 3,
            "coroots": [[1,0,0],[0,1,0]], "roots": [[2,-2,1],[-2,2,0]]}"#;
        let s = DatumDocument::parse(doc, DocumentFormat::Json).unwrap().to_datum().unwrap();
        assert!(s.is_free());
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = DatumDocument::parse("matrix = [[2, 1], [-1, 2]]\n", DocumentFormat::Toml).unwrap();
        assert!(matches!(bad.to_datum(), Err(IoError::RootData(_))));
        let partial = DatumDocument::parse("matrix = [[2]]\nrank_Y = 1\n", DocumentFormat::Toml).unwrap();
        assert!(matches!(partial.to_datum(), Err(IoError::Parse(_))));
        assert!(DatumDocument::parse("matrix = 3", DocumentFormat::Toml).is_err());
    }
}
