use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::SimplicialComplex;
use crate::error::{Error, Result};

/// Structured form of a complex: `{"vertices": m, "facets": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl From<&SimplicialComplex> for ComplexDocument {
    fn from(c: &SimplicialComplex) -> Self {
        Self {
            vertices: c.m(),
            facets: c.facets().to_vec(),
        }
    }
}

impl TryFrom<ComplexDocument> for SimplicialComplex {
    type Error = Error;

    fn try_from(doc: ComplexDocument) -> Result<Self> {
        SimplicialComplex::from_facets(doc.vertices, doc.facets)
    }
}

/// Parses the text format: a line holding `m`, then one facet per line.
///
/// Blank lines and anything after `#` are ignored.
pub fn parse_text(text: &str) -> Result<SimplicialComplex> {
    let mut m = None;
    let mut facets = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse().map_err(|_| Error::Parse {
                    line: n + 1,
                    message: format!("`{tok}` is not a non-negative integer"),
                })
            })
            .collect::<Result<_>>()?;
        if m.is_none() {
            if nums.len() != 1 {
                return Err(Error::Parse {
                    line: n + 1,
                    message: "first line must hold only the vertex count".into(),
                });
            }
            m = Some(nums[0]);
        } else {
            facets.push(nums);
        }
    }
    let m = m.ok_or(Error::Parse {
        line: 0,
        message: "missing vertex count".into(),
    })?;
    SimplicialComplex::from_facets(m, facets)
}

impl SimplicialComplex {
    /// Canonical text form: sorted facets with sorted vertices.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.m);
        for f in &self.facets {
            let parts: Vec<String> = f.iter().map(usize::to_string).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }

    /// SHA-256 of the canonical text form, in lowercase hex.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
