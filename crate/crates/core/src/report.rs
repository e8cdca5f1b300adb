//! Structured documents for certificates and reports.
//!
//! Rationals are written as strings (`"3"`, `"-2/5"`) so that no precision
//! is lost in JSON.

use serde::{Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::face_ring::{ArtinianReduction, LsopMatrix, LsopSample};
use crate::linalg::Rational;

pub fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub fn ser_lsop<S: Serializer>(l: &LsopMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    l.to_strings().serialize(s)
}

/// Everything needed to reproduce an Artinian reduction computation.
#[derive(Clone, Debug, Serialize)]
pub struct ArtinianCertificate {
    pub complex_hash: String,
    pub vertices: usize,
    pub d: usize,
    #[serde(serialize_with = "ser_lsop")]
    pub lsop: LsopMatrix,
    pub seed: u64,
    pub lsop_tries: usize,
    pub dims: Vec<usize>,
    pub dim_above_top: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub socle: Option<Vec<usize>>,
}

impl ArtinianCertificate {
    pub fn new(c: &SimplicialComplex, sample: &LsopSample, with_socle: bool) -> Result<Self> {
        let red = ArtinianReduction::new(c, &sample.lsop)?;
        Ok(Self {
            complex_hash: c.content_hash(),
            vertices: c.m(),
            d: c.rank(),
            lsop: sample.lsop.clone(),
            seed: sample.seed,
            lsop_tries: sample.tries,
            dims: red.dims(),
            dim_above_top: red.dim_above_top(),
            socle: with_socle.then(|| red.socle_dims()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cross_polytope_boundary;
    use crate::face_ring::random_lsop;

    #[test]
    fn certificate_serializes_rationals_as_strings() {
        let oct = cross_polytope_boundary(3).unwrap();
        let s = random_lsop(&oct, 3, 1, 50).unwrap();
        let cert = ArtinianCertificate::new(&oct, &s, true).unwrap();
        let v = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["dims"], serde_json::json!([1, 3, 3, 1]));
        assert_eq!(v["socle"], serde_json::json!([0, 0, 0, 1]));
        assert!(v["lsop"][0][0].is_string());
        assert_eq!(v["complex_hash"].as_str().unwrap().len(), 64);
    }
}
