//! Exact computations on face rings of simplicial complexes.
//!
//! The crate covers combinatorial invariants and subdivisions of simplicial
//! complexes, rational simplicial homology, Artinian reductions of
//! Stanley-Reisner rings by linear systems of parameters, weak Lefschetz
//! certificates, and the bigraded cohomology of moment-angle complexes.
//! Every computation is exact over the rationals.

pub mod complex;
pub mod error;
pub mod face_ring;
pub mod homology;
pub mod lefschetz;
pub mod linalg;
pub mod moment_angle;
pub mod report;

pub use complex::{Face, Relabeled, SimplicialComplex, Subdivided};
pub use error::{Error, Result};
pub use face_ring::{ArtinianReduction, LsopMatrix, LsopSample, Monomial};
pub use homology::BettiVector;
pub use lefschetz::{Verdict, WleCertificate};
pub use linalg::{rat, Rational, RationalMatrix, SparseEchelon};
pub use moment_angle::{CohomologyClassRep, HochsterTable};
