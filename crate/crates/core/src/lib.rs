//! Exact majorization and trumping (catalytic majorization) between
//! probability vectors.
//!
//! Every verdict returned by this crate is decided in exact rational
//! arithmetic. Floating point only appears inside the catalyst search in
//! [`solver`], and anything it finds is re-checked exactly before it is
//! reported as certified.
//!
//! ```
//! use trumpkit::{majorizes, trumps_with, ProbVec};
//!
//! let x = ProbVec::parse_list("0.4,0.4,0.1,0.1").unwrap();
//! let y = ProbVec::parse_list("0.5,0.25,0.25,0").unwrap();
//! let z = ProbVec::parse_list("0.6,0.4").unwrap();
//!
//! assert!(!majorizes(&x, &y).unwrap().verdict);
//! assert!(trumps_with(&x, &y, &z).unwrap().is_some());
//! ```

pub mod error;
pub mod explorer;
pub mod majorization;
pub mod rational;
pub mod report;
pub mod solver;
pub mod trumping;
pub mod vector;

pub use error::{Error, Result};
pub use explorer::{sample_region, write_region_csv, RegionRecord};
pub use majorization::{
    ds_witness, majorizes, majorizes_alt, sample_s, AltVerdicts, DoublyStochasticMatrix, DsWitness,
    MajorizationReport, TTransform,
};
pub use rational::{parse_rational, Rational};
pub use report::{CertificateDocument, VectorDocument};
pub use solver::{
    find_catalyst, h_value, minimize_f, rationalize, ray_probe, RayBound, RayProbe, SearchConfig,
    SearchResult, SearchStatus,
};
pub use trumping::{
    boundary_witness, classify, geometric_catalyst, interior_radius, nonuniform_demo,
    separating_example, trumps_with, CatalysisClassification, GeometricCatalyst, SeparationWitness,
    TrumpCertificate,
};
pub use vector::{normalize, pad_zeros, sort_desc, tensor, ProbVec, SortedProbVec};
