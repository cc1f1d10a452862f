//! JSON documents shared by the command-line tool and the dataset sidecars.
//!
//! Rationals are always written as `"p/q"` strings. Inputs may also use
//! decimal literals, which are read exactly.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::majorization::MajorizationReport;
use crate::rational::{parse_rational, to_ratio_string};
use crate::trumping::{trumps_with, TrumpCertificate};
use crate::vector::{normalize, ProbVec};

/// `{"name": optional string, "components": [string, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub components: Vec<String>,
}

impl VectorDocument {
    pub fn from_prob_vec(name: Option<String>, v: &ProbVec) -> Self {
        VectorDocument {
            name,
            components: v.to_strings(),
        }
    }

    /// With `normalize_input`, raw nonnegative weights are divided by their
    /// sum; otherwise they must already sum to exactly one.
    pub fn to_prob_vec(&self, normalize_input: bool) -> Result<ProbVec> {
        let comps = self
            .components
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        if normalize_input {
            normalize(&comps)
        } else {
            ProbVec::new(comps)
        }
    }
}

/// Serialized [`TrumpCertificate`]. `gaps` and `tight_indices` describe
/// `x ⊗ z` against `y ⊗ z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
    pub gaps: Vec<String>,
    pub tight_indices: Vec<usize>,
    pub all_strict: bool,
}

impl From<&TrumpCertificate> for CertificateDocument {
    fn from(c: &TrumpCertificate) -> Self {
        CertificateDocument {
            x: c.x.to_strings(),
            y: c.y.to_strings(),
            z: c.z.to_strings(),
            gaps: c.report.prefix_gaps.iter().map(to_ratio_string).collect(),
            tight_indices: c.report.tight_indices.clone(),
            all_strict: c.all_strict,
        }
    }
}

impl CertificateDocument {
    /// Re-derives the certificate from `x`, `y`, `z` and checks that the
    /// stored gaps and flags match the recomputed ones.
    pub fn verify(&self) -> Result<TrumpCertificate> {
        let x = ProbVec::from_strs(&self.x)?;
        let y = ProbVec::from_strs(&self.y)?;
        let z = ProbVec::from_strs(&self.z)?;
        let cert = trumps_with(&x, &y, &z)?.ok_or(Error::NotTrumped)?;
        if CertificateDocument::from(&cert) != *self {
            return Err(Error::VerificationFailed(
                "stored gaps or flags differ from the recomputed certificate".into(),
            ));
        }
        Ok(cert)
    }
}

/// `{"verdict", "gaps", "tight_indices"}` for a majorization report.
pub fn report_json(r: &MajorizationReport) -> Value {
    json!({
        "verdict": r.verdict,
        "gaps": r.prefix_gaps.iter().map(to_ratio_string).collect::<Vec<_>>(),
        "tight_indices": r.tight_indices,
    })
}

pub fn certificate_json(c: &TrumpCertificate) -> Value {
    serde_json::to_value(CertificateDocument::from(c)).expect("plain data serializes")
}
