//! Machine-readable certificates. Rationals are written as `"p/q"` strings
//! (integers as plain `"p"`), so a certificate round-trips exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::certifier::{EnumerationSummary, RatioBoundCertificate};
use crate::graph::SpectrumReport;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Serde adapter for a single [`Rational`](crate::exact_linalg::Rational).
pub mod rational_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::exact_linalg::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(|_| D::Error::custom(format!("bad rational {text:?}")))
    }
}

/// Serde adapter for vectors of vectors of rationals.
pub mod rational_rows {
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact_linalg::Rational;

    pub fn serialize<S: Serializer>(value: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = value
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let text = Vec::<Vec<String>>::deserialize(d)?;
        text.iter()
            .map(|row| {
                row.iter()
                    .map(|t| t.parse().map_err(|_| D::Error::custom(format!("bad rational {t:?}"))))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Certified,
    Failed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// A search budget or the enumeration rank cap was exhausted.
    Budget,
    /// Anything else that aborted the pipeline.
    Pipeline,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineError {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub family: String,
    pub parameters: BTreeMap<String, String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<RatioBoundCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumerationSummary>,
    /// Every maximum independent set, as sorted vertex labels.
    pub max_independent_sets: Vec<Vec<String>>,
    pub identity_checks: Vec<IdentityCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<PipelineError>,
    /// Stage timings in milliseconds; only filled on request because they
    /// differ between runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
    pub tool_version: String,
}

impl Certificate {
    pub fn new(family: impl Into<String>, parameters: BTreeMap<String, String>) -> Self {
        Self {
            family: family.into(),
            parameters,
            status: Status::Failed,
            spectrum: None,
            ratio: None,
            enumeration: None,
            max_independent_sets: Vec::new(),
            identity_checks: Vec::new(),
            notes: Vec::new(),
            error: None,
            timings: None,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.identity_checks.push(IdentityCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn all_passed(&self) -> bool {
        self.identity_checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&IdentityCheck> {
        self.identity_checks.iter().filter(|c| !c.passed).collect()
    }

    /// Sets the status from the checks and the error slot.
    pub fn finalize(&mut self) {
        self.status = if self.error.is_none() && !self.identity_checks.is_empty() && self.all_passed() {
            Status::Certified
        } else {
            Status::Failed
        };
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
