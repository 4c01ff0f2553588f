use std::fmt;

use serde::{Deserialize, Serialize};

use super::catalog::{ClaimId, PropertyId};
use crate::format::{compact, SpaceDocument};
use crate::pointset::PointSet;
use crate::space::ConvergenceSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// What a check was about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subject {
    Property(PropertyId),
    Claim(ClaimId),
}

impl Subject {
    pub fn code(self) -> &'static str {
        match self {
            Subject::Property(p) => p.code(),
            Subject::Claim(c) => c.code(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Subject::Property(p) => p.name(),
            Subject::Claim(c) => c.name(),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A concrete counterexample: the space, the subsets involved and a one-line
/// explanation. It carries enough to re-run the failing instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub space: ConvergenceSpace,
    /// Second factor, for product checks.
    pub other: Option<ConvergenceSpace>,
    pub sets: Vec<(&'static str, PointSet)>,
    /// Iteration count or other integer parameter of the instance.
    pub parameter: Option<usize>,
    pub explanation: String,
}

impl Witness {
    pub fn new(space: ConvergenceSpace, sets: Vec<(&'static str, PointSet)>, explanation: String) -> Self {
        Witness { space, other: None, sets, parameter: None, explanation }
    }

    pub fn with_parameter(mut self, k: usize) -> Self {
        self.parameter = Some(k);
        self
    }

    pub fn set(&self, role: &str) -> Option<PointSet> {
        self.sets.iter().find(|(r, _)| *r == role).map(|(_, s)| *s)
    }

    /// Single-line rendering for text reports.
    pub fn to_line(&self) -> String {
        let mut parts = vec![compact(&self.space)];
        if let Some(o) = &self.other {
            parts.push(format!("other=[{}]", compact(o)));
        }
        for (role, set) in &self.sets {
            parts.push(format!("{role}={{{}}}", self.space.set_labels(set).join(",")));
        }
        if let Some(k) = self.parameter {
            parts.push(format!("k={k}"));
        }
        parts.push(format!("explanation={:?}", self.explanation));
        parts.join(" ")
    }

    pub fn to_doc(&self) -> WitnessDoc {
        WitnessDoc {
            space: SpaceDocument::from_space("witness", &self.space),
            other: self.other.as_ref().map(|o| SpaceDocument::from_space("factor", o)),
            sets: self
                .sets
                .iter()
                .map(|(role, set)| NamedSet {
                    role: role.to_string(),
                    members: self.space.set_labels(set).iter().map(|s| s.to_string()).collect(),
                })
                .collect(),
            parameter: self.parameter,
            explanation: self.explanation.clone(),
        }
    }
}

/// Serializable form of a [`Witness`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub space: SpaceDocument,
    pub other: Option<SpaceDocument>,
    pub sets: Vec<NamedSet>,
    pub parameter: Option<usize>,
    pub explanation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSet {
    pub role: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub subject: Subject,
    pub status: Status,
    /// Present exactly when `status` is `Fail`.
    pub witness: Option<Witness>,
}

impl CheckOutcome {
    pub fn pass(subject: Subject) -> Self {
        CheckOutcome { subject, status: Status::Pass, witness: None }
    }

    pub fn fail(subject: Subject, witness: Witness) -> Self {
        CheckOutcome { subject, status: Status::Fail, witness: Some(witness) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
