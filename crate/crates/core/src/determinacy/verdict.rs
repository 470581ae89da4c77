use std::fmt;

use serde::Serialize;

use crate::algebra::{CoordChange, Exponent};
use crate::diagram::Diagram;

/// Evidence attached to a verdict: enough to reproduce it from the inputs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Exponent>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_dimension: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub axis_vertices: Vec<Exponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coord_change: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Certificate {
    pub fn reason(reason: impl Into<String>) -> Self {
        Certificate {
            reason: reason.into(),
            ..Default::default()
        }
    }

    pub(crate) fn with_diagram(mut self, d: &Diagram) -> Self {
        self.vertices = Some(d.vertices().to_vec());
        self.dimension = Some(d.quotient_dimension());
        self
    }

    pub(crate) fn with_coord_change(mut self, c: &CoordChange) -> Self {
        self.coord_change = Some(
            c.matrix()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        );
        self
    }
}

/// Three-valued decision. `UnknownAtBound` never means no.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    CertifiedYes {
        certificate: Certificate,
    },
    CertifiedNo {
        certificate: Certificate,
    },
    UnknownAtBound {
        bound: u32,
        certificate: Certificate,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    CertifiedYes,
    CertifiedNo,
    UnknownAtBound,
}

impl Verdict {
    pub fn yes(certificate: Certificate) -> Self {
        Verdict::CertifiedYes { certificate }
    }

    pub fn no(certificate: Certificate) -> Self {
        Verdict::CertifiedNo { certificate }
    }

    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::CertifiedYes { .. } => VerdictKind::CertifiedYes,
            Verdict::CertifiedNo { .. } => VerdictKind::CertifiedNo,
            Verdict::UnknownAtBound { .. } => VerdictKind::UnknownAtBound,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.kind() == VerdictKind::CertifiedYes
    }

    pub fn is_no(&self) -> bool {
        self.kind() == VerdictKind::CertifiedNo
    }

    pub fn is_unknown(&self) -> bool {
        self.kind() == VerdictKind::UnknownAtBound
    }

    pub fn certificate(&self) -> &Certificate {
        match self {
            Verdict::CertifiedYes { certificate }
            | Verdict::CertifiedNo { certificate }
            | Verdict::UnknownAtBound { certificate, .. } => certificate,
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::CertifiedYes => "CertifiedYes",
            VerdictKind::CertifiedNo => "CertifiedNo",
            VerdictKind::UnknownAtBound => "UnknownAtBound",
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::UnknownAtBound { bound, certificate } => {
                write!(f, "UnknownAtBound({bound}): {}", certificate.reason)
            }
            v => write!(f, "{}: {}", v.kind(), v.certificate().reason),
        }
    }
}
