//! Three-valued verdicts carrying machine-checkable payloads.

use serde::{Deserialize, Serialize};

use crate::conditions::PRCertificate;
use crate::functionals::FunctionalCertificate;
use crate::linear_pr::{ColumnsCertificate, MixedCertificate};
use crate::oracle::ColoringWitness;
use crate::polyalg::{parse_polynomial, render_polynomial, ParseError, Polynomial, RationalMatrix};
use crate::serde_util;
use crate::threevar::{PowerCertificate, ValuationColoring};

/// Which regularity notion a verdict speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Notion {
    /// Some monochromatic solution under every finite coloring (constant solutions count).
    Plain,
    /// Infinitely many monochromatic solutions under every finite coloring.
    Infinite,
}

/// Verdict status without payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    ProvedPR,
    ProvedNotPR,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::ProvedPR => "ProvedPR",
            Status::ProvedNotPR => "ProvedNotPR",
            Status::Unknown => "Unknown",
        })
    }
}

/// A decision with its witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Verdict {
    ProvedPR {
        notion: Notion,
        certificate: Box<Certificate>,
    },
    ProvedNotPR {
        notion: Notion,
        obstruction: Obstruction,
    },
    Unknown {
        reason: String,
    },
}

impl Verdict {
    pub fn proved(notion: Notion, certificate: Certificate) -> Self {
        Verdict::ProvedPR {
            notion,
            certificate: Box::new(certificate),
        }
    }

    pub fn refuted(notion: Notion, obstruction: Obstruction) -> Self {
        Verdict::ProvedNotPR {
            notion,
            obstruction,
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict::Unknown {
            reason: reason.into(),
        }
    }

    pub fn status(&self) -> Status {
        match self {
            Verdict::ProvedPR { .. } => Status::ProvedPR,
            Verdict::ProvedNotPR { .. } => Status::ProvedNotPR,
            Verdict::Unknown { .. } => Status::Unknown,
        }
    }

    pub fn notion(&self) -> Option<Notion> {
        match self {
            Verdict::ProvedPR { notion, .. } | Verdict::ProvedNotPR { notion, .. } => Some(*notion),
            Verdict::Unknown { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::ProvedPR { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            Verdict::ProvedNotPR { obstruction, .. } => Some(obstruction),
            _ => None,
        }
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        match self {
            Verdict::ProvedPR { certificate, .. } => format!("ProvedPR ({})", certificate.kind()),
            Verdict::ProvedNotPR { obstruction, .. } => {
                format!("ProvedNotPR ({})", obstruction.condition)
            }
            Verdict::Unknown { reason } => format!("Unknown ({reason})"),
        }
    }
}

/// Polynomial as text plus its variable order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyText {
    pub vars: Vec<String>,
    pub text: String,
}

impl PolyText {
    pub fn new(p: &Polynomial, vars: &[String]) -> Self {
        PolyText {
            vars: vars.to_vec(),
            text: render_polynomial(p, vars),
        }
    }

    pub fn parse(&self) -> Result<Polynomial, ParseError> {
        parse_polynomial(&self.text, &self.vars)
    }
}

/// Positive witnesses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Homogeneous system satisfying the columns condition.
    Columns {
        matrix: RationalMatrix,
        columns: ColumnsCertificate,
    },
    /// Constant solution `A(s,…,s) = b`; clause 1 needs `s ∈ ℕ`, clause 2 needs `s ∈ ℤ` plus CC.
    ConstantSolution {
        matrix: RationalMatrix,
        #[serde(with = "serde_util::rat_vec")]
        b: Vec<crate::polyalg::Rational>,
        #[serde(with = "serde_util::big")]
        s: num_bigint::BigInt,
        clause: u8,
        columns: Option<ColumnsCertificate>,
    },
    /// Mixed equality/inequality system.
    Mixed(MixedCertificate),
    /// A verified Rado functional.
    Functional(FunctionalCertificate),
    /// Root of the complete-functional polynomial with sample solutions.
    CompleteRoot(PRCertificate),
    /// Power witness `aⁿ lᵐ = bⁿ` for an H-form factor.
    Power(PowerCertificate),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Columns { .. } => "columns condition",
            Certificate::ConstantSolution { clause: 1, .. } => "natural constant solution",
            Certificate::ConstantSolution { .. } => {
                "integer constant solution with columns condition"
            }
            Certificate::Mixed(_) => "mixed-system columns condition",
            Certificate::Functional(_) => "Rado functional",
            Certificate::CompleteRoot(_) => "complete functional root",
            Certificate::Power(_) => "H-form power witness",
        }
    }
}

/// Negative witness: the violated necessary condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Obstruction {
    pub condition: String,
    pub detail: String,
    pub witness: Option<ObstructionWitness>,
}

impl Obstruction {
    pub fn new(condition: impl Into<String>, detail: impl Into<String>) -> Self {
        Obstruction {
            condition: condition.into(),
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: ObstructionWitness) -> Self {
        self.witness = Some(w);
        self
    }
}

/// Explicit objects backing a negative verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObstructionWitness {
    /// Valuation-residue coloring defined on all of ℕ.
    Valuation(ValuationColoring),
    /// Finite coloring found by search.
    Coloring(ColoringWitness),
}
