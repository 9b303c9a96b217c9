use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::doc::{DocError, DocumentDoc, WorkbenchDocument};
use crate::fixtures::{frame_by_name, FRAME_NAMES};
use crate::space::{Space, StructuredMap};

/// The outcome of one claim over a finite universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub passed: bool,
    /// Cases checked.
    pub cases: u64,
    /// Names of the spaces the claim was quantified over.
    pub universe: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// The objects and maps of a failing case, as a loadable document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub description: String,
    pub document: DocumentDoc,
}

impl Counterexample {
    /// Re-validates the payload.
    pub fn replay(&self) -> Result<WorkbenchDocument, DocError> {
        WorkbenchDocument::from_doc(self.document.clone())
    }
}

impl VerificationReport {
    pub fn pass(claim: &str, cases: u64, universe: Vec<String>) -> Self {
        VerificationReport { claim: claim.to_string(), passed: true, cases, universe, counterexample: None }
    }

    pub fn fail(claim: &str, cases: u64, universe: Vec<String>, counterexample: Counterexample) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            passed: false,
            cases,
            universe,
            counterexample: Some(counterexample),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} cases={} universe=[{}]", self.claim, self.cases, self.universe.join(", "))?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {}", c.description)?;
        }
        Ok(())
    }
}

/// Collects the spaces and maps of a failing case under role names.
#[derive(Debug, Default)]
pub(crate) struct Witness {
    doc: WorkbenchDocument,
}

impl Witness {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Stock frames are referenced by name, others are written inline.
    pub(crate) fn space(mut self, name: &str, space: &Arc<Space>) -> Self {
        let stock = FRAME_NAMES.iter().find(|n| frame_by_name(n).as_ref() == Some(&**space.frame()));
        self.doc.add_space(name, stock.copied(), space.clone());
        self
    }

    /// Adds a map; its source and target must already be present under `source` and `target`.
    pub(crate) fn map(mut self, name: &str, source: &str, target: &str, map: &StructuredMap) -> Self {
        self.doc.add_map(name, source, target, map.clone());
        self
    }

    pub(crate) fn finish(self, description: impl Into<String>) -> Counterexample {
        Counterexample { description: description.into(), document: self.doc.to_doc() }
    }
}
