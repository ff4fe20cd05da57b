//! JSON reports written by `--json`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coxeter::{CoxeterMatrix, Relator, VerificationReport};
use crate::permgroup::{DegeneracyIssue, DihedralWitness};
use crate::quantum::MeasurementResult;

use super::document::FORMAT_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub format_version: u32,
    pub toolkit_version: String,
    /// Arguments after the program name, verbatim.
    pub command: Vec<String>,
    /// `sha256:<hex>` of the pipeline file bytes.
    pub input_digest: String,
    pub results: Results,
}

impl ReportDocument {
    pub fn new(command: Vec<String>, input: &[u8], results: Results) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            input_digest: format!("sha256:{}", hex::encode(Sha256::digest(input))),
            results,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Results {
    Lift(LiftResults),
    Group(GroupResults),
    Coxeter(CoxeterResults),
    Verify(VerificationReport),
    Run(RunResults),
    Qrun(QrunResults),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftResults {
    pub registers: Vec<u32>,
    pub offsets: Vec<u32>,
    pub total_width: u32,
    pub steps: Vec<StepSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepSummary {
    pub symbol: String,
    pub reads_register: usize,
    pub writes_register: usize,
    pub involution: bool,
    pub identity: bool,
    pub moved_points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupResults {
    pub order: usize,
    #[serde(deserialize_with = "crate::keyed::deserialize")]
    pub order_histogram: BTreeMap<u64, usize>,
    pub nondegenerate: bool,
    pub degeneracy: Vec<DegeneracyIssue>,
    pub dihedral_8: Option<DihedralWitness>,
    /// Shortest word of each element, in discovery order.
    pub words: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterResults {
    pub pair_orders: Vec<Vec<u64>>,
    pub empirical_matrix: Option<CoxeterMatrix>,
    pub degeneracy: Vec<DegeneracyIssue>,
    pub claimed_matrix: CoxeterMatrix,
    pub claimed_presentation: String,
    pub claimed_relators: Vec<Relator>,
    pub mismatches: Vec<(usize, usize, u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResults {
    pub input: u32,
    pub trace: Vec<u32>,
    pub reference: Vec<u32>,
    pub forward_word: String,
    pub inverse_word: String,
    pub restored: Vec<u32>,
    pub restored_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QrunResults {
    pub word: String,
    pub input: Vec<u32>,
    pub superposed_register: Option<usize>,
    /// `(basis index, re, im)` of the output state, ascending by index.
    pub output_state: Vec<(u32, f64, f64)>,
    #[serde(deserialize_with = "crate::keyed::deserialize")]
    pub marginal: BTreeMap<u32, f64>,
    pub measurement: MeasurementResult,
}
