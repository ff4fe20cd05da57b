//! Pipeline files.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "name": "optional label",
//!   "registers": [1, 1, 1],
//!   "functions": [{ "table": ["0", "1"] }, { "table": ["0", "1"] }]
//! }
//! ```
//!
//! Function `i` maps register `i` to register `i + 1`; `table[x]` is the
//! image of `x` as a hex string (case-insensitive, no prefix), with register
//! tuples packed first-bit-least-significant.

use serde::{Deserialize, Serialize};

use crate::boolfn::BoolFunc;
use crate::error::{Error, Result};
use crate::lifting::PipelineSpec;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineDocument {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub registers: Vec<u32>,
    pub functions: Vec<FunctionDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDocument {
    pub table: Vec<String>,
}

pub(crate) fn parse_hex(text: &str) -> Option<u32> {
    if text.is_empty() || !text.chars().all(|c| c.is_ascii_hexdigit()) {
        return None;
    }
    u32::from_str_radix(text, 16).ok()
}

impl PipelineDocument {
    pub fn from_spec(spec: &PipelineSpec, name: Option<String>) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            name,
            registers: spec.widths().to_vec(),
            functions: spec
                .steps()
                .iter()
                .map(|f| FunctionDocument {
                    table: f.table().iter().map(|v| format!("{v:x}")).collect(),
                })
                .collect(),
        }
    }

    /// Decodes the tables and re-checks every pipeline invariant.
    pub fn to_spec(&self) -> Result<PipelineSpec> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::FormatVersion {
                found: self.format_version,
                supported: FORMAT_VERSION,
            });
        }
        if self.registers.len() != self.functions.len() + 1 {
            return Err(Error::StepCount {
                registers: self.registers.len(),
                steps: self.functions.len(),
            });
        }
        let steps = self
            .functions
            .iter()
            .enumerate()
            .map(|(i, doc)| {
                let table = doc
                    .table
                    .iter()
                    .enumerate()
                    .map(|(index, text)| {
                        parse_hex(text).ok_or_else(|| Error::Hex {
                            function: i,
                            index,
                            text: text.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                BoolFunc::new(self.registers[i], self.registers[i + 1], table)
            })
            .collect::<Result<Vec<_>>>()?;
        PipelineSpec::new(self.registers.clone(), steps)
    }
}

pub fn parse_document(bytes: &[u8]) -> Result<PipelineDocument> {
    serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Strict parse of a pipeline file into a validated [`PipelineSpec`].
pub fn parse_pipeline(bytes: &[u8]) -> Result<PipelineSpec> {
    parse_document(bytes)?.to_spec()
}

pub fn emit_pipeline(spec: &PipelineSpec, name: Option<String>) -> String {
    let doc = PipelineDocument::from_spec(spec, name);
    let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
    out.push('\n');
    out
}
