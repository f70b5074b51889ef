//! Pass/fail verdicts with an optional counterexample attached.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Outcome of a single property check. When `holds` is false the witness is
/// a small violating instance in a check-specific JSON shape.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    pub fn fail(witness: Value) -> Self {
        Verdict { holds: false, witness: Some(witness) }
    }

    pub fn from_witness(witness: Option<Value>) -> Self {
        match witness {
            None => Verdict::pass(),
            Some(w) => Verdict::fail(w),
        }
    }
}

/// Named verdicts, serialized as `{property: {holds, witness}}`.
pub type VerdictMap = BTreeMap<&'static str, Verdict>;
