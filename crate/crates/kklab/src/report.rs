//! JSON reports: `{suite, anchors, config, results: [{property, status, witness?}], elapsed_ms}`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyResult {
    pub property: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Counts and other summary data; present on passes and failures alike.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl PropertyResult {
    pub fn pass(property: impl Into<String>) -> PropertyResult {
        PropertyResult { property: property.into(), status: Status::Pass, witness: None, detail: None }
    }

    /// A failure always carries its witness.
    pub fn fail(property: impl Into<String>, witness: Value) -> PropertyResult {
        PropertyResult { property: property.into(), status: Status::Fail, witness: Some(witness), detail: None }
    }

    /// Passes when `witness` is `None`.
    pub fn check(property: impl Into<String>, witness: Option<Value>) -> PropertyResult {
        match witness {
            None => Self::pass(property),
            Some(w) => Self::fail(property, w),
        }
    }

    pub fn with_detail(mut self, detail: Value) -> PropertyResult {
        self.detail = Some(detail);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub anchors: Vec<String>,
    pub config: BTreeMap<String, String>,
    pub results: Vec<PropertyResult>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(PropertyResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// 0 when every property passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}
