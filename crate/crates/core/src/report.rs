//! Machine-readable check outcomes.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Degenerate,
}

/// Outcome of one verification: name, the parameters it ran with (rationals
/// as `"p/q"` strings, seeds as integers), a status, and a structured
/// witness on failure.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub parameters: BTreeMap<String, Value>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckReport {
    pub fn pass(name: &str) -> Self {
        CheckReport {
            check_name: name.to_string(),
            parameters: BTreeMap::new(),
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    pub fn fail(name: &str, witness: Value) -> Self {
        CheckReport {
            check_name: name.to_string(),
            parameters: BTreeMap::new(),
            status: CheckStatus::Fail,
            witness: Some(witness),
        }
    }

    pub fn degenerate(name: &str, witness: Value) -> Self {
        CheckReport {
            check_name: name.to_string(),
            parameters: BTreeMap::new(),
            status: CheckStatus::Degenerate,
            witness: Some(witness),
        }
    }

    pub fn of(name: &str, ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            CheckReport::pass(name)
        } else {
            CheckReport::fail(name, witness())
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// Aggregate status: fail if anything failed, else pass.
pub fn overall_status(reports: &[CheckReport]) -> CheckStatus {
    if reports.iter().any(CheckReport::failed) {
        CheckStatus::Fail
    } else {
        CheckStatus::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn fail_carries_witness() {
        let r = CheckReport::fail("x", json!({"lhs": "1", "rhs": "2"}));
        assert!(r.failed());
        assert!(r.witness.is_some());
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"status\":\"fail\""));
    }

    #[test]
    fn pass_omits_witness_field() {
        let s = serde_json::to_string(&CheckReport::pass("x")).unwrap();
        assert!(!s.contains("witness"));
    }

    #[test]
    fn aggregation() {
        let reports = vec![
            CheckReport::pass("a"),
            CheckReport::degenerate("b", json!("pole")),
        ];
        assert_eq!(overall_status(&reports), CheckStatus::Pass);
        let with_fail = vec![CheckReport::pass("a"), CheckReport::fail("b", json!(1))];
        assert_eq!(overall_status(&with_fail), CheckStatus::Fail);
    }
}
