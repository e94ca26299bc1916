//! Library surface of the verification CLI: the suite runner and the
//! report-assembly helpers shared with the integration tests.

pub mod suite;

use defcalc_core::report::{overall_status, CheckReport, CheckStatus};
use serde_json::{json, Value};

pub const SCHEMA: &str = "defcalc/1";

/// Wraps a list of check reports in the versioned report envelope with
/// deterministic field order.
pub fn report_envelope(command: &str, extra: Value, checks: &[CheckReport]) -> Value {
    let status = match overall_status(checks) {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Degenerate => "degenerate",
    };
    let mut obj = serde_json::Map::new();
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!(command));
    if let Value::Object(map) = extra {
        for (k, v) in map {
            obj.insert(k, v);
        }
    }
    obj.insert(
        "checks".into(),
        Value::Array(
            checks
                .iter()
                .map(|c| serde_json::to_value(c).expect("report serializes"))
                .collect(),
        ),
    );
    obj.insert("status".into(), json!(status));
    Value::Object(obj)
}

/// Exit code contract: 0 iff no check failed (degenerate is not failure),
/// 1 on any failure; usage errors exit 2 before reaching here.
pub fn exit_code(checks: &[CheckReport]) -> i32 {
    if checks.iter().any(CheckReport::failed) {
        1
    } else {
        0
    }
}
