//! The JSON schema of a report.

use serde_json::Value;

pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

pub fn report_schema() -> Value {
    serde_json::from_str(REPORT_SCHEMA).expect("the embedded schema is valid JSON")
}

/// Every violation of the report schema by `value`, as `path: message` lines.
pub fn validate_report(value: &Value) -> Vec<String> {
    let validator = jsonschema::validator_for(&report_schema()).expect("the embedded schema is a valid schema");
    validator
        .iter_errors(value)
        .map(|e| format!("{}: {e}", e.instance_path()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn catches_violations() {
        let errs = validate_report(&json!({"tool": "other", "stages": [{"verdict": "maybe"}]}));
        assert!(errs.iter().any(|e| e.starts_with("/tool")), "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("\"overall\"")), "{errs:?}");
        assert!(errs.iter().any(|e| e.starts_with("/stages/0")), "{errs:?}");
    }
}
