//! Deterministic report serialization.
//!
//! JSON objects are built through `serde_json::Value`, whose map is
//! BTree-backed, so keys always serialize sorted; rationals appear as
//! canonical `p/q` strings. CSV output is RFC 4180 (CRLF, quoting only when
//! needed).

use crate::rational::{fmt_rat, Rat};
use serde_json::Value;

/// A rational as a canonical JSON string value.
pub fn json_rat(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

/// Renders a JSON value with sorted keys and a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

/// RFC 4180 matrix: a header of column labels, then one labeled row per
/// entry row.
pub fn matrix_to_csv(row_labels: &[String], matrix: &[Vec<Rat>]) -> String {
    let mut out = String::new();
    let mut header = vec![String::new()];
    header.extend(row_labels.iter().cloned());
    out.push_str(&crate::hyperspace::csv_row(&header));
    for (label, row) in row_labels.iter().zip(matrix) {
        let mut fields = vec![label.clone()];
        fields.extend(row.iter().map(fmt_rat));
        out.push_str(&crate::hyperspace::csv_row(&fields));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use serde_json::json;

    #[test]
    fn json_keys_are_sorted() {
        let v = json!({"zeta": 1, "alpha": 2, "mid": json_rat(&rat(1, 2))});
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"alpha":2,"mid":"1/2","zeta":1}"#
        );
    }

    #[test]
    fn csv_quotes_only_when_needed() {
        let csv = matrix_to_csv(
            &["plain".into(), "with,comma".into()],
            &[vec![rat(1, 2), rat(1, 3)], vec![rat(1, 3), rat(1, 2)]],
        );
        let lines: Vec<&str> = csv.split("\r\n").collect();
        assert_eq!(lines[0], ",plain,\"with,comma\"");
        assert_eq!(lines[1], "plain,1/2,1/3");
    }
}
