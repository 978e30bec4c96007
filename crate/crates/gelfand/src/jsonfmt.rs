//! Deterministic JSON printing with floats at 17 significant digits.
//!
//! Outputs feed plotting scripts and golden-file comparisons, so identical
//! inputs must yield byte-identical text; every finite float is rendered as
//! `{:.16e}` (17 significant digits, enough to round-trip any f64) and
//! object keys keep their serialization order.

use serde_json::Value;

pub fn to_string_17(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(value: &Value, indent: usize, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                let f = n.as_f64().unwrap_or(f64::NAN);
                if f.is_finite() {
                    out.push_str(&format!("{f:.16e}"));
                } else {
                    out.push_str("null");
                }
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).unwrap()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline_indent(indent + 1, out);
                write_value(item, indent + 1, out);
            }
            newline_indent(indent, out);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (key, val)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline_indent(indent + 1, out);
                out.push_str(&serde_json::to_string(key).unwrap());
                out.push_str(": ");
                write_value(val, indent + 1, out);
            }
            newline_indent(indent, out);
            out.push('}');
        }
    }
}

fn newline_indent(indent: usize, out: &mut String) {
    out.push('\n');
    for _ in 0..indent {
        out.push_str("  ");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_carry_seventeen_significant_digits() {
        let v = json!({ "phi": -32.0, "third": 1.0 / 3.0 });
        let s = to_string_17(&v);
        assert!(s.contains("-3.2000000000000000e1"), "{s}");
        assert!(s.contains("3.3333333333333331e-1"), "{s}");
    }

    #[test]
    fn integers_stay_integers() {
        let v = json!({ "n": 13, "m": 2 });
        let s = to_string_17(&v);
        assert!(s.contains("\"n\": 13"), "{s}");
    }

    #[test]
    fn output_is_deterministic() {
        let v = json!({ "b": [1.5, 2.5], "a": { "x": 0.1 } });
        assert_eq!(to_string_17(&v), to_string_17(&v.clone()));
    }

    #[test]
    fn round_trips_through_serde() {
        let v = json!({ "x": 0.1234567890123456789, "list": [1e-300, 1e300] });
        let s = to_string_17(&v);
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64(), v["x"].as_f64());
        assert_eq!(back["list"][1].as_f64(), v["list"][1].as_f64());
    }
}
