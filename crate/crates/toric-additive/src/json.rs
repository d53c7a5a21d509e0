//! Pretty JSON with short arrays kept on one line, so coordinate pairs and
//! root lists stay readable.

use serde::Serialize;
use serde_json::Value;

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> bool {
    match v {
        Value::Array(a) => {
            a.iter().all(is_flat) && (!a.iter().any(Value::is_string) || serde_json::to_string(v).map_or(0, |s| s.len()) <= 72)
        }
        Value::Object(o) => o.is_empty(),
        _ => true,
    }
}

fn write_inline(v: &Value, out: &mut String) {
    match v {
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_inline(x, out);
            }
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("value serializes")),
    }
}

fn write(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        _ if inline(v) => write_inline(v, out),
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write(x, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("key serializes"));
                out.push_str(": ");
                write(x, indent + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!("scalars are inline"),
    }
}

/// Newline-terminated pretty JSON.
pub fn to_string<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("document serializes");
    let mut out = String::new();
    write(&value, 0, &mut out);
    out.push('\n');
    out
}
