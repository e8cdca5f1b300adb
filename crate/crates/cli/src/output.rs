//! Rendering reports as aligned text or JSON.

use serde_json::Value;

/// A computed report; `flag` marks a failed property check.
pub struct Report {
    pub value: Value,
    pub flag: bool,
    /// Replaces the generic table rendering when set.
    pub text: Option<String>,
}

impl Report {
    pub fn new(value: impl serde::Serialize, flag: bool) -> anyhow::Result<Self> {
        Ok(Self {
            value: serde_json::to_value(value)?,
            flag,
            text: None,
        })
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.value).expect("serializable");
            s.push('\n');
            return s;
        }
        if let Some(t) = &self.text {
            return t.clone();
        }
        let mut out = String::new();
        table(&self.value, 0, &mut out);
        out
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn table(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, x) in map {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k:<width$}  {}\n", compact(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    table(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", compact(x)));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    table(x, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", compact(other))),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("({})", items.iter().map(compact).collect::<Vec<_>>().join(", ")),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn table_layout() {
        let r = Report::new(json!({"h": [1, 3, 3, 1], "ok": true, "cert": {"seed": 1}}), false).unwrap();
        assert_eq!(r.render(false), "cert:\n  seed  1\nh     (1, 3, 3, 1)\nok    true\n");
    }
}
