//! Flat JSON objects with fixed 17-significant-digit number formatting.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Null, Value::Num)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as u64)
    }
}

/// Ordered flat key/value object.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlatJson {
    entries: Vec<(String, Value)>,
}

impl FlatJson {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        let v = v.into();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = v,
            None => self.entries.push((key.to_string(), v)),
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|e| &e.1)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("{\n");
        for (i, (k, v)) in self.entries.iter().enumerate() {
            let _ = write!(out, "  \"{}\": ", escape(k));
            match v {
                Value::Num(x) if x.is_finite() => {
                    let _ = write!(out, "{x:.16e}");
                }
                Value::Num(_) | Value::Null => out.push_str("null"),
                Value::Int(n) => {
                    let _ = write!(out, "{n}");
                }
                Value::Bool(b) => {
                    let _ = write!(out, "{b}");
                }
                Value::Text(s) => {
                    let _ = write!(out, "\"{}\"", escape(s));
                }
            }
            out.push_str(if i + 1 < self.entries.len() { ",\n" } else { "\n" });
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    let mut o = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => o.push_str("\\\""),
            '\\' => o.push_str("\\\\"),
            '\n' => o.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(o, "\\u{:04x}", c as u32);
            }
            c => o.push(c),
        }
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_insertion_order() {
        let mut j = FlatJson::new();
        j.set("b", 1.5).set("a", Value::Null).set("c", "x\"y").set("d", f64::INFINITY).set("b", true);
        assert_eq!(j.render(), "{\n  \"b\": true,\n  \"a\": null,\n  \"c\": \"x\\\"y\",\n  \"d\": null\n}\n");
    }
}
