use serde_json::{Map, Value};

use crate::request::Format;
use crate::CliError;

/// A command result: one record or a table of rows.
pub enum Payload {
    Record(Value),
    Table {
        headers: Vec<&'static str>,
        rows: Vec<Vec<Value>>,
    },
}

/// Writes an arbitrary-size integer as a JSON number.
pub fn big_integer(v: &num_bigint::BigInt) -> Value {
    serde_json::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

pub fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, inner, out);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for (i, inner) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), inner, out);
            }
        }
        other => out.push((prefix.to_string(), cell(other))),
    }
}

fn write_csv(headers: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Failed(e.to_string());
    w.write_record(headers).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Failed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failed(e.to_string()))
}

pub fn render(payload: &Payload, format: Format) -> Result<String, CliError> {
    match (payload, format) {
        (Payload::Record(v), Format::Json) => Ok(pretty(v)),
        (Payload::Table { headers, rows }, Format::Json) => {
            let objects = rows
                .iter()
                .map(|row| {
                    let map: Map<String, Value> = headers
                        .iter()
                        .map(|h| h.to_string())
                        .zip(row.iter().cloned())
                        .collect();
                    Value::Object(map)
                })
                .collect();
            Ok(pretty(&Value::Array(objects)))
        }
        (Payload::Record(v), Format::Csv) => {
            let mut pairs = Vec::new();
            flatten("", v, &mut pairs);
            let (headers, values): (Vec<String>, Vec<String>) = pairs.into_iter().unzip();
            write_csv(&headers, &[values])
        }
        (Payload::Table { headers, rows }, Format::Csv) => {
            let headers: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
            let rows: Vec<Vec<String>> =
                rows.iter().map(|r| r.iter().map(cell).collect()).collect();
            write_csv(&headers, &rows)
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn record_as_csv() {
        let v = json!({"value": "-20", "m_factors": ["-2/75"], "dims": [{"k": 2, "dim": 11}]});
        let out = render(&Payload::Record(v), Format::Csv).unwrap();
        assert_eq!(out, "value,m_factors,dims.0.k,dims.0.dim\n-20,-2/75,2,11\n");
    }

    #[test]
    fn empty_table_keeps_header() {
        let p = Payload::Table {
            headers: vec!["a", "b"],
            rows: vec![],
        };
        assert_eq!(render(&p, Format::Csv).unwrap(), "a,b\n");
        assert_eq!(render(&p, Format::Json).unwrap(), "[]\n");
    }

    #[test]
    fn huge_integers_stay_exact() {
        let big: num_bigint::BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(
            big_integer(&big).to_string(),
            "123456789012345678901234567890"
        );
    }
}
