use serde::Serialize;
use serde_json::Value;

use crate::Cli;

/// Outcome of one command, before rendering.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub field: String,
    pub cap: usize,
    pub verdict: String,
    pub exit: u8,
    pub witness: Option<Value>,
    pub certificate: Option<Value>,
    pub trace: Option<Value>,
    /// Text-mode detail lines, printed after the verdict.
    pub lines: Vec<String>,
}

#[derive(Serialize)]
struct Config<'a> {
    gens: usize,
    field: &'a str,
    cap: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    config: Config<'a>,
    verdict: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'a Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a Value>,
}

pub fn render(cli: &Cli, r: &Report) -> String {
    if cli.global.json {
        let out = JsonReport {
            command: r.command,
            config: Config { gens: cli.global.gens, field: &r.field, cap: r.cap },
            verdict: &r.verdict,
            witness: r.witness.as_ref(),
            certificate: r.certificate.as_ref(),
            trace: r.trace.as_ref(),
        };
        // only fails on non-string map keys, which never occur here
        let mut s = serde_json::to_string_pretty(&out).expect("report serializes");
        s.push('\n');
        return s;
    }
    let mut s = format!("verdict: {}\n", r.verdict);
    for line in &r.lines {
        s.push_str(line);
        s.push('\n');
    }
    if let Some(t) = &r.trace {
        s.push_str("trace:\n");
        render_trace(t, &mut s);
    }
    s
}

fn render_trace(t: &Value, s: &mut String) {
    match t {
        Value::Array(items) => {
            for item in items {
                s.push_str("  ");
                s.push_str(&one_line(item));
                s.push('\n');
            }
        }
        Value::Object(map) => {
            for (k, v) in map {
                s.push_str(&format!("  {k}:\n"));
                if let Value::Array(items) = v {
                    for item in items {
                        s.push_str("    ");
                        s.push_str(&one_line(item));
                        s.push('\n');
                    }
                } else {
                    s.push_str(&format!("    {}\n", one_line(v)));
                }
            }
        }
        other => {
            s.push_str(&format!("  {}\n", one_line(other)));
        }
    }
}

fn one_line(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(one_line).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}={}", one_line(v))).collect::<Vec<_>>().join("  "),
        other => other.to_string(),
    }
}
