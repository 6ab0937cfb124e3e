use crate::commands::{Cli, Format, Outcome};
use crate::CliError;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write as _;

pub const SCHEMA: u32 = 1;

pub fn emit(cli: &Cli, o: &Outcome) -> Result<(), CliError> {
    let text = render(cli.format, o)?;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io { path: "<stdout>".into(), source: e }),
        _ => Ok(()),
    }
}

fn render(format: Format, o: &Outcome) -> Result<String, CliError> {
    let mut s = String::new();
    match format {
        Format::Json => {
            let mut doc = json!({"schema": SCHEMA, "command": o.command, "result": o.result});
            if let Some(v) = o.verified {
                doc["verified"] = json!(v);
            }
            s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
        }
        Format::Csv => {
            let Some((header, rows)) = &o.table else {
                return Err(CliError::Usage(format!("{} has no sequence output; csv is unavailable", o.command)));
            };
            let _ = writeln!(s, "{}", header.join(","));
            for r in rows {
                let _ = writeln!(s, "{}", r.join(","));
            }
        }
        Format::Text => match (&o.code, &o.result) {
            (Some(c), _) => s = c.to_text(),
            (None, Value::Object(m)) => {
                for (k, v) in m {
                    let _ = writeln!(s, "{k}: {}", flat(v));
                }
            }
            (None, v) => s = format!("{}\n", flat(v)),
        },
    }
    Ok(s)
}

/// Arrays of scalars as comma lists, everything else as compact JSON.
fn flat(v: &Value) -> String {
    match v {
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => xs.iter().map(flat).collect::<Vec<_>>().join(","),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
