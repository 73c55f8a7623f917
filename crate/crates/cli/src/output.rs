use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

use crate::{Cli, CliResult, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// `key: value` lines, one block per record.
    Text,
}

/// Writes a command's main result to `--out`, or stdout.
pub fn emit(cli: &Cli, value: &Value) -> CliResult<()> {
    let text = render(cli.format, value)?;
    write(cli, &text)
}

/// Writes an already serialized JSON document, keeping its field order.
pub fn emit_json_text(cli: &Cli, json: &str) -> CliResult<()> {
    match cli.format {
        Format::Json => write(cli, &format!("{json}\n")),
        Format::Text => {
            let value: Value =
                serde_json::from_str(json).map_err(|e| Failure::Internal(e.to_string()))?;
            emit(cli, &value)
        }
    }
}

/// Prints a summary to stdout; used when `--out` holds the data itself.
pub fn emit_summary(cli: &Cli, value: &Value) -> CliResult<()> {
    let text = render(cli.format, value)?;
    print_stdout(&text)
}

fn write(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Failure::Data(logbench::Error::Format(format!("{}: {e}", path.display())))
        }),
        None => print_stdout(text),
    }
}

fn print_stdout(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Internal(format!("stdout: {e}")))
}

fn render(format: Format, value: &Value) -> CliResult<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(|e| Failure::Internal(e.to_string())),
        Format::Text => {
            let mut lines = Vec::new();
            match value {
                Value::Array(items) => {
                    for (i, item) in items.iter().enumerate() {
                        if i > 0 {
                            lines.push(String::new());
                        }
                        flatten("", item, &mut lines);
                    }
                }
                other => flatten("", other, &mut lines),
            }
            Ok(lines.join("\n") + "\n")
        }
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<String>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        other => out.push(format!("{prefix}: {other}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_flattens_nested_keys() {
        let v = json!({"name": "a", "stats": {"nuw": 3}, "xs": [1, 2]});
        assert_eq!(render(Format::Text, &v).ok().unwrap(), "name: a\nstats.nuw: 3\nxs: [1,2]\n");
    }
}
