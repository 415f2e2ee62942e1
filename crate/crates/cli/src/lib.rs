//! The `hgdeform` command line: argument handling, configuration files and
//! exit codes (0 success, 2 invalid input, 3 identity violated).

use std::fmt;
use std::fs;

use clap::{CommandFactory, FromArgMatches};
use hgdeform_core::io::to_json_string;
use serde_json::Value;

pub mod args;
mod commands;
mod inputs;

use args::{Cli, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEFECT: i32 = 3;

/// A failure reported with exit code 2.
#[derive(Debug)]
pub struct Failure(String);

impl Failure {
    pub(crate) fn usage(msg: String) -> Self {
        Failure(msg)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<hgdeform_core::Error> for Failure {
    fn from(e: hgdeform_core::Error) -> Self {
        Failure(e.to_string())
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn flag_value(v: &Value) -> Result<Option<String>, Failure> {
    Ok(match v {
        Value::Bool(true) => None,
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Array(items) => Some(
            items
                .iter()
                .map(|i| match i {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    other => Err(Failure(format!("config lists may hold numbers and strings, got {other}"))),
                })
                .collect::<Result<Vec<_>, _>>()?
                .join(","),
        ),
        Value::Object(_) => Some(v.to_string()),
        other => return Err(Failure(format!("unsupported config value {other}"))),
    })
}

/// Replaces `--config FILE` by the subcommand and flags it holds. Flags given
/// on the command line come later and therefore win.
fn expand_config(args: Vec<String>) -> Result<Vec<String>, Failure> {
    let Some(i) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let mut rest = args.clone();
    let path = if let Some(p) = rest[i].strip_prefix("--config=") {
        let p = p.to_string();
        rest.remove(i);
        p
    } else {
        if i + 1 >= rest.len() {
            return Err(Failure("--config needs a file".into()));
        }
        rest.remove(i);
        rest.remove(i)
    };
    let text = fs::read_to_string(&path).map_err(|e| Failure(format!("cannot read config `{path}`: {e}")))?;
    let config: Value = serde_json::from_str(&text).map_err(|e| Failure(format!("config `{path}`: {e}")))?;
    let Value::Object(map) = config else {
        return Err(Failure(format!("config `{path}` must be a JSON object")));
    };
    let names: Vec<String> = Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect();
    let cli_cmd = rest.iter().skip(1).position(|a| names.contains(a)).map(|p| p + 1);
    let mut out = vec![rest[0].clone()];
    let mut tail = rest[1..].to_vec();
    match (cli_cmd, map.get("command")) {
        (Some(p), _) => {
            out.push(rest[p].clone());
            tail.remove(p - 1);
        }
        (None, Some(Value::String(c))) => out.push(c.clone()),
        (None, _) => return Err(Failure(format!("config `{path}` names no command"))),
    }
    for (k, v) in &map {
        if k == "command" {
            continue;
        }
        if v == &Value::Bool(false) {
            continue;
        }
        out.push(format!("--{}", k.replace('_', "-")));
        if let Some(v) = flag_value(v)? {
            out.push(v);
        }
    }
    out.extend(tail);
    Ok(out)
}

fn invalid(msg: impl fmt::Display) -> Execution {
    Execution { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => return invalid(e),
    };
    let command = Cli::command().args_override_self(true).mut_subcommands(|s| s.args_override_self(true));
    let matches = match command.try_get_matches_from(&args) {
        Ok(m) => m,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution { code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                Execution { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => return invalid(e),
    };
    let report = match commands::execute(&cli.command) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    let text = match cli.format {
        Format::Json => to_json_string(&report.json) + "\n",
        Format::Csv => match report.csv {
            Some(csv) => csv,
            None => return invalid("this command has no CSV output; use --format json"),
        },
    };
    let stdout = match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                return invalid(format!("cannot write `{}`: {e}", path.display()));
            }
            String::new()
        }
        None => text,
    };
    match report.defect {
        Some(d) => Execution { code: EXIT_DEFECT, stdout, stderr: format!("defect: {d}\n") },
        None => Execution { code: EXIT_OK, stdout, stderr: String::new() },
    }
}
