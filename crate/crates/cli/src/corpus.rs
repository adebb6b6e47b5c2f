//! Regression corpus: one `<name>.json` per case holding the argument list,
//! the expected exit code, report and diagnostic.

use std::fs;
use std::path::Path;

use clap::Parser;
use serde_json::{json, Value};

use crate::{execute, render, write_atomic, Cli, Command, EXIT_DOMAIN, EXIT_IO, EXIT_MISMATCH, EXIT_OK};

/// Summary of one corpus run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CorpusSummary {
    pub cases: usize,
    pub passed: usize,
    /// `(case, location)` for each mismatch.
    pub failures: Vec<(String, String)>,
}

/// JSON pointer of the first place where `a` and `b` differ.
pub fn first_difference(a: &Value, b: &Value) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            keys.into_iter().find_map(|k| match (x.get(k), y.get(k)) {
                (Some(u), Some(v)) => first_difference(u, v).map(|p| format!("/{k}{p}")),
                _ => Some(format!("/{k}")),
            })
        }
        (Value::Array(x), Value::Array(y)) => {
            let n = x.len().max(y.len());
            (0..n).find_map(|i| match (x.get(i), y.get(i)) {
                (Some(u), Some(v)) => first_difference(u, v).map(|p| format!("/{i}{p}")),
                _ => Some(format!("/{i}")),
            })
        }
        _ if a == b => None,
        _ => Some(String::new()),
    }
}

fn first_differing_line(a: &str, b: &str) -> usize {
    let mut al = a.lines();
    let mut bl = b.lines();
    let mut n = 1;
    loop {
        match (al.next(), bl.next()) {
            (None, None) => return n,
            (x, y) if x != y => return n,
            _ => n += 1,
        }
    }
}

/// Runs the case's arguments and returns the document that should be stored.
pub fn regenerate(args: &[String], jobs: usize) -> Result<Value, String> {
    let argv = std::iter::once("belyikit".to_string()).chain(args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| format!("invalid arguments: {}", e.kind()))?;
    if matches!(cli.command, Command::Corpus(_)) || cli.common.out.is_some() || cli.common.jobs.is_some() {
        return Err("corpus cases may not use `corpus`, --out or --jobs".into());
    }
    let o = execute(&cli.command, jobs);
    Ok(json!({
        "args": args,
        "exit_code": o.exit_code,
        "report": o.report,
        "diagnostic": o.diagnostic,
    }))
}

fn check_case(path: &Path, bless: bool, jobs: usize) -> Result<Option<String>, (i32, String)> {
    let stored = fs::read_to_string(path).map_err(|e| (EXIT_IO, format!("{}: {e}", path.display())))?;
    let stored_json: Value = serde_json::from_str(&stored)
        .map_err(|e| (EXIT_DOMAIN, format!("{}: not JSON ({e})", path.display())))?;
    let args: Vec<String> = stored_json
        .get("args")
        .and_then(|a| serde_json::from_value(a.clone()).ok())
        .ok_or_else(|| (EXIT_DOMAIN, format!("{}: missing string array `args`", path.display())))?;
    let fresh = regenerate(&args, jobs).map_err(|e| (EXIT_DOMAIN, format!("{}: {e}", path.display())))?;
    let text = render(&fresh);
    if bless {
        write_atomic(path, text.as_bytes()).map_err(|e| (EXIT_IO, format!("{}: {e}", path.display())))?;
        return Ok(None);
    }
    if text == stored {
        return Ok(None);
    }
    let line = first_differing_line(&stored, &text);
    Ok(Some(match first_difference(&stored_json, &fresh) {
        Some(p) if !p.is_empty() => format!("{p} (line {line})"),
        _ => format!("formatting at line {line}"),
    }))
}

/// Checks (or with `bless`, rewrites) every case in `dir`.
pub fn run_corpus(dir: &Path, bless: bool, jobs: usize) -> Result<CorpusSummary, (i32, String)> {
    if !dir.is_dir() {
        return Err((EXIT_DOMAIN, format!("corpus directory {} not found", dir.display())));
    }
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| (EXIT_IO, format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut summary = CorpusSummary { cases: files.len(), ..Default::default() };
    for f in &files {
        let name = f.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        match check_case(f, bless, jobs)? {
            None => summary.passed += 1,
            Some(loc) => summary.failures.push((name, loc)),
        }
    }
    Ok(summary)
}

/// `corpus run`: prints one line per failure and a summary; exit code 1 on
/// any mismatch.
pub fn run(dir: &Path, bless: bool, jobs: usize) -> i32 {
    match run_corpus(dir, bless, jobs) {
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
        Ok(s) => {
            for (name, loc) in &s.failures {
                eprintln!("FAIL {name}: report differs at {loc}");
            }
            let verb = if bless { "blessed" } else { "passed" };
            println!("corpus {}: {} cases, {} {verb}, {} failed", dir.display(), s.cases, s.passed, s.failures.len());
            if s.failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
    }
}
