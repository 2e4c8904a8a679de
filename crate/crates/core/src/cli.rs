//! Command-line driver: reads one constraint from a file or stdin, solves
//! it under one theory and reports in text or JSON.
//!
//! Exit status is 0 for sat, 1 for unsat and 2 for usage errors, syntax
//! errors and exhausted resource limits.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::constraint::Constraint;
use crate::error::Error;
use crate::oracle::{brute_sat_with, enumerate, SearchOptions, SearchOutcome, Signature};
use crate::rewrite::{Limits, RewriteOptions, Stats};
use crate::solver::{sat, Mode, SolveConfig, SolveOutcome};
use crate::syntax::parse_constraint;
use crate::term::Theory;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RunMode {
    /// First solved form only.
    Sat,
    /// Every solved form.
    All,
    /// First solved form plus a verified ground witness.
    Witness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "aggsolve", version, about = "Solve =, !=, in, nin constraints over lists, multisets, compact lists and sets")]
pub struct Args {
    /// One of list, mset, clist, set.
    #[arg(long, value_parser = parse_theory)]
    pub theory: Theory,
    #[arg(long, value_enum, default_value = "sat")]
    pub mode: RunMode,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Maximum number of open alternatives explored.
    #[arg(long)]
    pub branch_limit: Option<usize>,
    /// First index used for fresh variable names.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Keep `t in X` literals instead of eliminating them (multisets, sets).
    #[arg(long)]
    pub no_member_elim: bool,
    /// Cross-check the verdict by exhaustive search up to this term depth.
    #[arg(long, value_name = "DEPTH")]
    pub oracle_check: Option<usize>,
    /// Input file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    s.parse::<Theory>().map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
struct JsonSolvedForm {
    literals: Vec<String>,
    fresh_vars: Vec<String>,
}

#[derive(Debug, Serialize)]
struct JsonStats {
    branches: usize,
    rule_applications: usize,
}

#[derive(Debug, Serialize)]
struct JsonReport {
    status: &'static str,
    solved_forms: Vec<JsonSolvedForm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<BTreeMap<String, String>>,
    stats: JsonStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Runs the driver on `args` (including the program name) and returns the
/// exit status with the text destined for stdout and stderr.
pub fn run<I, T>(args: I) -> (u8, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    let text = match read_input(args.input.as_deref()) {
        Ok(t) => t,
        Err(e) => return (2, String::new(), format!("error: {e}\n")),
    };
    run_on(&args, &text)
}

fn read_input(path: Option<&std::path::Path>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Same as [`run`] with the constraint text supplied directly.
pub fn run_on(args: &Args, text: &str) -> (u8, String, String) {
    let theory = args.theory;
    let c = match parse_constraint(theory, text) {
        Ok(c) => c,
        Err(e) => return (2, String::new(), format!("error: {e}\n")),
    };
    let config = SolveConfig {
        mode: if args.mode == RunMode::All { Mode::All } else { Mode::First },
        witness: args.mode == RunMode::Witness,
        rewrite: RewriteOptions { member_elim: !args.no_member_elim },
        limits: Limits { branch_limit: args.branch_limit.unwrap_or(Limits::default().branch_limit), ..Limits::default() },
        seed: args.seed,
    };
    let result = sat(theory, &c, &config);
    let oracle = match (&result, args.oracle_check) {
        (Ok(out), Some(depth)) => Some(oracle_check(theory, &c, out, depth)),
        _ => None,
    };
    let disagreement = oracle.as_ref().is_some_and(|o| o.starts_with("disagree"));
    match result {
        Ok(out) => {
            let code = if disagreement {
                2
            } else if out.is_sat() {
                0
            } else {
                1
            };
            let stdout = match args.format {
                Format::Json => json(&report(&c, &out, oracle)),
                Format::Text => text_report(&c, &out, oracle.as_deref()),
            };
            (code, stdout, String::new())
        }
        Err(e @ (Error::BranchLimitExceeded { .. } | Error::StepLimitExceeded { .. })) => {
            let stdout = match args.format {
                Format::Json => json(&JsonReport {
                    status: "resource_limit",
                    solved_forms: Vec::new(),
                    witness: None,
                    stats: JsonStats { branches: 0, rule_applications: 0 },
                    oracle: None,
                    error: Some(e.to_string()),
                }),
                Format::Text => "resource_limit\n".to_string(),
            };
            (2, stdout, format!("error: {e}\n"))
        }
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}

fn oracle_check(theory: Theory, c: &Constraint, out: &SolveOutcome, depth: usize) -> String {
    let universe = enumerate(theory, &Signature::standard(), depth);
    let opts = SearchOptions { node_budget: Some(5_000_000), kernel_free: false };
    match (brute_sat_with(theory, c, &universe, opts), out.is_sat()) {
        (SearchOutcome::BudgetExceeded, _) => format!("inconclusive: search budget exhausted at depth {depth}"),
        (SearchOutcome::Found(_), true) => format!("agree: solution found at depth {depth}"),
        (SearchOutcome::NotFound, true) => format!("agree: no solution up to depth {depth}, a deeper witness is needed"),
        (SearchOutcome::NotFound, false) => format!("agree: no solution up to depth {depth}"),
        (SearchOutcome::Found(v), false) => {
            let shown: Vec<String> = v.iter().map(|(x, t)| format!("{x} = {t}")).collect();
            format!("disagree: solution {} found at depth {depth}", shown.join(", "))
        }
    }
}

fn report(c: &Constraint, out: &SolveOutcome, oracle: Option<String>) -> JsonReport {
    let input_vars = c.free_vars();
    JsonReport {
        status: if out.is_sat() { "sat" } else { "unsat" },
        solved_forms: out
            .solved_forms
            .iter()
            .map(|sf| JsonSolvedForm {
                literals: sf.constraint.literals().iter().map(|l| l.to_string()).collect(),
                fresh_vars: sf.fresh_vars.iter().map(|v| v.to_string()).collect(),
            })
            .collect(),
        witness: out.solved_forms.first().and_then(|sf| sf.witness.as_ref()).map(|w| {
            w.iter().filter(|(x, _)| input_vars.contains(*x)).map(|(x, t)| (x.to_string(), t.to_string())).collect()
        }),
        stats: stats(&out.stats),
        oracle,
        error: None,
    }
}

fn stats(s: &Stats) -> JsonStats {
    JsonStats { branches: s.branches, rule_applications: s.rule_applications }
}

fn json(r: &JsonReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

fn text_report(c: &Constraint, out: &SolveOutcome, oracle: Option<&str>) -> String {
    let mut s = String::new();
    s.push_str(if out.is_sat() { "sat\n" } else { "unsat\n" });
    for (i, sf) in out.solved_forms.iter().enumerate() {
        s.push_str(&format!("solved form {}: {}\n", i + 1, sf.constraint));
        if !sf.fresh_vars.is_empty() {
            let names: Vec<String> = sf.fresh_vars.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("  fresh: {}\n", names.join(", ")));
        }
    }
    if let Some(w) = out.solved_forms.first().and_then(|sf| sf.witness.as_ref()) {
        let input_vars = c.free_vars();
        s.push_str("witness (verified):\n");
        for (x, t) in w.iter().filter(|(x, _)| input_vars.contains(*x)) {
            s.push_str(&format!("  {x} = {t}\n"));
        }
    }
    s.push_str(&format!("stats: branches={} rule_applications={}\n", out.stats.branches, out.stats.rule_applications));
    if let Some(o) = oracle {
        s.push_str(&format!("oracle: {o}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(flags: &[&str], input: &str) -> (u8, String, String) {
        let args = Args::try_parse_from(std::iter::once("aggsolve").chain(flags.iter().copied())).unwrap();
        run_on(&args, input)
    }

    #[test]
    fn membership_cycle_is_unsat() {
        let (code, out, _) = go(&["--theory", "set"], "X in Y & Y in X");
        assert_eq!(code, 1);
        assert!(out.starts_with("unsat"));
    }

    #[test]
    fn witness_mode_reports_a_witness() {
        let (code, out, _) = go(&["--theory", "set", "--mode", "witness", "--format", "json"], "{A} in X & {a} nin X");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "sat");
        assert!(v["witness"]["A"].is_string() && v["witness"]["X"].is_string());
    }

    #[test]
    fn syntax_and_usage_errors_exit_2() {
        let (code, _, err) = go(&["--theory", "set"], "X inn Y");
        assert_eq!(code, 2);
        assert!(err.contains("line 1, column 3"), "{err}");
        let (code, _, err) = run(["aggsolve", "--theory", "bag"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
        let (code, _, _) = go(&["--theory", "list"], "X = {a}");
        assert_eq!(code, 2);
    }

    #[test]
    fn branch_limit_reports_resource_limit() {
        let (code, out, _) =
            go(&["--theory", "set", "--branch-limit", "1", "--format", "json"], "{X,Y,Z} = {a,b,c}");
        assert_eq!(code, 2);
        assert!(out.contains("\"resource_limit\""));
    }
}
