use std::io::Write;
use std::process::{Command, Output, Stdio};

fn aggsolve(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_aggsolve"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn membership_cycle_exits_with_unsat() {
    let o = aggsolve(&["--theory", "set"], "X in Y & Y in X");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("unsat"));
}

#[test]
fn witness_mode_prints_a_checked_witness() {
    let o = aggsolve(&["--theory", "set", "--mode", "witness", "--format", "json"], "{A} in X & {a} nin X");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "sat");
    let a = aggsolve::parse_term(aggsolve::Theory::Set, v["witness"]["A"].as_str().unwrap()).unwrap();
    let x = aggsolve::parse_term(aggsolve::Theory::Set, v["witness"]["X"].as_str().unwrap()).unwrap();
    let gamma: aggsolve::Valuation = [(aggsolve::Var::new("A"), a), (aggsolve::Var::new("X"), x)].into();
    let c = aggsolve::parse_constraint(aggsolve::Theory::Set, "{A} in X & {a} nin X").unwrap();
    assert!(aggsolve::eval_ground(aggsolve::Theory::Set, &c, &gamma).unwrap());
    assert!(v["stats"]["branches"].is_u64() && v["stats"]["rule_applications"].is_u64());
}

#[test]
fn three_sat_file_is_sat() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/three_sat.con");
    let o = aggsolve(&["--theory", "list", "--mode", "sat", path], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("sat"));
}

#[test]
fn json_lists_every_solved_form() {
    let o = aggsolve(&["--theory", "mset", "--mode", "all", "--format", "json"], "{[X|R]} = {[a,b]}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let forms = v["solved_forms"].as_array().unwrap();
    assert_eq!(forms.len(), 2);
    assert!(forms.iter().all(|f| f["literals"].is_array() && f["fresh_vars"].is_array()));
    assert!(v.get("witness").is_none());
}

#[test]
fn same_seed_gives_identical_output() {
    let args = ["--theory", "set", "--mode", "all", "--format", "json", "--seed", "40"];
    let input = "{X|R} = {a,b|S} & X != b";
    let (a, b) = (aggsolve(&args, input), aggsolve(&args, input));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("_40"), "{}", stdout(&a));
}

#[test]
fn errors_exit_with_2() {
    let o = aggsolve(&["--theory", "set"], "X inn Y");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column 3"));

    let o = aggsolve(&["--theory", "list"], "X = {a}");
    assert_eq!(o.status.code(), Some(2));

    let o = aggsolve(&["--theory", "set"], "N_1 = a");
    assert_eq!(o.status.code(), Some(2));

    let o = aggsolve(&["--mode", "sat"], "X = a");
    assert_eq!(o.status.code(), Some(2));

    let o = aggsolve(&["--theory", "set", "--branch-limit", "2", "--format", "json"], "{X,Y,Z} = {a,b,c}");
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "resource_limit");
}

#[test]
fn member_elimination_can_be_disabled() {
    let on = aggsolve(&["--theory", "set"], "a in X");
    let off = aggsolve(&["--theory", "set", "--no-member-elim"], "a in X");
    assert!(stdout(&on).contains("X = {a|"));
    assert!(stdout(&off).contains("a in X"));
}

#[test]
fn oracle_check_agrees() {
    let o = aggsolve(&["--theory", "set", "--oracle-check", "2"], "{A,B} in X & {B,A} nin X");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("oracle: agree"), "{}", stdout(&o));
}
