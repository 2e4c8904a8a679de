//! Deciding satisfiability and listing solved forms.
//!
//! Run with `cargo run --example solve`.

use aggsolve::{parse_constraint, sat, SolveConfig, Theory};

fn main() {
    let problems = [
        (Theory::Set, "X in Y & Y in X"),
        (Theory::List, "X in Y & Y in X"),
        (Theory::Set, "{A,B} in X & {B,A} nin X"),
        (Theory::Set, "{A} in X & {a} nin X"),
        (Theory::Set, "a in X & X in Y & {a|X} nin Y"),
        (Theory::MSet, "{[a|X]} = {[b|Y]} & X != Y"),
        (Theory::CList, "X != [[a|X]] & X = b"),
        (Theory::Set, "{a|b} != {a|c}"),
    ];
    for (theory, text) in problems {
        let c = parse_constraint(theory, text).unwrap();
        let out = sat(theory, &c, &SolveConfig::all()).expect("within limits");
        println!("{theory}: {c}");
        if !out.is_sat() {
            println!("    unsat");
        }
        for sf in &out.solved_forms {
            println!("    solved form: {}", sf.constraint);
        }
    }
}
