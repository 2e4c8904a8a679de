//! A three-clause CNF formula encoded with membership and disequality over
//! lists, solved and decoded back into a truth assignment.
//!
//! Run with `cargo run --example three_sat`.

use aggsolve::{parse_constraint, sat, SolveConfig, Term, Theory, Var};

const ENCODING: &str = include_str!("data/three_sat.con");

/// Clauses over x1..x3; a negative number is a negated variable.
const CNF: [[i32; 3]; 3] = [[1, 2, -3], [-1, 2, 3], [1, -2, 3]];

fn main() {
    let theory = Theory::List;
    let c = parse_constraint(theory, ENCODING).unwrap();
    println!("{} literals", c.len());
    let start = std::time::Instant::now();
    let out = sat(theory, &c, &SolveConfig::default().with_witness()).expect("within limits");
    println!("{:?} in {:.2?}", out.verdict, start.elapsed());
    let gamma = out.solved_forms[0].witness.as_ref().unwrap();
    let truth = Term::app("[|]", vec![Term::nil(), Term::nil()]);
    let value = |i: i32| -> bool {
        let v = &gamma[&Var::new(format!("X{}", i.abs()))];
        (*v == truth) == (i > 0)
    };
    for i in 1..=3 {
        println!("  x{i} = {}", value(i));
    }
    let satisfied = CNF.iter().all(|clause| clause.iter().any(|&l| value(l)));
    println!("formula satisfied: {satisfied}");
}
