//! Ground witnesses for solved forms, verified against the ground model.
//!
//! Run with `cargo run --example witness`.

use aggsolve::solver::supply_avoiding;
use aggsolve::witness::trace_witness;
use aggsolve::{eval_ground, parse_constraint, sat, SolveConfig, Theory};

fn main() {
    let problems = [
        (Theory::Set, "{A} in X & {a} nin X"),
        (Theory::MSet, "X != {[a|Y]} & a in Y & Y nin X"),
        (Theory::CList, "X != [[a|X]] & a in X"),
        (Theory::List, "X != [Y] & Y != a & [X] nin Z"),
    ];
    for (theory, text) in problems {
        let c = parse_constraint(theory, text).unwrap();
        let out = sat(theory, &c, &SolveConfig::default()).expect("within limits");
        println!("{theory}: {c}");
        let Some(sf) = out.solved_forms.first() else {
            println!("    unsat");
            continue;
        };
        println!("    solved form: {}", sf.constraint);
        let mut supply = supply_avoiding(&sf.constraint);
        let trace = trace_witness(theory, &sf.constraint, &mut supply).expect("solved forms have witnesses");
        println!("    sigma*:   {}", trace.sigma_star);
        println!("    heights:  {:?}", trace.heights);
        for (x, t) in &trace.valuation {
            if c.free_vars().contains(x) {
                println!("    {x} := {t}");
            }
        }
        println!("    holds on input: {}", eval_ground(theory, &c, &trace.valuation).unwrap());
    }
}
