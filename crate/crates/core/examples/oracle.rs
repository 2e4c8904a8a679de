//! The brute-force oracle: finite universes, axiom closure, E-matching and
//! exhaustive search, cross-checked against the solver.
//!
//! Run with `cargo run --example oracle`.

use aggsolve::oracle::{brute_sat, closure_e_equal, e_match, enumerate, ClosureBound, Signature};
use aggsolve::{e_equal, parse_constraint, parse_term, sat, SolveConfig, Theory};

fn main() {
    let sig = Signature::standard();
    for theory in Theory::ALL {
        println!("{theory}: {} distinct terms up to depth 2", enumerate(theory, &sig, 2).len());
    }

    let m = Theory::MSet;
    let (s, t) = (parse_term(m, "{[a,b,a]}").unwrap(), parse_term(m, "{[a,a,b]}").unwrap());
    let by_axioms = closure_e_equal(m, &s, &t, ClosureBound::for_terms(&s, &t)).unwrap();
    println!("\n{s} = {t}: axioms {by_axioms}, normal forms {}", e_equal(m, &s, &t));

    let s = Theory::Set;
    let pattern = parse_term(s, "{X|R}").unwrap();
    let target = parse_term(s, "{a,b}").unwrap();
    println!("\nmatches of {pattern} against {target}:");
    for d in e_match(s, &pattern, &target) {
        let shown: Vec<String> = d.iter().map(|(x, t)| format!("{x}={t}")).collect();
        println!("    {}", shown.join(" "));
    }

    let universe = enumerate(s, &sig, 2);
    println!();
    for text in ["{A} in X & {a} nin X", "{A,B} in X & {B,A} nin X"] {
        let c = parse_constraint(s, text).unwrap();
        let found = brute_sat(s, &c, &universe);
        let solver = sat(s, &c, &SolveConfig::default()).unwrap();
        println!("{c}\n    solver: {:?}, search: {:?}", solver.verdict, found);
    }
}
