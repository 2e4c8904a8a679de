//! Complete sets of unifiers for equations modulo each theory.
//!
//! Run with `cargo run --example unify`.

use aggsolve::{e_equal, parse_term, unify, Theory, UnificationProblem};

fn show(theory: Theory, l: &str, r: &str) {
    let (l, r) = (parse_term(theory, l).unwrap(), parse_term(theory, r).unwrap());
    let problem = UnificationProblem::new(theory, vec![(l.clone(), r.clone())]);
    let result = unify(&problem).expect("within limits");
    println!("{theory}: {l} = {r}");
    if result.is_failure() {
        println!("    no unifier");
    }
    for theta in &result.solutions {
        let ok = e_equal(theory, &theta.apply(&l), &theta.apply(&r));
        println!("    {theta}   (checked: {ok})");
    }
    println!(
        "    {} branches, {} rule applications",
        result.stats.branches, result.stats.rule_applications
    );
}

fn main() {
    show(Theory::List, "[X|Y]", "[a,b]");
    show(Theory::List, "X", "[a|X]");
    show(Theory::MSet, "{[X|R]}", "{[a,b]}");
    show(Theory::MSet, "{[a|X]}", "{[b|X]}");
    show(Theory::CList, "X", "[[a|X]]");
    show(Theory::CList, "[[X,Y]]", "[[a]]");
    show(Theory::Set, "{X,Y}", "{a,b}");
    show(Theory::Set, "{A|X}", "{a|X}");
}
