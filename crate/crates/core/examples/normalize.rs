//! Canonical forms and ground evaluation in each of the four theories.
//!
//! Run with `cargo run --example normalize`.

use aggsolve::{e_equal, ground_member, normalize, parse_term, Theory};

fn main() {
    let samples = [
        (Theory::List, "[b,a,a]"),
        (Theory::MSet, "{[b,a,a]}"),
        (Theory::CList, "[[b,a,a,b]]"),
        (Theory::Set, "{b,a,a,{b,b}}"),
        (Theory::Set, "{a|f(b)}"),
    ];
    for (theory, text) in samples {
        let t = parse_term(theory, text).expect("valid term");
        println!("{theory:>5}: {t}  normalizes to  {}", normalize(theory, &t));
    }

    println!();
    let pairs = [
        (Theory::MSet, "{[a,b]}", "{[b,a]}"),
        (Theory::MSet, "{[a]}", "{[a,a]}"),
        (Theory::CList, "[[a,b,a]]", "[[a,a,b]]"),
        (Theory::Set, "{a|f(b)}", "{a|f(c)}"),
    ];
    for (theory, s, t) in pairs {
        let (s, t) = (parse_term(theory, s).unwrap(), parse_term(theory, t).unwrap());
        println!("{theory:>5}: {s} = {t} ?  {}", e_equal(theory, &s, &t));
    }

    println!();
    let s = Theory::Set;
    let agg = parse_term(s, "{a|b}").unwrap();
    for x in ["a", "b"] {
        let x = parse_term(s, x).unwrap();
        println!("  set: {x} in {agg} ?  {}", ground_member(s, &x, &agg).unwrap());
    }
}
