//! The member substitution of a pre-solved constraint, its stabilized
//! closure and the membership-consistency test.
//!
//! Run with `cargo run --example member_subst`.

use aggsolve::solver::{member_closure, supply_avoiding};
use aggsolve::{build_graph, is_acyclic, member_subst, membership_consistent, parse_constraint, Theory};

fn main() {
    let s = Theory::Set;
    for text in ["a in Y & Y in X & X in Z & {{a|Y}|X} nin Z", "a in Y & Y in X & b nin X", "X in Y & Y in X"] {
        let c = parse_constraint(s, text).unwrap();
        println!("{c}");
        let graph = build_graph(&c);
        if !is_acyclic(&graph) {
            println!("    membership graph has a cycle\n");
            continue;
        }
        let sigma = member_subst(s, &c, &mut supply_avoiding(&c));
        let star = member_closure(s, &c, &mut supply_avoiding(&c)).unwrap();
        println!("    sigma:   {sigma}");
        println!("    sigma*:  {star}");
        println!("    membership consistent: {}\n", membership_consistent(s, &c).unwrap());
    }
}
