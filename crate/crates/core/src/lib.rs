//! Satisfiability of `=`, `!=`, `in` and `nin` constraints over lists,
//! multisets, compact lists and sets.
//!
//! ```
//! use aggsolve::{parse_constraint, sat, SolveConfig, Theory};
//!
//! let c = parse_constraint(Theory::Set, "{A} in X & {a} nin X").unwrap();
//! let out = sat(Theory::Set, &c, &SolveConfig::default().with_witness()).unwrap();
//! assert!(out.is_sat());
//! let gamma = out.solved_forms[0].witness.as_ref().unwrap();
//! assert!(aggsolve::eval_ground(Theory::Set, &c, gamma).unwrap());
//! ```
//!
//! The runnable programs under `examples/` walk through each layer:
//! `cargo run --example normalize`, `unify`, `solve`, `witness`,
//! `member_subst`, `three_sat` and `oracle`.

pub mod cli;
pub mod constraint;
pub mod equational;
pub mod error;
pub mod oracle;
pub mod rewrite;
pub mod solver;
pub mod syntax;
pub mod term;
pub mod unify;
pub mod witness;

pub use constraint::{Constraint, Kind, Literal, Relation, Status};
pub use equational::{e_equal, eval_ground, ground_member, normalize, Valuation};
pub use error::Error;
pub use rewrite::{run_main_loop, step_in, step_neq, step_nin, Branches, Limits, Phase, RewriteOptions, Stats};
pub use solver::{
    build_graph, is_acyclic, is_presolved, is_solved, member_subst, membership_consistent, sat, Mode, SolveConfig,
    SolveOutcome, SolvedForm, Verdict,
};
pub use syntax::{parse_constraint, parse_term};
pub use term::{FreshSupply, Substitution, Term, Theory, Var};
pub use unify::{unify, UnificationProblem, UnifierSet};
pub use witness::{build_witness, solve_disequations, DisequationSystem};
