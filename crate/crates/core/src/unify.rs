//! Unification modulo the four theories.
//!
//! Equations are rewritten one at a time. Among the equations of a
//! constraint the one whose applicable rule has the smallest [`Priority`] is
//! rewritten first (leftmost on ties): failures, then trivial and orienting
//! steps, variable elimination, decomposition, same-tail reduction and
//! finally the branching rules.

use std::collections::BTreeSet;

use crate::constraint::{Constraint, Kind, Literal};
use crate::equational::normalize;
use crate::error::Error;
use crate::rewrite::{run_main_loop, Branches, Limits, Phase, RewriteOptions, Stats};
use crate::term::{FreshSupply, Substitution, Term, Theory, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Priority {
    Failure,
    Trivial,
    Eliminate,
    Decompose,
    SameTail,
    Branch,
}

#[derive(Clone, Debug)]
enum Rule {
    Fail,
    Erase,
    Orient,
    Eliminate(Var, Term),
    /// `X = [[t1,…,tn|X]]` or `X = {t1,…,tn|X}` with `X` not in the elements.
    Cyclic(Var, Vec<Term>),
    Decompose,
    Untail,
    Branch,
    SetSameTail,
}

impl Rule {
    fn priority(&self) -> Priority {
        match self {
            Rule::Fail => Priority::Failure,
            Rule::Erase | Rule::Orient => Priority::Trivial,
            Rule::Eliminate(..) | Rule::Cyclic(..) => Priority::Eliminate,
            Rule::Decompose => Priority::Decompose,
            Rule::Untail => Priority::SameTail,
            Rule::Branch | Rule::SetSameTail => Priority::Branch,
        }
    }
}

fn same_var_tails(theory: Theory, s: &Term, t: &Term) -> bool {
    matches!((theory.tail(s), theory.tail(t)), (Term::Var(x), Term::Var(y)) if x == y)
}

/// The rule applicable to equation `idx`, or `None` when it is pre-solved.
fn analyse(theory: Theory, idx: usize, c: &Constraint) -> Option<Rule> {
    let lit = &c.literals()[idx];
    let (s, t) = (&lit.lhs, &lit.rhs);
    if s == t {
        return Some(Rule::Erase);
    }
    match (s, t) {
        (Term::App(..), Term::Var(_)) => Some(Rule::Orient),
        (Term::Var(x), _) => {
            if !t.occurs(x) {
                return if c.count(x) > 1 { Some(Rule::Eliminate(x.clone(), t.clone())) } else { None };
            }
            if matches!(theory, Theory::CList | Theory::Set) {
                let (elems, rest) = theory.split(t);
                if !elems.is_empty() && rest.as_var() == Some(x) && !elems.iter().any(|e| e.occurs(x)) {
                    return Some(Rule::Cyclic(x.clone(), elems));
                }
            }
            Some(Rule::Fail)
        }
        (Term::App(f, a), Term::App(g, b)) => {
            if f != g || a.len() != b.len() {
                Some(Rule::Fail)
            } else if theory == Theory::List || !theory.is_cons(s) {
                Some(Rule::Decompose)
            } else {
                match theory {
                    Theory::MSet if same_var_tails(theory, s, t) => Some(Rule::Untail),
                    Theory::Set if same_var_tails(theory, s, t) => Some(Rule::SetSameTail),
                    _ => Some(Rule::Branch),
                }
            }
        }
    }
}

/// Equation to rewrite next.
pub fn select_eq(theory: Theory, c: &Constraint) -> Option<usize> {
    let mut best: Option<(Priority, usize)> = None;
    for (i, l) in c.literals().iter().enumerate() {
        if l.kind() != Kind::Eq {
            continue;
        }
        if let Some(rule) = analyse(theory, i, c) {
            let p = rule.priority();
            if p == Priority::Failure {
                return Some(i);
            }
            if best.is_none_or(|(bp, _)| p < bp) {
                best = Some((p, i));
            }
        }
    }
    best.map(|(_, i)| i)
}

/// Rewrites equation `idx`.
pub fn step_eq(theory: Theory, idx: usize, c: &Constraint, supply: &mut FreshSupply) -> Branches {
    let Some(rule) = analyse(theory, idx, c) else {
        return Branches::one(c.clone());
    };
    let lit = &c.literals()[idx];
    let (s, t) = (&lit.lhs, &lit.rhs);
    let eq = |l: &Term, r: &Term| Literal::eq(l.clone(), r.clone());
    match rule {
        Rule::Fail => Branches::fail(),
        Rule::Erase => Branches::one(c.erase(idx)),
        Rule::Orient => Branches::one(c.replace(idx, [eq(t, s)])),
        Rule::Eliminate(x, u) => {
            let rest = c.erase(idx).substitute(&x, &u);
            let mut lits = rest.literals().to_vec();
            lits.insert(idx, eq(&Term::Var(x), &u));
            Branches::one(Constraint::new(lits))
        }
        Rule::Cyclic(x, elems) => {
            let n = Term::Var(supply.fresh("N"));
            let xt = Term::Var(x);
            let lits: Vec<Literal> = match theory {
                Theory::CList => {
                    let mut v: Vec<Literal> = elems[1..].iter().map(|e| eq(&elems[0], e)).collect();
                    v.push(eq(&xt, &theory.cons(elems[0].clone(), n)));
                    v
                }
                _ => vec![eq(&xt, &theory.aggregate(elems, n))],
            };
            Branches::one(c.replace(idx, lits))
        }
        Rule::Decompose => Branches::one(c.replace(idx, s.args().iter().zip(t.args()).map(|(a, b)| eq(a, b)))),
        Rule::Untail => Branches::one(c.replace(idx, [eq(&theory.untail(s), &theory.untail(t))])),
        Rule::Branch => {
            let (h1, r1) = theory.uncons(s).expect("aggregate");
            let (h2, r2) = theory.uncons(t).expect("aggregate");
            match theory {
                Theory::MSet => {
                    let n = Term::Var(supply.fresh("N"));
                    Branches::many(vec![
                        c.replace(idx, [eq(h1, h2), eq(r1, r2)]),
                        c.replace(
                            idx,
                            [eq(r1, &theory.cons(h2.clone(), n.clone())), eq(&theory.cons(h1.clone(), n), r2)],
                        ),
                    ])
                }
                Theory::CList => Branches::many(vec![
                    c.replace(idx, [eq(h1, h2), eq(r1, r2)]),
                    c.replace(idx, [eq(h1, h2), eq(r1, t)]),
                    c.replace(idx, [eq(h1, h2), eq(s, r2)]),
                ]),
                Theory::Set => {
                    let n = Term::Var(supply.fresh("N"));
                    Branches::many(vec![
                        c.replace(idx, [eq(h1, h2), eq(r1, r2)]),
                        c.replace(idx, [eq(h1, h2), eq(r1, t)]),
                        c.replace(idx, [eq(h1, h2), eq(s, r2)]),
                        c.replace(
                            idx,
                            [eq(r1, &theory.cons(h2.clone(), n.clone())), eq(&theory.cons(h1.clone(), n), r2)],
                        ),
                    ])
                }
                Theory::List => unreachable!("lists decompose"),
            }
        }
        Rule::SetSameTail => {
            let (e1, x) = theory.split(s);
            let (e2, _) = theory.split(t);
            let agg = |elems: &[Term], rest: &Term| theory.aggregate(elems.iter().cloned(), rest.clone());
            let t1 = &e1[0];
            let mut alts = Vec::new();
            for j in 0..e2.len() {
                let without_j: Vec<Term> = e2.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect();
                let head = eq(t1, &e2[j]);
                alts.push(c.replace(idx, [head.clone(), eq(&agg(&e1[1..], &x), &agg(&without_j, &x))]));
                alts.push(c.replace(idx, [head.clone(), eq(&agg(&e1[1..], &x), &agg(&e2, &x))]));
                alts.push(c.replace(idx, [head, eq(&agg(&e1, &x), &agg(&without_j, &x))]));
            }
            let n = Term::Var(supply.fresh("N"));
            alts.push(c.replace(
                idx,
                [eq(&x, &theory.cons(t1.clone(), n.clone())), eq(&agg(&e1[1..], &n), &agg(&e2, &n))],
            ));
            Branches::many(alts)
        }
    }
}

#[derive(Clone, Debug)]
pub struct UnificationProblem {
    pub theory: Theory,
    pub equations: Vec<(Term, Term)>,
    pub supply: FreshSupply,
}

impl UnificationProblem {
    pub fn new(theory: Theory, equations: Vec<(Term, Term)>) -> Self {
        UnificationProblem { theory, equations, supply: FreshSupply::new() }
    }
}

/// A finite set of solved-form unifiers; empty means failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnifierSet {
    pub solutions: Vec<Substitution>,
    pub stats: Stats,
}

impl UnifierSet {
    pub fn is_failure(&self) -> bool {
        self.solutions.is_empty()
    }
}

pub fn unify(p: &UnificationProblem) -> Result<UnifierSet, Error> {
    unify_with_limits(p, &Limits::default())
}

pub fn unify_with_limits(p: &UnificationProblem, limits: &Limits) -> Result<UnifierSet, Error> {
    let c: Constraint = p.equations.iter().map(|(l, r)| Literal::eq(l.clone(), r.clone())).collect();
    let (alts, stats) = run_main_loop(p.theory, Phase::Eq, &c, &p.supply, &RewriteOptions::default(), limits)?;
    let original = c.free_vars();
    let mut seen = BTreeSet::new();
    let mut solutions = Vec::new();
    for (alt, _) in alts {
        if alt.is_false() {
            continue;
        }
        // Bindings of fresh variables are dropped: in solved form they never
        // occur in the range of the remaining bindings.
        let sigma: Substitution = alt
            .literals()
            .iter()
            .map(|l| (l.lhs.as_var().expect("solved equation").clone(), l.rhs.clone()))
            .filter(|(x, _)| original.contains(x))
            .collect();
        let key: Vec<(Var, Term)> = sigma.iter().map(|(x, t)| (x.clone(), normalize(p.theory, t))).collect();
        if seen.insert(key) {
            solutions.push(sigma);
        }
    }
    Ok(UnifierSet { solutions, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equational::e_equal;
    use crate::syntax::parse_term;

    fn solve(theory: Theory, l: &str, r: &str) -> Vec<String> {
        let p = UnificationProblem::new(theory, vec![(parse_term(theory, l).unwrap(), parse_term(theory, r).unwrap())]);
        unify(&p).unwrap().solutions.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn list_decomposition() {
        assert_eq!(solve(Theory::List, "[X|Y]", "[a,b]"), ["[X/a, Y/[b]]"]);
        assert!(solve(Theory::List, "X", "[a|X]").is_empty());
    }

    #[test]
    fn mset_branches() {
        assert_eq!(solve(Theory::MSet, "{[X|R]}", "{[a,b]}"), ["[R/{[b]}, X/a]", "[R/{[a]}, X/b]"]);
        assert!(solve(Theory::MSet, "{[a|X]}", "{[b|X]}").is_empty());
    }

    #[test]
    fn clist_cycle() {
        assert_eq!(solve(Theory::CList, "X", "[[a|X]]"), ["[X/[[a|N_0]]]"]);
    }

    #[test]
    fn set_singleton() {
        let sols = solve(Theory::Set, "{X}", "{a,a}");
        assert!(!sols.is_empty());
        assert!(sols.iter().all(|s| s == "[X/a]"));
    }

    #[test]
    fn set_same_tail_keeps_trivial_solution() {
        // {A|X} = {a|X} holds for A = a and for any A already in X
        let sols = solve(Theory::Set, "{A|X}", "{a|X}");
        assert!(sols.iter().any(|s| s == "[A/a]"));
        assert!(sols.iter().any(|s| s.starts_with("[X/{A,a|")));
    }

    #[test]
    fn unifiers_are_sound() {
        let cases = [
            (Theory::MSet, "{[X,Y|Z]}", "{[a,b]}"),
            (Theory::CList, "[[X,Y]]", "[[a]]"),
            (Theory::Set, "{X,Y}", "{a,b}"),
            (Theory::Set, "{X|R}", "{a|S}"),
        ];
        for (th, l, r) in cases {
            let (l, r) = (parse_term(th, l).unwrap(), parse_term(th, r).unwrap());
            let u = unify(&UnificationProblem::new(th, vec![(l.clone(), r.clone())])).unwrap();
            assert!(!u.is_failure());
            for s in &u.solutions {
                assert!(e_equal(th, &s.apply(&l), &s.apply(&r)), "{th}: {s}");
                for t in [&l, &r] {
                    assert_eq!(s.apply(&s.apply(t)), s.apply(t));
                }
            }
        }
    }
}
