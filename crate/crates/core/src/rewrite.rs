//! Membership, non-membership and disequality rewriting, and the phase loop
//! that drives one kind of literal to pre-solved form.

use std::collections::BTreeSet;

use crate::constraint::{Constraint, Kind, Literal};
use crate::error::Error;
use crate::solver::literal_presolved;
use crate::term::{FreshSupply, Term, Theory, Var};
use crate::unify;

/// Alternatives produced by one rule application. A false alternative is
/// represented by [`Constraint::falsum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branches {
    pub alternatives: Vec<Constraint>,
}

impl Branches {
    pub fn one(c: Constraint) -> Self {
        Branches { alternatives: vec![c] }
    }

    pub fn fail() -> Self {
        Self::one(Constraint::falsum())
    }

    pub fn many(alternatives: Vec<Constraint>) -> Self {
        debug_assert!(!alternatives.is_empty());
        Branches { alternatives }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    In,
    Nin,
    Neq,
    Eq,
}

impl Phase {
    pub const ORDER: [Phase; 4] = [Phase::In, Phase::Nin, Phase::Neq, Phase::Eq];

    pub fn next(self) -> Option<Phase> {
        match self {
            Phase::In => Some(Phase::Nin),
            Phase::Nin => Some(Phase::Neq),
            Phase::Neq => Some(Phase::Eq),
            Phase::Eq => None,
        }
    }

    fn kind(self) -> Kind {
        match self {
            Phase::In => Kind::In,
            Phase::Nin => Kind::Nin,
            Phase::Neq => Kind::Neq,
            Phase::Eq => Kind::Eq,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteOptions {
    /// Rewrite `r in X` to `X = {r|N}` for multisets and sets.
    pub member_elim: bool,
}

impl Default for RewriteOptions {
    fn default() -> Self {
        RewriteOptions { member_elim: true }
    }
}

impl RewriteOptions {
    pub fn member_elim_for(&self, theory: Theory) -> bool {
        self.member_elim && theory.permutative()
    }
}

/// Index of the literal the phase rewrites next, if any.
pub fn select(theory: Theory, phase: Phase, c: &Constraint, opts: &RewriteOptions) -> Option<usize> {
    if c.is_false() {
        return None;
    }
    match phase {
        Phase::Eq => unify::select_eq(theory, c),
        Phase::In if opts.member_elim_for(theory) => c.literals().iter().position(|l| l.kind() == Kind::In),
        _ => {
            let kind = phase.kind();
            c.literals().iter().enumerate().position(|(i, l)| l.kind() == kind && !literal_presolved(c, i))
        }
    }
}

/// Applies the phase's rule to literal `idx`.
pub fn step(
    theory: Theory,
    phase: Phase,
    idx: usize,
    c: &Constraint,
    supply: &mut FreshSupply,
    opts: &RewriteOptions,
) -> Branches {
    let mut br = match phase {
        Phase::In => step_in(theory, idx, c, supply, opts.member_elim_for(theory)),
        Phase::Nin => step_nin(theory, idx, c),
        Phase::Neq => step_neq(theory, idx, c, supply),
        Phase::Eq => unify::step_eq(theory, idx, c, supply),
    };
    if theory.absorptive() {
        for alt in &mut br.alternatives {
            if !alt.is_false() {
                *alt = alt.map(|t| theory.absorb_repeats(t));
            }
        }
    }
    br
}

/// `r in t`.
pub fn step_in(theory: Theory, idx: usize, c: &Constraint, supply: &mut FreshSupply, member_elim: bool) -> Branches {
    let lit = &c.literals()[idx];
    let (r, t) = (&lit.lhs, &lit.rhs);
    if let Some((h, s)) = theory.uncons(t) {
        return Branches::many(vec![
            c.replace(idx, [Literal::eq(r.clone(), h.clone())]),
            c.replace(idx, [Literal::member(r.clone(), s.clone())]),
        ]);
    }
    match t {
        Term::App(..) => Branches::fail(),
        Term::Var(x) if r.occurs(x) => Branches::fail(),
        Term::Var(x) => {
            if member_elim {
                let n = supply.fresh("N");
                Branches::one(c.replace(idx, [Literal::eq(Term::Var(x.clone()), theory.cons(r.clone(), Term::Var(n)))]))
            } else {
                Branches::one(c.clone())
            }
        }
    }
}

/// `r nin t`.
pub fn step_nin(theory: Theory, idx: usize, c: &Constraint) -> Branches {
    let lit = &c.literals()[idx];
    let (r, t) = (&lit.lhs, &lit.rhs);
    if let Some((h, s)) = theory.uncons(t) {
        return Branches::one(c.replace(
            idx,
            [Literal::neq(r.clone(), h.clone()), Literal::non_member(r.clone(), s.clone())],
        ));
    }
    match t {
        Term::App(..) => Branches::one(c.erase(idx)),
        Term::Var(x) if r.occurs(x) => Branches::one(c.erase(idx)),
        Term::Var(_) => Branches::one(c.clone()),
    }
}

/// `s != t`.
pub fn step_neq(theory: Theory, idx: usize, c: &Constraint, supply: &mut FreshSupply) -> Branches {
    let lit = &c.literals()[idx];
    let (s, t) = (&lit.lhs, &lit.rhs);
    if s == t {
        return Branches::fail();
    }
    match (s, t) {
        (Term::App(..), Term::Var(_)) => Branches::one(c.replace(idx, [Literal::neq(t.clone(), s.clone())])),
        (Term::Var(x), _) => {
            if !t.occurs(x) {
                return Branches::one(c.clone());
            }
            neq_cyclic(theory, idx, c, x, t, supply)
        }
        (Term::App(f, a), Term::App(g, b)) => {
            if f != g || a.len() != b.len() {
                return Branches::one(c.erase(idx));
            }
            if theory.is_cons(s) && theory != Theory::List {
                return neq_aggregates(theory, idx, c, s, t, supply);
            }
            Branches::many(
                a.iter()
                    .zip(b.iter())
                    .map(|(x, y)| c.replace(idx, [Literal::neq(x.clone(), y.clone())]))
                    .collect(),
            )
        }
    }
}

/// `X != t` with `X` occurring in `t`.
fn neq_cyclic(theory: Theory, idx: usize, c: &Constraint, x: &Var, t: &Term, supply: &mut FreshSupply) -> Branches {
    let (elems, rest) = theory.split(t);
    let tail_is_x = !elems.is_empty() && rest.as_var() == Some(x);
    if !tail_is_x || elems.iter().any(|e| e.occurs(x)) {
        return Branches::one(c.erase(idx));
    }
    let xt = Term::Var(x.clone());
    match theory {
        Theory::List | Theory::MSet => Branches::one(c.erase(idx)),
        Theory::Set => Branches::many(
            elems.iter().map(|e| c.replace(idx, [Literal::non_member(e.clone(), xt.clone())])).collect(),
        ),
        Theory::CList => {
            let t1 = &elems[0];
            let mut alts: Vec<Constraint> = elems[1..]
                .iter()
                .map(|ti| c.replace(idx, [Literal::neq(t1.clone(), ti.clone())]))
                .collect();
            alts.push(c.replace(idx, [Literal::eq(xt.clone(), Term::nil())]));
            let n1 = Term::Var(supply.fresh("N"));
            let n2 = Term::Var(supply.fresh("N"));
            alts.push(c.replace(
                idx,
                [Literal::eq(xt.clone(), theory.cons(n1.clone(), n2)), Literal::neq(n1, t1.clone())],
            ));
            // X may also be a term that is not a compact list at all.
            for (f, arity) in kernel_functors(theory, c) {
                let args: Vec<Term> = (0..arity).map(|_| Term::Var(supply.fresh("N"))).collect();
                alts.push(c.replace(idx, [Literal::eq(xt.clone(), Term::app(f, args))]));
            }
            Branches::many(alts)
        }
    }
}

/// Functors other than nil and the aggregate constructor occurring in `c`.
fn kernel_functors(theory: Theory, c: &Constraint) -> BTreeSet<(String, usize)> {
    let mut out = BTreeSet::new();
    for l in c.literals() {
        for side in [&l.lhs, &l.rhs] {
            side.subterms(&mut |u| {
                if let Term::App(f, a) = u {
                    if !u.is_nil() && !theory.is_cons(u) {
                        out.insert((f.to_string(), a.len()));
                    }
                }
            });
        }
    }
    out
}

fn neq_aggregates(theory: Theory, idx: usize, c: &Constraint, s: &Term, t: &Term, supply: &mut FreshSupply) -> Branches {
    let (t1, s1) = theory.uncons(s).expect("aggregate");
    let (t2, s2) = theory.uncons(t).expect("aggregate");
    match theory {
        Theory::List => unreachable!("lists decompose"),
        Theory::MSet => {
            let same_tail = matches!((theory.tail(s), theory.tail(t)), (Term::Var(x), Term::Var(y)) if x == y);
            if same_tail {
                return Branches::one(c.replace(idx, [Literal::neq(theory.untail(s), theory.untail(t))]));
            }
            let n = Term::Var(supply.fresh("N"));
            Branches::many(vec![
                c.replace(idx, [Literal::neq(t1.clone(), t2.clone()), Literal::non_member(t1.clone(), s2.clone())]),
                c.replace(
                    idx,
                    [Literal::eq(t.clone(), theory.cons(t1.clone(), n.clone())), Literal::neq(s1.clone(), n)],
                ),
            ])
        }
        Theory::CList => Branches::many(vec![
            c.replace(idx, [Literal::neq(t1.clone(), t2.clone())]),
            c.replace(
                idx,
                [
                    Literal::neq(s1.clone(), s2.clone()),
                    Literal::neq(s.clone(), s2.clone()),
                    Literal::neq(s1.clone(), t.clone()),
                ],
            ),
        ]),
        Theory::Set => {
            let z = Term::Var(supply.fresh("Z"));
            Branches::many(vec![
                c.replace(idx, [Literal::member(z.clone(), s.clone()), Literal::non_member(z.clone(), t.clone())]),
                c.replace(idx, [Literal::member(z.clone(), t.clone()), Literal::non_member(z, s.clone())]),
            ])
        }
    }
}

/// Resource limits and counters shared by the drivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of alternatives explored in one run.
    pub branch_limit: usize,
    /// Maximum rule applications along one branch; `None` derives the cap
    /// from the input with [`default_step_cap`].
    pub step_limit: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { branch_limit: 100_000, step_limit: None }
    }
}

/// Per-branch rule-application cap: `10·n² + 100` where `n` counts symbols,
/// variables and literals of the input.
pub fn default_step_cap(c: &Constraint) -> usize {
    let n = c.size() + c.free_vars().len() + c.len();
    10 * n * n + 100
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Stats {
    pub branches: usize,
    pub rule_applications: usize,
    pub max_branch_steps: usize,
}

/// Runs one phase to completion on every branch. Each surviving
/// alternative has all literals of the phase's kind pre-solved; when every
/// branch fails a single false constraint is returned.
pub fn run_main_loop(
    theory: Theory,
    phase: Phase,
    c: &Constraint,
    supply: &FreshSupply,
    opts: &RewriteOptions,
    limits: &Limits,
) -> Result<(Vec<(Constraint, FreshSupply)>, Stats), Error> {
    let cap = limits.step_limit.unwrap_or_else(|| default_step_cap(c));
    let mut stats = Stats { branches: 1, ..Stats::default() };
    let mut out = Vec::new();
    let mut stack = vec![(c.clone(), supply.clone(), 0usize)];
    while let Some((cur, mut sup, steps)) = stack.pop() {
        if cur.is_false() {
            continue;
        }
        stats.max_branch_steps = stats.max_branch_steps.max(steps);
        let Some(idx) = select(theory, phase, &cur, opts) else {
            out.push((cur, sup));
            continue;
        };
        if steps >= cap {
            return Err(Error::StepLimitExceeded { limit: cap });
        }
        let br = step(theory, phase, idx, &cur, &mut sup, opts);
        stats.rule_applications += 1;
        stats.branches += br.alternatives.len() - 1;
        if stats.branches > limits.branch_limit {
            return Err(Error::BranchLimitExceeded { limit: limits.branch_limit });
        }
        for alt in br.alternatives.into_iter().rev() {
            stack.push((alt, sup.clone(), steps + 1));
        }
    }
    if out.is_empty() {
        out.push((Constraint::falsum(), supply.clone()));
    }
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_constraint, parse_constraint_with, ParseOptions};

    fn c(theory: Theory, s: &str) -> Constraint {
        parse_constraint_with(theory, s, ParseOptions { allow_reserved: true }).unwrap()
    }

    fn alts(b: Branches) -> Vec<String> {
        b.alternatives.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn in_rules() {
        let l = Theory::List;
        let mut sup = FreshSupply::new();
        assert_eq!(alts(step_in(l, 0, &c(l, "a in [b|T]"), &mut sup, false)), ["a = b", "a in T"]);
        for th in Theory::ALL {
            assert_eq!(alts(step_in(th, 0, &c(th, "a in f(b)"), &mut sup, false)), ["false"]);
        }
        let s = Theory::Set;
        let mut sup = FreshSupply::new();
        assert_eq!(alts(step_in(s, 0, &c(s, "a in X"), &mut sup, true)), ["X = {a|N_0}"]);
        assert_eq!(alts(step_in(l, 0, &c(l, "[a|X] in X"), &mut sup, false)), ["false"]);
    }

    #[test]
    fn nin_rules() {
        for th in Theory::ALL {
            assert_eq!(alts(step_nin(th, 0, &c(th, "a nin nil"))), ["true"]);
        }
        let s = Theory::Set;
        assert_eq!(alts(step_nin(s, 0, &c(s, "a nin {b|S}"))), ["a != b & a nin S"]);
        let l = Theory::List;
        assert_eq!(alts(step_nin(l, 0, &c(l, "[a|X] nin X"))), ["true"]);
    }

    #[test]
    fn neq_rules() {
        let mut sup = FreshSupply::new();
        for th in Theory::ALL {
            assert_eq!(alts(step_neq(th, 0, &c(th, "f(a) != g(a)"), &mut sup)), ["true"]);
            assert_eq!(alts(step_neq(th, 0, &c(th, "a != a"), &mut sup)), ["false"]);
        }
        let l = Theory::List;
        assert_eq!(alts(step_neq(l, 0, &c(l, "[a|X] != [b|Y]"), &mut sup)), ["a != b", "X != Y"]);
        let m = Theory::MSet;
        assert_eq!(alts(step_neq(m, 0, &c(m, "{[a|X]} != {[b|X]}"), &mut sup)), ["{[a]} != {[b]}"]);
        let mut sup = FreshSupply::new();
        assert_eq!(
            alts(step_neq(m, 0, &c(m, "{[A|S]} != {[B|T]}"), &mut sup)),
            ["A != B & A nin T", "{[B|T]} = {[A|N_0]} & S != N_0"]
        );
        let s = Theory::Set;
        assert_eq!(alts(step_neq(s, 0, &c(s, "X != {a,b|X}"), &mut sup)), ["a nin X", "b nin X"]);
        let cl = Theory::CList;
        let mut sup = FreshSupply::new();
        assert_eq!(
            alts(step_neq(cl, 0, &c(cl, "X != [[a|X]]"), &mut sup)),
            ["X = nil", "X = [[N_0|N_1]] & N_0 != a", "X = a"]
        );
    }

    #[test]
    fn neq_general_decomposition() {
        let l = Theory::List;
        let mut sup = FreshSupply::new();
        assert_eq!(alts(step_neq(l, 0, &c(l, "f(a,b) != f(a,c)"), &mut sup)), ["a != a", "b != c"]);
        let (out, _) = run_main_loop(
            l,
            Phase::Neq,
            &c(l, "f(a,b) != f(a,c)"),
            &FreshSupply::new(),
            &RewriteOptions::default(),
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0.status(), crate::constraint::Status::True);
    }

    #[test]
    fn main_loop_examples() {
        let l = Theory::List;
        let opts = RewriteOptions::default();
        let lim = Limits::default();
        let (out, _) =
            run_main_loop(l, Phase::In, &c(l, "a in [b] & b in nil"), &FreshSupply::new(), &opts, &lim).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].0.is_false());
        for phase in Phase::ORDER {
            let (out, _) = run_main_loop(l, phase, &c(l, "X = a"), &FreshSupply::new(), &opts, &lim).unwrap();
            assert_eq!(out[0].0, parse_constraint(l, "X = a").unwrap());
        }
    }
}
