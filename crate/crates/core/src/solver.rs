//! Satisfiability driver and the solved-form checks.
//!
//! [`sat`] explores rewriting branches depth first. Each branch runs the
//! membership, non-membership, disequality and equality phases in turn and
//! repeats whole rounds until a round applies no rule. The resulting
//! pre-solved constraint is then checked for an acyclic membership graph
//! and for membership consistency under the closure of the member
//! substitution.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::constraint::{Constraint, Kind, Literal};
use crate::equational::{e_equal, Valuation};
use crate::error::Error;
use crate::rewrite::{default_step_cap, select, step, Limits, Phase, RewriteOptions, Stats};
use crate::term::{FreshSupply, Substitution, Term, Theory, Var};
use crate::witness::build_witness;

/// Whether literal `idx` has one of the four pre-solved shapes in `c`.
pub fn literal_presolved(c: &Constraint, idx: usize) -> bool {
    let l = &c.literals()[idx];
    match l.kind() {
        Kind::Eq => match &l.lhs {
            Term::Var(x) => !l.rhs.occurs(x) && c.count(x) == 1,
            _ => false,
        },
        Kind::Neq => matches!(&l.lhs, Term::Var(x) if !l.rhs.occurs(x)),
        Kind::In | Kind::Nin => matches!(&l.rhs, Term::Var(x) if !l.lhs.occurs(x)),
    }
}

pub fn is_presolved(c: &Constraint) -> bool {
    !c.is_false() && (0..c.len()).all(|i| literal_presolved(c, i))
}

/// Edges `ν → X` for every `t in X` with `ν` free in `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MembershipGraph {
    pub nodes: BTreeSet<Var>,
    pub edges: BTreeSet<(Var, Var)>,
}

pub fn build_graph(c: &Constraint) -> MembershipGraph {
    let mut g = MembershipGraph::default();
    for l in c.literals().iter().filter(|l| l.kind() == Kind::In) {
        if let Term::Var(x) = &l.rhs {
            g.nodes.insert(x.clone());
            for v in l.lhs.free_vars() {
                g.nodes.insert(v.clone());
                g.edges.insert((v, x.clone()));
            }
        }
    }
    g
}

pub fn is_acyclic(g: &MembershipGraph) -> bool {
    let mut succ: BTreeMap<&Var, Vec<&Var>> = BTreeMap::new();
    for (a, b) in &g.edges {
        succ.entry(a).or_default().push(b);
    }
    // 0 = unvisited, 1 = on the current path, 2 = finished
    let mut state: BTreeMap<&Var, u8> = BTreeMap::new();
    fn visit<'a>(v: &'a Var, succ: &BTreeMap<&'a Var, Vec<&'a Var>>, state: &mut BTreeMap<&'a Var, u8>) -> bool {
        match state.get(v) {
            Some(1) => return false,
            Some(2) => return true,
            _ => {}
        }
        state.insert(v, 1);
        for w in succ.get(v).into_iter().flatten() {
            if !visit(w, succ, state) {
                return false;
            }
        }
        state.insert(v, 2);
        true
    }
    g.nodes.iter().all(|v| visit(v, &succ, &mut state))
}

/// Membership targets in order of first occurrence, with their members.
pub(crate) fn membership_targets(c: &Constraint) -> Vec<(Var, Vec<Term>)> {
    let mut out: Vec<(Var, Vec<Term>)> = Vec::new();
    for l in c.literals().iter().filter(|l| l.kind() == Kind::In) {
        if let Term::Var(x) = &l.rhs {
            match out.iter_mut().find(|(y, _)| y == x) {
                Some((_, ts)) => ts.push(l.lhs.clone()),
                None => out.push((x.clone(), vec![l.lhs.clone()])),
            }
        }
    }
    out
}

/// `X ↦ cons(F_X, t1, …, tk | M_X)` for every membership target `X`.
pub fn member_subst(theory: Theory, c: &Constraint, supply: &mut FreshSupply) -> Substitution {
    let mut sigma = Substitution::new();
    for (x, members) in membership_targets(c) {
        let f = Term::Var(supply.fresh("F"));
        let m = Term::Var(supply.fresh("M"));
        let elems = std::iter::once(f).chain(members);
        sigma.bind(x, theory.aggregate(elems, m));
    }
    sigma
}

/// A supply whose names do not clash with any variable of `c`.
pub fn supply_avoiding(c: &Constraint) -> FreshSupply {
    let next = c
        .free_vars()
        .iter()
        .filter(|v| v.is_reserved())
        .filter_map(|v| v.name()[2..].parse::<u64>().ok())
        .map(|n| n + 1)
        .max()
        .unwrap_or(0);
    FreshSupply::starting_at(next)
}

/// Closure of the member substitution of `c`.
pub fn member_closure(theory: Theory, c: &Constraint, supply: &mut FreshSupply) -> Result<Substitution, Error> {
    member_subst(theory, c, supply).closure()
}

/// False iff some `t nin X` and `t' in X` become E-equal under the closed
/// member substitution.
pub fn membership_consistent(theory: Theory, c: &Constraint) -> Result<bool, Error> {
    let mut supply = supply_avoiding(c);
    let star = member_closure(theory, c, &mut supply)?;
    let targets = membership_targets(c);
    for l in c.literals().iter().filter(|l| l.kind() == Kind::Nin) {
        let Term::Var(x) = &l.rhs else { continue };
        let Some((_, members)) = targets.iter().find(|(y, _)| y == x) else { continue };
        let t = star.apply(&l.lhs);
        if members.iter().any(|m| e_equal(theory, &t, &star.apply(m))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certifies a pre-solved constraint as a solved form, or returns `None`.
pub fn is_solved(theory: Theory, c: &Constraint) -> Result<Option<Constraint>, Error> {
    if !is_presolved(c) {
        return Err(Error::NotSolvedForm(c.to_string()));
    }
    if !is_acyclic(&build_graph(c)) || !membership_consistent(theory, c)? {
        return Ok(None);
    }
    Ok(Some(c.clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Stop at the first solved form.
    #[default]
    First,
    /// Collect every solved form.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub mode: Mode,
    pub witness: bool,
    pub rewrite: RewriteOptions,
    pub limits: Limits,
    /// Base counter of the fresh-variable supply.
    pub seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: Mode::First,
            witness: false,
            rewrite: RewriteOptions::default(),
            limits: Limits::default(),
            seed: 0,
        }
    }
}

impl SolveConfig {
    pub fn all() -> Self {
        SolveConfig { mode: Mode::All, ..Self::default() }
    }

    pub fn with_witness(mut self) -> Self {
        self.witness = true;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Sat,
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedForm {
    pub constraint: Constraint,
    /// Variables of the solved form that do not occur in the input.
    pub fresh_vars: BTreeSet<Var>,
    pub witness: Option<Valuation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub solved_forms: Vec<SolvedForm>,
    pub stats: Stats,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        self.verdict == Verdict::Sat
    }
}

struct State {
    c: Constraint,
    supply: FreshSupply,
    phase: Phase,
    round_steps: usize,
    steps: usize,
}

/// `c` with its reserved variables renamed in order of first occurrence.
/// Two search states equal up to this renaming have the same solved forms.
fn rename_fresh(c: &Constraint) -> Constraint {
    fn go(t: &Term, names: &mut HashMap<Var, Term>) -> Term {
        match t {
            Term::Var(x) if x.is_reserved() => {
                let next = names.len();
                names.entry(x.clone()).or_insert_with(|| Term::var(format!("_{next}"))).clone()
            }
            Term::Var(_) => t.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| go(a, names)).collect()),
        }
    }
    let mut names = HashMap::new();
    let mut out = Constraint::truth();
    if c.is_false() {
        return Constraint::falsum();
    }
    for l in c.literals() {
        let lhs = go(&l.lhs, &mut names);
        let rhs = go(&l.rhs, &mut names);
        out.push(Literal::new(l.relation, l.positive, lhs, rhs));
    }
    out
}

pub fn sat(theory: Theory, c: &Constraint, config: &SolveConfig) -> Result<SolveOutcome, Error> {
    let cap = config.limits.step_limit.unwrap_or_else(|| default_step_cap(c));
    let input_vars = c.free_vars();
    let base = supply_avoiding(c).counter().max(config.seed);
    let mut stats = Stats { branches: 1, ..Stats::default() };
    let mut solved_forms = Vec::new();
    let mut seen = BTreeSet::new();
    let mut visited: HashSet<(Phase, bool, Constraint)> = HashSet::new();
    let mut stack = vec![State {
        c: c.clone(),
        supply: FreshSupply::starting_at(base),
        phase: Phase::In,
        round_steps: 0,
        steps: 0,
    }];
    while let Some(mut st) = stack.pop() {
        if st.c.is_false() || !visited.insert((st.phase, st.round_steps > 0, rename_fresh(&st.c))) {
            continue;
        }
        stats.max_branch_steps = stats.max_branch_steps.max(st.steps);
        if let Some(idx) = select(theory, st.phase, &st.c, &config.rewrite) {
            if st.steps >= cap {
                return Err(Error::StepLimitExceeded { limit: cap });
            }
            let br = step(theory, st.phase, idx, &st.c, &mut st.supply, &config.rewrite);
            stats.rule_applications += 1;
            stats.branches += br.alternatives.len() - 1;
            if stats.branches > config.limits.branch_limit {
                return Err(Error::BranchLimitExceeded { limit: config.limits.branch_limit });
            }
            for alt in br.alternatives.into_iter().rev() {
                stack.push(State {
                    c: alt,
                    supply: st.supply.clone(),
                    phase: st.phase,
                    round_steps: st.round_steps + 1,
                    steps: st.steps + 1,
                });
            }
            continue;
        }
        if let Some(next) = st.phase.next() {
            st.phase = next;
            stack.push(st);
            continue;
        }
        if st.round_steps > 0 {
            st.phase = Phase::In;
            st.round_steps = 0;
            stack.push(st);
            continue;
        }
        let Some(solved) = is_solved(theory, &st.c)? else { continue };
        if !seen.insert(solved.canonical()) {
            continue;
        }
        let fresh_vars = solved.free_vars().difference(&input_vars).cloned().collect();
        let witness = if config.witness {
            let mut w = build_witness(theory, &solved, &mut st.supply)?;
            // Input variables erased along the way are unconstrained.
            for x in &input_vars {
                w.entry(x.clone()).or_insert_with(Term::nil);
            }
            Some(w)
        } else {
            None
        };
        solved_forms.push(SolvedForm { constraint: solved, fresh_vars, witness });
        if config.mode == Mode::First {
            break;
        }
    }
    let verdict = if solved_forms.is_empty() { Verdict::Unsat } else { Verdict::Sat };
    Ok(SolveOutcome { verdict, solved_forms, stats })
}

/// Convenience: `sat` with default settings.
pub fn is_satisfiable(theory: Theory, c: &Constraint) -> Result<bool, Error> {
    Ok(sat(theory, c, &SolveConfig::default())?.is_sat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_constraint;

    fn c(theory: Theory, s: &str) -> Constraint {
        parse_constraint(theory, s).unwrap()
    }

    #[test]
    fn presolved_examples() {
        let s = Theory::Set;
        assert!(is_presolved(&c(s, "X = a & Y != b")));
        assert!(!is_presolved(&c(s, "X = a & X != b")));
        assert!(is_presolved(&c(s, "a in X & X nin Y")));
    }

    #[test]
    fn graph_examples() {
        let s = Theory::Set;
        assert!(!is_acyclic(&build_graph(&c(s, "X in Y & Y in X"))));
        assert!(is_acyclic(&build_graph(&c(s, "a in X"))));
        let g = build_graph(&c(s, "{A} in X & X in Z"));
        assert_eq!(g.edges, BTreeSet::from([(Var::new("A"), Var::new("X")), (Var::new("X"), Var::new("Z"))]));
        assert!(is_acyclic(&g));
    }

    #[test]
    fn member_subst_examples() {
        let s = Theory::Set;
        let mut sup = FreshSupply::new();
        let sigma = member_subst(s, &c(s, "a in Y & Y in X & X in Z"), &mut sup);
        assert_eq!(sigma.to_string(), "[X/{F_2,Y|M_3}, Y/{F_0,a|M_1}, Z/{F_4,X|M_5}]");
        assert!(member_subst(s, &c(s, "X != a"), &mut sup).is_empty());
        let mut sup = FreshSupply::new();
        assert_eq!(member_subst(s, &c(s, "a in X & b in X"), &mut sup).to_string(), "[X/{F_0,a,b|M_1}]");
    }

    #[test]
    fn consistency_examples() {
        let s = Theory::Set;
        assert!(!membership_consistent(s, &c(s, "{A,B} in X & {B,A} nin X")).unwrap());
        assert!(membership_consistent(s, &c(s, "{A} in X & {a} nin X")).unwrap());
        assert!(!membership_consistent(s, &c(s, "a in X & X in Y & {a|X} nin Y")).unwrap());
    }

    #[test]
    fn is_solved_examples() {
        let s = Theory::Set;
        assert_eq!(is_solved(s, &c(s, "X in Y & Y in X")).unwrap(), None);
        assert!(is_solved(s, &c(s, "X = a")).unwrap().is_some());
        assert!(is_solved(s, &c(s, "{A} in X & {a} nin X")).unwrap().is_some());
    }

    #[test]
    fn sat_examples() {
        for th in Theory::ALL {
            assert!(!is_satisfiable(th, &c(th, "X in Y & Y in X")).unwrap(), "{th}");
            let out = sat(th, &c(th, "X != nil"), &SolveConfig::default().with_witness()).unwrap();
            assert!(out.is_sat());
            assert!(out.solved_forms[0].witness.is_some());
        }
    }
}
