//! Ground witnesses for solved forms.
//!
//! Equations `X = t` are read as bindings, membership targets are expanded
//! by the closed member substitution, and every remaining variable becomes
//! a singleton tower `cons(cons(…cons(nil,nil)…,nil),nil)`. Tower heights
//! come from a small integer disequation system whose constraints rule out
//! every accidental equality; the result is always re-checked against the
//! ground evaluator.

use std::collections::{BTreeMap, BTreeSet};

use crate::constraint::{Constraint, Kind};
use crate::equational::{eval_ground, Valuation};
use crate::error::Error;
use crate::solver::{is_presolved, member_subst, membership_targets};
use crate::term::{FreshSupply, Substitution, Term, Theory, Var};
use crate::unify::{unify, UnificationProblem};

/// `n_lhs != n_rhs + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Disequation {
    pub lhs: usize,
    pub rhs: usize,
    pub offset: i64,
}

/// Unknowns are indices `0..unknowns`; every unknown must exceed `floor` and
/// the unknowns must be pairwise distinct.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DisequationSystem {
    pub unknowns: usize,
    pub floor: u64,
    pub disequations: BTreeSet<Disequation>,
}

impl DisequationSystem {
    pub fn new(unknowns: usize, floor: u64) -> Self {
        DisequationSystem { unknowns, floor, disequations: BTreeSet::new() }
    }

    pub fn forbid(&mut self, lhs: usize, rhs: usize, offset: i64) {
        self.disequations.insert(Disequation { lhs, rhs, offset });
    }
}

/// Smallest strictly increasing assignment above the floor.
pub fn solve_disequations(s: &DisequationSystem) -> Result<Vec<u64>, Error> {
    for d in &s.disequations {
        if d.lhs == d.rhs && d.offset == 0 {
            return Err(Error::UnsafeDisequation(format!("n{} != n{}", d.lhs, d.rhs)));
        }
    }
    let mut values: Vec<u64> = Vec::with_capacity(s.unknowns);
    for i in 0..s.unknowns {
        let mut forbidden = BTreeSet::new();
        for d in &s.disequations {
            if d.lhs == i && d.rhs < i {
                forbidden.insert(values[d.rhs] as i64 + d.offset);
            } else if d.rhs == i && d.lhs < i {
                forbidden.insert(values[d.lhs] as i64 - d.offset);
            }
        }
        let mut v = values.last().map_or(s.floor + 1, |&p| p + 1);
        while forbidden.contains(&(v as i64)) {
            v += 1;
        }
        values.push(v);
    }
    Ok(values)
}

/// Blocking atoms chosen for one (member, non-member) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeqEntry {
    pub target: Var,
    pub member: Term,
    pub non_member: Term,
    /// One atom `A = t` per unifier of the two terms.
    pub atoms: Vec<(Var, Term)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NeqStore {
    pub entries: Vec<NeqEntry>,
}

pub fn tower(theory: Theory, n: u64) -> Term {
    (0..n).fold(Term::nil(), |t, _| theory.cons(t, Term::nil()))
}

/// Everything the construction computed, for inspection and tests.
#[derive(Clone, Debug)]
pub struct WitnessTrace {
    pub sigma: Substitution,
    pub sigma_star: Substitution,
    pub residual: Vec<Var>,
    pub system: DisequationSystem,
    pub heights: Vec<u64>,
    pub store: NeqStore,
    pub valuation: Valuation,
}

pub fn build_witness(theory: Theory, c: &Constraint, supply: &mut FreshSupply) -> Result<Valuation, Error> {
    Ok(trace_witness(theory, c, supply)?.valuation)
}

pub fn trace_witness(theory: Theory, c: &Constraint, supply: &mut FreshSupply) -> Result<WitnessTrace, Error> {
    if !is_presolved(c) {
        return Err(Error::NotSolvedForm(c.to_string()));
    }
    let avoid = crate::solver::supply_avoiding(c);
    while supply.counter() < avoid.counter() {
        supply.fresh("N");
    }
    let sigma = member_subst(theory, c, supply);
    let star = sigma.closure()?;
    let bound: BTreeSet<Var> = c
        .literals()
        .iter()
        .filter(|l| l.kind() == Kind::Eq)
        .filter_map(|l| l.lhs.as_var().cloned())
        .collect();
    let image = c.map(|t| star.apply(t));
    let residual: Vec<Var> = image.free_vars().into_iter().filter(|v| !bound.contains(v)).collect();
    let index: BTreeMap<&Var, usize> = residual.iter().enumerate().map(|(i, v)| (v, i)).collect();

    let mut max_rank = 0;
    for l in image.literals() {
        for side in [&l.lhs, &l.rhs] {
            side.subterms(&mut |u| max_rank = max_rank.max(theory.rank(u)));
        }
    }
    let floor = (max_rank + 1 + c.free_vars().len()) as u64;
    let mut sys = DisequationSystem::new(residual.len(), floor);
    let mut store = NeqStore::default();

    // n_a != n_r + c + shift for every occurrence depth c of r in t
    let forbid_depths = |sys: &mut DisequationSystem, a: &Var, t: &Term, shift: i64| {
        let Some(&ai) = index.get(a) else { return };
        for r in t.free_vars() {
            if &r == a {
                continue;
            }
            let Some(&ri) = index.get(&r) else { continue };
            for depth in theory.find(&r, t) {
                sys.forbid(ai, ri, depth as i64 + shift);
            }
        }
    };
    let slack = |x: &Var| -> Option<(Var, Var)> {
        let (elems, rest) = theory.split(star.get(x)?);
        Some((elems[0].as_var()?.clone(), rest.as_var()?.clone()))
    };
    let targets = membership_targets(c);

    for l in c.literals() {
        match l.kind() {
            Kind::Neq => {
                let Term::Var(z) = &l.lhs else { continue };
                let t = star.apply(&l.rhs);
                match slack(z) {
                    None => forbid_depths(&mut sys, z, &t, 0),
                    Some((f, _)) => forbid_depths(&mut sys, &f, &t, -1),
                }
            }
            Kind::Nin => {
                let Term::Var(y) = &l.rhs else { continue };
                let r = star.apply(&l.lhs);
                match slack(y) {
                    None => forbid_depths(&mut sys, y, &r, 1),
                    Some((f, m)) => {
                        forbid_depths(&mut sys, &f, &r, 0);
                        forbid_depths(&mut sys, &m, &r, 1);
                        let members = targets.iter().find(|(v, _)| v == y).map(|(_, ms)| ms.clone()).unwrap_or_default();
                        for p in members {
                            let sp = star.apply(&p);
                            let entry = neq_entry(theory, y, &sp, &r, supply, &index, &mut sys)?;
                            store.entries.push(entry);
                        }
                    }
                }
            }
            Kind::Eq | Kind::In => {}
        }
    }

    let heights = solve_disequations(&sys)?;
    let theta2: Substitution = residual.iter().zip(&heights).map(|(v, &n)| (v.clone(), tower(theory, n))).collect();
    let mut valuation = Valuation::new();
    let eq_rhs: BTreeMap<&Var, &Term> = c
        .literals()
        .iter()
        .filter(|l| l.kind() == Kind::Eq)
        .filter_map(|l| Some((l.lhs.as_var()?, &l.rhs)))
        .collect();
    for v in c.free_vars() {
        let t = match eq_rhs.get(&v) {
            Some(t) => star.apply(t),
            None => star.apply(&Term::Var(v.clone())),
        };
        valuation.insert(v, theta2.apply(&t));
    }
    if !eval_ground(theory, c, &valuation)? {
        let shown: Vec<String> = valuation.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        return Err(Error::VerificationFailed(format!("{c} under {{{}}}", shown.join(", "))));
    }
    Ok(WitnessTrace { sigma, sigma_star: star, residual, system: sys, heights, store, valuation })
}

/// Unifies a member with a non-member of the same target and records, for
/// each unifier, an atom that the tower valuation falsifies.
fn neq_entry(
    theory: Theory,
    target: &Var,
    p: &Term,
    r: &Term,
    supply: &mut FreshSupply,
    index: &BTreeMap<&Var, usize>,
    sys: &mut DisequationSystem,
) -> Result<NeqEntry, Error> {
    let problem = UnificationProblem { theory, equations: vec![(p.clone(), r.clone())], supply: supply.clone() };
    let unifiers = unify(&problem)?;
    // keep later fresh names clear of anything the unifier introduced
    let used = unifiers
        .solutions
        .iter()
        .flat_map(|s| s.iter().flat_map(|(x, t)| t.free_vars().into_iter().chain([x.clone()])))
        .filter(|v| v.is_reserved())
        .filter_map(|v| v.name()[2..].parse::<u64>().ok())
        .max();
    if let Some(n) = used {
        while supply.counter() <= n {
            supply.fresh("N");
        }
    }
    let original = |v: &Var| index.contains_key(v);
    let mut atoms = Vec::new();
    for d in &unifiers.solutions {
        if d.is_empty() {
            return Err(Error::NotSolvedForm(format!("{p} and {r} are equal modulo the theory")));
        }
        let mut chosen: Option<(Var, Term)> = None;
        // aggregate atoms with an element free of unifier variables
        for (a, t) in d.iter().filter(|(a, _)| original(a)) {
            if !theory.is_cons(t) {
                continue;
            }
            let (elems, _) = theory.split(t);
            if let Some(e) = elems.iter().find(|e| e.free_vars().iter().all(&original)) {
                let ai = index[a];
                for rv in e.free_vars() {
                    if &rv == a {
                        continue;
                    }
                    for depth in theory.find(&rv, e) {
                        sys.forbid(ai, index[&rv], depth as i64 + 1);
                    }
                }
                chosen = Some((a.clone(), t.clone()));
                break;
            }
        }
        // variable-variable atoms are covered by distinctness
        if chosen.is_none() {
            chosen = d
                .iter()
                .find(|(a, t)| original(a) && t.as_var().is_some_and(&original))
                .map(|(a, t)| (a.clone(), t.clone()));
        }
        // a non-aggregate top symbol never equals a tower
        if chosen.is_none() {
            chosen = d
                .iter()
                .find(|(a, t)| original(a) && !t.is_var() && !theory.is_cons(t))
                .map(|(a, t)| (a.clone(), t.clone()));
        }
        if let Some(atom) = chosen {
            atoms.push(atom);
        }
    }
    Ok(NeqEntry { target: target.clone(), member: p.clone(), non_member: r.clone(), atoms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_constraint;

    #[test]
    fn greedy_examples() {
        let mut s = DisequationSystem::new(2, 3);
        s.forbid(0, 1, 0);
        assert_eq!(solve_disequations(&s).unwrap(), vec![4, 5]);
        assert!(solve_disequations(&DisequationSystem::new(0, 0)).unwrap().is_empty());
        let mut bad = DisequationSystem::new(1, 0);
        bad.forbid(0, 0, 0);
        assert!(matches!(solve_disequations(&bad), Err(Error::UnsafeDisequation(_))));
    }

    #[test]
    fn greedy_skips_forbidden_offsets() {
        let mut s = DisequationSystem::new(2, 0);
        s.forbid(1, 0, 1);
        s.forbid(0, 1, -2);
        assert_eq!(solve_disequations(&s).unwrap(), vec![1, 4]);
    }

    #[test]
    fn empty_constraint_gives_empty_valuation() {
        let v = build_witness(Theory::Set, &Constraint::truth(), &mut FreshSupply::new()).unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn witness_examples() {
        for th in Theory::ALL {
            let c = parse_constraint(th, "X != nil").unwrap();
            let tr = trace_witness(th, &c, &mut FreshSupply::new()).unwrap();
            assert!(tr.heights[0] > tr.system.floor);
            assert_eq!(tr.valuation[&Var::new("X")], tower(th, tr.heights[0]));
        }
        let s = Theory::Set;
        let c = parse_constraint(s, "a in X & b nin X").unwrap();
        let v = build_witness(s, &c, &mut FreshSupply::new()).unwrap();
        assert!(eval_ground(s, &c, &v).unwrap());
    }

    #[test]
    fn towers() {
        assert_eq!(tower(Theory::Set, 0), Term::nil());
        assert_eq!(tower(Theory::Set, 2).to_string(), "{{nil}}");
        assert_eq!(Theory::Set.rank(&tower(Theory::Set, 5)), 5);
    }
}
