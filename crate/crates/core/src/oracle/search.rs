use std::collections::{BTreeMap, BTreeSet};

use super::matching::e_match;
use super::Universe;
use crate::constraint::{Constraint, Kind, Literal};
use crate::equational::{member_unchecked, normalize, Valuation};
use crate::term::{Term, Theory, Var};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of tentative assignments; `None` is unbounded.
    pub node_budget: Option<usize>,
    /// Only accept valuations under which no aggregate of the instantiated
    /// constraint is built on a kernel other than nil.
    pub kernel_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Valuation),
    NotFound,
    BudgetExceeded,
}

/// First satisfying valuation over the universe, in search order.
pub fn brute_sat(theory: Theory, c: &Constraint, universe: &Universe) -> Option<Valuation> {
    match brute_sat_with(theory, c, universe, SearchOptions::default()) {
        SearchOutcome::Found(v) => Some(v),
        _ => None,
    }
}

pub fn brute_sat_with(theory: Theory, c: &Constraint, universe: &Universe, opts: SearchOptions) -> SearchOutcome {
    let mut s = Search::new(theory, c, universe, opts, true);
    match s.run() {
        Err(()) => SearchOutcome::BudgetExceeded,
        Ok(()) => match s.solutions.pop() {
            Some(v) => SearchOutcome::Found(v),
            None => SearchOutcome::NotFound,
        },
    }
}

/// Every satisfying valuation over the universe; `None` if the budget ran
/// out.
pub fn brute_sat_all(theory: Theory, c: &Constraint, universe: &Universe, opts: SearchOptions) -> Option<Vec<Valuation>> {
    let mut s = Search::new(theory, c, universe, opts, false);
    s.run().ok()?;
    Some(s.solutions)
}

struct Search<'a> {
    theory: Theory,
    literals: Vec<(Literal, BTreeSet<Var>)>,
    vars: Vec<Var>,
    universe: &'a Universe,
    opts: SearchOptions,
    first_only: bool,
    nodes: usize,
    assignment: BTreeMap<Var, Term>,
    solutions: Vec<Valuation>,
}

fn has_kernel(theory: Theory, t: &Term) -> bool {
    let mut found = false;
    t.subterms(&mut |u| {
        if theory.is_cons(u) && !theory.tail(u).is_nil() {
            found = true;
        }
    });
    found
}

/// False when the partially instantiated sides of an equation can never
/// become equal: their outermost symbols differ at a position that no
/// axiom can rearrange.
fn may_be_equal(theory: Theory, a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Var(_), _) | (_, Term::Var(_)) => true,
        (Term::App(f, xs), Term::App(g, ys)) => {
            if f != g || xs.len() != ys.len() {
                return false;
            }
            if theory != Theory::List && theory.is_cons(a) {
                return true;
            }
            xs.iter().zip(ys.iter()).all(|(x, y)| may_be_equal(theory, x, y))
        }
    }
}

impl<'a> Search<'a> {
    fn new(theory: Theory, c: &Constraint, universe: &'a Universe, opts: SearchOptions, first_only: bool) -> Self {
        Search {
            theory,
            literals: c.literals().iter().map(|l| (l.clone(), l.lhs.free_vars().union(&l.rhs.free_vars()).cloned().collect())).collect(),
            vars: c.free_vars().into_iter().collect(),
            universe,
            opts,
            first_only,
            nodes: 0,
            assignment: BTreeMap::new(),
            solutions: Vec::new(),
        }
    }

    fn instantiate(&self, t: &Term) -> Term {
        match t {
            Term::Var(x) => self.assignment.get(x).cloned().unwrap_or_else(|| t.clone()),
            Term::App(_, args) if args.is_empty() => t.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.instantiate(a)).collect()),
        }
    }

    fn holds(&self, l: &Literal) -> bool {
        let th = self.theory;
        let (a, b) = (self.instantiate(&l.lhs), self.instantiate(&l.rhs));
        if self.opts.kernel_free && (has_kernel(th, &a) || has_kernel(th, &b)) {
            return false;
        }
        match l.kind() {
            Kind::Eq => normalize(th, &a) == normalize(th, &b),
            Kind::Neq => normalize(th, &a) != normalize(th, &b),
            Kind::In => member_unchecked(th, &a, &b),
            Kind::Nin => !member_unchecked(th, &a, &b),
        }
    }

    /// Cheap necessary condition for a literal that still has open variables.
    fn feasible(&self, l: &Literal) -> bool {
        let th = self.theory;
        let (a, b) = (self.instantiate(&l.lhs), self.instantiate(&l.rhs));
        match l.kind() {
            Kind::Eq => may_be_equal(th, &a, &b),
            Kind::Neq => a != b,
            Kind::In => {
                if let Term::Var(x) = &b {
                    // A member is strictly smaller than its container.
                    return !a.occurs(x);
                }
                let (elems, rest) = th.split(&b);
                rest.is_var() || elems.iter().any(|e| may_be_equal(th, &a, e))
            }
            Kind::Nin => !th.split(&b).0.contains(&a),
        }
    }

    fn assigned(&self, vs: &BTreeSet<Var>) -> bool {
        vs.iter().all(|v| self.assignment.contains_key(v))
    }

    fn run(&mut self) -> Result<(), ()> {
        for (l, vs) in &self.literals {
            if (vs.is_empty() && !self.holds(l)) || !self.feasible(l) {
                return Ok(());
            }
        }
        self.descend()?;
        Ok(())
    }

    /// Returns Ok(true) when the search should stop.
    fn descend(&mut self) -> Result<bool, ()> {
        let open: Vec<Var> = self.vars.iter().filter(|v| !self.assignment.contains_key(*v)).cloned().collect();
        if open.is_empty() {
            self.solutions.push(self.assignment.clone());
            return Ok(self.first_only);
        }
        let mut best: Option<(Var, Vec<usize>)> = None;
        for v in &open {
            if let Some(cands) = self.candidates(v) {
                if best.as_ref().is_none_or(|(_, b)| cands.len() < b.len()) {
                    best = Some((v.clone(), cands));
                }
            }
        }
        let (var, cands) = match best {
            Some(b) => b,
            None => (self.grounding_choice(&open), (0..self.universe.len()).collect()),
        };
        for i in cands {
            self.nodes += 1;
            if self.opts.node_budget.is_some_and(|b| self.nodes > b) {
                return Err(());
            }
            self.assignment.insert(var.clone(), self.universe.terms()[i].clone());
            let ok = self
                .literals
                .iter()
                .filter(|(_, vs)| vs.contains(&var))
                .all(|(l, vs)| if self.assigned(vs) { self.holds(l) } else { self.feasible(l) });
            if ok && self.descend()? {
                return Ok(true);
            }
            self.assignment.remove(&var);
        }
        Ok(false)
    }

    /// Without a narrowed variable, pick one from the equation side with the
    /// fewest open variables: once that side is ground the other side is
    /// matched against it. Ties go to the variable with more occurrences.
    fn grounding_choice(&self, open: &[Var]) -> Var {
        let mut best: Option<(usize, std::cmp::Reverse<usize>, &Var)> = None;
        for (l, _) in &self.literals {
            if l.kind() != Kind::Eq {
                continue;
            }
            for side in [&l.lhs, &l.rhs] {
                let vs = self.instantiate(side).free_vars();
                for v in open.iter().filter(|v| vs.contains(*v)) {
                    let occurrences = self.literals.iter().map(|(l, _)| l.count(v)).sum();
                    let key = (vs.len(), std::cmp::Reverse(occurrences), v);
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                }
            }
        }
        best.map_or_else(|| open[0].clone(), |(_, _, v)| v.clone())
    }

    /// Universe positions still possible for `v`, when some literal narrows
    /// them down.
    fn candidates(&self, v: &Var) -> Option<Vec<usize>> {
        let th = self.theory;
        let u = self.universe;
        let mut best: Option<BTreeSet<usize>> = None;
        let mut narrow = |set: BTreeSet<usize>| {
            best = Some(match best.take() {
                None => set,
                Some(b) => b.intersection(&set).copied().collect(),
            });
        };
        for (l, vs) in &self.literals {
            if !vs.contains(v) {
                continue;
            }
            let (a, b) = (self.instantiate(&l.lhs), self.instantiate(&l.rhs));
            let matches_of = |pattern: &Term, ground: &Term| -> BTreeSet<usize> {
                e_match(th, pattern, ground)
                    .into_iter()
                    .filter_map(|d| d.get(v).and_then(|t| u.position_normalized(t)))
                    .collect()
            };
            match l.kind() {
                Kind::Eq => {
                    if a.is_ground() {
                        narrow(matches_of(&b, &a));
                    } else if b.is_ground() {
                        narrow(matches_of(&a, &b));
                    }
                }
                Kind::In => {
                    if b.is_ground() {
                        let (elems, _) = th.split(&b);
                        narrow(elems.iter().flat_map(|e| matches_of(&a, e)).collect());
                    } else if a.is_ground() && b.as_var() == Some(v) {
                        narrow(u.containers_of(&normalize(th, &a)).iter().copied().collect());
                    }
                }
                Kind::Neq | Kind::Nin => {}
            }
        }
        best.map(|s| s.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equational::eval_ground;
    use crate::oracle::{enumerate, Signature};
    use crate::syntax::parse_constraint;

    #[test]
    fn brute_force_examples() {
        let sig = Signature::standard();
        for th in Theory::ALL {
            let u = enumerate(th, &sig, 2);
            assert_eq!(brute_sat(th, &parse_constraint(th, "X in Y & Y in X").unwrap(), &u), None);
            let v = brute_sat(th, &parse_constraint(th, "X = a").unwrap(), &u).unwrap();
            assert_eq!(v[&Var::new("X")], Term::constant("a"));
        }
        let s = Theory::Set;
        let u = enumerate(s, &sig, 2);
        let c = parse_constraint(s, "{A} in X & {a} nin X").unwrap();
        let all = brute_sat_all(s, &c, &u, SearchOptions::default()).unwrap();
        let expected: Valuation = [(Var::new("A"), Term::constant("b")), (Var::new("X"), crate::syntax::parse_term(s, "{{b}}").unwrap())]
            .into_iter()
            .collect();
        assert!(all.contains(&expected));
        assert!(all.iter().all(|v| eval_ground(s, &c, v).unwrap()));
    }

    #[test]
    fn kernel_free_search_excludes_kernels() {
        let s = Theory::Set;
        let u = enumerate(s, &Signature::standard(), 1);
        let c = parse_constraint(s, "{a|X} != {a|Y} & X nin Z & Z = nil & X = b").unwrap();
        assert!(brute_sat(s, &c, &u).is_some());
        let opts = SearchOptions { kernel_free: true, ..SearchOptions::default() };
        assert_eq!(brute_sat_with(s, &c, &u, opts), SearchOutcome::NotFound);
    }
}
