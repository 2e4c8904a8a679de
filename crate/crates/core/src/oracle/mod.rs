//! Brute-force ground truth used by the test suites.
//!
//! Everything here is deliberately independent of the solver: universes are
//! enumerated by tree depth, equality is checked by closing terms under the
//! raw axioms, instances are checked by an E-matcher that works directly on
//! ground normal forms, and satisfiability is decided by exhaustive search.

mod closure;
pub mod corpus;
mod matching;
mod search;

use std::collections::HashMap;

pub use closure::{closure_class, closure_e_equal, ClosureBound};
pub use matching::{e_instance, e_match};
pub use search::{brute_sat, brute_sat_all, brute_sat_with, SearchOptions, SearchOutcome};

use crate::equational::normalize;
use crate::term::{Term, Theory};

/// Constants and free functors; the aggregate constructor is implied by the
/// theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub constants: Vec<String>,
    pub functors: Vec<(String, usize)>,
    pub aggregates: bool,
}

impl Signature {
    /// `{nil, a, b, cons, f/1}`.
    pub fn standard() -> Self {
        Signature {
            constants: vec!["nil".into(), "a".into(), "b".into()],
            functors: vec![("f".into(), 1)],
            aggregates: true,
        }
    }

    /// `{nil, a, b, cons}`.
    pub fn without_functors() -> Self {
        Signature { functors: Vec::new(), ..Self::standard() }
    }

    pub fn new(constants: &[&str], functors: &[(&str, usize)]) -> Self {
        Signature {
            constants: constants.iter().map(|s| s.to_string()).collect(),
            functors: functors.iter().map(|(f, n)| (f.to_string(), *n)).collect(),
            aggregates: true,
        }
    }
}

/// One normalized representative per E-class of ground terms up to a tree
/// depth, in order of first generation.
#[derive(Clone, Debug)]
pub struct Universe {
    pub theory: Theory,
    pub signature: Signature,
    pub depth: usize,
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
    /// For each term, the universe terms whose spine contains it.
    containers: HashMap<usize, Vec<usize>>,
}

impl Universe {
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Position of the class of `t`, if it is in the universe.
    pub fn position(&self, t: &Term) -> Option<usize> {
        self.index.get(&normalize(self.theory, t)).copied()
    }

    pub(crate) fn position_normalized(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.position(t).is_some()
    }

    /// Universe terms having `t` (normalized) as a spine element.
    pub(crate) fn containers_of(&self, t: &Term) -> &[usize] {
        match self.position_normalized(t).and_then(|i| self.containers.get(&i)) {
            Some(v) => v,
            None => &[],
        }
    }
}

/// Ground terms of tree depth at most `depth`, deduplicated modulo the
/// theory. Constants have depth 0.
pub fn enumerate(theory: Theory, signature: &Signature, depth: usize) -> Universe {
    let mut terms: Vec<Term> = Vec::new();
    let mut index: HashMap<Term, usize> = HashMap::new();
    let mut add = |t: Term, terms: &mut Vec<Term>| {
        let n = normalize(theory, &t);
        if !index.contains_key(&n) {
            index.insert(n.clone(), terms.len());
            terms.push(n);
        }
    };
    for c in &signature.constants {
        add(Term::constant(c), &mut terms);
    }
    for _ in 0..depth {
        let prev = terms.clone();
        for (f, arity) in &signature.functors {
            for args in product(&prev, *arity) {
                add(Term::app(f, args), &mut terms);
            }
        }
        if signature.aggregates {
            for h in &prev {
                for r in &prev {
                    add(theory.cons(h.clone(), r.clone()), &mut terms);
                }
            }
        }
    }
    let mut containers: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, t) in terms.iter().enumerate() {
        let (elems, _) = theory.split(t);
        let mut seen: Vec<usize> = elems.iter().filter_map(|e| index.get(e).copied()).collect();
        seen.sort_unstable();
        seen.dedup();
        for e in seen {
            containers.entry(e).or_default().push(i);
        }
    }
    Universe { theory, signature: signature.clone(), depth, terms, index, containers }
}

fn product(items: &[Term], n: usize) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// All ground terms (not deduplicated) of tree depth at most `depth`.
pub fn raw_terms(theory: Theory, signature: &Signature, depth: usize) -> Vec<Term> {
    let mut levels: Vec<Term> = signature.constants.iter().map(Term::constant).collect();
    for _ in 0..depth {
        let prev = levels.clone();
        let mut next: Vec<Term> = signature.constants.iter().map(Term::constant).collect();
        for (f, arity) in &signature.functors {
            next.extend(product(&prev, *arity).into_iter().map(|a| Term::app(f, a)));
        }
        if signature.aggregates {
            for h in &prev {
                for r in &prev {
                    next.push(theory.cons(h.clone(), r.clone()));
                }
            }
        }
        levels = next;
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    #[test]
    fn enumerate_examples() {
        let sig = Signature::new(&["nil", "a"], &[]);
        let u = enumerate(Theory::List, &sig, 0);
        assert_eq!(u.terms(), &[Term::nil(), Term::constant("a")]);

        let s = Theory::Set;
        let u = enumerate(s, &sig, 1);
        assert!(u.contains(&parse_term(s, "{a}").unwrap()));
        assert!(u.contains(&parse_term(s, "{nil}").unwrap()));
        assert_eq!(u.position(&parse_term(s, "{a,a}").unwrap()), u.position(&parse_term(s, "{a}").unwrap()));
        let u2 = enumerate(s, &sig, 2);
        assert!(u2.contains(&parse_term(s, "{a,nil}").unwrap()));

        let m = Theory::MSet;
        let u = enumerate(m, &sig, 2);
        assert_ne!(u.position(&parse_term(m, "{[a,a]}").unwrap()), u.position(&parse_term(m, "{[a]}").unwrap()));
    }

    #[test]
    fn universe_has_no_duplicate_classes() {
        for th in Theory::ALL {
            let u = enumerate(th, &Signature::standard(), 2);
            for (i, t) in u.terms().iter().enumerate() {
                assert_eq!(u.position(t), Some(i));
            }
        }
    }

    #[test]
    fn raw_term_counts() {
        let sig = Signature::without_functors();
        assert_eq!(raw_terms(Theory::List, &sig, 1).len(), 12);
        assert_eq!(raw_terms(Theory::List, &sig, 2).len(), 147);
    }
}
