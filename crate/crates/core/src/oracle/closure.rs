use std::collections::{HashSet, VecDeque};

use crate::error::Error;
use crate::term::{Term, Theory};

/// Limits for the axiom-closure search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureBound {
    /// Terms larger than this (in symbols) are not explored.
    pub max_size: usize,
    /// Maximum number of terms visited.
    pub max_steps: usize,
}

impl ClosureBound {
    /// Size bound covering both terms; equal terms are connected through
    /// their sorted, collapsed form without ever growing.
    pub fn for_terms(s: &Term, t: &Term) -> Self {
        ClosureBound { max_size: s.size().max(t.size()), max_steps: 2_000_000 }
    }
}

/// Single axiom applications at the root: permutation of the first two
/// elements, and absorption of an adjacent duplicate in both directions.
fn root_rewrites(theory: Theory, u: &Term, max_size: usize, out: &mut Vec<Term>) {
    let Some((x, rest)) = theory.uncons(u) else { return };
    if let Some((y, z)) = theory.uncons(rest) {
        if theory.permutative() && x != y {
            out.push(theory.cons(y.clone(), theory.cons(x.clone(), z.clone())));
        }
        if theory.absorptive() && x == y {
            out.push(rest.clone());
        }
    }
    if theory.absorptive() && u.size() + 1 + x.size() <= max_size {
        out.push(theory.cons(x.clone(), u.clone()));
    }
}

fn neighbours(theory: Theory, u: &Term, max_size: usize) -> Vec<Term> {
    let mut out = Vec::new();
    root_rewrites(theory, u, max_size, &mut out);
    if let Term::App(f, args) = u {
        let budget = max_size.saturating_sub(u.size());
        for (i, a) in args.iter().enumerate() {
            for b in neighbours(theory, a, a.size() + budget) {
                let mut v = args.to_vec();
                v[i] = b;
                out.push(Term::App(f.clone(), v.into()));
            }
        }
    }
    out
}

/// Every term reachable from `s` by axiom applications within the bound.
pub fn closure_class(theory: Theory, s: &Term, bound: ClosureBound) -> Result<HashSet<Term>, Error> {
    let mut seen: HashSet<Term> = HashSet::from([s.clone()]);
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(u) = queue.pop_front() {
        for v in neighbours(theory, &u, bound.max_size) {
            if v.size() <= bound.max_size && seen.insert(v.clone()) {
                if seen.len() > bound.max_steps {
                    return Err(Error::BoundExceeded { steps: bound.max_steps });
                }
                queue.push_back(v);
            }
        }
    }
    Ok(seen)
}

/// Whether `t` is reachable from `s` by axiom applications within the bound.
pub fn closure_e_equal(theory: Theory, s: &Term, t: &Term, bound: ClosureBound) -> Result<bool, Error> {
    if s == t {
        return Ok(true);
    }
    let mut seen: HashSet<Term> = HashSet::from([s.clone()]);
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(u) = queue.pop_front() {
        for v in neighbours(theory, &u, bound.max_size) {
            if v.size() <= bound.max_size && seen.insert(v.clone()) {
                if &v == t {
                    return Ok(true);
                }
                if seen.len() > bound.max_steps {
                    return Err(Error::BoundExceeded { steps: bound.max_steps });
                }
                queue.push_back(v);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn eq(theory: Theory, s: &str, t: &str) -> bool {
        let (s, t) = (parse_term(theory, s).unwrap(), parse_term(theory, t).unwrap());
        closure_e_equal(theory, &s, &t, ClosureBound::for_terms(&s, &t)).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert!(eq(Theory::MSet, "{[a,b]}", "{[b,a]}"));
        assert!(!eq(Theory::List, "[a]", "[a,a]"));
        assert!(!eq(Theory::CList, "[[a,b,a]]", "[[a,a,b]]"));
        assert!(eq(Theory::Set, "{b,a,b}", "{a,b}"));
        assert!(eq(Theory::CList, "[[a,a,b]]", "[[a,b,b]]"));
    }

    #[test]
    fn closure_reaches_inside_arguments() {
        assert!(eq(Theory::Set, "f({a,b})", "f({b,a})"));
        assert!(eq(Theory::MSet, "{[{[a,b]}]}", "{[{[b,a]}]}"));
    }
}
