//! Equality modulo the theory axioms and ground evaluation in the
//! privileged models.
//!
//! Normal forms sort (multisets, sets), collapse adjacent duplicates (compact
//! lists) or deduplicate (sets) the elements of every aggregate spine, after
//! normalizing the elements themselves. The kernel of a spine is normalized
//! in place and never mixed with the elements.

use std::collections::BTreeMap;

use crate::constraint::{Constraint, Kind};
use crate::error::Error;
use crate::term::{Term, Theory, Var};

/// A ground assignment for the variables of a constraint.
pub type Valuation = BTreeMap<Var, Term>;

pub fn normalize(theory: Theory, t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::App(_, a) if a.is_empty() => t.clone(),
        _ if theory.is_cons(t) => {
            let (elems, rest) = theory.split(t);
            let mut elems: Vec<Term> = elems.iter().map(|e| normalize(theory, e)).collect();
            match theory {
                Theory::List => {}
                Theory::MSet => elems.sort(),
                Theory::CList => elems.dedup(),
                Theory::Set => {
                    elems.sort();
                    elems.dedup();
                }
            }
            theory.aggregate(elems, normalize(theory, &rest))
        }
        Term::App(f, a) => Term::App(f.clone(), a.iter().map(|x| normalize(theory, x)).collect()),
    }
}

/// Decides `E ⊨ ∀(s = t)`, reading variables as constants.
pub fn e_equal(theory: Theory, s: &Term, t: &Term) -> bool {
    s == t || normalize(theory, s) == normalize(theory, t)
}

/// Membership in the privileged model: some spine element of `s` is
/// E-equal to `t`.
pub fn ground_member(theory: Theory, t: &Term, s: &Term) -> Result<bool, Error> {
    for x in [t, s] {
        if !x.is_ground() {
            return Err(Error::NotGround(x.to_string()));
        }
    }
    Ok(member_unchecked(theory, t, s))
}

pub(crate) fn member_unchecked(theory: Theory, t: &Term, s: &Term) -> bool {
    let nt = normalize(theory, t);
    let (elems, _) = theory.split(s);
    elems.iter().any(|e| normalize(theory, e) == nt)
}

/// Ground truth of a conjunction under `γ`.
pub fn eval_ground(theory: Theory, c: &Constraint, gamma: &Valuation) -> Result<bool, Error> {
    if c.is_false() {
        return Ok(false);
    }
    for lit in c.literals() {
        let l = instantiate(&lit.lhs, gamma)?;
        let r = instantiate(&lit.rhs, gamma)?;
        let holds = match lit.kind() {
            Kind::Eq => e_equal(theory, &l, &r),
            Kind::Neq => !e_equal(theory, &l, &r),
            Kind::In => member_unchecked(theory, &l, &r),
            Kind::Nin => !member_unchecked(theory, &l, &r),
        };
        if !holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Applies `γ` and checks that the result is ground.
pub fn instantiate(t: &Term, gamma: &Valuation) -> Result<Term, Error> {
    match t {
        Term::Var(v) => gamma.get(v).cloned().ok_or_else(|| Error::NotGround(v.to_string())),
        Term::App(_, a) if a.is_empty() => Ok(t.clone()),
        Term::App(f, a) => Ok(Term::App(
            f.clone(),
            a.iter().map(|x| instantiate(x, gamma)).collect::<Result<Vec<_>, _>>()?.into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_constraint, parse_term};

    fn n(theory: Theory, s: &str) -> Term {
        normalize(theory, &parse_term(theory, s).unwrap())
    }

    fn p(theory: Theory, s: &str) -> Term {
        parse_term(theory, s).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(n(Theory::MSet, "{[b,a,b]}"), p(Theory::MSet, "{[a,b,b]}"));
        assert_eq!(n(Theory::CList, "[[a,a,b|X]]"), p(Theory::CList, "[[a,b|X]]"));
        assert_eq!(n(Theory::Set, "{b,a,b}"), p(Theory::Set, "{a,b}"));
    }

    #[test]
    fn clist_only_merges_adjacent() {
        assert_eq!(n(Theory::CList, "[[a,b,a]]"), p(Theory::CList, "[[a,b,a]]"));
        assert_eq!(n(Theory::CList, "[[[[a,a]],[[a]]]]"), p(Theory::CList, "[[[[a]]]]"));
    }

    #[test]
    fn e_equal_examples() {
        let m = Theory::MSet;
        assert!(e_equal(m, &p(m, "{[a,b]}"), &p(m, "{[b,a]}")));
        let s = Theory::Set;
        assert!(e_equal(s, &p(s, "{a|X}"), &p(s, "{a,a|X}")));
        let l = Theory::List;
        assert!(!e_equal(l, &p(l, "[a,b]"), &p(l, "[b,a]")));
    }

    #[test]
    fn membership_examples() {
        let s = Theory::Set;
        assert!(ground_member(s, &p(s, "a"), &p(s, "{b,a}")).unwrap());
        for th in Theory::ALL {
            assert!(!ground_member(th, &p(th, "a"), &Term::nil()).unwrap());
        }
        assert!(!ground_member(s, &p(s, "a"), &p(s, "{c|b}")).unwrap());
        assert!(matches!(ground_member(s, &p(s, "X"), &Term::nil()), Err(Error::NotGround(_))));
    }

    #[test]
    fn eval_examples() {
        let s = Theory::Set;
        let g = Valuation::new();
        assert!(eval_ground(s, &parse_constraint(s, "{a|b} != {a|c}").unwrap(), &g).unwrap());
        assert!(eval_ground(s, &parse_constraint(s, "{a} = {a,a}").unwrap(), &g).unwrap());
        assert!(!eval_ground(s, &parse_constraint(s, "a nin {a}").unwrap(), &g).unwrap());
        assert!(eval_ground(s, &parse_constraint(s, "X != a").unwrap(), &g).is_err());
    }
}
