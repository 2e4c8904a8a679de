use proptest::prelude::*;

use aggsolve::oracle::{closure_e_equal, e_match, ClosureBound};
use aggsolve::{
    e_equal, eval_ground, normalize, parse_constraint, parse_term, sat, unify, Constraint, Literal, SolveConfig, Term,
    Theory, UnificationProblem, Valuation, Var,
};

fn theory() -> impl Strategy<Value = Theory> {
    prop::sample::select(Theory::ALL.to_vec())
}

fn leaf(with_vars: bool) -> BoxedStrategy<Term> {
    let mut leaves = vec![Term::nil(), Term::constant("a"), Term::constant("b")];
    if with_vars {
        leaves.extend(["X", "Y", "Z"].map(Term::var));
    }
    prop::sample::select(leaves).boxed()
}

fn term(th: Theory, with_vars: bool) -> BoxedStrategy<Term> {
    leaf(with_vars)
        .prop_recursive(3, 16, 2, move |inner| {
            prop_oneof![
                inner.clone().prop_map(|t| Term::app("f", vec![t])),
                (inner.clone(), inner).prop_map(move |(h, r)| th.cons(h, r)),
            ]
        })
        .boxed()
}

fn ground_pair() -> impl Strategy<Value = (Theory, Term, Term)> {
    theory().prop_flat_map(|th| (Just(th), term(th, false), term(th, false)))
}

fn open_pair() -> impl Strategy<Value = (Theory, Term, Term)> {
    theory().prop_flat_map(|th| (Just(th), term(th, true), term(th, true)))
}

fn constraint() -> impl Strategy<Value = (Theory, Constraint)> {
    theory().prop_flat_map(|th| {
        let lit = (0..4u8, term(th, true), term(th, true)).prop_map(|(k, l, r)| match k {
            0 => Literal::eq(l, r),
            1 => Literal::neq(l, r),
            2 => Literal::member(l, r),
            _ => Literal::non_member(l, r),
        });
        (Just(th), prop::collection::vec(lit, 1..4).prop_map(Constraint::new))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_is_idempotent((th, t, _) in ground_pair()) {
        let n = normalize(th, &t);
        prop_assert_eq!(normalize(th, &n), n.clone());
        prop_assert!(e_equal(th, &t, &n));
    }

    #[test]
    fn normal_forms_are_axiom_equivalent((th, t, _) in ground_pair()) {
        let n = normalize(th, &t);
        let bound = ClosureBound::for_terms(&t, &n);
        if let Ok(reached) = closure_e_equal(th, &t, &n, bound) { prop_assert!(reached, "{} does not reach {}", t, n) }
    }

    #[test]
    fn untail_is_idempotent((th, t, _) in open_pair()) {
        let u = th.untail(&t);
        prop_assert_eq!(th.untail(&u), u.clone());
        if th.is_cons(&t) {
            prop_assert!(th.tail(&u).is_nil() || !th.tail(&u).is_var());
        }
    }

    #[test]
    fn print_parse_round_trip((th, t, _) in open_pair()) {
        let printed = t.to_string();
        prop_assert_eq!(parse_term(th, &printed).unwrap(), t);
    }

    #[test]
    fn constraint_round_trip((th, c) in constraint()) {
        prop_assert_eq!(parse_constraint(th, &c.to_string()).unwrap(), c);
    }

    #[test]
    fn e_equal_is_an_equivalence((th, s, t) in ground_pair()) {
        prop_assert!(e_equal(th, &s, &s));
        prop_assert_eq!(e_equal(th, &s, &t), e_equal(th, &t, &s));
        prop_assert_eq!(e_equal(th, &s, &t), normalize(th, &s) == normalize(th, &t));
    }

    #[test]
    fn unifiers_are_sound_and_idempotent((th, l, r) in open_pair()) {
        let set = unify(&UnificationProblem::new(th, vec![(l.clone(), r.clone())])).unwrap();
        for theta in &set.solutions {
            prop_assert!(e_equal(th, &theta.apply(&l), &theta.apply(&r)), "{}", theta);
            prop_assert_eq!(theta.apply(&theta.apply(&l)), theta.apply(&l));
        }
    }

    #[test]
    fn unification_of_a_term_with_itself_succeeds((th, t, _) in open_pair()) {
        let set = unify(&UnificationProblem::new(th, vec![(t.clone(), t)])).unwrap();
        prop_assert!(!set.is_failure());
    }

    #[test]
    fn matching_recovers_instances((th, pattern, g) in open_pair(), k in 0usize..3) {
        let g = normalize(th, &aggsolve::Substitution::from_iter(
            ["X", "Y", "Z"].map(|x| (Var::new(x), Term::constant("a"))),
        ).apply(&g));
        let delta: aggsolve::Substitution = ["X", "Y", "Z"]
            .iter()
            .enumerate()
            .map(|(i, x)| (Var::new(x), if i == k { g.clone() } else { th.cons(Term::constant("b"), Term::nil()) }))
            .collect();
        let target = delta.apply(&pattern);
        let found = e_match(th, &pattern, &target);
        prop_assert!(!found.is_empty(), "{} does not match {}", pattern, target);
        for d in found {
            let s: aggsolve::Substitution = d.into_iter().collect();
            prop_assert!(e_equal(th, &s.apply(&pattern), &target));
        }
    }

    #[test]
    fn solved_forms_have_verified_witnesses((th, c) in constraint()) {
        let out = sat(th, &c, &SolveConfig::all().with_witness()).unwrap();
        for sf in &out.solved_forms {
            let w: &Valuation = sf.witness.as_ref().unwrap();
            prop_assert!(eval_ground(th, &c, w).unwrap());
            prop_assert!(eval_ground(th, &sf.constraint, w).unwrap());
        }
    }

    #[test]
    fn solving_is_deterministic((th, c) in constraint()) {
        let a = sat(th, &c, &SolveConfig::all()).unwrap();
        let b = sat(th, &c, &SolveConfig::all()).unwrap();
        prop_assert_eq!(a, b);
    }
}
