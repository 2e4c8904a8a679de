//! Seeded random problem generators over the standard signature
//! `{nil, a, b, f/1, cons}` and the variables `X`, `Y`, `Z`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constraint::{Constraint, Literal};
use crate::term::{Term, Theory};

const VARS: [&str; 3] = ["X", "Y", "Z"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub theory: Theory,
    /// Maximum tree depth of each side of a literal.
    pub depth: usize,
    pub max_literals: usize,
    pub seed: u64,
}

/// A random term of tree depth at most `depth`.
pub fn random_term(rng: &mut impl Rng, theory: Theory, depth: usize) -> Term {
    let leaf = |rng: &mut dyn rand::RngCore| match rng.gen_range(0..6) {
        0 => Term::nil(),
        1 => Term::constant("a"),
        2 => Term::constant("b"),
        i => Term::var(VARS[i - 3]),
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..10) {
        0..=2 => leaf(rng),
        3 => Term::app("f", vec![random_term(rng, theory, depth - 1)]),
        _ => {
            let head = random_term(rng, theory, depth - 1);
            let rest = match rng.gen_range(0..10) {
                0..=3 => Term::nil(),
                4..=6 => Term::var(VARS[rng.gen_range(0..VARS.len())]),
                _ => random_term(rng, theory, depth - 1),
            };
            theory.cons(head, rest)
        }
    }
}

/// Equation lists with one or two equations.
pub fn unification_corpus(theory: Theory, n: usize, depth: usize, seed: u64) -> Vec<Vec<(Term, Term)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=2);
            (0..k).map(|_| (random_term(&mut rng, theory, depth), random_term(&mut rng, theory, depth))).collect()
        })
        .collect()
}

/// Mixed constraints with 1 to `max_literals` literals of all four kinds.
pub fn constraint_corpus(spec: CorpusSpec, n: usize) -> Vec<Constraint> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=spec.max_literals);
            (0..k)
                .map(|_| {
                    let l = random_term(&mut rng, spec.theory, spec.depth);
                    let r = random_term(&mut rng, spec.theory, spec.depth);
                    match rng.gen_range(0..4) {
                        0 => Literal::eq(l, r),
                        1 => Literal::neq(l, r),
                        2 => Literal::member(l, r),
                        _ => Literal::non_member(l, r),
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_bounded() {
        let spec = CorpusSpec { theory: Theory::Set, depth: 2, max_literals: 4, seed: 7 };
        let a = constraint_corpus(spec, 50);
        assert_eq!(a, constraint_corpus(spec, 50));
        for c in &a {
            assert!((1..=4).contains(&c.len()));
            for l in c.literals() {
                assert!(l.lhs.depth() <= 2 && l.rhs.depth() <= 2);
            }
        }
    }
}
