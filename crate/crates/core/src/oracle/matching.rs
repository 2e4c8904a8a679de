use std::collections::BTreeMap;

use crate::equational::normalize;
use crate::term::{Term, Theory, Var};

type Binding = BTreeMap<Var, Term>;

/// Every binding `δ` of the variables of `pattern` to normalized ground
/// terms with `δ(pattern)` E-equal to the ground term `target`.
pub fn e_match(theory: Theory, pattern: &Term, target: &Term) -> Vec<Binding> {
    let mut out = Vec::new();
    go(theory, pattern, &normalize(theory, target), Binding::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Whether one binding makes every `(pattern, ground)` pair E-equal.
pub fn e_instance(theory: Theory, pairs: &[(Term, Term)]) -> bool {
    let mut states = vec![Binding::new()];
    for (p, g) in pairs {
        let g = normalize(theory, g);
        let mut next = Vec::new();
        for d in states {
            go(theory, p, &g, d, &mut next);
        }
        next.sort();
        next.dedup();
        if next.is_empty() {
            return false;
        }
        states = next;
    }
    true
}

fn go(theory: Theory, p: &Term, g: &Term, d: Binding, out: &mut Vec<Binding>) {
    match p {
        Term::Var(x) => match d.get(x) {
            Some(v) if v == g => out.push(d),
            Some(_) => {}
            None => {
                let mut d = d;
                d.insert(x.clone(), g.clone());
                out.push(d);
            }
        },
        _ if p.is_ground() => {
            if &normalize(theory, p) == g {
                out.push(d);
            }
        }
        Term::App(f, args) if theory == Theory::List || !theory.is_cons(p) => {
            let Term::App(h, gargs) = g else { return };
            if f != h || args.len() != gargs.len() {
                return;
            }
            let mut states = vec![d];
            for (a, b) in args.iter().zip(gargs.iter()) {
                let mut next = Vec::new();
                for s in states {
                    go(theory, a, b, s, &mut next);
                }
                if next.is_empty() {
                    return;
                }
                states = next;
            }
            out.extend(states);
        }
        Term::App(..) => {
            if !theory.is_cons(g) {
                return;
            }
            let (pe, pr) = theory.split(p);
            let (ge, gk) = theory.split(g);
            match theory {
                Theory::MSet => mset(theory, &pe, &pr, &ge, &gk, vec![false; ge.len()], d, out),
                Theory::Set => set(theory, &pe, &pr, &ge, &gk, vec![false; ge.len()], d, out),
                Theory::CList => clist(theory, &pe, &pr, &ge, &gk, None, d, out),
                Theory::List => unreachable!("lists match structurally"),
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn mset(theory: Theory, pe: &[Term], pr: &Term, ge: &[Term], gk: &Term, used: Vec<bool>, d: Binding, out: &mut Vec<Binding>) {
    let Some((first, others)) = pe.split_first() else {
        let rem: Vec<Term> = ge.iter().zip(&used).filter(|(_, &u)| !u).map(|(e, _)| e.clone()).collect();
        go(theory, pr, &theory.aggregate(rem, gk.clone()), d, out);
        return;
    };
    for j in 0..ge.len() {
        if used[j] || (j > 0 && ge[j] == ge[j - 1] && !used[j - 1]) {
            continue;
        }
        let mut here = Vec::new();
        go(theory, first, &ge[j], d.clone(), &mut here);
        for d2 in here {
            let mut u = used.clone();
            u[j] = true;
            mset(theory, others, pr, ge, gk, u, d2, out);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn set(theory: Theory, pe: &[Term], pr: &Term, ge: &[Term], gk: &Term, covered: Vec<bool>, d: Binding, out: &mut Vec<Binding>) {
    let Some((first, others)) = pe.split_first() else {
        let optional: Vec<usize> = (0..ge.len()).filter(|&j| covered[j]).collect();
        for mask in 0u64..(1u64 << optional.len()) {
            let rest: Vec<Term> = (0..ge.len())
                .filter(|&j| !covered[j] || optional.iter().position(|&o| o == j).is_some_and(|k| mask >> k & 1 == 1))
                .map(|j| ge[j].clone())
                .collect();
            go(theory, pr, &theory.aggregate(rest, gk.clone()), d.clone(), out);
        }
        return;
    };
    for j in 0..ge.len() {
        let mut here = Vec::new();
        go(theory, first, &ge[j], d.clone(), &mut here);
        for d2 in here {
            let mut c = covered.clone();
            c[j] = true;
            set(theory, others, pr, ge, gk, c, d2, out);
        }
    }
}

/// `last` is the index of the target element produced by the previous
/// pattern element.
#[allow(clippy::too_many_arguments)]
fn clist(theory: Theory, pe: &[Term], pr: &Term, ge: &[Term], gk: &Term, last: Option<usize>, d: Binding, out: &mut Vec<Binding>) {
    let Some((first, others)) = pe.split_first() else {
        let j = last.expect("at least one element");
        go(theory, pr, &theory.aggregate(ge[j + 1..].iter().cloned(), gk.clone()), d.clone(), out);
        go(theory, pr, &theory.aggregate(ge[j..].iter().cloned(), gk.clone()), d, out);
        return;
    };
    let candidates: Vec<usize> = match last {
        None => vec![0],
        Some(j) => [j, j + 1].into_iter().filter(|&k| k < ge.len()).collect(),
    };
    for k in candidates {
        let mut here = Vec::new();
        go(theory, first, &ge[k], d.clone(), &mut here);
        for d2 in here {
            clist(theory, others, pr, ge, gk, Some(k), d2, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn m(theory: Theory, p: &str, g: &str) -> Vec<String> {
        let (p, g) = (parse_term(theory, p).unwrap(), parse_term(theory, g).unwrap());
        e_match(theory, &p, &g)
            .iter()
            .map(|d| d.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "))
            .collect()
    }

    #[test]
    fn mset_matching() {
        assert_eq!(m(Theory::MSet, "{[X|R]}", "{[a,b]}"), ["R={[a]} X=b", "R={[b]} X=a"]);
        assert!(m(Theory::MSet, "{[X,X]}", "{[a,b]}").is_empty());
    }

    #[test]
    fn set_matching() {
        let r = m(Theory::Set, "{X|R}", "{a,b}");
        assert!(r.contains(&"R={a,b} X=a".to_string()));
        assert!(r.contains(&"R={b} X=a".to_string()));
        assert!(r.contains(&"R={a} X=b".to_string()));
        assert_eq!(r.len(), 4);
        assert_eq!(m(Theory::Set, "{X,Y}", "{a}"), ["X=a Y=a"]);
    }

    #[test]
    fn clist_matching() {
        let r = m(Theory::CList, "[[X|R]]", "[[a,b]]");
        assert_eq!(r, ["R=[[a,b]] X=a", "R=[[b]] X=a"]);
        assert_eq!(m(Theory::CList, "[[X,Y]]", "[[a]]"), ["X=a Y=a"]);
        assert!(m(Theory::CList, "[[X,Y]]", "[[a,b,a]]").is_empty());
    }

    #[test]
    fn kernels_and_functors() {
        assert_eq!(m(Theory::Set, "{X|f(Y)}", "{a|f(b)}"), ["X=a Y=b"]);
        assert_eq!(m(Theory::List, "[X|Y]", "[a,b]"), ["X=a Y=[b]"]);
    }
}
