//! Terms, theories, substitutions and the fresh-variable supply.
//!
//! A [`Term`] is an immutable finite tree. Aggregates are ordinary compound
//! terms whose functor is the constructor of one of the four [`Theory`]
//! values; the theory is always passed alongside a term, never stored in it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::Error;

/// Prefixes reserved for generated variables.
pub const RESERVED_PREFIXES: [&str; 4] = ["F_", "M_", "N_", "Z_"];

/// Name of the distinguished empty aggregate.
pub const NIL: &str = "nil";

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: impl AsRef<str>) -> Self {
        Var(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// True for names in the generated namespace (`F_`, `M_`, `N_`, `Z_`).
    pub fn is_reserved(&self) -> bool {
        RESERVED_PREFIXES.iter().any(|p| self.0.starts_with(p))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    App(Arc<str>, Arc<[Term]>),
}

impl Term {
    pub fn var(name: impl AsRef<str>) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn constant(name: impl AsRef<str>) -> Term {
        Term::App(Arc::from(name.as_ref()), Arc::from(Vec::new()))
    }

    pub fn nil() -> Term {
        Term::constant(NIL)
    }

    pub fn app(functor: impl AsRef<str>, args: Vec<Term>) -> Term {
        Term::App(Arc::from(functor.as_ref()), Arc::from(args))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Term::App(f, a) if a.is_empty() && &**f == NIL)
    }

    pub fn functor(&self) -> Option<(&str, usize)> {
        match self {
            Term::Var(_) => None,
            Term::App(f, a) => Some((f, a.len())),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, a) => a,
        }
    }

    /// Number of constant and function symbol occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, a) => 1 + a.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Tree depth: variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, a) => a.iter().map(|t| 1 + t.depth()).max().unwrap_or(0),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, a) => a.iter().for_each(|t| t.collect_vars(out)),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, a) => a.iter().all(Term::is_ground),
        }
    }

    pub fn occurs(&self, x: &Var) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::App(_, a) => a.iter().any(|t| t.occurs(x)),
        }
    }

    /// Number of occurrences of `x`.
    pub fn count(&self, x: &Var) -> usize {
        match self {
            Term::Var(v) => usize::from(v == x),
            Term::App(_, a) => a.iter().map(|t| t.count(x)).sum(),
        }
    }

    /// Replace every occurrence of `x` by `by`.
    pub fn replace(&self, x: &Var, by: &Term) -> Term {
        if !self.occurs(x) {
            return self.clone();
        }
        match self {
            Term::Var(_) => by.clone(),
            Term::App(f, a) => Term::App(f.clone(), a.iter().map(|t| t.replace(x, by)).collect()),
        }
    }

    /// Visit every subterm (pre-order, including `self`).
    pub fn subterms(&self, visit: &mut impl FnMut(&Term)) {
        visit(self);
        for a in self.args() {
            a.subterms(visit);
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Term::App(_, a) if a.is_empty() && self.is_nil() => 0,
            Term::App(_, a) if a.is_empty() => 1,
            Term::Var(_) => 2,
            Term::App(..) => 3,
        }
    }
}

impl Ord for Term {
    /// nil < constants < variables < compounds; constants and variables by
    /// name, compounds by functor, arity and then arguments.
    fn cmp(&self, other: &Self) -> Ordering {
        let k = self.kind_rank().cmp(&other.kind_rank());
        if k != Ordering::Equal {
            return k;
        }
        match (self, other) {
            (Term::Var(x), Term::Var(y)) => x.cmp(y),
            (Term::App(f, a), Term::App(g, b)) => f
                .cmp(g)
                .then(a.len().cmp(&b.len()))
                .then_with(|| a.iter().cmp(b.iter())),
            _ => unreachable!("kind ranks agree"),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Var> for Term {
    fn from(v: Var) -> Self {
        Term::Var(v)
    }
}

/// The four aggregate theories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    List,
    MSet,
    CList,
    Set,
}

impl Theory {
    pub const ALL: [Theory; 4] = [Theory::List, Theory::MSet, Theory::CList, Theory::Set];

    /// Functor name of the aggregate constructor.
    pub fn constructor(self) -> &'static str {
        match self {
            Theory::List => "[|]",
            Theory::MSet => "{[|]}",
            Theory::CList => "[[|]]",
            Theory::Set => "{|}",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Theory::List => "list",
            Theory::MSet => "mset",
            Theory::CList => "clist",
            Theory::Set => "set",
        }
    }

    pub fn permutative(self) -> bool {
        matches!(self, Theory::MSet | Theory::Set)
    }

    pub fn absorptive(self) -> bool {
        matches!(self, Theory::CList | Theory::Set)
    }

    /// The theory whose constructor is `functor`, if any.
    pub fn of_constructor(functor: &str) -> Option<Theory> {
        Theory::ALL.into_iter().find(|t| t.constructor() == functor)
    }

    pub fn is_cons(self, t: &Term) -> bool {
        matches!(t, Term::App(f, a) if a.len() == 2 && &**f == self.constructor())
    }

    pub fn cons(self, head: Term, rest: Term) -> Term {
        Term::App(Arc::from(self.constructor()), Arc::from(vec![head, rest]))
    }

    /// Right-nested aggregate `[e1,…,en|rest]`.
    pub fn aggregate(self, elems: impl IntoIterator<Item = Term>, rest: Term) -> Term {
        let elems: Vec<Term> = elems.into_iter().collect();
        elems.into_iter().rev().fold(rest, |acc, e| self.cons(e, acc))
    }

    /// Head and rest of a cons cell.
    pub fn uncons(self, t: &Term) -> Option<(&Term, &Term)> {
        if self.is_cons(t) {
            let a = t.args();
            Some((&a[0], &a[1]))
        } else {
            None
        }
    }

    /// Maximal element prefix and the first non-constructor rest.
    pub fn split(self, t: &Term) -> (Vec<Term>, Term) {
        let mut elems = Vec::new();
        let mut cur = t;
        while let Some((h, r)) = self.uncons(cur) {
            elems.push(h.clone());
            cur = r;
        }
        (elems, cur.clone())
    }

    /// Drops syntactically repeated elements from every spine: any repeat
    /// for sets, adjacent repeats for compact lists. Identity otherwise.
    pub fn absorb_repeats(self, t: &Term) -> Term {
        if !self.absorptive() {
            return t.clone();
        }
        let Term::App(f, args) = t else { return t.clone() };
        if !self.is_cons(t) {
            let args: Vec<Term> = args.iter().map(|a| self.absorb_repeats(a)).collect();
            return Term::App(f.clone(), Arc::from(args));
        }
        let (elems, rest) = self.split(t);
        let mut kept: Vec<Term> = Vec::with_capacity(elems.len());
        for e in elems.iter().map(|e| self.absorb_repeats(e)) {
            let repeat = match self {
                Theory::Set => kept.contains(&e),
                _ => kept.last() == Some(&e),
            };
            if !repeat {
                kept.push(e);
            }
        }
        self.aggregate(kept, self.absorb_repeats(&rest))
    }

    /// Innermost rest of the spine.
    pub fn tail(self, t: &Term) -> Term {
        let mut cur = t;
        while let Some((_, r)) = self.uncons(cur) {
            cur = r;
        }
        cur.clone()
    }

    /// The spine with a variable rest replaced by nil.
    pub fn untail(self, t: &Term) -> Term {
        match t {
            Term::Var(_) => Term::nil(),
            _ => match self.uncons(t) {
                Some((h, r)) => self.cons(h.clone(), self.untail(r)),
                None => t.clone(),
            },
        }
    }

    /// Maximum aggregate nesting depth.
    pub fn rank(self, s: &Term) -> usize {
        match self.uncons(s) {
            Some((h, r)) => (1 + self.rank(h)).max(self.rank(r)),
            None => 0,
        }
    }

    /// Depths at which `x` occurs in `t` along aggregate and functor nesting.
    ///
    /// For an aggregate whose rest is not itself an aggregate only the head is
    /// inspected, as in the original definition.
    pub fn find(self, x: &Var, t: &Term) -> BTreeSet<usize> {
        match t {
            Term::Var(v) => {
                if v == x {
                    BTreeSet::from([0])
                } else {
                    BTreeSet::new()
                }
            }
            Term::App(_, a) if a.is_empty() => BTreeSet::new(),
            _ => match self.uncons(t) {
                Some((h, r)) => {
                    let mut out: BTreeSet<usize> = self.find(x, h).into_iter().map(|n| n + 1).collect();
                    if self.is_cons(r) {
                        out.extend(self.find(x, r));
                    }
                    out
                }
                None => t
                    .args()
                    .iter()
                    .flat_map(|a| self.find(x, a))
                    .map(|n| n + 1)
                    .collect(),
            },
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "list" => Ok(Theory::List),
            "mset" => Ok(Theory::MSet),
            "clist" => Ok(Theory::CList),
            "set" => Ok(Theory::Set),
            other => Err(Error::UnknownTheory(other.to_string())),
        }
    }
}

/// A finite map from variables to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    bindings: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `x ↦ t`; identity bindings are dropped.
    pub fn bind(&mut self, x: Var, t: Term) {
        if t.as_var() == Some(&x) {
            self.bindings.remove(&x);
        } else {
            self.bindings.insert(x, t);
        }
    }

    pub fn get(&self, x: &Var) -> Option<&Term> {
        self.bindings.get(x)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.bindings.keys()
    }

    /// Simultaneous replacement of domain variables.
    pub fn apply(&self, t: &Term) -> Term {
        if self.bindings.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.bindings.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, a) if a.is_empty() => Term::App(f.clone(), a.clone()),
            Term::App(f, a) => Term::App(f.clone(), a.iter().map(|x| self.apply(x)).collect()),
        }
    }

    /// `θ^{m+1} = [X_i / θ^m(t_i)]` with `θ^1 = θ`; `power(0)` is the identity.
    pub fn power(&self, m: usize) -> Substitution {
        if m == 0 {
            return Substitution::new();
        }
        let mut cur = self.clone();
        for _ in 1..m {
            cur = self.step(&cur);
        }
        cur
    }

    fn step(&self, prev: &Substitution) -> Substitution {
        let mut next = Substitution::new();
        for (x, t) in &self.bindings {
            next.bind(x.clone(), prev.apply(t));
        }
        next
    }

    /// Fixpoint `θ*` of the power sequence, capped at `|domain|` changing
    /// iterations.
    pub fn closure(&self) -> Result<Substitution, Error> {
        self.closure_with_cap(self.bindings.len())
    }

    pub fn closure_with_cap(&self, cap: usize) -> Result<Substitution, Error> {
        let mut cur = self.clone();
        for _ in 0..=cap {
            let next = self.step(&cur);
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::NotStabilizing { cap })
    }
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (x, t) in iter {
            s.bind(x, t);
        }
        s
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}/{t}")?;
        }
        f.write_str("]")
    }
}

/// Deterministic generator of reserved-namespace variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreshSupply {
    counter: u64,
}

impl FreshSupply {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn starting_at(counter: u64) -> Self {
        FreshSupply { counter }
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// `prefix` must be one of `F`, `M`, `N`, `Z`.
    pub fn fresh(&mut self, prefix: &str) -> Var {
        debug_assert!(RESERVED_PREFIXES.iter().any(|p| &p[..1] == prefix));
        let v = Var::new(format!("{prefix}_{}", self.counter));
        self.counter += 1;
        v
    }
}
