//! Literals and conjunctions of literals.

use std::collections::BTreeSet;
use std::fmt;

use crate::term::{Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Eq,
    Member,
}

/// One of `s = t`, `s != t`, `s in t`, `s nin t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub relation: Relation,
    pub positive: bool,
    pub lhs: Term,
    pub rhs: Term,
}

/// The four surface forms, used to select literals phase by phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Eq,
    Neq,
    In,
    Nin,
}

impl Literal {
    pub fn new(relation: Relation, positive: bool, lhs: Term, rhs: Term) -> Self {
        Literal { relation, positive, lhs, rhs }
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Self::new(Relation::Eq, true, lhs, rhs)
    }

    pub fn neq(lhs: Term, rhs: Term) -> Self {
        Self::new(Relation::Eq, false, lhs, rhs)
    }

    pub fn member(lhs: Term, rhs: Term) -> Self {
        Self::new(Relation::Member, true, lhs, rhs)
    }

    pub fn non_member(lhs: Term, rhs: Term) -> Self {
        Self::new(Relation::Member, false, lhs, rhs)
    }

    pub fn kind(&self) -> Kind {
        match (self.relation, self.positive) {
            (Relation::Eq, true) => Kind::Eq,
            (Relation::Eq, false) => Kind::Neq,
            (Relation::Member, true) => Kind::In,
            (Relation::Member, false) => Kind::Nin,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self.kind() {
            Kind::Eq => "=",
            Kind::Neq => "!=",
            Kind::In => "in",
            Kind::Nin => "nin",
        }
    }

    pub fn occurs(&self, x: &Var) -> bool {
        self.lhs.occurs(x) || self.rhs.occurs(x)
    }

    pub fn count(&self, x: &Var) -> usize {
        self.lhs.count(x) + self.rhs.count(x)
    }

    pub fn map(&self, f: impl Fn(&Term) -> Term) -> Literal {
        Literal { relation: self.relation, positive: self.positive, lhs: f(&self.lhs), rhs: f(&self.rhs) }
    }

    pub fn size(&self) -> usize {
        self.lhs.size() + self.rhs.size()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.symbol(), self.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Open,
    True,
    False,
}

/// A conjunction of literals. A false constraint absorbs everything; an
/// empty open constraint is true.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    literals: Vec<Literal>,
    falsum: bool,
}

impl Constraint {
    pub fn new(literals: Vec<Literal>) -> Self {
        Constraint { literals, falsum: false }
    }

    pub fn truth() -> Self {
        Self::default()
    }

    pub fn falsum() -> Self {
        Constraint { literals: Vec::new(), falsum: true }
    }

    pub fn status(&self) -> Status {
        if self.falsum {
            Status::False
        } else if self.literals.is_empty() {
            Status::True
        } else {
            Status::Open
        }
    }

    pub fn is_false(&self) -> bool {
        self.falsum
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn push(&mut self, lit: Literal) {
        if !self.falsum {
            self.literals.push(lit);
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for l in &self.literals {
            l.lhs.collect_vars(&mut out);
            l.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn size(&self) -> usize {
        self.literals.iter().map(Literal::size).sum()
    }

    /// Occurrences of `x` across all literals.
    pub fn count(&self, x: &Var) -> usize {
        self.literals.iter().map(|l| l.count(x)).sum()
    }

    /// Copy with literal `idx` replaced by `with` (inserted in place).
    pub fn replace(&self, idx: usize, with: impl IntoIterator<Item = Literal>) -> Constraint {
        let mut literals = Vec::with_capacity(self.literals.len() + 1);
        literals.extend_from_slice(&self.literals[..idx]);
        literals.extend(with);
        literals.extend_from_slice(&self.literals[idx + 1..]);
        Constraint { literals, falsum: false }
    }

    /// Copy with literal `idx` erased.
    pub fn erase(&self, idx: usize) -> Constraint {
        self.replace(idx, std::iter::empty())
    }

    /// Copy with `x` replaced by `t` everywhere.
    pub fn substitute(&self, x: &Var, t: &Term) -> Constraint {
        Constraint {
            literals: self.literals.iter().map(|l| l.map(|s| s.replace(x, t))).collect(),
            falsum: self.falsum,
        }
    }

    pub fn map(&self, f: impl Fn(&Term) -> Term) -> Constraint {
        Constraint { literals: self.literals.iter().map(|l| l.map(&f)).collect(), falsum: self.falsum }
    }

    /// Literal order and duplicates removed, for fixpoint comparison.
    pub fn canonical(&self) -> Constraint {
        if self.falsum {
            return Constraint::falsum();
        }
        let set: BTreeSet<Literal> = self.literals.iter().cloned().collect();
        Constraint { literals: set.into_iter().collect(), falsum: false }
    }
}

impl FromIterator<Literal> for Constraint {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        Constraint::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status() {
            Status::False => f.write_str("false"),
            Status::True => f.write_str("true"),
            Status::Open => {
                for (i, l) in self.literals.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    write!(f, "{l}")?;
                }
                Ok(())
            }
        }
    }
}
