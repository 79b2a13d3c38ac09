//! Abstract syntax of terms and substitutions.
//!
//! A term is one of `x`, `A B`, `\x. A` or `S * A`; a substitution is one of
//! `[B/x]`, `W x`, `{y x}` or `S^x`. Children are reference counted so that
//! rewriting only rebuilds the spine above a redex.

#[cfg(test)]
pub(crate) mod arb;
mod parse;
mod print;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use parse::{parse_context, parse_term, ParseError};

/// A variable name, `[a-z][a-zA-Z0-9_]*`, never the keyword `W`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Result<Var, ParseError> {
        if is_identifier(name) {
            Ok(Var(Arc::from(name)))
        } else {
            Err(ParseError::BadName {
                pos: 0,
                name: name.to_string(),
            })
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FromStr for Var {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Var, ParseError> {
        Var::new(s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand used throughout the tests and the guide.
///
/// # Panics
///
/// Panics if `name` is not a valid variable name.
pub fn var(name: &str) -> Var {
    Var::new(name).unwrap_or_else(|_| panic!("invalid variable name {name:?}"))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    App(Arc<Term>, Arc<Term>),
    Lam(Var, Arc<Term>),
    Comp(Arc<Subst>, Arc<Term>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Subst {
    /// `[B/x]`
    Slash(Arc<Term>, Var),
    /// `W x`
    Weak(Var),
    /// `{y x}`, stored as (new, old).
    Rename(Var, Var),
    /// `S^x`
    Lift(Arc<Subst>, Var),
}

impl Term {
    pub fn var(x: Var) -> Term {
        Term::Var(x)
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn lam(x: Var, body: Term) -> Term {
        Term::Lam(x, Arc::new(body))
    }

    pub fn comp(s: Subst, body: Term) -> Term {
        Term::Comp(Arc::new(s), Arc::new(body))
    }

    /// Number of term and substitution nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Lam(_, b) => 1 + b.size(),
            Term::Comp(s, b) => 1 + s.size() + b.size(),
        }
    }

    /// True when the term contains no composition node.
    pub fn is_pure(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::App(f, a) => f.is_pure() && a.is_pure(),
            Term::Lam(_, b) => b.is_pure(),
            Term::Comp(..) => false,
        }
    }
}

impl Subst {
    pub fn slash(b: Term, x: Var) -> Subst {
        Subst::Slash(Arc::new(b), x)
    }

    pub fn weak(x: Var) -> Subst {
        Subst::Weak(x)
    }

    pub fn rename(new: Var, old: Var) -> Subst {
        Subst::Rename(new, old)
    }

    pub fn lift(s: Subst, x: Var) -> Subst {
        Subst::Lift(Arc::new(s), x)
    }

    pub fn size(&self) -> usize {
        match self {
            Subst::Slash(b, _) => 1 + b.size(),
            Subst::Weak(_) | Subst::Rename(..) => 1,
            Subst::Lift(s, _) => 1 + s.size(),
        }
    }
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Term, ParseError> {
        parse_term(s)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_term(self))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_subst(self))
    }
}

impl fmt::Debug for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

pub use print::print_term;

/// One step down the tree, following the positions at which the compatible
/// closure allows rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Child {
    AppLeft,
    AppRight,
    LamBody,
    CompSubst,
    CompBody,
    SlashBody,
    LiftInner,
}

impl Child {
    /// Position of the child among its parent's children.
    pub fn index(self) -> usize {
        match self {
            Child::AppRight | Child::CompBody => 1,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<Child>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn child(&self, c: Child) -> Path {
        let mut steps = self.0.clone();
        steps.push(c);
        Path(steps)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|c| c.index()).collect()
    }

    /// Rebuild a path from child indices, using `term` to disambiguate.
    pub fn from_indices(term: &Term, indices: &[usize]) -> Option<Path> {
        let mut node = Node::Term(term);
        let mut steps = Vec::with_capacity(indices.len());
        for &i in indices {
            let c = match (node, i) {
                (Node::Term(Term::App(..)), 0) => Child::AppLeft,
                (Node::Term(Term::App(..)), 1) => Child::AppRight,
                (Node::Term(Term::Lam(..)), 0) => Child::LamBody,
                (Node::Term(Term::Comp(..)), 0) => Child::CompSubst,
                (Node::Term(Term::Comp(..)), 1) => Child::CompBody,
                (Node::Subst(Subst::Slash(..)), 0) => Child::SlashBody,
                (Node::Subst(Subst::Lift(..)), 0) => Child::LiftInner,
                _ => return None,
            };
            node = node.step(c)?;
            steps.push(c);
        }
        Some(Path(steps))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, ix) in self.indices().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{ix}")?;
        }
        f.write_str("]")
    }
}

/// A borrowed node: either a term or a substitution.
#[derive(Clone, Copy, Debug)]
pub enum Node<'a> {
    Term(&'a Term),
    Subst(&'a Subst),
}

impl<'a> Node<'a> {
    pub fn step(self, c: Child) -> Option<Node<'a>> {
        Some(match (self, c) {
            (Node::Term(Term::App(f, _)), Child::AppLeft) => Node::Term(f),
            (Node::Term(Term::App(_, a)), Child::AppRight) => Node::Term(a),
            (Node::Term(Term::Lam(_, b)), Child::LamBody) => Node::Term(b),
            (Node::Term(Term::Comp(s, _)), Child::CompSubst) => Node::Subst(s),
            (Node::Term(Term::Comp(_, b)), Child::CompBody) => Node::Term(b),
            (Node::Subst(Subst::Slash(b, _)), Child::SlashBody) => Node::Term(b),
            (Node::Subst(Subst::Lift(s, _)), Child::LiftInner) => Node::Subst(s),
            _ => return None,
        })
    }
}

/// The node addressed by `path`, if the path is valid for `term`.
pub fn node_at<'a>(term: &'a Term, path: &Path) -> Option<Node<'a>> {
    path.0
        .iter()
        .try_fold(Node::Term(term), |node, &c| node.step(c))
}

/// The term addressed by `path`; `None` if the path is invalid or ends at a
/// substitution.
pub fn term_at<'a>(term: &'a Term, path: &Path) -> Option<&'a Term> {
    match node_at(term, path)? {
        Node::Term(t) => Some(t),
        Node::Subst(_) => None,
    }
}

/// Replace the term at `path` by `replacement`, sharing every untouched
/// subtree with the original.
pub fn replace_term_at(term: &Term, path: &Path, replacement: Term) -> Option<Term> {
    replace_in_term(term, &path.0, replacement)
}

fn replace_in_term(term: &Term, path: &[Child], replacement: Term) -> Option<Term> {
    let Some((&c, rest)) = path.split_first() else {
        return Some(replacement);
    };
    Some(match (term, c) {
        (Term::App(f, a), Child::AppLeft) => {
            Term::App(Arc::new(replace_in_term(f, rest, replacement)?), a.clone())
        }
        (Term::App(f, a), Child::AppRight) => {
            Term::App(f.clone(), Arc::new(replace_in_term(a, rest, replacement)?))
        }
        (Term::Lam(x, b), Child::LamBody) => {
            Term::Lam(x.clone(), Arc::new(replace_in_term(b, rest, replacement)?))
        }
        (Term::Comp(s, b), Child::CompSubst) => {
            Term::Comp(Arc::new(replace_in_subst(s, rest, replacement)?), b.clone())
        }
        (Term::Comp(s, b), Child::CompBody) => {
            Term::Comp(s.clone(), Arc::new(replace_in_term(b, rest, replacement)?))
        }
        _ => return None,
    })
}

fn replace_in_subst(subst: &Subst, path: &[Child], replacement: Term) -> Option<Subst> {
    let (&c, rest) = path.split_first()?;
    Some(match (subst, c) {
        (Subst::Slash(b, x), Child::SlashBody) => {
            Subst::Slash(Arc::new(replace_in_term(b, rest, replacement)?), x.clone())
        }
        (Subst::Lift(s, x), Child::LiftInner) => {
            Subst::Lift(Arc::new(replace_in_subst(s, rest, replacement)?), x.clone())
        }
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_names() {
        assert!(Var::new("x").is_ok());
        assert!(Var::new("a1_B").is_ok());
        assert!(Var::new("W").is_err());
        assert!(Var::new("X").is_err());
        assert!(Var::new("").is_err());
        assert!(Var::new("1a").is_err());
    }

    #[test]
    fn paths_address_and_replace() {
        let t = parse_term("[z/x]^y * x").unwrap();
        let inner = Path(vec![Child::CompSubst, Child::LiftInner, Child::SlashBody]);
        assert_eq!(term_at(&t, &inner), Some(&Term::var(var("z"))));
        let r = replace_term_at(&t, &inner, Term::var(var("w"))).unwrap();
        assert_eq!(r, parse_term("[w/x]^y * x").unwrap());
        assert_eq!(inner.indices(), vec![0, 0, 0]);
        assert_eq!(Path::from_indices(&t, &[0, 0, 0]), Some(inner));
        assert_eq!(Path::from_indices(&t, &[2]), None);
        assert!(term_at(&t, &Path(vec![Child::CompSubst])).is_none());
    }
}
