//! Normal forms of substitution propagation and the classical terms they
//! reduce to.
//!
//! A term without propagation redexes is built from variables and blocks
//! `W x1 * ... * W z * z` by application and abstraction. For good terms no
//! block survives once `Alpha` is also exhausted, which is what [`to_pure`]
//! relies on.

use std::fmt;

use crate::rewrite::{find_redexes, RuleSet};
use crate::syntax::{Subst, Term, Var};
use crate::typing::is_good;

/// `W x1 * ... * W xn * W z * z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// `x1 .. xn z`, outermost first.
    pub spine: Vec<Var>,
    pub core: Var,
}

/// Recognize a block.
pub fn as_block(t: &Term) -> Option<Block> {
    let mut spine = Vec::new();
    let mut cur = t;
    while let Term::Comp(s, body) = cur {
        let Subst::Weak(x) = &**s else { return None };
        spine.push(x.clone());
        cur = body;
    }
    match cur {
        Term::Var(z) if spine.last() == Some(z) => Some(Block {
            spine,
            core: z.clone(),
        }),
        _ => None,
    }
}

/// Matches the grammar `N ::= x | block | N N | \x. N`.
pub fn is_sigma_nf(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::App(f, a) => is_sigma_nf(f) && is_sigma_nf(a),
        Term::Lam(_, b) => is_sigma_nf(b),
        Term::Comp(..) => as_block(t).is_some(),
    }
}

/// A classical lambda term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PureTerm {
    Var(Var),
    App(Box<PureTerm>, Box<PureTerm>),
    Lam(Var, Box<PureTerm>),
}

impl PureTerm {
    pub fn from_term(t: &Term) -> Option<PureTerm> {
        Some(match t {
            Term::Var(x) => PureTerm::Var(x.clone()),
            Term::App(f, a) => {
                PureTerm::App(Box::new(PureTerm::from_term(f)?), Box::new(PureTerm::from_term(a)?))
            }
            Term::Lam(x, b) => PureTerm::Lam(x.clone(), Box::new(PureTerm::from_term(b)?)),
            Term::Comp(..) => return None,
        })
    }

    pub fn to_term(&self) -> Term {
        match self {
            PureTerm::Var(x) => Term::var(x.clone()),
            PureTerm::App(f, a) => Term::app(f.to_term(), a.to_term()),
            PureTerm::Lam(x, b) => Term::lam(x.clone(), b.to_term()),
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &PureTerm) -> bool {
        fn go<'a>(a: &'a PureTerm, b: &'a PureTerm, env_a: &mut Vec<&'a Var>, env_b: &mut Vec<&'a Var>) -> bool {
            match (a, b) {
                (PureTerm::Var(x), PureTerm::Var(y)) => {
                    let ix = env_a.iter().rposition(|v| *v == x);
                    let iy = env_b.iter().rposition(|v| *v == y);
                    match (ix, iy) {
                        (Some(i), Some(j)) => env_a.len() - i == env_b.len() - j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (PureTerm::App(f, a), PureTerm::App(g, b)) => {
                    go(f, g, env_a, env_b) && go(a, b, env_a, env_b)
                }
                (PureTerm::Lam(x, a), PureTerm::Lam(y, b)) => {
                    env_a.push(x);
                    env_b.push(y);
                    let r = go(a, b, env_a, env_b);
                    env_a.pop();
                    env_b.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

impl fmt::Display for PureTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

impl fmt::Debug for PureTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NfError {
    #[error("{0} is not good")]
    NotGood(Term),
    #[error("{0} still has a redex")]
    NotNormal(Term),
    #[error("composition {0} survived normalization")]
    ContainsBlock(Term),
}

fn first_comp(t: &Term) -> Option<&Term> {
    match t {
        Term::Var(_) => None,
        Term::App(f, a) => first_comp(f).or_else(|| first_comp(a)),
        Term::Lam(_, b) => first_comp(b),
        Term::Comp(..) => Some(t),
    }
}

/// Read a good normal form of propagation and `Alpha` as a classical term.
pub fn to_pure(t: &Term) -> Result<PureTerm, NfError> {
    if !is_good(t) {
        return Err(NfError::NotGood(t.clone()));
    }
    if !find_redexes(t, RuleSet::SIGMA_ALPHA).is_empty() {
        return Err(NfError::NotNormal(t.clone()));
    }
    match first_comp(t) {
        Some(c) => Err(NfError::ContainsBlock(c.clone())),
        None => Ok(PureTerm::from_term(t).expect("no composition left")),
    }
}
