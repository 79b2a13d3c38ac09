//! Contexts: a global set of names paired with a local list of bound names.
//!
//! The local list grows on the right, so `Γ,x` pushes `x` at the end and every
//! suffix comparison is made from the right.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{parse_context, ParseError, Var};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Context {
    global: BTreeSet<Var>,
    local: Vec<Var>,
}

impl Context {
    pub fn new(global: BTreeSet<Var>, local: Vec<Var>) -> Context {
        Context { global, local }
    }

    pub fn empty() -> Context {
        Context::default()
    }

    /// A context with an empty local part.
    pub fn set<I: IntoIterator<Item = Var>>(vars: I) -> Context {
        Context {
            global: vars.into_iter().collect(),
            local: Vec::new(),
        }
    }

    pub fn global(&self) -> &BTreeSet<Var> {
        &self.global
    }

    pub fn local(&self) -> &[Var] {
        &self.local
    }

    pub fn is_set(&self) -> bool {
        self.local.is_empty()
    }

    pub fn last(&self) -> Option<&Var> {
        self.local.last()
    }

    /// `Γ,x`
    pub fn push(mut self, x: Var) -> Context {
        self.local.push(x);
        self
    }

    /// Split `Γ,x` into `Γ` and `x`.
    pub fn pop(mut self) -> Option<(Context, Var)> {
        let x = self.local.pop()?;
        Some((self, x))
    }

    pub fn member(&self, x: &Var) -> bool {
        self.global.contains(x) || self.local.contains(x)
    }

    /// `self ≤ other`: the local list of `self` is a suffix of the local list
    /// of `other`, and every global name of `self` is global in `other` or
    /// occurs in the prefix of `other` left over from the suffix.
    pub fn le(&self, other: &Context) -> bool {
        let (l1, l2) = (&self.local, &other.local);
        if l1.len() > l2.len() {
            return false;
        }
        let cut = l2.len() - l1.len();
        if l2[cut..] != l1[..] {
            return false;
        }
        let prefix = &l2[..cut];
        self.global
            .iter()
            .all(|x| other.global.contains(x) || prefix.contains(x))
    }

    pub fn lt(&self, other: &Context) -> bool {
        self != other && self.le(other)
    }

    /// Compatible contexts have a supremum: one local list is a suffix of the
    /// other.
    pub fn compatible(&self, other: &Context) -> bool {
        let (short, long) = if self.local.len() <= other.local.len() {
            (&self.local, &other.local)
        } else {
            (&other.local, &self.local)
        };
        long[long.len() - short.len()..] == short[..]
    }

    /// Least upper bound, computed from the right end of the local lists.
    pub fn sup(&self, other: &Context) -> Option<Context> {
        if !self.compatible(other) {
            return None;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut tail = Vec::new();
        loop {
            match (a.local.pop(), b.local.pop()) {
                (Some(x), Some(y)) => {
                    debug_assert_eq!(x, y);
                    tail.push(x);
                }
                (Some(x), None) => {
                    b.global.remove(&x);
                    tail.push(x);
                }
                (None, Some(y)) => {
                    a.global.remove(&y);
                    tail.push(y);
                }
                (None, None) => break,
            }
        }
        let mut global = a.global;
        global.extend(b.global);
        tail.reverse();
        Some(Context {
            global,
            local: tail,
        })
    }

    /// The context seen from outside a binder for `x`: drop a trailing local
    /// `x`, or remove `x` from a pure set. Undefined if the local list ends in
    /// another name.
    pub fn o_lambda(&self, x: &Var) -> Option<Context> {
        match self.local.last() {
            None => {
                let mut global = self.global.clone();
                global.remove(x);
                Some(Context {
                    global,
                    local: Vec::new(),
                })
            }
            Some(y) if y == x => {
                let mut c = self.clone();
                c.local.pop();
                Some(c)
            }
            Some(_) => None,
        }
    }

    /// Every name of the context, global or local.
    pub fn names(&self) -> BTreeSet<Var> {
        let mut all = self.global.clone();
        all.extend(self.local.iter().cloned());
        all
    }
}

pub fn ctx_member(x: &Var, ctx: &Context) -> bool {
    ctx.member(x)
}

pub fn ctx_le(a: &Context, b: &Context) -> bool {
    a.le(b)
}

pub fn ctx_compatible(a: &Context, b: &Context) -> bool {
    a.compatible(b)
}

pub fn ctx_sup(a: &Context, b: &Context) -> Option<Context> {
    a.sup(b)
}

pub fn o_lambda(x: &Var, ctx: &Context) -> Option<Context> {
    ctx.o_lambda(x)
}

impl std::str::FromStr for Context {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Context, ParseError> {
        parse_context(s)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.global.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")?;
        if !self.local.is_empty() {
            f.write_str("; ")?;
            for (i, x) in self.local.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}
