//! De Bruijn calculi with named free variables.
//!
//! Terms are names, the index `1`, application, `λa`, the marked abstraction
//! `Λa` (only produced for the calculus with the extra abstraction rules) and
//! `a[s]`; substitutions are `b/`, `↑`, `id` and `⇑s`. Terms are stored in the
//! bracket form and can be printed in either the bracket notation or the
//! composition notation `s∘a`, where `↑` is written `W`.

mod check;
mod lpo;
mod rules;
mod translate;
mod weights;

use std::fmt;
use std::sync::Arc;

use crate::syntax::Var;

pub use check::{db_check, db_check_sub};
pub use lpo::{lpo_gt, LTerm, LSub};
pub use rules::{
    db_apply, db_find_redexes, db_normalize, db_normalize_upsilon, DbRedex, DbRule, System,
};
pub use translate::{
    equiv_alpha, equiv_gamma, equiv_gamma_explain, translate, translate_term, EquivError, Flavor,
};
pub use weights::{label, weight, weight_sub, weights12, weights12_sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum DBTerm {
    Name(Var),
    One,
    App(Arc<DBTerm>, Arc<DBTerm>),
    Lam(Arc<DBTerm>),
    BoldLam(Arc<DBTerm>),
    Comp(Arc<DBSub>, Arc<DBTerm>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum DBSub {
    Slash(Arc<DBTerm>),
    Shift,
    Id,
    Lift(Arc<DBSub>),
}

impl DBTerm {
    pub fn name(x: Var) -> DBTerm {
        DBTerm::Name(x)
    }

    pub fn app(f: DBTerm, a: DBTerm) -> DBTerm {
        DBTerm::App(Arc::new(f), Arc::new(a))
    }

    pub fn lam(b: DBTerm) -> DBTerm {
        DBTerm::Lam(Arc::new(b))
    }

    pub fn bold_lam(b: DBTerm) -> DBTerm {
        DBTerm::BoldLam(Arc::new(b))
    }

    /// `a[s]`, written `s∘a` in the composition notation.
    pub fn comp(s: DBSub, a: DBTerm) -> DBTerm {
        DBTerm::Comp(Arc::new(s), Arc::new(a))
    }

    pub fn size(&self) -> usize {
        match self {
            DBTerm::Name(_) | DBTerm::One => 1,
            DBTerm::App(f, a) => 1 + f.size() + a.size(),
            DBTerm::Lam(b) | DBTerm::BoldLam(b) => 1 + b.size(),
            DBTerm::Comp(s, a) => 1 + s.size() + a.size(),
        }
    }

    pub fn has_bold(&self) -> bool {
        match self {
            DBTerm::Name(_) | DBTerm::One => false,
            DBTerm::App(f, a) => f.has_bold() || a.has_bold(),
            DBTerm::Lam(b) => b.has_bold(),
            DBTerm::BoldLam(_) => true,
            DBTerm::Comp(s, a) => s.has_bold() || a.has_bold(),
        }
    }

    /// Replace every marked abstraction by a plain one.
    pub fn erase_bold(&self) -> DBTerm {
        match self {
            DBTerm::Name(_) | DBTerm::One => self.clone(),
            DBTerm::App(f, a) => DBTerm::app(f.erase_bold(), a.erase_bold()),
            DBTerm::Lam(b) | DBTerm::BoldLam(b) => DBTerm::lam(b.erase_bold()),
            DBTerm::Comp(s, a) => DBTerm::comp(s.erase_bold(), a.erase_bold()),
        }
    }

    /// True when some substitution `b/`, `id` or `⇑s` occurs.
    pub fn has_pending_subst(&self) -> bool {
        match self {
            DBTerm::Name(_) | DBTerm::One => false,
            DBTerm::App(f, a) => f.has_pending_subst() || a.has_pending_subst(),
            DBTerm::Lam(b) | DBTerm::BoldLam(b) => b.has_pending_subst(),
            DBTerm::Comp(s, a) => !matches!(**s, DBSub::Shift) || a.has_pending_subst(),
        }
    }
}

impl DBSub {
    pub fn slash(b: DBTerm) -> DBSub {
        DBSub::Slash(Arc::new(b))
    }

    pub fn lift(s: DBSub) -> DBSub {
        DBSub::Lift(Arc::new(s))
    }

    pub fn size(&self) -> usize {
        match self {
            DBSub::Slash(b) => 1 + b.size(),
            DBSub::Shift | DBSub::Id => 1,
            DBSub::Lift(s) => 1 + s.size(),
        }
    }

    fn has_bold(&self) -> bool {
        match self {
            DBSub::Slash(b) => b.has_bold(),
            DBSub::Shift | DBSub::Id => false,
            DBSub::Lift(s) => s.has_bold(),
        }
    }

    fn erase_bold(&self) -> DBSub {
        match self {
            DBSub::Slash(b) => DBSub::slash(b.erase_bold()),
            DBSub::Shift | DBSub::Id => self.clone(),
            DBSub::Lift(s) => DBSub::lift(s.erase_bold()),
        }
    }
}

/// A position as child indices: application 0/1, abstraction body 0,
/// composition substitution 0 and body 1, `b/` body 0, `⇑s` inner 0.
pub type DbPath = Vec<usize>;

#[derive(Clone, Copy, Debug)]
pub enum DbNode<'a> {
    Term(&'a DBTerm),
    Sub(&'a DBSub),
}

impl<'a> DbNode<'a> {
    pub fn step(self, i: usize) -> Option<DbNode<'a>> {
        Some(match (self, i) {
            (DbNode::Term(DBTerm::App(f, _)), 0) => DbNode::Term(f),
            (DbNode::Term(DBTerm::App(_, a)), 1) => DbNode::Term(a),
            (DbNode::Term(DBTerm::Lam(b) | DBTerm::BoldLam(b)), 0) => DbNode::Term(b),
            (DbNode::Term(DBTerm::Comp(s, _)), 0) => DbNode::Sub(s),
            (DbNode::Term(DBTerm::Comp(_, a)), 1) => DbNode::Term(a),
            (DbNode::Sub(DBSub::Slash(b)), 0) => DbNode::Term(b),
            (DbNode::Sub(DBSub::Lift(s)), 0) => DbNode::Sub(s),
            _ => return None,
        })
    }
}

pub fn db_term_at<'a>(a: &'a DBTerm, path: &[usize]) -> Option<&'a DBTerm> {
    match path.iter().try_fold(DbNode::Term(a), |n, &i| n.step(i))? {
        DbNode::Term(t) => Some(t),
        DbNode::Sub(_) => None,
    }
}

/// Replace the term at `path`, sharing the untouched parts.
pub fn db_replace_at(a: &DBTerm, path: &[usize], new: DBTerm) -> Option<DBTerm> {
    let Some((&i, rest)) = path.split_first() else {
        return Some(new);
    };
    Some(match (a, i) {
        (DBTerm::App(f, x), 0) => DBTerm::App(Arc::new(db_replace_at(f, rest, new)?), x.clone()),
        (DBTerm::App(f, x), 1) => DBTerm::App(f.clone(), Arc::new(db_replace_at(x, rest, new)?)),
        (DBTerm::Lam(b), 0) => DBTerm::Lam(Arc::new(db_replace_at(b, rest, new)?)),
        (DBTerm::BoldLam(b), 0) => DBTerm::BoldLam(Arc::new(db_replace_at(b, rest, new)?)),
        (DBTerm::Comp(s, b), 0) => DBTerm::Comp(Arc::new(replace_in_sub(s, rest, new)?), b.clone()),
        (DBTerm::Comp(s, b), 1) => DBTerm::Comp(s.clone(), Arc::new(db_replace_at(b, rest, new)?)),
        _ => return None,
    })
}

fn replace_in_sub(s: &DBSub, path: &[usize], new: DBTerm) -> Option<DBSub> {
    let (&i, rest) = path.split_first()?;
    Some(match (s, i) {
        (DBSub::Slash(b), 0) => DBSub::Slash(Arc::new(db_replace_at(b, rest, new)?)),
        (DBSub::Lift(inner), 0) => DBSub::Lift(Arc::new(replace_in_sub(inner, rest, new)?)),
        _ => return None,
    })
}

/// Printing style for de Bruijn terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    /// `λ(x[↑])`, `1[b/]`
    Bracket,
    /// `λ W∘x`, `[b/]∘1`
    Compose,
}

impl std::str::FromStr for Notation {
    type Err = String;

    fn from_str(s: &str) -> Result<Notation, String> {
        match s {
            "bracket" => Ok(Notation::Bracket),
            "compose" => Ok(Notation::Compose),
            _ => Err(format!("unknown notation {s:?}, expected bracket or compose")),
        }
    }
}

pub fn print_db(a: &DBTerm, notation: Notation) -> String {
    let mut out = String::new();
    match notation {
        Notation::Bracket => bracket::term(a, &mut out),
        Notation::Compose => compose::term(a, &mut out),
    }
    out
}

pub fn print_db_sub(s: &DBSub, notation: Notation) -> String {
    let mut out = String::new();
    match notation {
        Notation::Bracket => bracket::sub(s, &mut out),
        Notation::Compose => compose::sub(s, &mut out),
    }
    out
}

mod bracket {
    use super::{DBSub, DBTerm};

    pub(super) fn term(a: &DBTerm, out: &mut String) {
        match a {
            DBTerm::App(f, x) => {
                match **f {
                    DBTerm::Lam(_) | DBTerm::BoldLam(_) => paren(f, out),
                    _ => term(f, out),
                }
                out.push(' ');
                match **x {
                    DBTerm::App(..) | DBTerm::Lam(_) | DBTerm::BoldLam(_) => paren(x, out),
                    _ => term(x, out),
                }
            }
            DBTerm::Lam(b) | DBTerm::BoldLam(b) => {
                out.push(if matches!(a, DBTerm::Lam(_)) { 'λ' } else { 'Λ' });
                match **b {
                    DBTerm::Name(_) | DBTerm::One | DBTerm::Lam(_) | DBTerm::BoldLam(_) => {
                        term(b, out)
                    }
                    _ => paren(b, out),
                }
            }
            DBTerm::Comp(s, b) => {
                match **b {
                    DBTerm::App(..) | DBTerm::Lam(_) | DBTerm::BoldLam(_) => paren(b, out),
                    _ => term(b, out),
                }
                out.push('[');
                sub(s, out);
                out.push(']');
            }
            DBTerm::Name(x) => out.push_str(x.as_str()),
            DBTerm::One => out.push('1'),
        }
    }

    fn paren(a: &DBTerm, out: &mut String) {
        out.push('(');
        term(a, out);
        out.push(')');
    }

    pub(super) fn sub(s: &DBSub, out: &mut String) {
        match s {
            DBSub::Slash(b) => {
                term(b, out);
                out.push('/');
            }
            DBSub::Shift => out.push('↑'),
            DBSub::Id => out.push_str("id"),
            DBSub::Lift(inner) => {
                out.push('⇑');
                if matches!(**inner, DBSub::Slash(_)) {
                    out.push('(');
                    sub(inner, out);
                    out.push(')');
                } else {
                    sub(inner, out);
                }
            }
        }
    }
}

mod compose {
    use super::{DBSub, DBTerm};

    pub(super) fn term(a: &DBTerm, out: &mut String) {
        match a {
            DBTerm::App(f, x) => {
                match **f {
                    DBTerm::Name(_) | DBTerm::One | DBTerm::App(..) => term(f, out),
                    _ => paren(f, out),
                }
                out.push(' ');
                match **x {
                    DBTerm::Name(_) | DBTerm::One => term(x, out),
                    _ => paren(x, out),
                }
            }
            DBTerm::Lam(b) | DBTerm::BoldLam(b) => {
                out.push(if matches!(a, DBTerm::Lam(_)) { 'λ' } else { 'Λ' });
                if !matches!(**b, DBTerm::Lam(_) | DBTerm::BoldLam(_)) {
                    out.push(' ');
                }
                term(b, out);
            }
            DBTerm::Comp(s, b) => {
                sub(s, out);
                out.push('∘');
                term(b, out);
            }
            DBTerm::Name(x) => out.push_str(x.as_str()),
            DBTerm::One => out.push('1'),
        }
    }

    fn paren(a: &DBTerm, out: &mut String) {
        out.push('(');
        term(a, out);
        out.push(')');
    }

    pub(super) fn sub(s: &DBSub, out: &mut String) {
        match s {
            DBSub::Slash(b) => {
                out.push('[');
                term(b, out);
                out.push_str("/]");
            }
            DBSub::Shift => out.push('W'),
            DBSub::Id => out.push_str("id"),
            DBSub::Lift(inner) => {
                out.push('⇑');
                sub(inner, out);
            }
        }
    }
}

impl fmt::Display for DBTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_db(self, Notation::Bracket))
    }
}

impl fmt::Debug for DBTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl fmt::Display for DBSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_db_sub(self, Notation::Bracket))
    }
}

impl fmt::Debug for DBSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    #[test]
    fn printing() {
        let a = DBTerm::lam(DBTerm::comp(DBSub::Shift, DBTerm::name(var("x"))));
        assert_eq!(print_db(&a, Notation::Bracket), "λ(x[↑])");
        assert_eq!(print_db(&a, Notation::Compose), "λ W∘x");
        let b = DBTerm::lam(DBTerm::comp(
            DBSub::lift(DBSub::slash(DBTerm::name(var("z")))),
            DBTerm::comp(DBSub::Shift, DBTerm::One),
        ));
        assert_eq!(print_db(&b, Notation::Bracket), "λ(1[↑][⇑(z/)])");
        assert_eq!(print_db(&b, Notation::Compose), "λ ⇑[z/]∘W∘1");
        let c = DBTerm::app(DBTerm::lam(DBTerm::lam(DBTerm::One)), DBTerm::name(var("z")));
        assert_eq!(print_db(&c, Notation::Bracket), "(λλ1) z");
        assert_eq!(print_db(&DBTerm::bold_lam(DBTerm::One), Notation::Bracket), "Λ1");
    }

    #[test]
    fn paths() {
        let a = DBTerm::lam(DBTerm::comp(DBSub::slash(DBTerm::One), DBTerm::name(var("x"))));
        assert_eq!(db_term_at(&a, &[0, 0, 0]), Some(&DBTerm::One));
        let b = db_replace_at(&a, &[0, 0, 0], DBTerm::name(var("y"))).unwrap();
        assert_eq!(b.to_string(), "λ(x[y/])");
        assert!(db_term_at(&a, &[0, 0]).is_none());
    }
}
