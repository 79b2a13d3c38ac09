//! Rewriting on de Bruijn terms.

use std::fmt;

use super::{db_replace_at, db_term_at, DBSub, DBTerm, DbPath};

/// Which rules are in play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    /// Substitution propagation only.
    Upsilon,
    /// Propagation plus `Beta`.
    LambdaUpsilon,
    /// Propagation plus the rules for marked abstractions.
    Upsilon2,
}

impl std::str::FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<System, String> {
        match s {
            "upsilon" => Ok(System::Upsilon),
            "lambda-upsilon" => Ok(System::LambdaUpsilon),
            "upsilon2" => Ok(System::Upsilon2),
            _ => Err(format!("unknown calculus {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DbRule {
    /// `(λa) b → a[b/]`
    Beta,
    /// `(a b)[s] → a[s] b[s]`
    App,
    /// `(λa)[s] → λ(a[⇑s])`
    Lambda,
    /// `(λa)[s] → Λ(a[⇑s])`
    LambdaP,
    /// `(Λa)[s] → λ(a[⇑s])`
    LambdaPP,
    /// `(Λa)[s] → Λ(a[⇑s])`
    LambdaPPP,
    /// `1[b/] → b`
    Var,
    /// `a[↑][b/] → a`
    Shift,
    /// `1[id] → 1`
    VarId,
    /// `a[↑][id] → a[↑]`
    ShiftId,
    /// `1[⇑s] → 1`
    VarLift,
    /// `a[↑][⇑s] → a[s][↑]`
    ShiftLift,
    /// `Λa → λ(a[id])`
    Alpha,
    /// `Λa → λa`
    Xi,
}

impl DbRule {
    pub fn name(self) -> &'static str {
        match self {
            DbRule::Beta => "Beta",
            DbRule::App => "App",
            DbRule::Lambda => "Lambda",
            DbRule::LambdaP => "Lambda'",
            DbRule::LambdaPP => "Lambda''",
            DbRule::LambdaPPP => "Lambda'''",
            DbRule::Var => "Var",
            DbRule::Shift => "Shift",
            DbRule::VarId => "VarId",
            DbRule::ShiftId => "ShiftId",
            DbRule::VarLift => "VarLift",
            DbRule::ShiftLift => "ShiftLift",
            DbRule::Alpha => "Alpha",
            DbRule::Xi => "Xi",
        }
    }
}

impl fmt::Display for DbRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbRedex {
    pub path: DbPath,
    pub rule: DbRule,
}

/// Rules matching at the root of `a`. Several may match in the extended
/// system.
fn rules_at(a: &DBTerm, system: System) -> Vec<DbRule> {
    let marked = system == System::Upsilon2;
    match a {
        DBTerm::App(f, _) if system == System::LambdaUpsilon && matches!(**f, DBTerm::Lam(_)) => {
            vec![DbRule::Beta]
        }
        DBTerm::BoldLam(_) if marked => vec![DbRule::Alpha, DbRule::Xi],
        DBTerm::Comp(s, b) => match (&**s, &**b) {
            (_, DBTerm::App(..)) => vec![DbRule::App],
            (_, DBTerm::Lam(_)) if marked => vec![DbRule::Lambda, DbRule::LambdaP],
            (_, DBTerm::Lam(_)) => vec![DbRule::Lambda],
            (_, DBTerm::BoldLam(_)) if marked => vec![DbRule::LambdaPP, DbRule::LambdaPPP],
            (DBSub::Slash(_), DBTerm::One) => vec![DbRule::Var],
            (DBSub::Id, DBTerm::One) => vec![DbRule::VarId],
            (DBSub::Lift(_), DBTerm::One) => vec![DbRule::VarLift],
            (DBSub::Slash(_), DBTerm::Comp(t, _)) if **t == DBSub::Shift => vec![DbRule::Shift],
            (DBSub::Id, DBTerm::Comp(t, _)) if **t == DBSub::Shift => vec![DbRule::ShiftId],
            (DBSub::Lift(_), DBTerm::Comp(t, _)) if **t == DBSub::Shift => vec![DbRule::ShiftLift],
            _ => Vec::new(),
        },
        _ => Vec::new(),
    }
}

/// Every redex in pre-order.
pub fn db_find_redexes(a: &DBTerm, system: System) -> Vec<DbRedex> {
    fn term(a: &DBTerm, system: System, path: &mut DbPath, out: &mut Vec<DbRedex>) {
        for rule in rules_at(a, system) {
            out.push(DbRedex {
                path: path.clone(),
                rule,
            });
        }
        let mut go = |t: &DBTerm, i: usize, out: &mut Vec<DbRedex>| {
            path.push(i);
            term(t, system, path, out);
            path.pop();
        };
        match a {
            DBTerm::Name(_) | DBTerm::One => {}
            DBTerm::App(f, x) => {
                go(f, 0, out);
                go(x, 1, out);
            }
            DBTerm::Lam(b) | DBTerm::BoldLam(b) => go(b, 0, out),
            DBTerm::Comp(s, b) => {
                path.push(0);
                sub(s, system, path, out);
                path.pop();
                path.push(1);
                term(b, system, path, out);
                path.pop();
            }
        }
    }
    fn sub(s: &DBSub, system: System, path: &mut DbPath, out: &mut Vec<DbRedex>) {
        match s {
            DBSub::Slash(b) => {
                path.push(0);
                term(b, system, path, out);
                path.pop();
            }
            DBSub::Lift(inner) => {
                path.push(0);
                sub(inner, system, path, out);
                path.pop();
            }
            DBSub::Shift | DBSub::Id => {}
        }
    }
    let mut out = Vec::new();
    term(a, system, &mut Vec::new(), &mut out);
    out
}

fn contract(a: &DBTerm, rule: DbRule) -> Option<DBTerm> {
    let lifted = |s: &DBSub, body: &std::sync::Arc<DBTerm>| {
        DBTerm::Comp(DBSub::Lift(s.clone().into()).into(), body.clone())
    };
    Some(match (rule, a) {
        (DbRule::Beta, DBTerm::App(f, b)) => {
            let DBTerm::Lam(body) = &**f else { return None };
            DBTerm::Comp(DBSub::Slash(b.clone()).into(), body.clone())
        }
        (DbRule::Alpha, DBTerm::BoldLam(b)) => DBTerm::lam(DBTerm::Comp(DBSub::Id.into(), b.clone())),
        (DbRule::Xi, DBTerm::BoldLam(b)) => DBTerm::Lam(b.clone()),
        (_, DBTerm::Comp(s, body)) => match (rule, &**s, &**body) {
            (DbRule::App, _, DBTerm::App(f, x)) => DBTerm::app(
                DBTerm::Comp(s.clone(), f.clone()),
                DBTerm::Comp(s.clone(), x.clone()),
            ),
            (DbRule::Lambda, _, DBTerm::Lam(b)) | (DbRule::LambdaPP, _, DBTerm::BoldLam(b)) => {
                DBTerm::lam(lifted(s, b))
            }
            (DbRule::LambdaP, _, DBTerm::Lam(b)) | (DbRule::LambdaPPP, _, DBTerm::BoldLam(b)) => {
                DBTerm::bold_lam(lifted(s, b))
            }
            (DbRule::Var, DBSub::Slash(b), DBTerm::One) => (**b).clone(),
            (DbRule::VarId, DBSub::Id, DBTerm::One) | (DbRule::VarLift, DBSub::Lift(_), DBTerm::One) => {
                DBTerm::One
            }
            (DbRule::Shift, DBSub::Slash(_), DBTerm::Comp(t, inner)) if **t == DBSub::Shift => {
                (**inner).clone()
            }
            (DbRule::ShiftId, DBSub::Id, inner @ DBTerm::Comp(t, _)) if **t == DBSub::Shift => {
                inner.clone()
            }
            (DbRule::ShiftLift, DBSub::Lift(s1), DBTerm::Comp(t, inner)) if **t == DBSub::Shift => {
                DBTerm::Comp(t.clone(), DBTerm::Comp(s1.clone(), inner.clone()).into())
            }
            _ => return None,
        },
        _ => return None,
    })
}

/// Contract `rule` at `path`; `None` if it does not match there.
pub fn db_apply(a: &DBTerm, path: &[usize], rule: DbRule) -> Option<DBTerm> {
    let sub = db_term_at(a, path)?;
    db_replace_at(a, path, contract(sub, rule)?)
}

/// Leftmost-outermost rewriting with a step bound. Returns the last term, the
/// rules applied and whether the bound was hit.
pub fn db_normalize(a: &DBTerm, system: System, fuel: usize) -> (DBTerm, Vec<DbRule>, bool) {
    let mut cur = a.clone();
    let mut rules = Vec::new();
    for _ in 0..fuel {
        let Some(r) = db_find_redexes(&cur, system).into_iter().next() else {
            return (cur, rules, false);
        };
        cur = db_apply(&cur, &r.path, r.rule).expect("found redexes contract");
        rules.push(r.rule);
    }
    let exhausted = !db_find_redexes(&cur, system).is_empty();
    (cur, rules, exhausted)
}

/// The normal form for substitution propagation, which always terminates.
pub fn db_normalize_upsilon(a: &DBTerm) -> DBTerm {
    let mut cur = a.clone();
    while let Some(r) = db_find_redexes(&cur, System::Upsilon).into_iter().next() {
        cur = db_apply(&cur, &r.path, r.rule).expect("found redexes contract");
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    fn z() -> DBTerm {
        DBTerm::name(var("z"))
    }

    #[test]
    fn redexes() {
        let a = DBTerm::comp(DBSub::slash(z()), DBTerm::One);
        assert_eq!(
            db_find_redexes(&a, System::Upsilon),
            [DbRedex { path: vec![], rule: DbRule::Var }]
        );
        let b = DBTerm::app(
            DBTerm::lam(DBTerm::lam(DBTerm::comp(DBSub::Shift, DBTerm::One))),
            z(),
        );
        assert_eq!(db_find_redexes(&b, System::LambdaUpsilon)[0].rule, DbRule::Beta);
        assert!(db_find_redexes(&b, System::Upsilon).is_empty());
        let rs: Vec<DbRule> = db_find_redexes(&DBTerm::bold_lam(DBTerm::One), System::Upsilon2)
            .into_iter()
            .map(|r| r.rule)
            .collect();
        assert_eq!(rs, [DbRule::Alpha, DbRule::Xi]);
    }

    #[test]
    fn normal_forms() {
        // λ(1[↑][⇑(z/)]) → λ(1[z/][↑]) → λ(z[↑])
        let a = DBTerm::lam(DBTerm::comp(
            DBSub::lift(DBSub::slash(z())),
            DBTerm::comp(DBSub::Shift, DBTerm::One),
        ));
        let (nf, rules, _) = db_normalize(&a, System::Upsilon, 10);
        assert_eq!(nf, DBTerm::lam(DBTerm::comp(DBSub::Shift, z())));
        assert_eq!(rules, [DbRule::ShiftLift, DbRule::Var]);
        assert_eq!(db_normalize_upsilon(&DBTerm::comp(DBSub::Id, DBTerm::One)), DBTerm::One);
        // λ(1[↑])[id] is derivable at 1 and joins λ(1[↑])
        let a = DBTerm::lam(DBTerm::comp(DBSub::Shift, DBTerm::One));
        assert_eq!(db_normalize_upsilon(&DBTerm::comp(DBSub::Id, a.clone())), a);
        // λ(x[↑])[id] is not derivable anywhere and gets stuck at x[id]
        let x = DBTerm::lam(DBTerm::comp(DBSub::Shift, DBTerm::name(var("x"))));
        let stuck = db_normalize_upsilon(&DBTerm::comp(DBSub::Id, x.clone()));
        assert_eq!(stuck.to_string(), "λ(x[id][↑])");
    }

    #[test]
    fn beta_chain() {
        // (λλ(1[↑])) z →* λ(z[↑])
        let a = DBTerm::app(
            DBTerm::lam(DBTerm::lam(DBTerm::comp(DBSub::Shift, DBTerm::One))),
            z(),
        );
        let (nf, rules, exhausted) = db_normalize(&a, System::LambdaUpsilon, 10);
        assert!(!exhausted);
        assert_eq!(nf, DBTerm::lam(DBTerm::comp(DBSub::Shift, z())));
        assert_eq!(rules, [DbRule::Beta, DbRule::Lambda, DbRule::ShiftLift, DbRule::Var]);
    }
}
