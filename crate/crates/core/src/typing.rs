//! The judgements `Γ ⊢ A` and `Γ ⊢ S ▷ Δ`.
//!
//! Every judgement has at most one derivation and the rule to use is decided
//! by the shape of the term and, for variables, by the last local name, so the
//! checker never backtracks.

use std::fmt;

use crate::context::Context;
use crate::freevars::fv;
use crate::syntax::{Child, Path, Subst, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `G ⊢ x` for `x ∈ G`
    R1,
    /// `Γ,x ⊢ x`
    R2,
    /// `Γ ⊢ x` gives `Γ,y ⊢ x` for `x ≠ y`
    R3,
    /// application
    R4,
    /// abstraction
    R5,
    /// composition
    R6,
    /// `[B/x]`
    R7,
    /// `W x`
    R8,
    /// `{y x}`
    R9,
    /// `S^x`
    R10,
}

impl Rule {
    pub const ALL: [Rule; 10] = [
        Rule::R1,
        Rule::R2,
        Rule::R3,
        Rule::R4,
        Rule::R5,
        Rule::R6,
        Rule::R7,
        Rule::R8,
        Rule::R9,
        Rule::R10,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.index() + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Judgement {
    Term { ctx: Context, term: Term },
    Subst { ctx: Context, subst: Subst, out: Context },
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgement::Term { ctx, term } => write!(f, "{ctx} ⊢ {term}"),
            Judgement::Subst { ctx, subst, out } => write!(f, "{ctx} ⊢ {subst} ▷ {out}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgement,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    /// The output context of a substitution judgement.
    pub fn output(&self) -> Option<&Context> {
        match &self.conclusion {
            Judgement::Subst { out, .. } => Some(out),
            Judgement::Term { .. } => None,
        }
    }

    pub fn context(&self) -> &Context {
        match &self.conclusion {
            Judgement::Term { ctx, .. } | Judgement::Subst { ctx, .. } => ctx,
        }
    }

    /// Visit every node, premises before conclusions.
    pub fn for_each(&self, f: &mut impl FnMut(&Derivation)) {
        for p in &self.premises {
            p.for_each(f);
        }
        f(self);
    }

    /// Indented tree, conclusion first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("{}  {}\n", self.conclusion, self.rule));
        for p in &self.premises {
            p.render_into(depth + 1, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("not derivable at {path}: {reason}")]
    NotDerivable { path: Path, reason: String },
    #[error("ill-formed: free variables are undefined")]
    NoFreeVariables,
    #[error("ill-formed in {ctx}: {source}")]
    IllFormed {
        ctx: Context,
        #[source]
        source: Box<TypeError>,
    },
}

fn fail<T>(path: &Path, reason: String) -> Result<T, TypeError> {
    Err(TypeError::NotDerivable {
        path: path.clone(),
        reason,
    })
}

/// The unique derivation of `ctx ⊢ term`.
pub fn derive(ctx: &Context, term: &Term) -> Result<Derivation, TypeError> {
    derive_at(ctx, term, &Path::root())
}

/// The unique derivation of `ctx ⊢ subst ▷ Δ`; `Δ` is the derivation's
/// output context.
pub fn derive_subst(ctx: &Context, subst: &Subst) -> Result<Derivation, TypeError> {
    derive_subst_at(ctx, subst, &Path::root())
}

fn derive_var(ctx: &Context, x: &Var, path: &Path) -> Result<Derivation, TypeError> {
    let conclusion = Judgement::Term {
        ctx: ctx.clone(),
        term: Term::Var(x.clone()),
    };
    match ctx.last() {
        None if ctx.global().contains(x) => Ok(Derivation {
            rule: Rule::R1,
            conclusion,
            premises: Vec::new(),
        }),
        None => fail(path, format!("{x} is not in the context")),
        Some(y) if y == x => Ok(Derivation {
            rule: Rule::R2,
            conclusion,
            premises: Vec::new(),
        }),
        Some(_) => {
            let (prefix, _) = ctx.clone().pop().expect("local part is nonempty");
            let premise = derive_var(&prefix, x, path)?;
            Ok(Derivation {
                rule: Rule::R3,
                conclusion,
                premises: vec![premise],
            })
        }
    }
}

fn derive_at(ctx: &Context, term: &Term, path: &Path) -> Result<Derivation, TypeError> {
    match term {
        Term::Var(x) => derive_var(ctx, x, path),
        Term::App(f, a) => {
            let df = derive_at(ctx, f, &path.child(Child::AppLeft))?;
            let da = derive_at(ctx, a, &path.child(Child::AppRight))?;
            Ok(Derivation {
                rule: Rule::R4,
                conclusion: Judgement::Term {
                    ctx: ctx.clone(),
                    term: term.clone(),
                },
                premises: vec![df, da],
            })
        }
        Term::Lam(x, b) => {
            let inner = ctx.clone().push(x.clone());
            let db = derive_at(&inner, b, &path.child(Child::LamBody))?;
            Ok(Derivation {
                rule: Rule::R5,
                conclusion: Judgement::Term {
                    ctx: ctx.clone(),
                    term: term.clone(),
                },
                premises: vec![db],
            })
        }
        Term::Comp(s, b) => {
            let ds = derive_subst_at(ctx, s, &path.child(Child::CompSubst))?;
            let out = ds.output().expect("substitution judgement").clone();
            let db = derive_at(&out, b, &path.child(Child::CompBody))?;
            Ok(Derivation {
                rule: Rule::R6,
                conclusion: Judgement::Term {
                    ctx: ctx.clone(),
                    term: term.clone(),
                },
                premises: vec![ds, db],
            })
        }
    }
}

fn derive_subst_at(ctx: &Context, subst: &Subst, path: &Path) -> Result<Derivation, TypeError> {
    let node = |rule, out: Context, premises| Derivation {
        rule,
        conclusion: Judgement::Subst {
            ctx: ctx.clone(),
            subst: subst.clone(),
            out,
        },
        premises,
    };
    match subst {
        Subst::Slash(b, x) => {
            let db = derive_at(ctx, b, &path.child(Child::SlashBody))?;
            Ok(node(Rule::R7, ctx.clone().push(x.clone()), vec![db]))
        }
        Subst::Weak(x) => match ctx.clone().pop() {
            Some((prefix, y)) if y == *x => Ok(node(Rule::R8, prefix, Vec::new())),
            _ => fail(path, format!("W {x} needs a context ending in {x}")),
        },
        Subst::Rename(y, x) => match ctx.clone().pop() {
            Some((prefix, last)) if last == *y => {
                Ok(node(Rule::R9, prefix.push(x.clone()), Vec::new()))
            }
            _ => fail(path, format!("{{{y} {x}}} needs a context ending in {y}")),
        },
        Subst::Lift(inner, x) => match ctx.clone().pop() {
            Some((prefix, last)) if last == *x => {
                let di = derive_subst_at(&prefix, inner, &path.child(Child::LiftInner))?;
                let out = di.output().expect("substitution judgement").clone();
                Ok(node(Rule::R10, out.push(x.clone()), vec![di]))
            }
            _ => fail(path, format!("lift by {x} needs a context ending in {x}")),
        },
    }
}

/// The least context of a well-formed term.
pub fn well_formed(term: &Term) -> Result<Context, TypeError> {
    let ctx = fv(term).ok_or(TypeError::NoFreeVariables)?;
    match derive(&ctx, term) {
        Ok(_) => Ok(ctx),
        Err(e) => Err(TypeError::IllFormed {
            ctx,
            source: Box::new(e),
        }),
    }
}

/// Derivable in some context with an empty local part.
pub fn is_good(term: &Term) -> bool {
    well_formed(term).is_ok_and(|c| c.is_set())
}
