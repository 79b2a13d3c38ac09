//! From derivations of named terms to de Bruijn terms.
//!
//! The translation follows the derivation rule by rule: a variable found at
//! the end of the local list becomes the index `1`, stepping over a local name
//! becomes `[↑]`, global variables stay names, and each substitution former
//! maps to its nameless counterpart (a renaming becomes `id`).

use crate::context::Context;
use crate::freevars::fv_compositional;
use crate::syntax::{Term, Var};
use crate::typing::{derive, well_formed, Derivation, Judgement, Rule, TypeError};

use super::{DBSub, DBTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Every abstraction becomes `λ`.
    Upsilon,
    /// An abstraction `\x. A` with `x` free in `\x. A` becomes `Λ`.
    Upsilon2,
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Flavor, String> {
        match s {
            "upsilon" => Ok(Flavor::Upsilon),
            "upsilon2" => Ok(Flavor::Upsilon2),
            _ => Err(format!("unknown calculus {s:?}, expected upsilon or upsilon2")),
        }
    }
}

/// Translate a term judgement. Substitution judgements are reached through
/// their compositions.
pub fn translate(d: &Derivation, flavor: Flavor) -> DBTerm {
    let Judgement::Term { term, .. } = &d.conclusion else {
        panic!("translate expects a term judgement");
    };
    let p = |i: usize| &d.premises[i];
    match d.rule {
        Rule::R1 => {
            let Term::Var(x) = term else { unreachable!() };
            DBTerm::name(x.clone())
        }
        Rule::R2 => DBTerm::One,
        Rule::R3 => DBTerm::comp(DBSub::Shift, translate(p(0), flavor)),
        Rule::R4 => DBTerm::app(translate(p(0), flavor), translate(p(1), flavor)),
        Rule::R5 => {
            let body = translate(p(0), flavor);
            let Term::Lam(x, _) = term else { unreachable!() };
            if flavor == Flavor::Upsilon2 && binder_is_free(term, x) {
                DBTerm::bold_lam(body)
            } else {
                DBTerm::lam(body)
            }
        }
        Rule::R6 => DBTerm::comp(translate_sub(p(0), flavor), translate(p(1), flavor)),
        _ => unreachable!("substitution rule in a term judgement"),
    }
}

fn binder_is_free(lam: &Term, x: &Var) -> bool {
    fv_compositional(lam).is_some_and(|c| c.member(x))
}

fn translate_sub(d: &Derivation, flavor: Flavor) -> DBSub {
    match d.rule {
        Rule::R7 => DBSub::slash(translate(&d.premises[0], flavor)),
        Rule::R8 => DBSub::Shift,
        Rule::R9 => DBSub::Id,
        Rule::R10 => DBSub::lift(translate_sub(&d.premises[0], flavor)),
        _ => unreachable!("term rule in a substitution judgement"),
    }
}

/// Derive `ctx ⊢ term` and translate the derivation.
pub fn translate_term(ctx: &Context, term: &Term, flavor: Flavor) -> Result<DBTerm, TypeError> {
    Ok(translate(&derive(ctx, term)?, flavor))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivError {
    #[error("left term: {0}")]
    Left(TypeError),
    #[error("right term: {0}")]
    Right(TypeError),
    #[error("{0} is not good")]
    NotGood(Term),
}

/// `A ≡Γ B` with the reason when either side is not derivable in `ctx`.
pub fn equiv_gamma_explain(a: &Term, b: &Term, ctx: &Context) -> Result<bool, EquivError> {
    let ta = translate_term(ctx, a, Flavor::Upsilon).map_err(EquivError::Left)?;
    let tb = translate_term(ctx, b, Flavor::Upsilon).map_err(EquivError::Right)?;
    Ok(ta == tb)
}

/// Both terms are derivable in `ctx` and translate to the same term.
pub fn equiv_gamma(a: &Term, b: &Term, ctx: &Context) -> bool {
    equiv_gamma_explain(a, b, ctx).unwrap_or(false)
}

/// Equivalence of good terms in the union of their free variables.
pub fn equiv_alpha(a: &Term, b: &Term) -> Result<bool, EquivError> {
    let good = |t: &Term| match well_formed(t) {
        Ok(c) if c.is_set() => Ok(c),
        _ => Err(EquivError::NotGood(t.clone())),
    };
    let (fa, fb) = (good(a)?, good(b)?);
    let ctx = Context::set(fa.global().iter().chain(fb.global()).cloned());
    equiv_gamma_explain(a, b, &ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::debruijn::{db_check, print_db, Notation};
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn c(s: &str) -> Context {
        s.parse().unwrap()
    }

    fn tr(ctx: &str, term: &str, flavor: Flavor) -> String {
        print_db(&translate_term(&c(ctx), &t(term), flavor).unwrap(), Notation::Bracket)
    }

    #[test]
    fn examples() {
        assert_eq!(tr("{x}", "\\x. W x * x", Flavor::Upsilon), "λ(x[↑])");
        assert_eq!(tr("{}", "\\y. {y x} * x", Flavor::Upsilon), "λ(1[id])");
        assert_eq!(tr("{x}", "\\x. W x * x", Flavor::Upsilon2), "Λ(x[↑])");
        assert_eq!(tr("{x,y}", "\\x. [W x * x/x] * y", Flavor::Upsilon2), "Λ(y[↑][↑][x[↑]/])");
    }

    #[test]
    fn output_is_well_formed_at_local_length() {
        let d = translate_term(&c("{a}; x,y"), &t("\\z. W z * x"), Flavor::Upsilon).unwrap();
        assert!(db_check(2, &d));
    }

    #[test]
    fn equivalences() {
        assert!(equiv_gamma(&t("W y * x"), &t("x"), &c("{x}; y")));
        assert!(equiv_gamma(&t("\\x. W x * x"), &t("\\y. x"), &c("{x}")));
        assert!(!equiv_gamma(&t("\\x. W x * x"), &t("\\x. x"), &c("{x}")));
        assert_eq!(equiv_alpha(&t("\\x. W x * x"), &t("\\y. x")), Ok(true));
        assert_eq!(equiv_alpha(&t("\\x. W x * x"), &t("\\x. x")), Ok(false));
        assert!(matches!(equiv_alpha(&t("W x * a"), &t("a")), Err(EquivError::NotGood(_))));
        assert!(matches!(
            equiv_gamma_explain(&t("x"), &t("q"), &c("{x}")),
            Err(EquivError::Right(_))
        ));
    }
}
