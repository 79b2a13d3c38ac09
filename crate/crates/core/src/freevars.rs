//! Free variables as a context.
//!
//! `fv` follows the defining equations literally: the cases for `[B/x]`,
//! `{y x}` and `S^x` rebuild a term with fewer such substitutions and recurse.
//! `fv_compositional` computes the same thing bottom-up by treating each
//! substitution as a function on the context of its body, which is what the
//! rewrite engine uses when it needs the free variables of every subterm.

use crate::context::Context;
use crate::syntax::{Subst, Term};

/// The least context in which `term` may be derivable, or `None` when no such
/// context exists.
pub fn fv(term: &Term) -> Option<Context> {
    match term {
        Term::Var(x) => Some(Context::set([x.clone()])),
        Term::App(f, a) => fv(f)?.sup(&fv(a)?),
        Term::Lam(x, b) => fv(b)?.o_lambda(x),
        Term::Comp(s, a) => match &**s {
            Subst::Weak(x) => Some(fv(a)?.push(x.clone())),
            // FV([B/x] * A) = FV((\x. A) B)
            Subst::Slash(b, x) => fv(&Term::App(
                Term::Lam(x.clone(), a.clone()).into(),
                b.clone(),
            )),
            // FV({y x} * A) = FV(W y * \x. A)
            Subst::Rename(y, x) => fv(&Term::comp(
                Subst::weak(y.clone()),
                Term::Lam(x.clone(), a.clone()),
            )),
            // FV(S^x * A) = FV(W x * S * \x. A)
            Subst::Lift(inner, x) => fv(&Term::comp(
                Subst::weak(x.clone()),
                Term::Comp(inner.clone(), Term::Lam(x.clone(), a.clone()).into()),
            )),
        },
    }
}

/// Same result as [`fv`], computed in one bottom-up pass.
pub fn fv_compositional(term: &Term) -> Option<Context> {
    match term {
        Term::Var(x) => Some(Context::set([x.clone()])),
        Term::App(f, a) => fv_compositional(f)?.sup(&fv_compositional(a)?),
        Term::Lam(x, b) => fv_compositional(b)?.o_lambda(x),
        Term::Comp(s, a) => subst_action(s, fv_compositional(a)?),
    }
}

/// Free variables of `S * A` from those of `A`.
pub(crate) fn subst_action(s: &Subst, body: Context) -> Option<Context> {
    match s {
        Subst::Weak(x) => Some(body.push(x.clone())),
        Subst::Slash(b, x) => body.o_lambda(x)?.sup(&fv_compositional(b)?),
        Subst::Rename(y, x) => Some(body.o_lambda(x)?.push(y.clone())),
        Subst::Lift(inner, x) => Some(subst_action(inner, body.o_lambda(x)?)?.push(x.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::arb::arb_term;
    use crate::syntax::parse_term;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn fv_of(s: &str) -> Option<Context> {
        fv(&parse_term(s).unwrap())
    }

    fn c(s: &str) -> Context {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(fv_of("\\x. x y"), Some(c("{y}")));
        assert_eq!(fv_of("\\x. W x * x"), Some(c("{x}")));
        assert_eq!(fv_of("\\y. W y * y"), Some(c("{y}")));
        assert_eq!(fv_of("\\x. W y * z"), None);
        assert_eq!(fv_of("W z * z"), Some(c("{z}; z")));
        assert_eq!(fv_of("[y/x]^y * x"), Some(c("{y}; y")));
    }

    fn classical(t: &Term) -> BTreeSet<crate::Var> {
        match t {
            Term::Var(x) => BTreeSet::from([x.clone()]),
            Term::App(f, a) => &classical(f) | &classical(a),
            Term::Lam(x, b) => {
                let mut s = classical(b);
                s.remove(x);
                s
            }
            Term::Comp(..) => unreachable!(),
        }
    }

    proptest! {
        #[test]
        fn both_routes_agree(t in arb_term(4)) {
            prop_assert_eq!(fv(&t), fv_compositional(&t));
        }

        #[test]
        fn pure_terms_have_set_free_variables(t in arb_term(4).prop_filter("pure", |t| t.is_pure())) {
            let ctx = fv(&t).unwrap();
            prop_assert!(ctx.is_set());
            prop_assert_eq!(ctx.global(), &classical(&t));
        }

        #[test]
        fn sup_distributes_under_substitution(
            s in crate::syntax::arb::arb_subst(3),
            a in arb_term(3),
            b in arb_term(3),
        ) {
            let whole = Term::comp(s.clone(), Term::app(a.clone(), b.clone()));
            if let Some(lhs) = fv(&whole) {
                let left = fv(&Term::comp(s.clone(), a)).unwrap();
                let right = fv(&Term::comp(s, b)).unwrap();
                prop_assert_eq!(Some(lhs), left.sup(&right));
            }
        }
    }
}
