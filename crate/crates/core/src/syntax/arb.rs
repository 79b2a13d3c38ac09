//! Proptest strategies for raw, not necessarily well-formed, terms.

use proptest::prelude::*;

use super::{var, Subst, Term, Var};

pub(crate) fn arb_var() -> impl Strategy<Value = Var> {
    prop::sample::select(vec!["x", "y", "z"]).prop_map(var)
}

pub(crate) fn arb_term(depth: u32) -> BoxedStrategy<Term> {
    let leaf = arb_var().prop_map(Term::var).boxed();
    leaf.prop_recursive(depth, 48, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, a)| Term::app(f, a)),
            (arb_var(), inner.clone()).prop_map(|(x, b)| Term::lam(x, b)),
            (subst_over(inner.clone()), inner).prop_map(|(s, b)| Term::comp(s, b)),
        ]
    })
    .boxed()
}

fn subst_over(term: BoxedStrategy<Term>) -> BoxedStrategy<Subst> {
    let base = prop_oneof![
        (term, arb_var()).prop_map(|(b, x)| Subst::slash(b, x)),
        arb_var().prop_map(Subst::weak),
        (arb_var(), arb_var()).prop_map(|(y, x)| Subst::rename(y, x)),
    ];
    (base, prop::collection::vec(arb_var(), 0..3))
        .prop_map(|(s, lifts)| lifts.into_iter().fold(s, Subst::lift))
        .boxed()
}

pub(crate) fn arb_subst(depth: u32) -> BoxedStrategy<Subst> {
    subst_over(arb_term(depth))
}
