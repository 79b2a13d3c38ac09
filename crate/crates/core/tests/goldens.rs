//! Worked reduction chains, translations and labels, checked step by step.
//!
//! A chain is a list of (rule, term) lines. A named line must be the result of
//! contracting some redex of that rule in the previous term; a `*` line must be
//! reachable by propagation steps within a small bound.

use std::collections::{HashSet, VecDeque};

use lamalpha::debruijn::{
    equiv_alpha, equiv_gamma, label, translate_term, weight, DBSub, DBTerm, Flavor, LSub, LTerm,
};
use lamalpha::rewrite::{apply_rule, find_redexes, normalize, RuleId, RuleSet, Strategy};
use lamalpha::syntax::replace_term_at;
use lamalpha::{derive, parse_term, var, Context, Path, Term};

fn t(s: &str) -> Term {
    parse_term(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn c(s: &str) -> Context {
    s.parse().unwrap()
}

fn one_step(from: &Term, rule: RuleId) -> Vec<Term> {
    find_redexes(from, RuleSet::FULL)
        .into_iter()
        .filter(|r| r.rule == rule)
        .map(|r| apply_rule(from, &r.path, r.rule).unwrap().0)
        .collect()
}

fn reachable(from: &Term, to: &Term, bound: usize) -> bool {
    let mut seen = HashSet::from([from.clone()]);
    let mut queue = VecDeque::from([(from.clone(), 0)]);
    while let Some((cur, d)) = queue.pop_front() {
        if cur == *to {
            return true;
        }
        if d < bound {
            for r in find_redexes(&cur, RuleSet::SIGMA) {
                let next = apply_rule(&cur, &r.path, r.rule).unwrap().0;
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
    }
    false
}

/// Replay `chain` from `start`, checking every line is derivable in `ctx`.
/// Returns the last term.
fn replay(ctx: &Context, start: &str, chain: &[(&str, &str)]) -> Term {
    let mut cur = t(start);
    derive(ctx, &cur).unwrap();
    for (rule, next) in chain {
        let next = t(next);
        if *rule == "*" {
            assert!(reachable(&cur, &next, 16), "{cur} does not reach {next}");
        } else {
            let rule: RuleId = rule.parse().unwrap();
            let options = one_step(&cur, rule);
            assert!(options.contains(&next), "{rule} on {cur} gives {options:?}, not {next}");
        }
        derive(ctx, &next).unwrap_or_else(|e| panic!("{next}: {e}"));
        cur = next;
    }
    cur
}

fn lo_full(s: &str) -> (Term, Vec<RuleId>) {
    let (nf, trace, exhausted) = normalize(&t(s), RuleSet::FULL, Strategy::LeftmostOutermost, 1000);
    assert!(!exhausted);
    (nf, trace.rules())
}

#[test]
fn identity_applied() {
    replay(&c("{y}"), "(\\x.x) y", &[("Beta", "[y/x] * x"), ("Var", "y")]);
    assert_eq!(lo_full("(\\x.x) y").0, t("y"));
}

#[test]
fn constant_applied_to_a_fresh_name() {
    replay(
        &c("{z}"),
        "(\\x.\\y.x) z",
        &[
            ("Beta", "[z/x] * \\y.x"),
            ("Lambda", "\\y. [z/x]^y * x"),
            ("LiftShift'", "\\y. W y * [z/x] * x"),
            ("Var", "\\y. W y * z"),
            ("W", "\\y. z"),
        ],
    );
    use RuleId::*;
    assert_eq!(lo_full("(\\x.\\y.x) z"), (t("\\y. z"), vec![Beta, Lambda, LiftShiftP, Var, W]));
}

#[test]
fn constant_applied_to_a_captured_name() {
    replay(
        &c("{y}"),
        "(\\x.\\y.x) y",
        &[
            ("Beta", "[y/x] * \\y.x"),
            ("Lambda", "\\y. [y/x]^y * x"),
            ("LiftShift'", "\\y. W y * [y/x] * x"),
            ("Var", "\\y. W y * y"),
            ("Alpha", "\\z. {z y} * W y * y"),
            ("IdShift", "\\z. W z * y"),
            ("W", "\\z. y"),
        ],
    );
    // leftmost-outermost renames before propagating into the body
    let (nf, rules) = lo_full("(\\x.\\y.x) y");
    assert_eq!(nf, t("\\z. y"));
    assert_eq!(rules.len(), 7);
    assert_eq!(rules.iter().filter(|r| **r == RuleId::Alpha).count(), 1);
}

const K: &str = "\\x.\\y.x";

fn with_k(s: &str) -> String {
    s.replace("K", K)
}

fn first_projection_under_lifts() -> Vec<(&'static str, String)> {
    vec![
        ("App", with_k("([K/x]^y^z * x) ([K/x]^y^z * z)")),
        ("LiftVar", with_k("([K/x]^y^z * x) z")),
        ("LiftShift'", with_k("(W z * [K/x]^y * x) z")),
        ("LiftShift'", with_k("(W z * W y * [K/x] * x) z")),
        ("Var", with_k("(W z * W y * (K)) z")),
        ("*", with_k("(K) z")),
        ("Beta", "[z/x] * \\y. x".into()),
        ("Lambda", "\\y. [z/x]^y * x".into()),
        ("LiftShift'", "\\y. W y * [z/x] * x".into()),
        ("Var", "\\y. W y * z".into()),
        ("W", "\\y. z".into()),
    ]
}

fn second_projection_under_lifts() -> Vec<(&'static str, String)> {
    vec![
        ("App", with_k("([K/x]^y^z * y) ([K/x]^y^z * z)")),
        ("LiftVar", with_k("([K/x]^y^z * y) z")),
        ("LiftShift'", with_k("(W z * [K/x]^y * y) z")),
        ("LiftVar", "(W z * y) z".into()),
        ("W", "y z".into()),
    ]
}

fn borrowed<'a>(chain: &'a [(&'static str, String)]) -> Vec<(&'static str, &'a str)> {
    chain.iter().map(|(r, s)| (*r, s.as_str())).collect()
}

#[test]
fn substitution_under_two_lifts() {
    let ctx = c("{}; y, z");
    let end = replay(&ctx, &with_k("[K/x]^y^z * x z"), &borrowed(&first_projection_under_lifts()));
    assert_eq!(end, t("\\y. z"));
    // leftmost-outermost reaches the same term up to the choice of binder
    let (nf, rules) = lo_full(&with_k("[K/x]^y^z * x z"));
    assert!(rules.contains(&RuleId::Alpha));
    assert!(equiv_gamma(&nf, &t("\\y. z"), &ctx));

    let end = replay(&ctx, &with_k("[K/x]^y^z * y z"), &borrowed(&second_projection_under_lifts()));
    assert_eq!(end, t("y z"));
    assert_eq!(lo_full(&with_k("[K/x]^y^z * y z")).0, t("y z"));
}

#[test]
fn s_applied_to_k() {
    let sk = with_k("(\\x.\\y.\\z. x z (y z)) (K)");
    let ctx = Context::empty();
    let before = replay(
        &ctx,
        &sk,
        &[
            ("Beta", &with_k("[K/x] * \\y.\\z. x z (y z)")),
            ("Lambda", &with_k("\\y. [K/x]^y * \\z. x z (y z)")),
            ("Lambda", &with_k("\\y.\\z. [K/x]^y^z * x z (y z)")),
            ("App", &with_k("\\y.\\z. ([K/x]^y^z * x z) ([K/x]^y^z * y z)")),
        ],
    );
    // the two arguments reduce as in the standalone chains above
    let left = Path::from_indices(&before, &[0, 0, 0]).unwrap();
    let mid = replace_term_at(&before, &left, t("\\y. z")).unwrap();
    assert_eq!(mid, t(&with_k("\\y.\\z. (\\y. z) ([K/x]^y^z * y z)")));
    let right = Path::from_indices(&mid, &[0, 0, 1]).unwrap();
    let after = replace_term_at(&mid, &right, t("y z")).unwrap();
    let end = replay(
        &ctx,
        &after.to_string(),
        &[("Beta", "\\y.\\z. [y z/y] * z"), ("Shift'", "\\y.\\z. z")],
    );
    assert_eq!(end, t("\\y.\\z. z"));
    assert_eq!(lo_full(&sk).0, t("\\y.\\z. z"));
}

#[test]
fn translations() {
    let x = || DBTerm::name(var("x"));
    let a = t("\\x. W x * x");
    assert_eq!(
        translate_term(&c("{x}"), &a, Flavor::Upsilon).unwrap(),
        DBTerm::lam(DBTerm::comp(DBSub::Shift, x()))
    );
    assert_eq!(
        translate_term(&c("{x}"), &a, Flavor::Upsilon2).unwrap(),
        DBTerm::bold_lam(DBTerm::comp(DBSub::Shift, x()))
    );
    assert_eq!(
        translate_term(&Context::empty(), &t("\\y. {y x} * x"), Flavor::Upsilon).unwrap(),
        DBTerm::lam(DBTerm::comp(DBSub::Id, DBTerm::One))
    );
}

#[test]
fn equivalences() {
    assert!(equiv_gamma(&t("W y * x"), &t("x"), &c("{x}; y")));
    assert!(equiv_gamma(&t("\\x. W x * x"), &t("\\y. x"), &c("{x}")));
    assert!(!equiv_gamma(&t("\\x. W x * x"), &t("\\x. x"), &c("{x}")));
    assert_eq!(equiv_alpha(&t("\\x. W x * x"), &t("\\y. x")), Ok(true));
    assert_eq!(equiv_alpha(&t("\\x. W x * x"), &t("\\x. x")), Ok(false));
}

#[test]
fn labels() {
    // Λ(W∘x): the composition weighs 0, the marked abstraction 1
    let a = translate_term(&c("{x}"), &t("\\x. W x * x"), Flavor::Upsilon2).unwrap();
    assert_eq!(weight(&a), 1);
    assert_eq!(
        label(&a),
        LTerm::BoldLam(1, Box::new(LTerm::Comp(0, LSub::W, Box::new(LTerm::Name(var("x"))))))
    );
    let b = DBTerm::comp(
        DBSub::slash(DBTerm::comp(DBSub::Shift, DBTerm::name(var("x")))),
        DBTerm::comp(DBSub::Shift, DBTerm::comp(DBSub::Shift, DBTerm::name(var("y")))),
    );
    let mut labels = Vec::new();
    label(&b).for_each_label(&mut |i| labels.push(i));
    assert_eq!(labels.len(), 4);
    assert!(labels.iter().all(|i| *i == 0));
}
