//! The trial bodies behind each [`Suite`].

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::context::Context;
use crate::debruijn::{
    db_apply, db_check, db_find_redexes, db_normalize, label, lpo_gt, translate_term, weights12, DBSub, DBTerm,
    DbRule, Flavor, System,
};
use crate::freevars::fv;
use crate::normalforms::{is_sigma_nf, to_pure, PureTerm};
use crate::rewrite::{apply_rule, find_redexes, normalize, Redex, RuleId, RuleSet, Strategy};
use crate::syntax::{Subst, Term, Var};
use crate::typing::derive;

use super::gen::{gen_context, gen_subst_in, gen_term_in, gen_wellformed_with};
use super::oracle::classical_normalize;
use super::typed::gen_typed;
use super::{Failure, Outcome, Suite, SuiteConfig};

type Trial = fn(&mut ChaCha8Rng, &SuiteConfig) -> Outcome;

pub(super) fn trial_fn(suite: Suite) -> Trial {
    match suite {
        Suite::SubjectReduction => subject_reduction,
        Suite::FvMonotone => fv_monotone,
        Suite::FvLeast => fv_least,
        Suite::SigmaAlphaTermination => sigma_alpha_termination,
        Suite::Confluence => confluence,
        Suite::TranslationSimulation => translation_simulation,
        Suite::UpsilonWeights => upsilon_weights,
        Suite::LpoDecrease => lpo_decrease,
        Suite::JoinLemmas => join_lemmas,
        Suite::NfGrammar => nf_grammar,
        Suite::OracleEquivalence => oracle_equivalence,
        Suite::UpsilonLocalConfluence => upsilon_local_confluence,
    }
}

fn fail(checks: u64, ctx: &Context, term: &impl ToString, detail: String, trace: Vec<String>) -> Outcome {
    Outcome::Fail {
        checks,
        failure: Failure {
            trial: 0,
            context: ctx.to_string(),
            term: term.to_string(),
            detail,
            trace,
        },
    }
}

fn reducts(t: &Term, rules: RuleSet) -> Vec<(Redex, Term)> {
    find_redexes(t, rules)
        .into_iter()
        .map(|r| {
            let (b, _) = apply_rule(t, &r.path, r.rule).expect("found redexes contract");
            (r, b)
        })
        .collect()
}

fn db_reducts(a: &DBTerm, system: System) -> Vec<(DbRule, DBTerm)> {
    db_find_redexes(a, system)
        .into_iter()
        .map(|r| (r.rule, db_apply(a, &r.path, r.rule).expect("found redexes contract")))
        .collect()
}

/// Take up to `steps` steps, each at a uniformly chosen redex.
fn random_walk(rng: &mut ChaCha8Rng, t: &Term, rules: RuleSet, steps: usize) -> Vec<Term> {
    let mut path = vec![t.clone()];
    for _ in 0..steps {
        let cur = path.last().expect("nonempty");
        let rs = find_redexes(cur, rules);
        let Some(r) = rs.choose(rng) else { break };
        let (next, _) = apply_rule(cur, &r.path, r.rule).expect("found redexes contract");
        path.push(next);
    }
    path
}

fn translated(ctx: &Context, t: &Term, flavor: Flavor) -> DBTerm {
    translate_term(ctx, t, flavor).expect("generated terms are derivable")
}

fn last_terms(terms: &[Term], n: usize) -> Vec<String> {
    terms[terms.len().saturating_sub(n)..].iter().map(Term::to_string).collect()
}

fn subject_reduction(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_wellformed_with(rng, &cfg.gen);
    let mut checks = 0;
    for (r, b) in reducts(&a, RuleSet::FULL) {
        checks += 1;
        if let Err(e) = derive(&ctx, &b) {
            let detail = format!("{} at {} gives an underivable term: {e}", r.rule, r.path);
            return fail(checks, &ctx, &a, detail, vec![b.to_string()]);
        }
    }
    let n = ctx.local().len();
    for (flavor, system) in [
        (Flavor::Upsilon, System::LambdaUpsilon),
        (Flavor::Upsilon2, System::Upsilon2),
    ] {
        let da = translated(&ctx, &a, flavor);
        for (rule, db) in db_reducts(&da, system) {
            checks += 1;
            if !db_check(n, &db) {
                let detail = format!("de Bruijn {rule} on {da} gives {db}, not derivable at {n}");
                return fail(checks, &ctx, &a, detail, vec![db.to_string()]);
            }
        }
    }
    Outcome::Pass { checks }
}

fn fv_monotone(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_wellformed_with(rng, &cfg.gen);
    let Some(fa) = fv(&a) else {
        return fail(0, &ctx, &a, "free variables undefined".into(), Vec::new());
    };
    let mut checks = 0;
    for (r, b) in reducts(&a, RuleSet::FULL) {
        checks += 1;
        match fv(&b) {
            Some(fb) if fb.le(&fa) => {}
            other => {
                let shown = other.map_or("undefined".to_string(), |c| c.to_string());
                let detail = format!("{} at {}: free variables {shown} not below {fa}", r.rule, r.path);
                return fail(checks, &ctx, &a, detail, vec![b.to_string()]);
            }
        }
    }
    Outcome::Pass { checks }
}

/// One generator step of the context order: add a global name, or move a
/// name to the left end of the local part.
fn grow(rng: &mut ChaCha8Rng, names: &[Var], ctx: &Context) -> Context {
    let x = names.choose(rng).expect("pool is nonempty").clone();
    let mut global = ctx.global().clone();
    if rng.gen_bool(0.5) {
        global.insert(x);
        Context::new(global, ctx.local().to_vec())
    } else {
        global.remove(&x);
        let mut local = vec![x];
        local.extend(ctx.local().iter().cloned());
        Context::new(global, local)
    }
}

fn swap_nth(x: &Var, k: &mut usize, y: &Var) -> Var {
    let hit = *k == 0;
    *k = k.wrapping_sub(1);
    if hit {
        y.clone()
    } else {
        x.clone()
    }
}

fn rename_nth_sub(s: &Subst, k: &mut usize, y: &Var) -> Subst {
    match s {
        Subst::Slash(b, x) => {
            let b = rename_nth(b, k, y);
            Subst::slash(b, swap_nth(x, k, y))
        }
        Subst::Weak(x) => Subst::weak(swap_nth(x, k, y)),
        Subst::Rename(a, b) => {
            let a = swap_nth(a, k, y);
            Subst::rename(a, swap_nth(b, k, y))
        }
        Subst::Lift(inner, x) => {
            let inner = rename_nth_sub(inner, k, y);
            Subst::lift(inner, swap_nth(x, k, y))
        }
    }
}

/// Replace the `k`-th name occurrence (binders included) by `y`. `k` ends up
/// decremented once per occurrence.
fn rename_nth(t: &Term, k: &mut usize, y: &Var) -> Term {
    match t {
        Term::Var(x) => Term::var(swap_nth(x, k, y)),
        Term::App(f, a) => {
            let f = rename_nth(f, k, y);
            Term::app(f, rename_nth(a, k, y))
        }
        Term::Lam(x, b) => {
            let x = swap_nth(x, k, y);
            Term::lam(x, rename_nth(b, k, y))
        }
        Term::Comp(s, b) => {
            let s = rename_nth_sub(s, k, y);
            Term::comp(s, rename_nth(b, k, y))
        }
    }
}

fn fv_least(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_wellformed_with(rng, &cfg.gen);
    let names = cfg.gen.names();
    let Some(fa) = fv(&a) else {
        return fail(1, &ctx, &a, "free variables undefined".into(), Vec::new());
    };
    if !fa.le(&ctx) {
        return fail(1, &ctx, &a, format!("free variables {fa} not below the context"), Vec::new());
    }
    if let Err(e) = derive(&fa, &a) {
        return fail(2, &ctx, &a, format!("not derivable in its free variables {fa}: {e}"), Vec::new());
    }
    let mut sigma = ctx.clone();
    for _ in 0..rng.gen_range(1..=3) {
        sigma = grow(rng, &names, &sigma);
    }
    if !ctx.le(&sigma) {
        return fail(3, &ctx, &a, format!("{sigma} should be above the context"), Vec::new());
    }
    if let Err(e) = derive(&sigma, &a) {
        return fail(3, &ctx, &a, format!("not derivable in the larger {sigma}: {e}"), Vec::new());
    }
    // a nearby raw term: whenever its free variables exist they should be a
    // context it is derivable in
    let occurrences = {
        let mut k = usize::MAX;
        rename_nth(&a, &mut k, &names[0]);
        usize::MAX - k
    };
    let mut k = rng.gen_range(0..occurrences);
    let y = names.choose(rng).expect("pool is nonempty");
    let r = rename_nth(&a, &mut k, y);
    if let Some(fr) = fv(&r) {
        if let Err(e) = derive(&fr, &r) {
            let detail = format!("free variables {fr} exist but the term is not derivable there: {e}");
            return fail(4, &fr, &r, detail, Vec::new());
        }
    }
    Outcome::Pass { checks: 4 }
}

fn sigma_alpha_termination(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_wellformed_with(rng, &cfg.gen);
    let (_, trace, exhausted) = normalize(&a, RuleSet::SIGMA_ALPHA, Strategy::LeftmostOutermost, cfg.fuel);
    let mut checks = trace.steps.len() as u64;
    if exhausted {
        let terms: Vec<Term> = trace.steps.iter().map(|s| s.term.clone()).collect();
        let detail = format!("leftmost-outermost did not stop within {} steps", cfg.fuel);
        return fail(checks, &ctx, &a, detail, last_terms(&terms, 5));
    }
    let walk = random_walk(rng, &a, RuleSet::SIGMA_ALPHA, cfg.fuel);
    checks += walk.len() as u64 - 1;
    let last = walk.last().expect("nonempty");
    if !find_redexes(last, RuleSet::SIGMA_ALPHA).is_empty() {
        let detail = format!("a random strategy did not stop within {} steps", cfg.fuel);
        return fail(checks, &ctx, &a, detail, last_terms(&walk, 5));
    }
    Outcome::Pass { checks }
}

fn nf_grammar(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_wellformed_with(rng, &cfg.gen);
    let (_, trace, exhausted) = normalize(&a, RuleSet::SIGMA, Strategy::LeftmostOutermost, cfg.fuel);
    if exhausted {
        return Outcome::Inconclusive {
            checks: 0,
            reason: format!("no normal form within {} steps", cfg.fuel),
        };
    }
    let mut checks = 0;
    for t in std::iter::once(&a).chain(trace.steps.iter().map(|s| &s.term)) {
        checks += 1;
        let grammar = is_sigma_nf(t);
        let scan = find_redexes(t, RuleSet::SIGMA).is_empty();
        if grammar != scan {
            let detail = format!("grammar says {grammar}, redex scan says {scan} for {t}");
            return fail(checks, &ctx, &a, detail, Vec::new());
        }
    }
    if ctx.is_set() {
        checks += 1;
        let (nf, _, exhausted) = normalize(&a, RuleSet::SIGMA_ALPHA, Strategy::LeftmostOutermost, cfg.fuel);
        if exhausted {
            return Outcome::Inconclusive {
                checks,
                reason: "no normal form with Alpha".into(),
            };
        }
        if let Err(e) = to_pure(&nf) {
            return fail(checks, &ctx, &a, format!("normal form {nf} of a good term: {e}"), Vec::new());
        }
    }
    Outcome::Pass { checks }
}

fn confluence(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_typed(rng, &cfg.gen, true);
    let mut ends = Vec::new();
    let mut checks = 0;
    for _ in 0..2 {
        let len = rng.gen_range(0..=cfg.prefix_max);
        let prefix = random_walk(rng, &a, RuleSet::FULL, len);
        let b = prefix.last().expect("nonempty").clone();
        let (c, trace, exhausted) = normalize(&b, RuleSet::FULL, Strategy::LeftmostOutermost, cfg.fuel);
        checks += (prefix.len() - 1 + trace.steps.len()) as u64;
        if exhausted {
            return Outcome::Inconclusive {
                checks,
                reason: format!("{b} has no normal form within {} steps", cfg.fuel),
            };
        }
        ends.push((prefix, c));
    }
    let (c1, c2) = (&ends[0].1, &ends[1].1);
    if crate::debruijn::equiv_gamma(c1, c2, &ctx) {
        Outcome::Pass { checks }
    } else {
        let show = |p: &Vec<Term>, c: &Term| {
            let mut v: Vec<String> = p.iter().skip(1).map(Term::to_string).collect();
            v.push(format!("normal form {c}"));
            v.join(" ; ")
        };
        let detail = format!("normal forms {c1} and {c2} differ");
        let trace = vec![show(&ends[0].0, c1), show(&ends[1].0, c2)];
        fail(checks, &ctx, &a, detail, trace)
    }
}

fn oracle_equivalence(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_typed(rng, &cfg.gen, false);
    let p = PureTerm::from_term(&a).expect("generated without compositions");
    let (nf, trace, exhausted) = normalize(&a, RuleSet::FULL, Strategy::LeftmostOutermost, cfg.fuel);
    let checks = trace.steps.len() as u64;
    if exhausted {
        return Outcome::Inconclusive {
            checks,
            reason: format!("no normal form within {} steps", cfg.fuel),
        };
    }
    let ours = match to_pure(&nf) {
        Ok(q) => q,
        Err(e) => return fail(checks, &ctx, &a, format!("normal form is not classical: {e}"), Vec::new()),
    };
    let Some(theirs) = classical_normalize(&p, cfg.fuel) else {
        return Outcome::Inconclusive {
            checks,
            reason: "the classical oracle ran out of fuel".into(),
        };
    };
    if ours.alpha_eq(&theirs) {
        Outcome::Pass { checks }
    } else {
        fail(checks, &ctx, &a, format!("got {ours}, the oracle gives {theirs}"), Vec::new())
    }
}

/// Whether `to` is reachable from `from` in at most `bound` steps. `None` when
/// the search visited `cap` terms without deciding.
fn reachable(from: &DBTerm, to: &DBTerm, system: System, bound: usize, cap: usize) -> Option<bool> {
    let mut seen = HashSet::from([from.clone()]);
    let mut queue = VecDeque::from([(from.clone(), 0)]);
    while let Some((t, d)) = queue.pop_front() {
        if t == *to {
            return Some(true);
        }
        if d == bound {
            continue;
        }
        for (_, next) in db_reducts(&t, system) {
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back((next, d + 1));
            }
        }
    }
    Some(false)
}

fn translation_simulation(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_wellformed_with(rng, &cfg.gen);
    let ta = translated(&ctx, &a, Flavor::Upsilon);
    let mut checks = 0;
    for (r, b) in reducts(&a, RuleSet::FULL.without(RuleId::Alpha)) {
        checks += 1;
        let tb = match translate_term(&ctx, &b, Flavor::Upsilon) {
            Ok(tb) => tb,
            Err(e) => return fail(checks, &ctx, &a, format!("{} at {}: {e}", r.rule, r.path), vec![b.to_string()]),
        };
        let ok = if r.rule == RuleId::W {
            ta == tb
        } else {
            db_reducts(&ta, System::LambdaUpsilon).iter().any(|(_, x)| *x == tb)
        };
        if !ok {
            let detail = format!("{} at {}: {ta} does not step to {tb}", r.rule, r.path);
            return fail(checks, &ctx, &a, detail, vec![b.to_string()]);
        }
    }
    let ua = translated(&ctx, &a, Flavor::Upsilon2);
    let mut unresolved = None;
    for (r, b) in reducts(&a, RuleSet::SIGMA_ALPHA) {
        checks += 1;
        let ub = match translate_term(&ctx, &b, Flavor::Upsilon2) {
            Ok(ub) => ub,
            Err(e) => return fail(checks, &ctx, &a, format!("{} at {}: {e}", r.rule, r.path), vec![b.to_string()]),
        };
        match reachable(&ua, &ub, System::Upsilon2, cfg.search_bound, 20_000) {
            Some(true) => {}
            _ => unresolved = Some(format!("{} at {}: {ub} not reached from {ua}", r.rule, r.path)),
        }
    }
    match unresolved {
        None => Outcome::Pass { checks },
        Some(reason) => Outcome::Inconclusive { checks, reason },
    }
}

/// Rewrite `a` at random redexes of `system` until a normal form or `fuel`
/// steps, checking `ok` on every step.
fn checked_walk(
    rng: &mut ChaCha8Rng,
    a: &DBTerm,
    system: System,
    fuel: usize,
    ok: impl Fn(&DBTerm, DbRule, &DBTerm) -> bool,
) -> Result<u64, (u64, String)> {
    let mut cur = a.clone();
    for steps in 0..fuel as u64 {
        let rs = db_find_redexes(&cur, system);
        let Some(r) = rs.choose(rng) else { return Ok(steps) };
        let next = db_apply(&cur, &r.path, r.rule).expect("found redexes contract");
        if !ok(&cur, r.rule, &next) {
            return Err((steps + 1, format!("{} on {cur} gives {next}", r.rule)));
        }
        cur = next;
    }
    Err((fuel as u64, format!("no normal form within {fuel} steps")))
}

fn upsilon_weights(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_wellformed_with(rng, &cfg.gen);
    let ta = translated(&ctx, &a, Flavor::Upsilon);
    let decreases = |x: &DBTerm, rule: DbRule, y: &DBTerm| {
        let ((x1, x2), (y1, y2)) = (weights12(x), weights12(y));
        if rule == DbRule::ShiftLift {
            y1 <= x1 && y2 < x2
        } else {
            y1 < x1
        }
    };
    match checked_walk(rng, &ta, System::Upsilon, cfg.fuel, decreases) {
        Ok(checks) => Outcome::Pass { checks },
        Err((checks, detail)) => fail(checks, &ctx, &a, format!("weights do not decrease: {detail}"), Vec::new()),
    }
}

fn lpo_decrease(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_wellformed_with(rng, &cfg.gen);
    let ta = translated(&ctx, &a, Flavor::Upsilon2);
    let decreases = |x: &DBTerm, _: DbRule, y: &DBTerm| lpo_gt(&label(x), &label(y));
    match checked_walk(rng, &ta, System::Upsilon2, cfg.fuel, decreases) {
        Ok(checks) => Outcome::Pass { checks },
        Err((checks, detail)) => fail(checks, &ctx, &a, format!("labelled terms do not decrease: {detail}"), Vec::new()),
    }
}

/// A de Bruijn term derivable at `n`, from a named term with `n` local names.
fn db_term(rng: &mut ChaCha8Rng, cfg: &SuiteConfig, n: usize) -> DBTerm {
    let ctx = gen_context(rng, &cfg.gen, n);
    let size = rng.gen_range(1..=(cfg.gen.max_size / 4).max(1));
    translated(&ctx, &gen_term_in(rng, &cfg.gen, &ctx, size), Flavor::Upsilon)
}

/// A de Bruijn substitution derivable from `n`, with its output arity.
fn db_sub(rng: &mut ChaCha8Rng, cfg: &SuiteConfig, n: usize) -> (DBSub, usize) {
    let ctx = gen_context(rng, &cfg.gen, n);
    let lo = if n == 0 { 2 } else { 1 };
    let size = rng.gen_range(lo..=(cfg.gen.max_size / 4).max(lo));
    let (s, out) = gen_subst_in(rng, &cfg.gen, &ctx, size);
    let probe = Term::var(out.global().iter().next().expect("global part is nonempty").clone());
    let DBTerm::Comp(ds, _) = translated(&ctx, &Term::comp(s, probe), Flavor::Upsilon) else {
        unreachable!("compositions translate to compositions")
    };
    ((*ds).clone(), out.local().len())
}

fn join_lemmas(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    use DBTerm as T;
    let lift = DBSub::lift;
    let comp = T::comp;
    let shift_up = || lift(DBSub::Shift);
    let mut pairs: Vec<(&str, usize, DBTerm, DBTerm)> = Vec::new();

    let n = rng.gen_range(1..=3);
    let (a, b) = (db_term(rng, cfg, n), db_term(rng, cfg, n - 1));
    pairs.push((
        "a[⇑↑][⇑(b/)] = a",
        n,
        comp(lift(DBSub::slash(b)), comp(shift_up(), a.clone())),
        a,
    ));

    let n = rng.gen_range(2..=4);
    let a = db_term(rng, cfg, n - 1);
    pairs.push((
        "a[⇑↑][⇑id] = a[⇑↑]",
        n,
        comp(lift(DBSub::Id), comp(shift_up(), a.clone())),
        comp(shift_up(), a),
    ));

    let n = rng.gen_range(2..=4);
    let (s, m) = db_sub(rng, cfg, n - 2);
    let a = db_term(rng, cfg, m + 1);
    pairs.push((
        "a[⇑↑][⇑⇑s] = a[⇑s][⇑↑]",
        n,
        comp(lift(lift(s.clone())), comp(shift_up(), a.clone())),
        comp(shift_up(), comp(lift(s), a)),
    ));

    let n = rng.gen_range(0..=3);
    let (s, m) = db_sub(rng, cfg, n);
    let (a, b) = (db_term(rng, cfg, m + 1), db_term(rng, cfg, m));
    pairs.push((
        "a[b/][s] = a[⇑s][b[s]/]",
        n,
        comp(s.clone(), comp(DBSub::slash(b.clone()), a.clone())),
        comp(DBSub::slash(comp(s.clone(), b)), comp(lift(s), a)),
    ));

    let n = rng.gen_range(1..=3);
    let a = db_term(rng, cfg, n);
    pairs.push(("a[id] = a", n, comp(DBSub::Id, a.clone()), a));

    let ctx = Context::empty();
    let mut checks = 0;
    for (name, n, lhs, rhs) in pairs {
        checks += 1;
        if !db_check(n, &lhs) || !db_check(n, &rhs) {
            let detail = format!("{name}: instance not derivable at {n}: {lhs} / {rhs}");
            return fail(checks, &ctx, &lhs, detail, Vec::new());
        }
        let (l, r) = (upsilon_nf(&lhs, cfg.fuel), upsilon_nf(&rhs, cfg.fuel));
        if l != r {
            let detail = format!("{name}: normal forms {l} and {r} differ");
            return fail(checks, &ctx, &lhs, detail, vec![rhs.to_string()]);
        }
    }
    Outcome::Pass { checks }
}

fn upsilon_nf(a: &DBTerm, fuel: usize) -> DBTerm {
    db_normalize(a, System::Upsilon, fuel).0
}

fn upsilon_local_confluence(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Outcome {
    let (ctx, a) = gen_wellformed_with(rng, &cfg.gen);
    let n = ctx.local().len();
    let ta = translated(&ctx, &a, Flavor::Upsilon);
    let nf = upsilon_nf(&ta, cfg.fuel);
    let mut checks = 1;
    if !db_check(n, &nf) || nf.has_pending_subst() {
        let detail = format!("normal form {nf} of {ta} keeps a substitution other than ↑");
        return fail(checks, &ctx, &a, detail, Vec::new());
    }
    for (rule, b) in db_reducts(&ta, System::Upsilon) {
        checks += 1;
        let nb = upsilon_nf(&b, cfg.fuel);
        if nb != nf {
            let detail = format!("after {rule}, {b} normalizes to {nb} instead of {nf}");
            return fail(checks, &ctx, &a, detail, Vec::new());
        }
    }
    Outcome::Pass { checks }
}
