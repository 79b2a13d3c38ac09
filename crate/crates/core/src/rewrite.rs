//! The rewrite rules, their compatible closure, strategies and traces.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::context::Context;
use crate::freevars::fv_compositional;
use crate::syntax::{replace_term_at, term_at, var, Child, Path, Subst, Term, Var};
use crate::typing::well_formed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Beta,
    App,
    Lambda,
    Var,
    Shift,
    ShiftP,
    IdVar,
    IdShift,
    IdShiftP,
    LiftVar,
    LiftShift,
    LiftShiftP,
    W,
    Alpha,
}

impl RuleId {
    pub const ALL: [RuleId; 14] = [
        RuleId::Beta,
        RuleId::App,
        RuleId::Lambda,
        RuleId::Var,
        RuleId::Shift,
        RuleId::ShiftP,
        RuleId::IdVar,
        RuleId::IdShift,
        RuleId::IdShiftP,
        RuleId::LiftVar,
        RuleId::LiftShift,
        RuleId::LiftShiftP,
        RuleId::W,
        RuleId::Alpha,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Beta => "Beta",
            RuleId::App => "App",
            RuleId::Lambda => "Lambda",
            RuleId::Var => "Var",
            RuleId::Shift => "Shift",
            RuleId::ShiftP => "Shift'",
            RuleId::IdVar => "IdVar",
            RuleId::IdShift => "IdShift",
            RuleId::IdShiftP => "IdShift'",
            RuleId::LiftVar => "LiftVar",
            RuleId::LiftShift => "LiftShift",
            RuleId::LiftShiftP => "LiftShift'",
            RuleId::W => "W",
            RuleId::Alpha => "Alpha",
        }
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule {0:?}")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    /// Accepts the display names and a `P` suffix for the primed rules.
    fn from_str(s: &str) -> Result<RuleId, UnknownRule> {
        let canonical = s.replace('\'', "P");
        RuleId::ALL
            .into_iter()
            .find(|r| r.name().replace('\'', "P") == canonical)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSet(u16);

impl RuleSet {
    /// Substitution propagation: everything but `Beta` and `Alpha`.
    pub const SIGMA: RuleSet = RuleSet(((1 << 14) - 1) & !(1 << RuleId::Beta as u16) & !(1 << RuleId::Alpha as u16));
    pub const SIGMA_ALPHA: RuleSet = RuleSet(RuleSet::SIGMA.0 | 1 << RuleId::Alpha as u16);
    pub const FULL: RuleSet = RuleSet((1 << 14) - 1);

    pub fn contains(self, r: RuleId) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn with(self, r: RuleId) -> RuleSet {
        RuleSet(self.0 | r.bit())
    }

    pub fn without(self, r: RuleId) -> RuleSet {
        RuleSet(self.0 & !r.bit())
    }

    pub fn rules(self) -> impl Iterator<Item = RuleId> {
        RuleId::ALL.into_iter().filter(move |r| self.contains(*r))
    }
}

impl fmt::Debug for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.rules()).finish()
    }
}

impl FromStr for RuleSet {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<RuleSet, UnknownRule> {
        match s {
            "sigma" => Ok(RuleSet::SIGMA),
            "sigma-alpha" => Ok(RuleSet::SIGMA_ALPHA),
            "full" => Ok(RuleSet::FULL),
            _ => Err(UnknownRule(s.to_string())),
        }
    }
}

/// Which redex to contract. Redexes are listed in pre-order, a node before
/// its children and children left to right (for `S * A`, the substitution
/// before the body).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// The first redex in the list.
    LeftmostOutermost,
    /// The last redex in the list.
    RightmostInnermost,
    /// Redex number `k`, modulo the number of redexes.
    Indexed(usize),
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Strategy, String> {
        match s {
            "lo" => Ok(Strategy::LeftmostOutermost),
            "ri" => Ok(Strategy::RightmostInnermost),
            _ => s
                .strip_prefix("index:")
                .and_then(|k| k.parse().ok())
                .map(Strategy::Indexed)
                .ok_or_else(|| format!("unknown strategy {s:?}, expected lo, ri or index:K")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub path: Path,
    pub rule: RuleId,
}

/// The rule whose left-hand side matches at a term node, ignoring `Alpha`.
/// The left-hand sides do not overlap, so there is at most one.
fn rule_at(t: &Term) -> Option<RuleId> {
    match t {
        Term::App(f, _) => matches!(**f, Term::Lam(..)).then_some(RuleId::Beta),
        Term::Comp(s, a) => match &**a {
            Term::App(..) => Some(RuleId::App),
            Term::Lam(..) => Some(RuleId::Lambda),
            Term::Var(z) => Some(match &**s {
                Subst::Slash(_, x) if x == z => RuleId::Var,
                Subst::Slash(..) => RuleId::ShiftP,
                Subst::Rename(_, x) if x == z => RuleId::IdVar,
                Subst::Rename(..) => RuleId::IdShiftP,
                Subst::Lift(_, x) if x == z => RuleId::LiftVar,
                Subst::Lift(..) => RuleId::LiftShiftP,
                Subst::Weak(x) if x == z => return None,
                Subst::Weak(_) => RuleId::W,
            }),
            Term::Comp(inner, _) => match (&**s, &**inner) {
                (Subst::Slash(_, x), Subst::Weak(y)) if x == y => Some(RuleId::Shift),
                (Subst::Rename(_, x), Subst::Weak(y)) if x == y => Some(RuleId::IdShift),
                (Subst::Lift(_, x), Subst::Weak(y)) if x == y => Some(RuleId::LiftShift),
                _ => None,
            },
        },
        _ => None,
    }
}

/// What a substitution does to the free variables of its body.
enum Action {
    Slash(Option<Context>, Var),
    Weak(Var),
    Rename(Var, Var),
    Lift(Box<Action>, Var),
}

impl Action {
    fn apply(&self, body: Context) -> Option<Context> {
        match self {
            Action::Slash(b, x) => body.o_lambda(x)?.sup(b.as_ref()?),
            Action::Weak(x) => Some(body.push(x.clone())),
            Action::Rename(y, x) => Some(body.o_lambda(x)?.push(y.clone())),
            Action::Lift(inner, x) => Some(inner.apply(body.o_lambda(x)?)?.push(x.clone())),
        }
    }
}

struct Finder {
    rules: RuleSet,
    alpha: bool,
    out: Vec<Redex>,
}

impl Finder {
    /// Collects redexes below `t` in pre-order and returns the free variables
    /// of `t`.
    fn term(&mut self, t: &Term, path: &mut Vec<Child>) -> Option<Context> {
        let slot = self.out.len();
        if let Some(rule) = rule_at(t) {
            if self.rules.contains(rule) {
                self.out.push(Redex {
                    path: Path(path.clone()),
                    rule,
                });
            }
        }
        match t {
            Term::Var(x) => Some(Context::set([x.clone()])),
            Term::App(f, a) => {
                let ff = self.descend(f, path, Child::AppLeft);
                let fa = self.descend(a, path, Child::AppRight);
                ff?.sup(&fa?)
            }
            Term::Lam(x, b) => {
                let fb = self.descend(b, path, Child::LamBody);
                let here = fb?.o_lambda(x);
                if self.alpha && here.as_ref().is_some_and(|c| c.member(x)) {
                    self.out.insert(
                        slot,
                        Redex {
                            path: Path(path.clone()),
                            rule: RuleId::Alpha,
                        },
                    );
                }
                here
            }
            Term::Comp(s, a) => {
                path.push(Child::CompSubst);
                let act = self.subst(s, path);
                path.pop();
                let fa = self.descend(a, path, Child::CompBody);
                act.apply(fa?)
            }
        }
    }

    fn descend(&mut self, t: &Term, path: &mut Vec<Child>, c: Child) -> Option<Context> {
        path.push(c);
        let r = self.term(t, path);
        path.pop();
        r
    }

    fn subst(&mut self, s: &Subst, path: &mut Vec<Child>) -> Action {
        match s {
            Subst::Slash(b, x) => {
                let fb = self.descend(b, path, Child::SlashBody);
                Action::Slash(fb, x.clone())
            }
            Subst::Weak(x) => Action::Weak(x.clone()),
            Subst::Rename(y, x) => Action::Rename(y.clone(), x.clone()),
            Subst::Lift(inner, x) => {
                path.push(Child::LiftInner);
                let a = self.subst(inner, path);
                path.pop();
                Action::Lift(Box::new(a), x.clone())
            }
        }
    }
}

/// Every redex of `t` for the rules in `rules`, in pre-order.
///
/// `Alpha` is only offered when the whole term is well-formed.
pub fn find_redexes(t: &Term, rules: RuleSet) -> Vec<Redex> {
    let alpha = rules.contains(RuleId::Alpha) && well_formed(t).is_ok();
    let mut f = Finder {
        rules,
        alpha,
        out: Vec::new(),
    };
    f.term(t, &mut Vec::new());
    f.out
}

/// The first name in `z, y, x, w, v, u, t, s, a1, a2, ...` that is neither in
/// `avoid` nor equal to `x`.
pub fn fresh_var(avoid: &Context, x: &Var) -> Var {
    const FIRST: [&str; 8] = ["z", "y", "x", "w", "v", "u", "t", "s"];
    FIRST
        .into_iter()
        .map(var)
        .chain((1..).map(|i| var(&format!("a{i}"))))
        .find(|y| y != x && !avoid.member(y))
        .expect("the supply of names is infinite")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("no subterm at {0}")]
    BadPath(Path),
    #[error("{rule} does not match at {path}")]
    InvalidRedex { path: Path, rule: RuleId },
}

fn contract(t: &Term, rule: RuleId) -> Option<(Term, Option<Var>)> {
    if rule == RuleId::Alpha {
        let Term::Lam(x, a) = t else { return None };
        let avoid = fv_compositional(t)?;
        if !avoid.member(x) {
            return None;
        }
        let y = fresh_var(&avoid, x);
        let body = Term::Comp(Subst::rename(y.clone(), x.clone()).into(), a.clone());
        return Some((Term::lam(y.clone(), body), Some(y)));
    }
    if rule_at(t) != Some(rule) {
        return None;
    }
    let out = match (rule, t) {
        (RuleId::Beta, Term::App(f, b)) => {
            let Term::Lam(x, a) = &**f else { return None };
            Term::Comp(Subst::Slash(b.clone(), x.clone()).into(), a.clone())
        }
        (RuleId::App, Term::Comp(s, body)) => {
            let Term::App(a, b) = &**body else { return None };
            Term::app(Term::Comp(s.clone(), a.clone()), Term::Comp(s.clone(), b.clone()))
        }
        (RuleId::Lambda, Term::Comp(s, body)) => {
            let Term::Lam(x, a) = &**body else { return None };
            Term::lam(
                x.clone(),
                Term::Comp(Subst::Lift(s.clone(), x.clone()).into(), a.clone()),
            )
        }
        (_, Term::Comp(s, body)) => match (rule, &**s, &**body) {
            (RuleId::Var, Subst::Slash(b, _), _) => (**b).clone(),
            (RuleId::Shift, _, Term::Comp(_, a)) => (**a).clone(),
            (RuleId::ShiftP | RuleId::W | RuleId::LiftVar, _, z) => z.clone(),
            (RuleId::IdVar, Subst::Rename(y, _), _) => Term::var(y.clone()),
            (RuleId::IdShift, Subst::Rename(y, _), Term::Comp(_, a)) => {
                Term::Comp(Subst::weak(y.clone()).into(), a.clone())
            }
            (RuleId::IdShiftP, Subst::Rename(y, _), z) => {
                Term::comp(Subst::weak(y.clone()), z.clone())
            }
            (RuleId::LiftShift, Subst::Lift(inner, x), Term::Comp(_, a)) => Term::comp(
                Subst::weak(x.clone()),
                Term::Comp(inner.clone(), a.clone()),
            ),
            (RuleId::LiftShiftP, Subst::Lift(inner, x), z) => Term::comp(
                Subst::weak(x.clone()),
                Term::Comp(inner.clone(), z.clone().into()),
            ),
            _ => return None,
        },
        _ => return None,
    };
    Some((out, None))
}

/// Contract the redex of `rule` at `path`. For `Alpha` the new bound name is
/// returned as well.
pub fn apply_rule(t: &Term, path: &Path, rule: RuleId) -> Result<(Term, Option<Var>), RewriteError> {
    let sub = term_at(t, path).ok_or_else(|| RewriteError::BadPath(path.clone()))?;
    let (new, fresh) = contract(sub, rule).ok_or_else(|| RewriteError::InvalidRedex {
        path: path.clone(),
        rule,
    })?;
    let whole = replace_term_at(t, path, new).expect("path was valid");
    Ok((whole, fresh))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: RuleId,
    pub path: Path,
    pub fresh: Option<Var>,
    pub term: Term,
}

/// One step of the chosen strategy, or `None` at a normal form.
pub fn step(t: &Term, rules: RuleSet, strategy: Strategy) -> Option<Step> {
    let redexes = find_redexes(t, rules);
    let chosen = match strategy {
        Strategy::LeftmostOutermost => redexes.first()?,
        Strategy::RightmostInnermost => redexes.last()?,
        Strategy::Indexed(k) => redexes.get(k % redexes.len().max(1))?,
    };
    let (term, fresh) = apply_rule(t, &chosen.path, chosen.rule).expect("found redexes contract");
    Some(Step {
        rule: chosen.rule,
        path: chosen.path.clone(),
        fresh,
        term,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub initial: Term,
    pub steps: Vec<Step>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StepRecord {
    rule_name: &'static str,
    path_as_child_indices: Vec<usize>,
    fresh_variable_or_null: Option<String>,
    printed_term: String,
}

#[derive(Serialize)]
struct TraceRecord {
    initial: String,
    steps: Vec<StepRecord>,
}

impl Step {
    fn record(&self) -> StepRecord {
        StepRecord {
            rule_name: self.rule.name(),
            path_as_child_indices: self.path.indices(),
            fresh_variable_or_null: self.fresh.as_ref().map(|v| v.to_string()),
            printed_term: self.term.to_string(),
        }
    }
}

impl Trace {
    pub fn new(initial: Term) -> Trace {
        Trace {
            initial,
            steps: Vec::new(),
        }
    }

    /// The last term of the trace.
    pub fn result(&self) -> &Term {
        self.steps.last().map_or(&self.initial, |s| &s.term)
    }

    pub fn rules(&self) -> Vec<RuleId> {
        self.steps.iter().map(|s| s.rule).collect()
    }

    /// One tab-separated line per step: rule, path, fresh name or `null`,
    /// resulting term.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let fresh = s.fresh.as_ref().map_or("null".to_string(), |v| v.to_string());
            out.push_str(&format!("{}\t{}\t{}\t{}\n", s.rule, s.path, fresh, s.term));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TraceRecord {
            initial: self.initial.to_string(),
            steps: self.steps.iter().map(Step::record).collect(),
        })
        .expect("trace serializes")
    }
}

/// Rewrite until no redex is left or `fuel` steps have been taken. The flag is
/// true when fuel ran out before a normal form was reached.
pub fn normalize(t: &Term, rules: RuleSet, strategy: Strategy, fuel: usize) -> (Term, Trace, bool) {
    let mut trace = Trace::new(t.clone());
    let mut current = t.clone();
    for _ in 0..fuel {
        match step(&current, rules, strategy) {
            Some(s) => {
                current = s.term.clone();
                trace.steps.push(s);
            }
            None => return (current, trace, false),
        }
    }
    let exhausted = !find_redexes(&current, rules).is_empty();
    (current, trace, exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use RuleId::*;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn c(s: &str) -> Context {
        s.parse().unwrap()
    }

    #[test]
    fn presets() {
        assert!(!RuleSet::SIGMA.contains(Beta));
        assert!(!RuleSet::SIGMA.contains(Alpha));
        assert_eq!(RuleSet::SIGMA.rules().count(), 12);
        assert_eq!(RuleSet::SIGMA_ALPHA, RuleSet::SIGMA.with(Alpha));
        assert_eq!(RuleSet::FULL, RuleSet::SIGMA_ALPHA.with(Beta));
        assert_eq!("ShiftP".parse::<RuleId>(), Ok(ShiftP));
        assert_eq!("LiftShift'".parse::<RuleId>(), Ok(LiftShiftP));
        assert_eq!("index:3".parse::<Strategy>(), Ok(Strategy::Indexed(3)));
    }

    #[test]
    fn redex_examples() {
        let rs = |s, r| {
            find_redexes(&t(s), r)
                .into_iter()
                .map(|r| (r.path.indices(), r.rule))
                .collect::<Vec<_>>()
        };
        assert_eq!(rs("(\\x.x) y", RuleSet::FULL), [(vec![], Beta)]);
        assert_eq!(rs("\\y. W y * y", RuleSet::SIGMA_ALPHA), [(vec![], Alpha)]);
        assert_eq!(rs("[y/x]^y * x", RuleSet::SIGMA), [(vec![], LiftShiftP)]);
        assert!(rs("\\y. W y * y", RuleSet::SIGMA).is_empty());
        // alpha needs the whole term to be well-formed
        assert!(rs("(\\y. W y * y) ((W x * a) (W z * b))", RuleSet::SIGMA_ALPHA)
            .iter()
            .all(|(_, r)| *r != Alpha));
    }

    #[test]
    fn contraction_examples() {
        let (r, f) = apply_rule(&t("(\\x.\\y.x) y"), &Path::root(), Beta).unwrap();
        assert_eq!((r, f), (t("[y/x] * \\y.x"), None));
        let (r, _) = apply_rule(&t("{z y} * W y * y"), &Path::root(), IdShift).unwrap();
        assert_eq!(r, t("W z * y"));
        let (r, f) = apply_rule(&t("\\y. W y * y"), &Path::root(), Alpha).unwrap();
        assert_eq!((r, f), (t("\\z. {z y} * W y * y"), Some(var("z"))));
        assert!(apply_rule(&t("x"), &Path::root(), Var).is_err());
    }

    #[test]
    fn fresh_names() {
        assert_eq!(fresh_var(&c("{y}"), &var("y")), var("z"));
        assert_eq!(fresh_var(&c("{z,y}"), &var("y")), var("x"));
        assert_eq!(fresh_var(&c("{}"), &var("z")), var("y"));
        assert_eq!(fresh_var(&c("{z,y,x,w,v,u,t}; s"), &var("q")), var("a1"));
    }

    #[test]
    fn one_step_and_normal_forms() {
        let s = step(&t("(\\x.x) y"), RuleSet::FULL, Strategy::LeftmostOutermost).unwrap();
        assert_eq!(s.term, t("[y/x] * x"));
        assert!(step(&t("\\y.z"), RuleSet::SIGMA_ALPHA, Strategy::LeftmostOutermost).is_none());
        let (nf, trace, exhausted) =
            normalize(&t("(\\x.\\y.x) z"), RuleSet::FULL, Strategy::LeftmostOutermost, 5);
        assert_eq!(nf, t("\\y.z"));
        assert!(!exhausted);
        assert_eq!(trace.rules(), [Beta, Lambda, LiftShiftP, Var, W]);
    }

    #[test]
    fn trace_serialization() {
        let (_, trace, _) = normalize(&t("\\y. W y * y"), RuleSet::SIGMA_ALPHA, Strategy::LeftmostOutermost, 10);
        let line = trace.to_text().lines().next().unwrap().to_string();
        assert_eq!(line, "Alpha\t[]\tz\t\\z. {z y} * W y * y");
        let json = trace.to_json();
        let first = &json["steps"][0];
        assert_eq!(first["ruleName"], "Alpha");
        assert_eq!(first["pathAsChildIndices"], serde_json::json!([]));
        assert_eq!(first["freshVariableOrNull"], "z");
        assert_eq!(json["steps"][1]["freshVariableOrNull"], serde_json::Value::Null);
    }
}
