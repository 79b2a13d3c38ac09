//! Derivation-directed generation of well-formed terms.
//!
//! The generator picks a rule at every node and builds the premises in the
//! context that rule demands, so the result is derivable by construction.
//! Sizes are exact: a term generated with budget `n` has `size() == n`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::context::Context;
use crate::syntax::{var, Subst, Term, Var};

/// Relative weights for the rule chosen at each node.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleMix {
    pub app: u32,
    pub lam: u32,
    pub comp: u32,
    pub slash: u32,
    pub weak: u32,
    pub rename: u32,
    pub lift: u32,
}

impl Default for RuleMix {
    fn default() -> RuleMix {
        RuleMix {
            app: 3,
            lam: 3,
            comp: 3,
            slash: 3,
            weak: 3,
            rename: 2,
            lift: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenConfig {
    pub seed: u64,
    /// Terms have a size drawn uniformly from `1..=max_size`.
    pub max_size: usize,
    /// Number of distinct variable names.
    pub pool: usize,
    /// Largest local part of the starting context.
    pub local_max: usize,
    pub mix: RuleMix,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig {
            seed: 0,
            max_size: 40,
            pool: 3,
            local_max: 2,
            mix: RuleMix::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("the variable pool holds at most {max} names")]
    PoolTooLarge { max: usize },
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_size == 0 {
            return Err(ConfigError::NotPositive("max_size"));
        }
        if self.pool == 0 {
            return Err(ConfigError::NotPositive("pool"));
        }
        if self.pool > NAMES.len() {
            return Err(ConfigError::PoolTooLarge { max: NAMES.len() });
        }
        let m = &self.mix;
        if m.app + m.lam + m.comp == 0 {
            return Err(ConfigError::NotPositive("term rule weight"));
        }
        if m.slash + m.lift == 0 || m.weak + m.rename == 0 {
            return Err(ConfigError::NotPositive("substitution rule weight"));
        }
        Ok(())
    }

    pub fn names(&self) -> Vec<Var> {
        NAMES[..self.pool].iter().map(|n| var(n)).collect()
    }
}

const NAMES: [&str; 8] = ["x", "y", "z", "u", "v", "w", "p", "q"];

fn pick<'a, R: Rng>(rng: &mut R, options: &'a [(u32, &'a str)]) -> &'a str {
    options
        .choose_weighted(rng, |o| o.0)
        .map(|o| o.1)
        .expect("some option has positive weight")
}

/// A starting context with a nonempty global part and a local part of length
/// `local_len`.
pub fn gen_context<R: Rng>(rng: &mut R, cfg: &GenConfig, local_len: usize) -> Context {
    let names = cfg.names();
    let mut global: BTreeSet<Var> = names.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
    if global.is_empty() {
        global.insert(names.choose(rng).expect("pool is nonempty").clone());
    }
    let local = (0..local_len)
        .map(|_| names.choose(rng).expect("pool is nonempty").clone())
        .collect();
    Context::new(global, local)
}

/// The smallest substitution derivable in `ctx`.
fn min_subst(ctx: &Context) -> usize {
    if ctx.last().is_some() {
        1
    } else {
        2
    }
}

/// A term of size exactly `size` derivable in `ctx`, whose global part must
/// be nonempty.
pub fn gen_term_in<R: Rng>(rng: &mut R, cfg: &GenConfig, ctx: &Context, size: usize) -> Term {
    assert!(!ctx.global().is_empty(), "generation needs a global name");
    assert!(size >= 1);
    if size == 1 {
        let visible: Vec<Var> = ctx.names().into_iter().collect();
        return Term::var(visible.choose(rng).expect("global part is nonempty").clone());
    }
    let m = &cfg.mix;
    let mut options = vec![(m.lam, "lam")];
    if size >= 3 {
        options.push((m.app, "app"));
    }
    if size >= 2 + min_subst(ctx) {
        options.push((m.comp, "comp"));
    }
    if options.iter().all(|o| o.0 == 0) {
        options = vec![(1, "lam")];
    }
    match pick(rng, &options) {
        "lam" => {
            let x = cfg.names().choose(rng).expect("pool is nonempty").clone();
            let body = gen_term_in(rng, cfg, &ctx.clone().push(x.clone()), size - 1);
            Term::lam(x, body)
        }
        "app" => {
            let left = rng.gen_range(1..=size - 2);
            let f = gen_term_in(rng, cfg, ctx, left);
            let a = gen_term_in(rng, cfg, ctx, size - 1 - left);
            Term::app(f, a)
        }
        _ => {
            let lo = min_subst(ctx);
            let hi = size - 2;
            let k = if lo == 1 && (hi == 1 || rng.gen_bool(0.5)) {
                1
            } else {
                rng.gen_range(2.max(lo)..=hi)
            };
            let (s, out) = gen_subst_in(rng, cfg, ctx, k);
            let body = gen_term_in(rng, cfg, &out, size - 1 - k);
            Term::comp(s, body)
        }
    }
}

/// A substitution of size exactly `size` derivable from `ctx`, with its output
/// context. `size` must be at least 1 when the local part is nonempty and at
/// least 2 otherwise.
pub fn gen_subst_in<R: Rng>(
    rng: &mut R,
    cfg: &GenConfig,
    ctx: &Context,
    size: usize,
) -> (Subst, Context) {
    assert!(size >= min_subst(ctx), "no substitution of size {size} from {ctx}");
    let m = &cfg.mix;
    let names = cfg.names();
    if size == 1 {
        let (prefix, last) = ctx.clone().pop().expect("local part is nonempty");
        let options = [(m.weak, "weak"), (m.rename, "rename")];
        return match pick(rng, &options) {
            "weak" => (Subst::weak(last), prefix),
            _ => {
                let x = names.choose(rng).expect("pool is nonempty").clone();
                (Subst::rename(last, x.clone()), prefix.push(x))
            }
        };
    }
    let lift_ok = ctx
        .clone()
        .pop()
        .is_some_and(|(prefix, _)| size > min_subst(&prefix));
    let mut options = vec![(m.slash, "slash")];
    if lift_ok {
        options.push((m.lift, "lift"));
    }
    if options.iter().all(|o| o.0 == 0) {
        options = vec![(1, "slash")];
    }
    match pick(rng, &options) {
        "lift" => {
            let (prefix, x) = ctx.clone().pop().expect("checked above");
            let (inner, out) = gen_subst_in(rng, cfg, &prefix, size - 1);
            (Subst::lift(inner, x.clone()), out.push(x))
        }
        _ => {
            let x = names.choose(rng).expect("pool is nonempty").clone();
            let b = gen_term_in(rng, cfg, ctx, size - 1);
            (Subst::slash(b, x.clone()), ctx.clone().push(x))
        }
    }
}

/// A context and a term derivable in it, drawn with `rng`.
pub fn gen_wellformed_with<R: Rng>(rng: &mut R, cfg: &GenConfig) -> (Context, Term) {
    let local_len = if rng.gen_bool(0.5) {
        0
    } else {
        rng.gen_range(0..=cfg.local_max)
    };
    let ctx = gen_context(rng, cfg, local_len);
    let size = rng.gen_range(1..=cfg.max_size);
    let term = gen_term_in(rng, cfg, &ctx, size);
    (ctx, term)
}

/// A context and a term derivable in it, determined by `cfg.seed`.
pub fn gen_wellformed(cfg: &GenConfig) -> (Context, Term) {
    gen_wellformed_with(&mut super::trial_rng(cfg.seed, 0), cfg)
}
