//! Simply typed terms, erased, as seeds whose beta reduction terminates.
//!
//! Terms are built top-down against a goal type, so self-application cannot
//! arise. The global `c` has base type and is never used as a binder, which
//! guarantees a term of every type can be completed when the size budget runs
//! out.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::context::Context;
use crate::syntax::{var, Subst, Term, Var};

use super::gen::GenConfig;

#[derive(Clone, PartialEq, Eq)]
pub enum Ty {
    Base,
    Arrow(Arc<Ty>, Arc<Ty>),
}

impl Ty {
    fn arrow(a: Ty, b: Ty) -> Ty {
        Ty::Arrow(Arc::new(a), Arc::new(b))
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Base => f.write_str("o"),
            Ty::Arrow(a, b) if matches!(**a, Ty::Arrow(..)) => write!(f, "({a}) -> {b}"),
            Ty::Arrow(a, b) => write!(f, "{a} -> {b}"),
        }
    }
}

impl fmt::Debug for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn random_type<R: Rng>(rng: &mut R, depth: usize) -> Ty {
    if depth == 0 || rng.gen_bool(0.5) {
        Ty::Base
    } else {
        Ty::arrow(random_type(rng, depth - 1), random_type(rng, depth - 1))
    }
}

struct Typed<'a, R> {
    rng: &'a mut R,
    names: Vec<Var>,
    /// Allow `[B/x] * A`, typed like `(\x. A) B`.
    explicit: bool,
}

type Env = Vec<(Var, Ty)>;

fn visible(env: &Env, ty: &Ty) -> Vec<Var> {
    let scope: BTreeMap<&Var, &Ty> = env.iter().map(|(x, t)| (x, t)).collect();
    scope
        .into_iter()
        .filter(|(_, t)| *t == ty)
        .map(|(x, _)| x.clone())
        .collect()
}

impl<R: Rng> Typed<'_, R> {
    fn binder(&mut self) -> Var {
        self.names.choose(self.rng).expect("pool is nonempty").clone()
    }

    /// The smallest completion: a variable, or an abstraction around one.
    fn minimal(&mut self, env: &mut Env, ty: &Ty) -> Term {
        let vars = visible(env, ty);
        if let Some(x) = vars.choose(self.rng) {
            return Term::var(x.clone());
        }
        match ty {
            Ty::Base => unreachable!("c has base type and is never shadowed"),
            Ty::Arrow(a, b) => {
                let x = self.binder();
                env.push((x.clone(), (**a).clone()));
                let body = self.minimal(env, b);
                env.pop();
                Term::lam(x, body)
            }
        }
    }

    fn term(&mut self, env: &mut Env, ty: &Ty, budget: usize) -> Term {
        if budget <= 1 {
            return self.minimal(env, ty);
        }
        let mut options = vec![(1, "var"), (3, "app")];
        if matches!(ty, Ty::Arrow(..)) {
            options.push((4, "lam"));
        }
        if self.explicit && budget >= 4 {
            options.push((2, "slash"));
        }
        let choice = options.choose_weighted(self.rng, |o| o.0).expect("weights").1;
        match choice {
            "lam" => {
                let Ty::Arrow(a, b) = ty else { unreachable!() };
                let x = self.binder();
                env.push((x.clone(), (**a).clone()));
                let body = self.term(env, b, budget - 1);
                env.pop();
                Term::lam(x, body)
            }
            "app" if budget >= 3 => {
                let arg = random_type(self.rng, 1);
                let left = self.rng.gen_range(1..=budget - 2);
                let f = self.term(env, &Ty::arrow(arg.clone(), ty.clone()), left);
                let a = self.term(env, &arg, budget - 1 - left);
                Term::app(f, a)
            }
            "slash" => {
                let arg = random_type(self.rng, 1);
                let x = self.binder();
                let left = self.rng.gen_range(1..=budget - 3);
                let b = self.term(env, &arg, left);
                env.push((x.clone(), arg));
                let body = self.term(env, ty, budget - 2 - left);
                env.pop();
                Term::comp(Subst::slash(b, x.clone()), body)
            }
            _ => self.minimal(env, ty),
        }
    }
}

/// A closed-under-globals term of a random simple type, with the set of
/// globals it is checked in. With `explicit`, some redexes are generated as
/// `[B/x] * A` instead of `(\x. A) B`.
pub fn gen_typed<R: Rng>(rng: &mut R, cfg: &GenConfig, explicit: bool) -> (Context, Term) {
    let names = cfg.names();
    let mut env: Env = vec![(var("c"), Ty::Base)];
    for x in &names {
        if rng.gen_bool(0.5) {
            let t = random_type(rng, 2);
            env.push((x.clone(), t));
        }
    }
    let ctx = Context::set(env.iter().map(|(x, _)| x.clone()));
    let ty = random_type(rng, 2);
    let budget = rng.gen_range(1..=cfg.max_size);
    let mut g = Typed {
        rng,
        names,
        explicit,
    };
    let term = g.term(&mut env, &ty, budget);
    (ctx, term)
}
