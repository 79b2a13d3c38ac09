//! Textbook beta reduction on classical terms, used as an independent oracle.
//!
//! Substitution renames a binder on the fly when it would capture a free
//! variable of the argument. Nothing here shares code with the rewrite
//! engine.

use std::collections::BTreeSet;

use crate::normalforms::PureTerm;
use crate::syntax::{var, Var};

pub fn free_vars(t: &PureTerm) -> BTreeSet<Var> {
    match t {
        PureTerm::Var(x) => BTreeSet::from([x.clone()]),
        PureTerm::App(f, a) => &free_vars(f) | &free_vars(a),
        PureTerm::Lam(x, b) => {
            let mut s = free_vars(b);
            s.remove(x);
            s
        }
    }
}

fn fresh_like(x: &Var, avoid: &BTreeSet<Var>) -> Var {
    (1..)
        .map(|i| var(&format!("{x}{i}")))
        .find(|y| !avoid.contains(y))
        .expect("the supply of names is infinite")
}

/// `body` with `n` put for the free occurrences of `x`.
pub fn substitute(body: &PureTerm, x: &Var, n: &PureTerm) -> PureTerm {
    match body {
        PureTerm::Var(y) if y == x => n.clone(),
        PureTerm::Var(_) => body.clone(),
        PureTerm::App(f, a) => PureTerm::App(
            Box::new(substitute(f, x, n)),
            Box::new(substitute(a, x, n)),
        ),
        PureTerm::Lam(y, _) if y == x => body.clone(),
        PureTerm::Lam(y, b) => {
            let fv_n = free_vars(n);
            if fv_n.contains(y) && free_vars(b).contains(x) {
                let mut avoid = &fv_n | &free_vars(b);
                avoid.insert(x.clone());
                let z = fresh_like(y, &avoid);
                let renamed = substitute(b, y, &PureTerm::Var(z.clone()));
                PureTerm::Lam(z, Box::new(substitute(&renamed, x, n)))
            } else {
                PureTerm::Lam(y.clone(), Box::new(substitute(b, x, n)))
            }
        }
    }
}

/// One leftmost-outermost beta step.
pub fn beta_step(t: &PureTerm) -> Option<PureTerm> {
    match t {
        PureTerm::Var(_) => None,
        PureTerm::App(f, a) => {
            if let PureTerm::Lam(x, b) = &**f {
                return Some(substitute(b, x, a));
            }
            if let Some(f2) = beta_step(f) {
                return Some(PureTerm::App(Box::new(f2), a.clone()));
            }
            beta_step(a).map(|a2| PureTerm::App(f.clone(), Box::new(a2)))
        }
        PureTerm::Lam(x, b) => beta_step(b).map(|b2| PureTerm::Lam(x.clone(), Box::new(b2))),
    }
}

/// The beta normal form, or `None` when `fuel` steps do not reach it.
pub fn classical_normalize(t: &PureTerm, fuel: usize) -> Option<PureTerm> {
    let mut cur = t.clone();
    for _ in 0..fuel {
        match beta_step(&cur) {
            Some(next) => cur = next,
            None => return Some(cur),
        }
    }
    beta_step(&cur).is_none().then_some(cur)
}
