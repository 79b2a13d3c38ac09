//! Labelled terms and the lexicographic path order on them.
//!
//! Compositions `∘ᵢ` and marked abstractions `Λᵢ` carry a natural number. The
//! labelled symbols form one chain, `Λ₀ < ∘₀ < Λ₁ < ∘₁ < ...`, and sit above
//! the unlabelled symbols as follows: every `∘ᵢ` is above application, `λ`,
//! `⇑`, `W` and `id`; `Λ₀` is above `λ` and `id`; `Λᵢ` for `i ≥ 1` is above
//! everything `∘ᵢ₋₁` is above. Finally `⇑ > W`. All other pairs of distinct
//! symbols are incomparable.

use std::collections::HashMap;

use crate::syntax::Var;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LTerm {
    Name(Var),
    One,
    App(Box<LTerm>, Box<LTerm>),
    Lam(Box<LTerm>),
    BoldLam(u64, Box<LTerm>),
    /// `s ∘ᵢ a`
    Comp(u64, LSub, Box<LTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LSub {
    Slash(Box<LTerm>),
    W,
    Id,
    Lift(Box<LSub>),
}

impl LTerm {
    /// Visit labels in pre-order.
    pub fn for_each_label(&self, f: &mut impl FnMut(u64)) {
        match self {
            LTerm::Name(_) | LTerm::One => {}
            LTerm::App(a, b) => {
                a.for_each_label(f);
                b.for_each_label(f);
            }
            LTerm::Lam(b) => b.for_each_label(f),
            LTerm::BoldLam(i, b) => {
                f(*i);
                b.for_each_label(f);
            }
            LTerm::Comp(i, s, b) => {
                f(*i);
                s.for_each_label(f);
                b.for_each_label(f);
            }
        }
    }
}

impl LSub {
    fn for_each_label(&self, f: &mut impl FnMut(u64)) {
        match self {
            LSub::Slash(b) => b.for_each_label(f),
            LSub::W | LSub::Id => {}
            LSub::Lift(s) => s.for_each_label(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Sym {
    Name(Var),
    One,
    App,
    Lam,
    BoldLam(u64),
    Comp(u64),
    Slash,
    W,
    Id,
    Lift,
}

impl Sym {
    /// Position in the chain of labelled symbols.
    fn rank(&self) -> Option<u64> {
        match self {
            Sym::BoldLam(i) => Some(2 * i),
            Sym::Comp(i) => Some(2 * i + 1),
            _ => None,
        }
    }
}

fn prec_gt(f: &Sym, g: &Sym) -> bool {
    match (f.rank(), g.rank()) {
        (Some(r), Some(s)) => r > s,
        (Some(r), None) => match g {
            Sym::Lam | Sym::Id => true,
            // reached through ∘ᵢ, which every rank from 1 up dominates
            Sym::App | Sym::Lift | Sym::W => r >= 1,
            _ => false,
        },
        (None, _) => matches!((f, g), (Sym::Lift, Sym::W)),
    }
}

/// Both terms flattened into one arena so comparisons can be memoized.
struct Arena {
    sym: Vec<Sym>,
    args: Vec<Vec<usize>>,
}

impl Arena {
    fn node(&mut self, sym: Sym, args: Vec<usize>) -> usize {
        self.sym.push(sym);
        self.args.push(args);
        self.sym.len() - 1
    }

    fn term(&mut self, t: &LTerm) -> usize {
        match t {
            LTerm::Name(x) => self.node(Sym::Name(x.clone()), vec![]),
            LTerm::One => self.node(Sym::One, vec![]),
            LTerm::App(a, b) => {
                let (a, b) = (self.term(a), self.term(b));
                self.node(Sym::App, vec![a, b])
            }
            LTerm::Lam(b) => {
                let b = self.term(b);
                self.node(Sym::Lam, vec![b])
            }
            LTerm::BoldLam(i, b) => {
                let b = self.term(b);
                self.node(Sym::BoldLam(*i), vec![b])
            }
            LTerm::Comp(i, s, b) => {
                let (s, b) = (self.sub(s), self.term(b));
                self.node(Sym::Comp(*i), vec![s, b])
            }
        }
    }

    fn sub(&mut self, s: &LSub) -> usize {
        match s {
            LSub::Slash(b) => {
                let b = self.term(b);
                self.node(Sym::Slash, vec![b])
            }
            LSub::W => self.node(Sym::W, vec![]),
            LSub::Id => self.node(Sym::Id, vec![]),
            LSub::Lift(inner) => {
                let i = self.sub(inner);
                self.node(Sym::Lift, vec![i])
            }
        }
    }
}

struct Lpo {
    arena: Arena,
    eq_memo: HashMap<(usize, usize), bool>,
    gt_memo: HashMap<(usize, usize), bool>,
}

impl Lpo {
    fn eq(&mut self, s: usize, t: usize) -> bool {
        if s == t {
            return true;
        }
        if let Some(&r) = self.eq_memo.get(&(s, t)) {
            return r;
        }
        let r = self.arena.sym[s] == self.arena.sym[t]
            && self.arena.args[s].len() == self.arena.args[t].len()
            && (0..self.arena.args[s].len()).all(|i| {
                let (a, b) = (self.arena.args[s][i], self.arena.args[t][i]);
                self.eq(a, b)
            });
        self.eq_memo.insert((s, t), r);
        r
    }

    fn gt(&mut self, s: usize, t: usize) -> bool {
        if let Some(&r) = self.gt_memo.get(&(s, t)) {
            return r;
        }
        let r = self.gt_uncached(s, t);
        self.gt_memo.insert((s, t), r);
        r
    }

    fn gt_uncached(&mut self, s: usize, t: usize) -> bool {
        let ss = self.arena.args[s].clone();
        let ts = self.arena.args[t].clone();
        // some argument of s is at least t
        if ss.iter().any(|&si| self.eq(si, t) || self.gt(si, t)) {
            return true;
        }
        let (f, g) = (self.arena.sym[s].clone(), self.arena.sym[t].clone());
        if prec_gt(&f, &g) {
            return ts.iter().all(|&tj| self.gt(s, tj));
        }
        if f == g && ss.len() == ts.len() {
            let Some(k) = (0..ss.len()).find(|&k| !self.eq(ss[k], ts[k])) else {
                return false;
            };
            return self.gt(ss[k], ts[k]) && ts[k + 1..].iter().all(|&tj| self.gt(s, tj));
        }
        false
    }
}

/// `s >lpo t`.
pub fn lpo_gt(s: &LTerm, t: &LTerm) -> bool {
    let mut arena = Arena {
        sym: Vec::new(),
        args: Vec::new(),
    };
    let (is, it) = (arena.term(s), arena.term(t));
    let mut lpo = Lpo {
        arena,
        eq_memo: HashMap::new(),
        gt_memo: HashMap::new(),
    };
    lpo.gt(is, it)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    fn a() -> LTerm {
        LTerm::App(
            Box::new(LTerm::Name(var("x"))),
            Box::new(LTerm::Comp(0, LSub::W, Box::new(LTerm::One))),
        )
    }

    #[test]
    fn alpha_instances_decrease() {
        for i in 0..4 {
            let lhs = LTerm::BoldLam(i + 1, Box::new(a()));
            let rhs = LTerm::Lam(Box::new(LTerm::Comp(i, LSub::Id, Box::new(a()))));
            assert!(lpo_gt(&lhs, &rhs), "i = {i}");
            assert!(!lpo_gt(&rhs, &lhs));
        }
    }

    #[test]
    fn irreflexive() {
        assert!(!lpo_gt(&a(), &a()));
        let b = LTerm::BoldLam(2, Box::new(a()));
        assert!(!lpo_gt(&b, &b));
    }

    #[test]
    fn lift_shift_instances_decrease() {
        // ⇑s ∘ᵢ₊ⱼ (W ∘ⱼ a)  >  W ∘ᵢ₊ⱼ (s ∘ᵢ₊ⱼ a)
        let s = || LSub::Slash(Box::new(LTerm::Lam(Box::new(LTerm::One))));
        let (i, j) = (1, 0);
        let lhs = LTerm::Comp(
            i + j,
            LSub::Lift(Box::new(s())),
            Box::new(LTerm::Comp(j, LSub::W, Box::new(a()))),
        );
        let rhs = LTerm::Comp(
            i + j,
            LSub::W,
            Box::new(LTerm::Comp(i + j, s(), Box::new(a()))),
        );
        assert!(lpo_gt(&lhs, &rhs));
    }

    #[test]
    fn precedence() {
        assert!(prec_gt(&Sym::Comp(0), &Sym::App));
        assert!(prec_gt(&Sym::Comp(0), &Sym::BoldLam(0)));
        assert!(prec_gt(&Sym::BoldLam(1), &Sym::Comp(0)));
        assert!(prec_gt(&Sym::BoldLam(1), &Sym::W));
        assert!(!prec_gt(&Sym::BoldLam(0), &Sym::W));
        assert!(!prec_gt(&Sym::BoldLam(0), &Sym::Comp(0)));
        assert!(prec_gt(&Sym::Lift, &Sym::W));
        assert!(!prec_gt(&Sym::Slash, &Sym::App));
        assert!(!prec_gt(&Sym::App, &Sym::Slash));
    }
}
