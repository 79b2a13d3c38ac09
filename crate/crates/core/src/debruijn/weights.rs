//! Interpretations used for termination.
//!
//! `weights12` is the pair of polynomial interpretations ordering plain
//! propagation lexicographically. `weight` is the additive measure used to
//! label compositions and marked abstractions before comparing terms with the
//! path order.

use num_bigint::BigUint;

use super::lpo::{LSub, LTerm};
use super::{DBSub, DBTerm};

/// `(‖a‖₁, ‖a‖₂)`. Marked abstractions count as plain ones.
pub fn weights12(a: &DBTerm) -> (BigUint, BigUint) {
    match a {
        DBTerm::Name(_) | DBTerm::One => (2u32.into(), 2u32.into()),
        DBTerm::App(f, x) => {
            let (f1, f2) = weights12(f);
            let (x1, x2) = weights12(x);
            (f1 + x1 + 1u32, f2 + x2 + 1u32)
        }
        DBTerm::Lam(b) | DBTerm::BoldLam(b) => {
            let (b1, b2) = weights12(b);
            (b1 + 1u32, b2 + 1u32)
        }
        DBTerm::Comp(s, b) => {
            let (s1, s2) = weights12_sub(s);
            let (b1, b2) = weights12(b);
            (b1 * s1, b2 * s2)
        }
    }
}

pub fn weights12_sub(s: &DBSub) -> (BigUint, BigUint) {
    match s {
        DBSub::Slash(b) => weights12(b),
        DBSub::Shift | DBSub::Id => (2u32.into(), 2u32.into()),
        DBSub::Lift(inner) => {
            let (i1, i2) = weights12_sub(inner);
            (i1, i2 * 2u32)
        }
    }
}

/// `‖a‖`: names and the index weigh nothing, application takes the maximum,
/// each abstraction adds one and a composition adds its two sides.
pub fn weight(a: &DBTerm) -> u64 {
    match a {
        DBTerm::Name(_) | DBTerm::One => 0,
        DBTerm::App(f, x) => weight(f).max(weight(x)),
        DBTerm::Lam(b) | DBTerm::BoldLam(b) => weight(b) + 1,
        DBTerm::Comp(s, b) => weight_sub(s) + weight(b),
    }
}

pub fn weight_sub(s: &DBSub) -> u64 {
    match s {
        DBSub::Slash(b) => weight(b),
        DBSub::Shift | DBSub::Id => 0,
        DBSub::Lift(inner) => weight_sub(inner),
    }
}

/// Label every composition and marked abstraction with its weight.
pub fn label(a: &DBTerm) -> LTerm {
    fn go(a: &DBTerm) -> (LTerm, u64) {
        match a {
            DBTerm::Name(x) => (LTerm::Name(x.clone()), 0),
            DBTerm::One => (LTerm::One, 0),
            DBTerm::App(f, x) => {
                let ((lf, wf), (lx, wx)) = (go(f), go(x));
                (LTerm::App(Box::new(lf), Box::new(lx)), wf.max(wx))
            }
            DBTerm::Lam(b) => {
                let (lb, wb) = go(b);
                (LTerm::Lam(Box::new(lb)), wb + 1)
            }
            DBTerm::BoldLam(b) => {
                let (lb, wb) = go(b);
                (LTerm::BoldLam(wb + 1, Box::new(lb)), wb + 1)
            }
            DBTerm::Comp(s, b) => {
                let ((ls, ws), (lb, wb)) = (go_sub(s), go(b));
                (LTerm::Comp(ws + wb, ls, Box::new(lb)), ws + wb)
            }
        }
    }
    fn go_sub(s: &DBSub) -> (LSub, u64) {
        match s {
            DBSub::Slash(b) => {
                let (lb, wb) = go(b);
                (LSub::Slash(Box::new(lb)), wb)
            }
            DBSub::Shift => (LSub::W, 0),
            DBSub::Id => (LSub::Id, 0),
            DBSub::Lift(inner) => {
                let (li, wi) = go_sub(inner);
                (LSub::Lift(Box::new(li)), wi)
            }
        }
    }
    go(a).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    fn pair(a: u32, b: u32) -> (BigUint, BigUint) {
        (a.into(), b.into())
    }

    #[test]
    fn polynomial_weights() {
        assert_eq!(weights12(&DBTerm::One), pair(2, 2));
        assert_eq!(weights12(&DBTerm::comp(DBSub::Shift, DBTerm::One)), pair(4, 4));
        assert_eq!(weights12_sub(&DBSub::lift(DBSub::Shift)), pair(2, 4));
    }

    #[test]
    fn additive_weight() {
        assert_eq!(weight(&DBTerm::One), 0);
        assert_eq!(weight(&DBTerm::lam(DBTerm::One)), 1);
        let a = DBTerm::comp(DBSub::slash(DBTerm::lam(DBTerm::One)), DBTerm::One);
        assert_eq!(weight(&a), 1);
    }

    #[test]
    fn labels() {
        let x = || DBTerm::name(var("x"));
        let a = DBTerm::bold_lam(DBTerm::comp(DBSub::Shift, x()));
        let LTerm::BoldLam(1, inner) = label(&a) else {
            panic!("outer label")
        };
        assert!(matches!(*inner, LTerm::Comp(0, LSub::W, _)));
        assert_eq!(label(&DBTerm::One), LTerm::One);
        let b = DBTerm::comp(
            DBSub::slash(DBTerm::comp(DBSub::Shift, x())),
            DBTerm::comp(DBSub::Shift, DBTerm::comp(DBSub::Shift, DBTerm::name(var("y")))),
        );
        let mut labels = Vec::new();
        label(&b).for_each_label(&mut |i| labels.push(i));
        assert_eq!(labels, [0, 0, 0, 0]);
    }
}
