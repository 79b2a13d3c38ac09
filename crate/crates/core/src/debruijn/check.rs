//! The judgements `n ⊢ a` and `n ⊢ s ▷ m`.

use super::{DBSub, DBTerm};

/// `n ⊢ a`: names need an empty environment, the index needs a nonempty one.
pub fn db_check(n: usize, a: &DBTerm) -> bool {
    match a {
        DBTerm::Name(_) => n == 0,
        DBTerm::One => n >= 1,
        DBTerm::App(f, x) => db_check(n, f) && db_check(n, x),
        DBTerm::Lam(b) | DBTerm::BoldLam(b) => db_check(n + 1, b),
        DBTerm::Comp(s, b) => db_check_sub(n, s).is_some_and(|m| db_check(m, b)),
    }
}

/// The output `m` of `n ⊢ s ▷ m`, which is unique when it exists.
pub fn db_check_sub(n: usize, s: &DBSub) -> Option<usize> {
    match s {
        DBSub::Slash(b) => db_check(n, b).then_some(n + 1),
        DBSub::Shift => n.checked_sub(1),
        DBSub::Id => (n >= 1).then_some(n),
        DBSub::Lift(inner) => Some(db_check_sub(n.checked_sub(1)?, inner)? + 1),
    }
}
