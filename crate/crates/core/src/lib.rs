//! A calculus of explicit substitutions over named variables, with an explicit
//! alpha rule.
//!
//! Terms are checked against contexts made of a global set of names and a
//! local list of bound names. The crate provides the checker, free variables
//! as a least context, the rewrite system with traces, the translation into
//! de Bruijn calculi with their termination weights and path order, and a
//! randomized harness for the metatheory.
//!
//! ```
//! use lamalpha::{parse_term, rewrite::{normalize, RuleSet, Strategy}};
//!
//! let t = parse_term("(\\x.\\y.x) y").unwrap();
//! let (nf, trace, exhausted) = normalize(&t, RuleSet::FULL, Strategy::LeftmostOutermost, 100);
//! assert!(!exhausted);
//! assert_eq!(nf.to_string(), "\\z. y");
//! assert_eq!(trace.steps.len(), 7);
//! ```

pub mod context;
pub mod debruijn;
pub mod freevars;
pub mod harness;
pub mod normalforms;
pub mod rewrite;
pub mod syntax;
pub mod typing;

pub use context::Context;
pub use freevars::fv;
pub use syntax::{parse_context, parse_term, print_term, var, Path, Subst, Term, Var};
pub use typing::{derive, derive_subst, is_good, well_formed, Derivation};
