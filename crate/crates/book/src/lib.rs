//! The guide in `book/` has no way to compile its snippets against this
//! workspace, so each chapter is pulled in here as a module doc and
//! `cargo test --doc` runs them. One module per chapter keeps failures
//! traceable to a file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/syntax.md")]
pub mod syntax {}
#[doc = include_str!("../../../book/src/contexts.md")]
pub mod contexts {}
#[doc = include_str!("../../../book/src/typing.md")]
pub mod typing {}
#[doc = include_str!("../../../book/src/free-variables.md")]
pub mod free_variables {}
#[doc = include_str!("../../../book/src/rewriting.md")]
pub mod rewriting {}
#[doc = include_str!("../../../book/src/de-bruijn.md")]
pub mod de_bruijn {}
#[doc = include_str!("../../../book/src/normal-forms.md")]
pub mod normal_forms {}
#[doc = include_str!("../../../book/src/harness.md")]
pub mod harness {}
