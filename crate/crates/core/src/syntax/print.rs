use super::{Subst, Term};

/// Print a term in the ASCII concrete syntax accepted by [`parse_term`].
///
/// Arguments that are applications, lambdas or compositions are always
/// parenthesized, as is a lambda or composition in function position.
///
/// [`parse_term`]: super::parse_term
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    term(t, &mut out);
    out
}

pub(super) fn print_subst(s: &Subst) -> String {
    let mut out = String::new();
    subst(s, &mut out);
    out
}

fn term(t: &Term, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x.as_str()),
        Term::App(f, a) => {
            match **f {
                Term::Lam(..) | Term::Comp(..) => paren(f, out),
                _ => term(f, out),
            }
            out.push(' ');
            match **a {
                Term::Var(_) => term(a, out),
                _ => paren(a, out),
            }
        }
        Term::Lam(x, b) => {
            out.push('\\');
            out.push_str(x.as_str());
            out.push_str(". ");
            term(b, out);
        }
        Term::Comp(s, b) => {
            subst(s, out);
            out.push_str(" * ");
            term(b, out);
        }
    }
}

fn paren(t: &Term, out: &mut String) {
    out.push('(');
    term(t, out);
    out.push(')');
}

fn subst(s: &Subst, out: &mut String) {
    match s {
        Subst::Slash(b, x) => {
            out.push('[');
            term(b, out);
            out.push('/');
            out.push_str(x.as_str());
            out.push(']');
        }
        Subst::Weak(x) => {
            out.push_str("W ");
            out.push_str(x.as_str());
        }
        Subst::Rename(y, x) => {
            out.push('{');
            out.push_str(y.as_str());
            out.push(' ');
            out.push_str(x.as_str());
            out.push('}');
        }
        Subst::Lift(inner, x) => {
            subst(inner, out);
            out.push('^');
            out.push_str(x.as_str());
        }
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use crate::syntax::arb::arb_term;
    use crate::syntax::parse_term;

    fn round(text: &str) -> String {
        parse_term(text).unwrap().to_string()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(round("\\y.W y*y"), "\\y. W y * y");
        assert_eq!(round("x y"), "x y");
        assert_eq!(round("[y/x]*x"), "[y/x] * x");
        assert_eq!(round("[z/x]^y*x"), "[z/x]^y * x");
        assert_eq!(round("W x^y * z"), "W x^y * z");
        assert_eq!(round("{y x} * x"), "{y x} * x");
        assert_eq!(round("x (y z)"), "x (y z)");
        assert_eq!(round("f \\x.x"), "f (\\x. x)");
        assert_eq!(round("(\\x.x) y"), "(\\x. x) y");
        assert_eq!(round("(W x * y) z"), "(W x * y) z");
        assert_eq!(round("[\\x.\\y.x/x] * x"), "[\\x. \\y. x/x] * x");
    }

    proptest! {
        #[test]
        fn printing_then_parsing_is_the_identity(t in arb_term(5)) {
            prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
    }
}
