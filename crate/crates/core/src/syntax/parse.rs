use std::collections::BTreeSet;

use super::{is_identifier, Subst, Term, Var};
use crate::context::Context;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at {pos}")]
    Lexical { pos: usize, ch: char },
    #[error("unbalanced delimiter at {pos}: expected {expected:?}")]
    Unbalanced { pos: usize, expected: char },
    #[error("dangling {op:?} at {pos}: nothing follows it")]
    Dangling { pos: usize, op: String },
    #[error("unexpected {found} at {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("{name:?} at {pos} is not a variable name")]
    BadName { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Lambda,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Slash,
    Star,
    Caret,
    Weak,
    Comma,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("variable {s:?}"),
            Tok::Eof => "end of input".to_string(),
            other => format!("{:?}", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Lambda => "\\",
            Tok::Dot => ".",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Slash => "/",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Weak => "W",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Ident(_) | Tok::Eof => "",
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '\\' | 'λ' => Tok::Lambda,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '/' => Tok::Slash,
            '*' | '∘' => Tok::Star,
            '^' => Tok::Caret,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let tok = if name == "W" {
                    Tok::Weak
                } else if is_identifier(&name) {
                    Tok::Ident(name)
                } else {
                    return Err(ParseError::BadName { pos, name });
                };
                out.push((pos, tok));
                continue;
            }
            ch => return Err(ParseError::Lexical { pos, ch }),
        };
        chars.next();
        out.push((pos, tok));
    }
    out.push((input.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(input)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            pos: self.pos(),
            found: self.peek().describe(),
            expected,
        }
    }

    fn ident(&mut self, expected: &'static str) -> Result<Var, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Var::new(&name).expect("lexer only yields identifiers"))
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn close(&mut self, tok: Tok, expected: char) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::Unbalanced {
                pos: self.pos(),
                expected,
            })
        }
    }

    /// Error for an operator with nothing usable after it.
    fn after_operator(&self, op: &Tok, op_pos: usize, expected: &'static str) -> ParseError {
        match self.peek() {
            Tok::Eof | Tok::RParen | Tok::RBracket | Tok::RBrace => ParseError::Dangling {
                pos: op_pos,
                op: op.symbol().to_string(),
            },
            _ => self.unexpected(expected),
        }
    }

    fn starts_subst(&self) -> bool {
        matches!(self.peek(), Tok::LBracket | Tok::Weak | Tok::LBrace)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::LParen | Tok::Lambda)
    }

    // term := subst '*' term | lambda | app
    fn term(&mut self) -> Result<Term, ParseError> {
        if self.starts_subst() {
            let s = self.subst()?;
            let star_pos = self.pos();
            if *self.peek() != Tok::Star {
                return Err(self.unexpected("'*' after a substitution"));
            }
            self.bump();
            if !self.starts_subst() && !self.starts_atom() {
                return Err(self.after_operator(&Tok::Star, star_pos, "a term"));
            }
            let body = self.term()?;
            return Ok(Term::comp(s, body));
        }
        if !self.starts_atom() {
            return Err(self.unexpected("a term"));
        }
        self.app()
    }

    // app := atom+, where a trailing lambda or composition extends to the right
    fn app(&mut self) -> Result<Term, ParseError> {
        let (mut acc, mut open) = self.atom()?;
        while open {
            if self.starts_atom() {
                let (arg, more) = self.atom()?;
                acc = Term::app(acc, arg);
                open = more;
            } else if self.starts_subst() {
                let arg = self.term()?;
                acc = Term::app(acc, arg);
                open = false;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    /// Returns the atom and whether further arguments may follow it.
    fn atom(&mut self) -> Result<(Term, bool), ParseError> {
        match self.peek().clone() {
            Tok::Ident(_) => Ok((Term::var(self.ident("a variable")?), true)),
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.close(Tok::RParen, ')')?;
                Ok((t, true))
            }
            Tok::Lambda => Ok((self.lambda()?, false)),
            _ => Err(self.unexpected("a term")),
        }
    }

    // lambda := '\' x (['\'] y)* '.' term
    fn lambda(&mut self) -> Result<Term, ParseError> {
        let lam_pos = self.pos();
        self.bump();
        if *self.peek() == Tok::Eof {
            return Err(ParseError::Dangling {
                pos: lam_pos,
                op: "\\".to_string(),
            });
        }
        let mut binders = vec![self.ident("a bound variable")?];
        loop {
            match self.peek() {
                Tok::Ident(_) => binders.push(self.ident("a bound variable")?),
                Tok::Lambda => {
                    self.bump();
                    binders.push(self.ident("a bound variable")?);
                }
                _ => break,
            }
        }
        let dot_pos = self.pos();
        if *self.peek() != Tok::Dot {
            return Err(self.unexpected("'.' after the bound variables"));
        }
        self.bump();
        if !self.starts_subst() && !self.starts_atom() {
            return Err(self.after_operator(&Tok::Dot, dot_pos, "a lambda body"));
        }
        let body = self.term()?;
        Ok(binders
            .into_iter()
            .rev()
            .fold(body, |acc, x| Term::lam(x, acc)))
    }

    // subst := satom ('^' x)*
    fn subst(&mut self) -> Result<Subst, ParseError> {
        let mut s = match self.bump() {
            Tok::LBracket => {
                let b = self.term()?;
                if *self.peek() != Tok::Slash {
                    return Err(self.unexpected("'/' inside a substitution"));
                }
                self.bump();
                let x = self.ident("the substituted variable")?;
                self.close(Tok::RBracket, ']')?;
                Subst::slash(b, x)
            }
            Tok::Weak => Subst::weak(self.ident("a variable after W")?),
            Tok::LBrace => {
                let new = self.ident("a variable in a renaming")?;
                let old = self.ident("a second variable in a renaming")?;
                self.close(Tok::RBrace, '}')?;
                Subst::rename(new, old)
            }
            _ => unreachable!("caller checked starts_subst"),
        };
        while *self.peek() == Tok::Caret {
            let caret_pos = self.pos();
            self.bump();
            if !matches!(self.peek(), Tok::Ident(_)) {
                return Err(self.after_operator(&Tok::Caret, caret_pos, "a lifted variable"));
            }
            s = Subst::lift(s, self.ident("a lifted variable")?);
        }
        Ok(s)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            Tok::RParen => Err(ParseError::Unbalanced {
                pos: self.pos(),
                expected: '(',
            }),
            Tok::Star => Err(ParseError::Dangling {
                pos: self.pos(),
                op: "*".to_string(),
            }),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn var_list(&mut self, stop: &Tok) -> Result<Vec<Var>, ParseError> {
        let mut vars = Vec::new();
        if self.peek() == stop {
            return Ok(vars);
        }
        loop {
            vars.push(self.ident("a variable")?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(vars);
            }
        }
    }
}

/// Parse a term.
///
/// Application is left associative; `*` is right associative and binds looser
/// than application; a lambda body extends as far right as possible.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parse a context written `{x,z}; x,x,y`. The local part may be empty or
/// omitted along with the semicolon.
pub fn parse_context(text: &str) -> Result<Context, ParseError> {
    let mut p = Parser::new(text)?;
    if *p.peek() != Tok::LBrace {
        return Err(p.unexpected("'{' opening the global part"));
    }
    p.bump();
    let global: BTreeSet<Var> = p.var_list(&Tok::RBrace)?.into_iter().collect();
    p.close(Tok::RBrace, '}')?;
    let mut local = Vec::new();
    if *p.peek() == Tok::Semi {
        p.bump();
        local = p.var_list(&Tok::Eof)?;
    }
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of the context"));
    }
    Ok(Context::new(global, local))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    fn v(x: &str) -> Term {
        Term::var(var(x))
    }

    #[test]
    fn parses_the_basic_forms() {
        assert_eq!(
            parse_term("(\\x.x) y").unwrap(),
            Term::app(Term::lam(var("x"), v("x")), v("y"))
        );
        assert_eq!(
            parse_term("[y/x] * x").unwrap(),
            Term::comp(Subst::slash(v("y"), var("x")), v("x"))
        );
        assert_eq!(
            parse_term("W x * z").unwrap(),
            Term::comp(Subst::weak(var("x")), v("z"))
        );
        assert_eq!(
            parse_term("[z/x]^y * x").unwrap(),
            Term::comp(
                Subst::lift(Subst::slash(v("z"), var("x")), var("y")),
                v("x")
            )
        );
        assert_eq!(
            parse_term("{y x} * x").unwrap(),
            Term::comp(Subst::rename(var("y"), var("x")), v("x"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // composition is looser than application and right associative
        assert_eq!(
            parse_term("W y * W x * a b").unwrap(),
            Term::comp(
                Subst::weak(var("y")),
                Term::comp(Subst::weak(var("x")), Term::app(v("a"), v("b")))
            )
        );
        assert_eq!(
            parse_term("a b c").unwrap(),
            Term::app(Term::app(v("a"), v("b")), v("c"))
        );
        // lambda bodies extend to the right
        assert_eq!(
            parse_term("\\x. W x * x y").unwrap(),
            Term::lam(
                var("x"),
                Term::comp(Subst::weak(var("x")), Term::app(v("x"), v("y")))
            )
        );
        assert_eq!(
            parse_term("\\x y. x").unwrap(),
            parse_term("\\x.\\y.x").unwrap()
        );
        assert_eq!(
            parse_term("\\x\\y. x").unwrap(),
            parse_term("\\x.\\y.x").unwrap()
        );
        assert_eq!(
            parse_term("f \\x. x").unwrap(),
            Term::app(v("f"), Term::lam(var("x"), v("x")))
        );
        assert_eq!(
            parse_term("[\\x.\\y.x / x]^y^z * x z").unwrap(),
            Term::comp(
                Subst::lift(
                    Subst::lift(
                        Subst::slash(parse_term("\\x.\\y.x").unwrap(), var("x")),
                        var("y")
                    ),
                    var("z")
                ),
                Term::app(v("x"), v("z"))
            )
        );
    }

    #[test]
    fn unicode_input() {
        assert_eq!(
            parse_term("λy.W y ∘ y").unwrap(),
            parse_term("\\y. W y * y").unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_term("x + y"),
            Err(ParseError::Lexical { pos: 2, ch: '+' })
        );
        assert!(matches!(
            parse_term("(x y"),
            Err(ParseError::Unbalanced { pos: 4, expected: ')' })
        ));
        assert!(matches!(
            parse_term("x y)"),
            Err(ParseError::Unbalanced { pos: 3, .. })
        ));
        assert!(matches!(
            parse_term("W x *"),
            Err(ParseError::Dangling { pos: 4, .. })
        ));
        assert!(matches!(
            parse_term("\\x."),
            Err(ParseError::Dangling { pos: 2, .. })
        ));
        assert!(matches!(
            parse_term("[y/x"),
            Err(ParseError::Unbalanced { expected: ']', .. })
        ));
        assert!(matches!(
            parse_term("x * y"),
            Err(ParseError::Dangling { pos: 2, .. })
        ));
        assert!(matches!(
            parse_term("W * y"),
            Err(ParseError::Unexpected { pos: 2, .. })
        ));
        assert!(matches!(
            parse_term("Xy"),
            Err(ParseError::BadName { pos: 0, .. })
        ));
        assert!(parse_term("").is_err());
    }

    #[test]
    fn contexts() {
        let c = parse_context("{x,z}; x,x,y").unwrap();
        assert_eq!(c.global().iter().map(|v| v.as_str()).collect::<Vec<_>>(), ["x", "z"]);
        assert_eq!(c.local().iter().map(|v| v.as_str()).collect::<Vec<_>>(), ["x", "x", "y"]);
        assert_eq!(parse_context("{}").unwrap(), Context::empty());
        let c = parse_context("{x};").unwrap();
        assert_eq!(c.global().len(), 1);
        assert!(c.local().is_empty());
        assert!(parse_context("x, y").is_err());
        assert!(parse_context("{x").is_err());
        assert!(parse_context("{x}; y,").is_err());
        assert!(parse_context("{x,,y}").is_err());
    }
}
