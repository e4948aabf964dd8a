//! Recursive-descent parser for words, laws and equations.
//!
//! ```text
//! word     := term { [ "*" ] term }
//! term     := factor [ "^" exponent ]
//! factor   := variable | "(" word ")" | "[" word { "," word } "]" | constant
//! exponent := [ "-" ] digit { digit }
//! constant := "<" cycles ">" | "e"          (mixed words only)
//! law      := word "=" "1"
//! ```

use crate::error::{Error, Result};
use crate::perm::parse_cycles;

use super::{Law, Word};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    mixed: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, mixed: bool) -> Self {
        Parser { src, pos: 0, mixed }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.bump();
                Ok(())
            }
            Some(d) => self.err(format!("expected `{c}`, found `{d}`")),
            None => self.err(format!("expected `{c}`, found end of input")),
        }
    }

    fn at_term_start(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '[' || c == '<')
    }

    fn word(&mut self) -> Result<Word> {
        let mut terms = vec![self.term()?];
        loop {
            if self.peek() == Some('*') {
                self.bump();
                terms.push(self.term()?);
            } else if self.at_term_start() {
                terms.push(self.term()?);
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Word::Product(terms)
        })
    }

    fn term(&mut self) -> Result<Word> {
        let f = self.factor()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.exponent()?;
            return Ok(Word::Power(Box::new(f), e));
        }
        Ok(f)
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected an integer exponent");
        }
        let value: i64 = match rest[..len].parse() {
            Ok(v) => v,
            Err(_) => return self.err("exponent out of range"),
        };
        self.pos += len;
        Ok(if neg { -value } else { value })
    }

    fn factor(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.bump();
                let mut parts = vec![self.word()?];
                while self.peek() == Some(',') {
                    self.bump();
                    parts.push(self.word()?);
                }
                self.expect(']')?;
                if parts.len() < 2 {
                    return self.err("a commutator needs at least two entries");
                }
                Ok(Word::Commutator(parts))
            }
            Some('<') => {
                if !self.mixed {
                    return self.err("constants are only allowed in equations");
                }
                let start = self.pos;
                self.bump();
                let Some(len) = self.src[self.pos..].find('>') else {
                    return self.err("unterminated constant");
                };
                let body = &self.src[self.pos..self.pos + len];
                let cycles = parse_cycles(body).map_err(|e| match e {
                    Error::Syntax { pos, msg } => Error::Syntax {
                        pos: start + 1 + pos,
                        msg,
                    },
                    other => other,
                })?;
                self.pos += len + 1;
                Ok(Word::Const(cycles))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let rest = &self.src[self.pos..];
                let len = rest
                    .find(|c: char| !c.is_ascii_alphanumeric())
                    .unwrap_or(rest.len());
                let name = &rest[..len];
                if name == "e" {
                    if !self.mixed {
                        return self.err("the identity literal `e` is only allowed in equations");
                    }
                    self.pos += len;
                    return Ok(Word::identity());
                }
                self.pos += len;
                Ok(Word::Var(name.to_string()))
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

/// Parses a coefficient-free word.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut p = Parser::new(text, false);
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

/// Parses a word that may contain constants `<(1 2)>` and `e`.
pub fn parse_mixed_word(text: &str) -> Result<Word> {
    let mut p = Parser::new(text, true);
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

/// Parses `w = 1`; a bare word is accepted as shorthand.
pub fn parse_law(text: &str) -> Result<Law> {
    let mut p = Parser::new(text, false);
    let w = p.word()?;
    if p.peek() == Some('=') {
        p.bump();
        if p.peek() != Some('1') {
            return p.err("a law has the form `word = 1`");
        }
        p.bump();
    }
    p.finish()?;
    Ok(Law::new(w))
}

/// Parses `lhs = rhs` over mixed words; `1` is accepted for the identity
/// on the right-hand side.
pub fn parse_equation(text: &str) -> Result<(Word, Word)> {
    let mut p = Parser::new(text, true);
    let lhs = p.word()?;
    p.expect('=')?;
    let rhs = if p.peek() == Some('1') {
        p.bump();
        Word::identity()
    } else {
        p.word()?
    };
    p.finish()?;
    Ok((lhs, rhs))
}

/// Equations separated by `;` or newlines; blank entries are skipped.
pub fn parse_system(text: &str) -> Result<Vec<(Word, Word)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for chunk in text.split([';', '\n']) {
        if !chunk.trim().is_empty() {
            out.push(parse_equation(chunk).map_err(|e| match e {
                Error::Syntax { pos, msg } => Error::Syntax {
                    pos: pos + offset,
                    msg,
                },
                other => other,
            })?);
        }
        offset += chunk.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Word {
        Word::var(n)
    }

    #[test]
    fn nested_commutator_law() {
        let w = parse_word("[[x,y]^3, y^3, y^2]").unwrap();
        let expected = Word::comm(vec![
            Word::comm(vec![v("x"), v("y")]).pow(3),
            v("y").pow(3),
            v("y").pow(2),
        ]);
        assert_eq!(w, expected);
        assert_eq!(w.variables().len(), 2);
    }

    #[test]
    fn negative_exponent() {
        assert_eq!(parse_word("x^-1").unwrap(), v("x").pow(-1));
    }

    #[test]
    fn juxtaposed_product() {
        let w = parse_word("(x^3 y^3)^4 [x^3, y^6]^3").unwrap();
        let expected = Word::product(vec![
            Word::product(vec![v("x").pow(3), v("y").pow(3)]).pow(4),
            Word::comm(vec![v("x").pow(3), v("y").pow(6)]).pow(3),
        ]);
        assert_eq!(w, expected);
        // Tight spelling and explicit `*` agree.
        assert_eq!(parse_word("(x^3y^3)^4*[x^3,y^6]^3").unwrap(), expected);
    }

    #[test]
    fn laws_and_equations() {
        assert_eq!(parse_law("x^12 = 1").unwrap().lhs, v("x").pow(12));
        assert!(parse_law("x = y").is_err());
        let (l, r) = parse_equation("x^2 = <(1 2 3)>").unwrap();
        assert_eq!(l, v("x").pow(2));
        assert_eq!(r, Word::Const(vec![vec![1, 2, 3]]));
        let (_, r) = parse_equation("[x, y] = e").unwrap();
        assert_eq!(r, Word::identity());
        let sys = parse_system("x^2 = e; [x,y] <(1 2)> = 1\n y = x").unwrap();
        assert_eq!(sys.len(), 3);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_word("x ^ ") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_word("[x]") {
            Err(Error::Syntax { .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_word("x $ y").is_err());
        assert!(parse_word("e").is_err());
        assert!(parse_word("<(1 2)>").is_err());
        assert!(parse_word("(x y").is_err());
    }
}
