use std::fmt;

use super::Formula;

/// A syntax error, located by byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at byte {}: expected {}, found {}",
            self.offset, self.expected, self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Not,
    Box,
    Diamond,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Atom(name) => write!(f, "atom `{name}`"),
            Tok::Not => f.write_str("`~`"),
            Tok::Box => f.write_str("`[]`"),
            Tok::Diamond => f.write_str("`<>`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Implies => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let rest = &input[i..];
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("<>") {
            (Tok::Diamond, 2)
        } else if rest.starts_with("[]") {
            (Tok::Box, 2)
        } else if rest.starts_with("->") {
            (Tok::Implies, 2)
        } else {
            match c {
                b'~' => (Tok::Not, 1),
                b'&' => (Tok::And, 1),
                b'|' => (Tok::Or, 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b'a'..=b'z' => {
                    let len = rest
                        .bytes()
                        .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                        .count();
                    (Tok::Atom(rest[..len].to_string()), len)
                }
                _ => {
                    let ch = rest.chars().next().unwrap_or('?');
                    return Err(ParseError {
                        offset: i,
                        expected: "a formula token".into(),
                        found: format!("`{ch}`"),
                    });
                }
            }
        };
        toks.push((i, tok));
        i += len;
    }
    toks.push((input.len(), Tok::Eof));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> ParseError {
        let (offset, tok) = &self.toks[self.pos];
        ParseError {
            offset: *offset,
            expected: expected.to_string(),
            found: tok.to_string(),
        }
    }

    // iff := imp ( "<->" iff )?
    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    // imp := or ( "->" imp )?
    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Diamond => {
                self.bump();
                Ok(Formula::diamond(self.unary()?))
            }
            Tok::Atom(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("an atom, `~`, `[]`, `<>` or `(`")),
        }
    }
}

/// Parses a formula. Precedence, tightest first: `~ [] <>`, `&`, `|`, `->`,
/// `<->`. `->` and `<->` associate to the right, `&` and `|` to the left.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = parser.iff()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error("a binary connective or end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse("[]p -> p").unwrap(),
            Formula::implies(Formula::boxed(atom("p")), atom("p"))
        );
        assert_eq!(
            parse("~[]~q").unwrap(),
            Formula::not(Formula::boxed(Formula::not(atom("q"))))
        );
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(atom("p"), Formula::implies(atom("q"), atom("r")))
        );
    }

    #[test]
    fn associativity() {
        assert_eq!(
            parse("p & q & r").unwrap(),
            Formula::and(Formula::and(atom("p"), atom("q")), atom("r"))
        );
        assert_eq!(
            parse("p | q | r").unwrap(),
            Formula::or(Formula::or(atom("p"), atom("q")), atom("r"))
        );
        assert_eq!(
            parse("p <-> q <-> r").unwrap(),
            Formula::iff(atom("p"), Formula::iff(atom("q"), atom("r")))
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("p | q & r -> s <-> t").unwrap(),
            Formula::iff(
                Formula::implies(
                    Formula::or(atom("p"), Formula::and(atom("q"), atom("r"))),
                    atom("s")
                ),
                atom("t")
            )
        );
        assert_eq!(
            parse("[]p & q").unwrap(),
            Formula::and(Formula::boxed(atom("p")), atom("q"))
        );
        assert_eq!(
            parse("<>(p & q)").unwrap(),
            Formula::diamond(Formula::and(atom("p"), atom("q")))
        );
    }

    #[test]
    fn whitespace_and_comments() {
        assert_eq!(
            parse("  [] p\n-> # trailing\n p  # done").unwrap(),
            parse("[]p -> p").unwrap()
        );
        assert_eq!(
            parse("<>q<->~[]~q").unwrap(),
            parse("<>q <-> ~[]~q").unwrap()
        );
    }

    #[test]
    fn atom_with_digits_and_underscores() {
        assert_eq!(parse("god_exists2").unwrap(), atom("god_exists2"));
        assert_eq!(parse("aBc").unwrap(), atom("aBc"));
    }

    #[test]
    fn error_offsets() {
        let err = parse("p & ").unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.found, "end of input");

        let err = parse("p q").unwrap_err();
        assert_eq!(err.offset, 2);

        let err = parse("(p -> q").unwrap_err();
        assert_eq!(err.offset, 7);
        assert_eq!(err.expected, "`)`");

        let err = parse("P").unwrap_err();
        assert_eq!(err.offset, 0);

        let err = parse("p & & q").unwrap_err();
        assert_eq!(err.offset, 4);

        let err = parse("[p]").unwrap_err();
        assert_eq!(err.offset, 0);

        assert!(parse("").is_err());
        assert!(parse("# only a comment").is_err());
    }
}
