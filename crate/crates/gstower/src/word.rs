//! Words in the generators of a free pro-p group.
//!
//! Grammar (whitespace separates the terms of a product):
//!
//! ```text
//! word := term*
//! term := atom ('^' integer)?
//! atom := name | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! The empty input is the identity word. Exponents are arbitrary integers and
//! are kept structurally; no reduction modulo p happens at the word level
//! (p-power collapse is a phenomenon of the algebra, not the free group).
//!
//! Commutator convention: `[x, y] = x^-1 y^-1 x y`. The depth laws hold under
//! either convention; this one is fixed and used consistently throughout.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupWord {
    /// The i-th generator.
    Gen(usize),
    /// `w^k` for an arbitrary integer `k` (negative means inverse powers).
    Power(Box<GroupWord>, i64),
    /// `[x, y] = x^-1 y^-1 x y`.
    Commutator(Box<GroupWord>, Box<GroupWord>),
    /// Concatenation, left to right; the empty product is the identity.
    Product(Vec<GroupWord>),
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::Product(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        GroupWord::Gen(i)
    }

    pub fn power(w: GroupWord, k: i64) -> Self {
        GroupWord::Power(Box::new(w), k)
    }

    pub fn inverse(w: GroupWord) -> Self {
        GroupWord::Power(Box::new(w), -1)
    }

    pub fn commutator(x: GroupWord, y: GroupWord) -> Self {
        GroupWord::Commutator(Box::new(x), Box::new(y))
    }

    pub fn product(ws: Vec<GroupWord>) -> Self {
        GroupWord::Product(ws)
    }

    /// Largest generator index mentioned, if any.
    pub fn max_gen_index(&self) -> Option<usize> {
        match self {
            GroupWord::Gen(i) => Some(*i),
            GroupWord::Power(w, _) => w.max_gen_index(),
            GroupWord::Commutator(x, y) => x.max_gen_index().max(y.max_gen_index()),
            GroupWord::Product(ws) => ws.iter().filter_map(|w| w.max_gen_index()).max(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Name(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            b'[' => {
                out.push((Token::LBracket, i));
                i += 1;
            }
            b']' => {
                out.push((Token::RBracket, i));
                i += 1;
            }
            b',' => {
                out.push((Token::Comma, i));
                i += 1;
            }
            b'^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            b'-' | b'0'..=b'9' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s = &text[start..i];
                let n: i64 = s.parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("invalid integer `{s}`"),
                })?;
                out.push((Token::Int(n), start));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Token::Name(text[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!(
                        "unexpected character `{}`",
                        text[i..].chars().next().unwrap()
                    ),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    names: Vec<&'a str>,
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<(Token, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<usize> {
        let pos = self.here();
        match self.bump() {
            Some((t, p)) if t == want => Ok(p),
            _ => Err(Error::Parse {
                pos,
                msg: format!("expected {what}"),
            }),
        }
    }

    /// word := term* (stops at `)`, `]`, `,`, or end of input)
    fn word(&mut self) -> Result<GroupWord> {
        let mut terms = Vec::new();
        loop {
            match self.peek() {
                None | Some(Token::RParen) | Some(Token::RBracket) | Some(Token::Comma) => break,
                _ => terms.push(self.term()?),
            }
        }
        if terms.len() == 1 {
            Ok(terms.pop().unwrap())
        } else {
            Ok(GroupWord::Product(terms))
        }
    }

    fn term(&mut self) -> Result<GroupWord> {
        let atom = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let pos = self.here();
            match self.bump() {
                Some((Token::Int(k), _)) => Ok(GroupWord::power(atom, k)),
                _ => Err(Error::Parse {
                    pos,
                    msg: "expected integer exponent after `^`".into(),
                }),
            }
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<GroupWord> {
        let pos = self.here();
        match self.bump() {
            Some((Token::Name(name), p)) => {
                match self.names.iter().position(|n| *n == name.as_str()) {
                    Some(i) => Ok(GroupWord::Gen(i)),
                    None => Err(Error::UnknownGenerator { name, pos: p }),
                }
            }
            Some((Token::LParen, _)) => {
                let w = self.word()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(w)
            }
            Some((Token::LBracket, _)) => {
                let x = self.word()?;
                self.expect(Token::Comma, "`,` between commutator entries")?;
                let y = self.word()?;
                self.expect(Token::RBracket, "`]`")?;
                Ok(GroupWord::commutator(x, y))
            }
            _ => Err(Error::Parse {
                pos,
                msg: "expected a generator name, `(` or `[`".into(),
            }),
        }
    }
}

/// Parses a word over the given generator names. Empty input is the identity.
pub fn parse_word<S: AsRef<str>>(text: &str, names: &[S]) -> Result<GroupWord> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        names: names.iter().map(|s| s.as_ref()).collect(),
        input_len: text.len(),
    };
    let w = parser.word()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse {
            pos: parser.here(),
            msg: "trailing input".into(),
        });
    }
    Ok(w)
}

/// Canonical printer; its output re-parses to a word with the same expansion.
pub fn print_word<S: AsRef<str>>(w: &GroupWord, names: &[S]) -> String {
    fn name<S: AsRef<str>>(i: usize, names: &[S]) -> String {
        names
            .get(i)
            .map(|s| s.as_ref().to_string())
            .unwrap_or_else(|| format!("g{i}"))
    }
    fn atom<S: AsRef<str>>(w: &GroupWord, names: &[S]) -> String {
        match w {
            GroupWord::Gen(i) => name(*i, names),
            GroupWord::Commutator(x, y) => {
                format!("[{},{}]", word(x, names), word(y, names))
            }
            _ => format!("({})", word(w, names)),
        }
    }
    fn word<S: AsRef<str>>(w: &GroupWord, names: &[S]) -> String {
        match w {
            GroupWord::Gen(i) => name(*i, names),
            GroupWord::Power(base, k) => format!("{}^{}", atom(base, names), k),
            GroupWord::Commutator(x, y) => {
                format!("[{},{}]", word(x, names), word(y, names))
            }
            GroupWord::Product(ws) => ws
                .iter()
                .map(|t| match t {
                    GroupWord::Product(_) => atom(t, names),
                    GroupWord::Power(_, _) => word(t, names),
                    _ => word(t, names),
                })
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
    word(w, names)
}
