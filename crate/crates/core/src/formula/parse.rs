//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! iff     ::= imp [ "<->" imp ]
//! imp     ::= or [ "->" imp ]
//! or      ::= and { "|" and }
//! and     ::= unary { "&" unary }
//! unary   ::= "~" unary | modal unary | atom | "T" | "F" | "(" iff ")"
//! modal   ::= "E" | "S" | "A" | "K" | "E^" | "S^" | "A^" | "K^"
//! atom    ::= [a-z][a-z0-9_]*
//! ```
//!
//! `&` and `|` associate to the left, `->` to the right, and `<->` does not
//! associate at all.

use thiserror::Error;

use super::{Formula, Modality};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown operator `{token}` at position {position}")]
    UnknownOperator { token: String, position: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { message: String, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    Op(Modality),
    Dual(Modality),
    Top,
    Bot,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("atom `{name}`"),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Op(m) => format!("`{m}`"),
            Tok::Dual(m) => format!("`{m}^`"),
            Tok::Top => "`T`".into(),
            Tok::Bot => "`F`".into(),
        }
    }
}

fn modality_of(c: char) -> Option<Modality> {
    match c {
        'E' => Some(Modality::E),
        'S' => Some(Modality::S),
        'A' => Some(Modality::A),
        'K' => Some(Modality::K),
        _ => None,
    }
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        match c {
            c if c.is_whitespace() => i += 1,
            '~' => {
                toks.push((Tok::Not, pos));
                i += 1;
            }
            '&' => {
                toks.push((Tok::And, pos));
                i += 1;
            }
            '|' => {
                toks.push((Tok::Or, pos));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, pos));
                i += 1;
            }
            '-' if next == Some('>') => {
                toks.push((Tok::Imp, pos));
                i += 2;
            }
            '<' if next == Some('-') && chars.get(i + 2).map(|&(_, c)| c) == Some('>') => {
                toks.push((Tok::Iff, pos));
                i += 3;
            }
            'a'..='z' => {
                let start = i;
                while i < chars.len() && {
                    let c = chars[i].1;
                    c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_'
                } {
                    i += 1;
                }
                let name: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                toks.push((Tok::Ident(name), pos));
            }
            'A'..='Z' => {
                let start = i;
                i += 1;
                let dual = next == Some('^');
                if dual {
                    i += 1;
                }
                if i < chars.len() && is_word_char(chars[i].1) {
                    while i < chars.len() && (is_word_char(chars[i].1) || chars[i].1 == '^') {
                        i += 1;
                    }
                    let token: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                    return Err(ParseError::UnknownOperator {
                        token,
                        position: pos,
                    });
                }
                let tok = match (c, dual) {
                    ('T', false) => Some(Tok::Top),
                    ('F', false) => Some(Tok::Bot),
                    (c, false) => modality_of(c).map(Tok::Op),
                    (c, true) => modality_of(c).map(Tok::Dual),
                };
                match tok {
                    Some(tok) => toks.push((tok, pos)),
                    None => {
                        let token: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                        return Err(ParseError::UnknownOperator {
                            token,
                            position: pos,
                        });
                    }
                }
            }
            c if c.is_ascii_digit() || c == '_' => {
                return Err(ParseError::Syntax {
                    message: format!(
                        "unexpected character `{c}`; atoms start with a lowercase letter"
                    ),
                    position: pos,
                });
            }
            _ => {
                // Collect a run of symbol characters so that e.g. `=>` is reported whole.
                let start = i;
                i += 1;
                while i < chars.len() && {
                    let c = chars[i].1;
                    !c.is_whitespace() && !is_word_char(c) && !"~&|()".contains(c)
                } {
                    i += 1;
                }
                let token: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                return Err(ParseError::UnknownOperator {
                    token,
                    position: pos,
                });
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            message: message.into(),
            position: self.offset(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let left = self.imp()?;
        if self.eat(&Tok::Iff) {
            let right = self.imp()?;
            if self.peek() == Some(&Tok::Iff) {
                return Err(self.error("`<->` is not associative; add parentheses"));
            }
            return Ok(Formula::iff(left, right));
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if self.eat(&Tok::Imp) {
            let right = self.imp()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.and()?;
        while self.eat(&Tok::Or) {
            let right = self.and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.eat(&Tok::And) {
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::Op(m) => Ok(Formula::modal(m, self.unary()?)),
            Tok::Dual(m) => Ok(Formula::dual(m, self.unary()?)),
            Tok::Ident(name) => Ok(Formula::Atom(name)),
            Tok::Top => Ok(Formula::top()),
            Tok::Bot => Ok(Formula::bottom()),
            Tok::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            other => {
                self.pos -= 1;
                Err(self.error(format!("expected a formula, found {}", other.describe())))
            }
        }
    }
}

/// Parses a formula and desugars it to core form.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let formula = parser.iff()?;
    if let Some(tok) = parser.peek() {
        let msg = format!("unexpected {} after complete formula", tok.describe());
        return Err(parser.error(msg));
    }
    Ok(formula)
}
