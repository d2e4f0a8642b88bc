//! Tiny expression grammar shared by coefficient, polynomial and matrix-entry
//! parsing.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/' | <juxtaposition>) unary)*
//! unary := '-' unary | power
//! power := atom ('^' digits)?
//! atom  := digits | ident | '(' expr ')'
//! ```
//!
//! Juxtaposition is multiplication, so `2+3w`, `(1/2)w` and `2t^2` all parse.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ident(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token {0} at offset {1}")]
    UnexpectedToken(String, usize),
    #[error("exponent out of range at offset {0}")]
    BadExponent(usize),
    #[error("empty expression")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Slash => f.write_str("/"),
            Tok::Caret => f.write_str("^"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((Tok::Num(digits.parse().expect("digits")), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((Tok::Ident(name), pos));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                let t = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push((t, pos));
                i += 1;
            }
            other => return Err(ParseError::UnexpectedChar(other, pos)),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|&(_, o)| o)
            .unwrap_or(usize::MAX)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.next();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            let at = self.offset();
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError::BadExponent(at))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                Some(t) => return Err(ParseError::UnexpectedToken(t.to_string(), at)),
                None => return Err(ParseError::UnexpectedEnd),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.next() {
            Some(Tok::Num(n)) => Ok(Expr::Int(n)),
            Some(Tok::Ident(s)) => Ok(Expr::Ident(s)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let at = self.offset();
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    Some(t) => Err(ParseError::UnexpectedToken(t.to_string(), at)),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            Some(t) => Err(ParseError::UnexpectedToken(t.to_string(), at)),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        let (t, at) = p.toks[p.pos].clone();
        return Err(ParseError::UnexpectedToken(t.to_string(), at));
    }
    Ok(e)
}

/// Wrap `s` in parentheses unless it is a plain (possibly negative)
/// integer or a bare identifier.
pub(crate) fn atomize(s: &str) -> String {
    let body = s.strip_prefix('-').unwrap_or(s);
    let simple = !body.is_empty()
        && (body.chars().all(|c| c.is_ascii_digit())
            || body.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'));
    if simple {
        s.to_string()
    } else {
        format!("({s})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Box<Expr> {
        Box::new(Expr::Int(n.into()))
    }

    #[test]
    fn juxtaposition_binds_like_multiplication() {
        let e = parse_expr("2+3w").unwrap();
        assert_eq!(
            e,
            Expr::Add(
                int(2),
                Box::new(Expr::Mul(int(3), Box::new(Expr::Ident("w".into()))))
            )
        );
        let e = parse_expr("2t^2").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                int(2),
                Box::new(Expr::Pow(Box::new(Expr::Ident("t".into())), 2))
            )
        );
    }

    #[test]
    fn fractions_are_left_associative() {
        let e = parse_expr("1/2w").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::Div(int(1), int(2))),
                Box::new(Expr::Ident("w".into()))
            )
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("").is_err());
        assert!(parse_expr("1 +").is_err());
        assert!(parse_expr("(1").is_err());
        assert!(parse_expr("2 $ 3").is_err());
        assert!(parse_expr("x^y").is_err());
    }
}
