//! Small recursive-descent expression reader shared by the polynomial and
//! Hecke text formats.
//!
//! Grammar (whitespace is insignificant outside brackets):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ['^' ['-'] int]
//! atom   := number | ident | ident '[' raw ']' | '(' expr ')'
//! number := int ['/' int]
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigRational),
    Ident(String),
    Indexed(String, String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

/// A ring that the expression reader can evaluate into.
pub trait ExprRing: Sized {
    /// Context needed to resolve identifiers (variable names, rank).
    type Ctx;
    fn from_number(ctx: &Self::Ctx, v: &BigRational) -> Result<Self, PolyError>;
    fn from_ident(ctx: &Self::Ctx, name: &str) -> Result<Self, PolyError>;
    fn from_indexed(_ctx: &Self::Ctx, name: &str, _content: &str) -> Result<Self, PolyError> {
        Err(PolyError::Parse(format!("unexpected indexed symbol {name}[..]")))
    }
    fn add(self, other: Self) -> Result<Self, PolyError>;
    fn mul(self, other: Self) -> Result<Self, PolyError>;
    fn neg(self) -> Self;
    fn pow(self, exp: i64) -> Result<Self, PolyError>;
}

fn lex(input: &str) -> Result<Vec<Token>, PolyError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' | '\u{b7}' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: String = chars[start..i].iter().collect();
                let num: BigInt = num.parse().map_err(|_| PolyError::Parse(num.clone()))?;
                // "a/b" with no spaces is a rational literal
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let den: String = chars[start..i].iter().collect();
                    let den: BigInt = den.parse().map_err(|_| PolyError::Parse(den.clone()))?;
                    if den == BigInt::from(0) {
                        return Err(PolyError::Parse("zero denominator".into()));
                    }
                    out.push(Token::Num(BigRational::new(num, den)));
                } else {
                    out.push(Token::Num(BigRational::from_integer(num)));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                if i < chars.len() && chars[i] == '[' {
                    let close = chars[i..]
                        .iter()
                        .position(|&c| c == ']')
                        .ok_or_else(|| PolyError::Parse(format!("unclosed '[' after {name}")))?;
                    let content: String = chars[i + 1..i + close].iter().collect();
                    out.push(Token::Indexed(name, content));
                    i += close + 1;
                } else {
                    out.push(Token::Ident(name));
                }
            }
            other => return Err(PolyError::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Reader<'c, C> {
    tokens: Vec<Token>,
    pos: usize,
    ctx: &'c C,
}

impl<C> Reader<'_, C> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr<R: ExprRing<Ctx = C>>(&mut self) -> Result<R, PolyError> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Plus) => {
                self.pos += 1;
            }
            Some(Token::Minus) => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term::<R>()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term::<R>()?;
                    acc = acc.add(t)?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term::<R>()?;
                    acc = acc.add(t.neg())?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<R: ExprRing<Ctx = C>>(&mut self) -> Result<R, PolyError> {
        let mut acc = self.factor::<R>()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let f = self.factor::<R>()?;
                    acc = acc.mul(f)?;
                }
                // juxtaposition: "3q", "2(x+1)"
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::Indexed(..)) | Some(Token::LParen) => {
                    let f = self.factor::<R>()?;
                    acc = acc.mul(f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor<R: ExprRing<Ctx = C>>(&mut self) -> Result<R, PolyError> {
        let base = self.atom::<R>()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let negative = if self.peek() == Some(&Token::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            let exp = match self.next() {
                Some(Token::Num(v)) if v.is_integer() => {
                    let e: i64 =
                        v.to_integer().try_into().map_err(|_| PolyError::Parse("exponent out of range".into()))?;
                    if negative {
                        -e
                    } else {
                        e
                    }
                }
                other => return Err(PolyError::Parse(format!("bad exponent {other:?}"))),
            };
            base.pow(exp)
        } else {
            Ok(base)
        }
    }

    fn atom<R: ExprRing<Ctx = C>>(&mut self) -> Result<R, PolyError> {
        match self.next() {
            Some(Token::Num(v)) => R::from_number(self.ctx, &v),
            Some(Token::Ident(name)) => R::from_ident(self.ctx, &name),
            Some(Token::Indexed(name, content)) => R::from_indexed(self.ctx, &name, &content),
            Some(Token::LParen) => {
                let inner = self.expr::<R>()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    other => Err(PolyError::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Evaluates `input` in the ring `R`.
pub fn parse_expr<R: ExprRing>(input: &str, ctx: &R::Ctx) -> Result<R, PolyError> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return Err(PolyError::Parse("empty expression".into()));
    }
    let mut reader = Reader { tokens, pos: 0, ctx };
    let value = reader.expr::<R>()?;
    if reader.pos != reader.tokens.len() {
        return Err(PolyError::Parse(format!("trailing input at token {:?}", reader.tokens[reader.pos])));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_rational_literal_and_indexed() {
        let toks = lex("1/3*T[s1 s2] - x^-1").unwrap();
        assert_eq!(toks.len(), 8);
        assert!(matches!(&toks[2], Token::Indexed(n, c) if n == "T" && c == "s1 s2"));
    }

    #[test]
    fn rejects_unclosed_bracket() {
        assert!(lex("T[s1").is_err());
    }
}
