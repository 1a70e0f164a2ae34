//! One grammar for every algebra.
//!
//! ```text
//! sum     := neg (("+" | "-") neg)*
//! neg     := "-" neg | product
//! product := power ("*" power)*
//! power   := atom ("^" ["-"] INT)?
//! atom    := INT ["/" INT] | IDENT ["[" INT ("," INT)* "]"]
//!          | "(" sum ")" | "[" sum "," sum "]"
//! ```

use std::fmt;

use dnilp_core::Rat;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rat),
    Sym(String),
    Indexed(String, Vec<i64>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Comm(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
            continue;
        }
        if "+-*^/()[],".contains(c) {
            out.push(Token {
                tok: Tok::Op(c),
                line: l0,
                col: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError {
            line,
            col,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    allow_negative: bool,
    known: Option<&'a dyn Fn(&str) -> bool>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: t.line,
            col: t.col,
            message: message.into(),
        })
    }

    fn is_op(&self, c: char) -> bool {
        self.peek().tok == Tok::Op(c)
    }

    fn expect_op(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Op(c) {
            Ok(())
        } else {
            self.err(&t, format!("expected `{c}`"))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.neg()?;
        loop {
            if self.is_op('+') {
                self.next();
                e = Expr::Add(Box::new(e), Box::new(self.neg()?));
            } else if self.is_op('-') {
                self.next();
                e = Expr::Sub(Box::new(e), Box::new(self.neg()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn neg(&mut self) -> Result<Expr, ParseError> {
        if self.is_op('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.neg()?)));
        }
        self.product()
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.power()?;
        while self.is_op('*') {
            self.next();
            e = Expr::Mul(Box::new(e), Box::new(self.power()?));
        }
        Ok(e)
    }

    fn small_int(&self, t: &Token, v: &BigInt) -> Result<i64, ParseError> {
        i64::try_from(v).or_else(|_| self.err(t, "integer out of range"))
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.is_op('^') {
            return Ok(base);
        }
        self.next();
        let negative = if self.is_op('-') {
            let t = self.next();
            if !self.allow_negative {
                return self.err(
                    &t,
                    "negative exponents are only allowed in localized algebras",
                );
            }
            true
        } else {
            false
        };
        let t = self.next();
        match &t.tok {
            Tok::Int(v) => {
                let k = self.small_int(&t, v)?;
                Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
            }
            _ => self.err(&t, "expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Int(n) => {
                if self.is_op('/') {
                    self.next();
                    let dt = self.next();
                    match dt.tok {
                        Tok::Int(d) if d != BigInt::from(0) => Ok(Expr::Num(Rat::new(n, d))),
                        Tok::Int(_) => self.err(&dt, "zero denominator"),
                        _ => self.err(&dt, "expected an integer denominator"),
                    }
                } else {
                    Ok(Expr::Num(Rat::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                if let Some(known) = self.known {
                    if !known(&name) {
                        return self.err(&t, format!("unknown symbol `{name}`"));
                    }
                }
                if self.is_op('[') {
                    self.next();
                    let mut idx = Vec::new();
                    loop {
                        let neg = if self.is_op('-') {
                            self.next();
                            true
                        } else {
                            false
                        };
                        let it = self.next();
                        match &it.tok {
                            Tok::Int(v) => {
                                let k = self.small_int(&it, v)?;
                                idx.push(if neg { -k } else { k });
                            }
                            _ => return self.err(&it, "expected an integer index"),
                        }
                        if self.is_op(',') {
                            self.next();
                        } else {
                            break;
                        }
                    }
                    self.expect_op(']')?;
                    Ok(Expr::Indexed(name, idx))
                } else {
                    Ok(Expr::Sym(name))
                }
            }
            Tok::Op('(') => {
                let e = self.sum()?;
                let close = self.next();
                if close.tok != Tok::Op(')') {
                    return self.err(&close, "unbalanced parenthesis: expected `)`");
                }
                Ok(e)
            }
            Tok::Op('[') => {
                let a = self.sum()?;
                self.expect_op(',')?;
                let b = self.sum()?;
                let close = self.next();
                if close.tok != Tok::Op(']') {
                    return self.err(&close, "unbalanced bracket: expected `]`");
                }
                Ok(Expr::Comm(Box::new(a), Box::new(b)))
            }
            Tok::End => self.err(&t, "unexpected end of input"),
            Tok::Op(c) => self.err(&t, format!("unexpected `{c}`")),
        }
    }
}

/// Parses `text`; `allow_negative` permits `a^-k`.
pub fn parse(text: &str, allow_negative: bool) -> Result<Expr, ParseError> {
    parse_inner(text, allow_negative, None)
}

/// As [`parse`], rejecting identifiers outside the alphabet `known`.
pub fn parse_checked(
    text: &str,
    allow_negative: bool,
    known: &dyn Fn(&str) -> bool,
) -> Result<Expr, ParseError> {
    parse_inner(text, allow_negative, Some(known))
}

fn parse_inner(
    text: &str,
    allow_negative: bool,
    known: Option<&dyn Fn(&str) -> bool>,
) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        allow_negative,
        known,
    };
    let e = p.sum()?;
    let t = p.next();
    if t.tok != Tok::End {
        return p.err(&t, "unexpected trailing input");
    }
    Ok(e)
}

/// Splits on commas outside brackets and parentheses.
pub fn split_top_level(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Box<Expr> {
        Box::new(Expr::Sym(s.into()))
    }

    #[test]
    fn products_and_precedence() {
        assert_eq!(
            parse("d1*x1", false).unwrap(),
            Expr::Mul(sym("d1"), sym("x1"))
        );
        assert_eq!(
            parse("-x^2*y", false).unwrap(),
            Expr::Neg(Box::new(Expr::Mul(
                Box::new(Expr::Pow(sym("x"), 2)),
                sym("y")
            )))
        );
        assert_eq!(
            parse("a - b - c", false).unwrap(),
            Expr::Sub(Box::new(Expr::Sub(sym("a"), sym("b"))), sym("c"))
        );
        assert_eq!(
            parse("[h, x^2]", false).unwrap(),
            Expr::Comm(sym("h"), Box::new(Expr::Pow(sym("x"), 2)))
        );
        assert_eq!(
            parse("1/2*v[1,-2]", false).unwrap(),
            Expr::Mul(
                Box::new(Expr::Num(Rat::new(1.into(), 2.into()))),
                Box::new(Expr::Indexed("v".into(), vec![1, -2]))
            )
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("x^-1", false).unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
        assert!(parse("x^-1", true).is_ok());
        let e = parse("(x1 + d1", false).unwrap_err();
        assert!(e.message.contains("unbalanced"));
        let e = parse("x1 $ d1", false).unwrap_err();
        assert_eq!((e.line, e.col), (1, 4));
        let e = parse("x1 +\n  * d1", false).unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert!(parse("[x1, d1", false).is_err());
        assert!(parse("1/0", false).is_err());
        assert!(parse("", false).is_err());
        let known = |s: &str| s == "x1";
        let e = parse_checked("x1 + y", false, &known).unwrap_err();
        assert_eq!((e.col, e.message.as_str()), (6, "unknown symbol `y`"));
    }

    #[test]
    fn top_level_split() {
        assert_eq!(
            split_top_level("x1, [x1,d1], d1"),
            vec!["x1", "[x1,d1]", "d1"]
        );
    }
}
