//! Recursive-descent parser for superfunction expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') ['-'] term)*     (unary minus binds looser than '*')
//! term   := power ('*' power)*
//! power  := atom ('^' natural)?
//! atom   := rational | 'x' | 't1' | 't2' | '(' expr ')'
//! ```

use crate::error::{Error, Result};
use crate::rational::parse_rational;
use crate::superfn::SuperFn;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(String),
    X,
    Theta(u8),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            'x' => Token::X,
            't' => match bytes.get(i + 1) {
                Some(b'1') => {
                    i += 1;
                    Token::Theta(1)
                }
                Some(b'2') => {
                    i += 1;
                    Token::Theta(2)
                }
                _ => return Err(syntax(i, "expected `t1` or `t2`")),
            },
            '0'..='9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                if bytes.get(i + 1) == Some(&b'/') {
                    i += 1;
                    if !bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                        return Err(syntax(i + 1, "expected a denominator after `/`"));
                    }
                    while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                        i += 1;
                    }
                }
                if bytes.get(i + 1) == Some(&b'.') {
                    return Err(syntax(i + 1, "decimals are not allowed; write an exact fraction"));
                }
                Token::Num(text[start..=i].to_string())
            }
            _ => return Err(syntax(i, &format!("unexpected character `{c}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

fn syntax(pos: usize, msg: &str) -> Error {
    Error::Parse {
        pos,
        msg: msg.to_string(),
    }
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
    warnings: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SuperFn> {
        let mut acc = self.signed_term()?;
        loop {
            if self.eat(&Token::Plus) {
                acc = &acc + &self.signed_term()?;
            } else if self.eat(&Token::Minus) {
                acc = &acc - &self.signed_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed_term(&mut self) -> Result<SuperFn> {
        if self.eat(&Token::Minus) {
            Ok(-self.signed_term()?)
        } else {
            self.term()
        }
    }

    fn term(&mut self) -> Result<SuperFn> {
        let mut acc = self.power()?;
        while self.eat(&Token::Star) {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<SuperFn> {
        let at = self.offset();
        let base = self.atom()?;
        if !self.eat(&Token::Caret) {
            return Ok(base);
        }
        let exp_at = self.offset();
        let n: u32 = match self.peek() {
            Some(Token::Num(s)) if !s.contains('/') => s
                .parse()
                .map_err(|_| syntax(exp_at, "exponent too large"))?,
            _ => return Err(syntax(exp_at, "expected a natural exponent")),
        };
        self.pos += 1;
        let result = (0..n).fold(SuperFn::one(), |acc, _| &acc * &base);
        if result.is_zero() && !base.is_zero() && n > 1 {
            self.warnings
                .push(format!("position {at}: power {n} of a nilpotent factor is zero"));
        }
        Ok(result)
    }

    fn atom(&mut self) -> Result<SuperFn> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Token::Num(s) => {
                let r = parse_rational(&s).map_err(|_| syntax(at, &format!("invalid literal `{s}`")))?;
                Ok(SuperFn::constant(r))
            }
            Token::X => Ok(SuperFn::x()),
            Token::Theta(i) => Ok(SuperFn::theta(i)),
            Token::Open => {
                let inner = self.expr()?;
                if !self.eat(&Token::Close) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            other => {
                self.pos -= 1;
                Err(syntax(at, &format!("unexpected `{}`", describe(&other))))
            }
        }
    }
}

fn describe(t: &Token) -> &'static str {
    match t {
        Token::Plus => "+",
        Token::Minus => "-",
        Token::Star => "*",
        Token::Caret => "^",
        Token::Open => "(",
        Token::Close => ")",
        Token::Num(_) => "number",
        Token::X => "x",
        Token::Theta(_) => "theta",
    }
}

/// Parses an expression and returns it with any nilpotency warnings.
pub fn parse_superfn_with_warnings(text: &str) -> Result<(SuperFn, Vec<String>)> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        end: text.len(),
        warnings: Vec::new(),
    };
    let f = p.expr()?;
    if p.pos < tokens.len() {
        let at = p.offset();
        return Err(syntax(at, "unexpected trailing input"));
    }
    Ok((f, p.warnings))
}

pub fn parse_superfn(text: &str) -> Result<SuperFn> {
    parse_superfn_with_warnings(text).map(|(f, _)| f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::rational::{int, rat};

    #[test]
    fn examples() {
        let f = parse_superfn("x^2*t1 + 3/2*t2").unwrap();
        assert_eq!(
            f,
            SuperFn::new(
                Poly::zero(),
                Poly::monomial(int(1), 2),
                Poly::constant(rat(3, 2)),
                Poly::zero()
            )
        );
        assert_eq!(parse_superfn("t2*t1").unwrap(), -SuperFn::theta1() * SuperFn::theta2());
        assert!(parse_superfn("t1*t1").unwrap().is_zero());
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_superfn("-x^2").unwrap(), -(SuperFn::x() * SuperFn::x()));
        assert_eq!(parse_superfn("2*x^2").unwrap(), (SuperFn::x() * SuperFn::x()).scale(&int(2)));
        assert_eq!(parse_superfn("1 - -x").unwrap(), SuperFn::one() + SuperFn::x());
        assert_eq!(
            parse_superfn("(1 + x)^2").unwrap(),
            parse_superfn("1 + 2*x + x^2").unwrap()
        );
        assert_eq!(parse_superfn("x^0").unwrap(), SuperFn::one());
    }

    #[test]
    fn nilpotent_power_warns() {
        let (f, w) = parse_superfn_with_warnings("t1^2 + x").unwrap();
        assert_eq!(f, SuperFn::x());
        assert_eq!(w.len(), 1);
        let (_, w) = parse_superfn_with_warnings("t1^1").unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn errors_carry_position() {
        let pos = |s: &str| match parse_superfn(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected a parse error for `{s}`, got {other:?}"),
        };
        assert_eq!(pos("x + "), 4);
        assert_eq!(pos("x + y"), 4);
        assert_eq!(pos("1.5*x"), 1);
        assert_eq!(pos("(x + 1"), 6);
        assert_eq!(pos("x ^ t1"), 4);
        assert_eq!(pos("3/0"), 0);
        assert_eq!(pos("x x"), 2);
        assert_eq!(pos(""), 0);
        assert_eq!(pos("t3"), 0);
    }

    #[test]
    fn prints_round_trip() {
        for s in ["-3/2*x^2*t1 - t1*t2", "7", "x + x*t1*t2", "-1/3"] {
            let f = parse_superfn(s).unwrap();
            assert_eq!(f.to_string(), s);
            assert_eq!(parse_superfn(&f.to_string()).unwrap(), f);
        }
    }
}
