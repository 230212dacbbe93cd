//! Text grammar for field elements: integer coefficients mod p, `g` for the
//! F_{p^k} generator, `t` for the transcendental, with `+ - * / ^` and parens.
//! E.g. `(g*t^2 + 2)/(t^3 + g^2)`.

use super::fq::Fq;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

struct Parser<'a> {
    fq: &'a Fq,
    chars: Vec<char>,
    pos: usize,
}

pub fn parse_ratfunc(fq: &Fq, text: &str) -> Result<RatFunc> {
    let mut p = Parser {
        fq,
        chars: text.chars().collect(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().map_or(false, |c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = acc.add(self.fq, &rhs);
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = acc.sub(self.fq, &rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = acc.mul(self.fq, &rhs);
            } else if self.eat('/') {
                let rhs = self.unary()?;
                acc = acc
                    .div(self.fq, &rhs)
                    .map_err(|_| self.err("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            Ok(self.unary()?.neg(self.fq))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.uint()?;
            if e > u32::MAX as u64 {
                return Err(self.err("exponent too large"));
            }
            return base
                .pow(self.fq, e as i64)
                .map_err(|_| self.err("cannot raise zero to this power"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some('t') => {
                self.pos += 1;
                Ok(RatFunc::var(self.fq))
            }
            Some('g') => {
                self.pos += 1;
                Ok(RatFunc::constant(self.fq, self.fq.gen()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(RatFunc::constant(self.fq, self.fq.from_u64(n % self.fq.p())))
            }
            Some(_) => Err(self.err("expected `(`, `t`, `g`, or a number")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u64>().map_err(|_| self.err("number too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_grammar_example() {
        let f9 = Fq::new(3, 2).unwrap();
        let x = parse_ratfunc(&f9, "(g*t^2 + 2)/(t^3 + g^2)").unwrap();
        // g^2 = -1 = 2 in F_9, so the denominator is t^3 + 2.
        assert_eq!(x.to_string(), "(g*t^2 + 2)/(t^3 + 2)");
    }

    #[test]
    fn canonicalizes_on_parse() {
        let f3 = Fq::new(3, 1).unwrap();
        let x = parse_ratfunc(&f3, "(t^2+1)/(t)").unwrap();
        assert_eq!(x.to_string(), "(t^2 + 1)/(t)");
        let y = parse_ratfunc(&f3, "(t^2 - 1)/(t + 1)").unwrap();
        assert_eq!(y.to_string(), "(t + 2)/(1)");
    }

    #[test]
    fn roundtrips_canonical_strings() {
        let f9 = Fq::new(3, 2).unwrap();
        for s in [
            "(0)/(1)",
            "(1)/(1)",
            "(2*g + 1)/(1)",
            "(t^2 + g*t + 2)/(t^3 + 2)",
            "((g + 1)*t + 2)/(t)",
        ] {
            let x = parse_ratfunc(&f9, s).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let f3 = Fq::new(3, 1).unwrap();
        assert!(matches!(
            parse_ratfunc(&f3, "t + %"),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(parse_ratfunc(&f3, "1/(t - t)").is_err());
    }
}
