//! Text syntax for rational functions in `x`.
//!
//! Accepts `+ - * / ^`, parentheses, integer and decimal literals, the
//! variable `x`, and implicit products such as `4x` or `2(x-1)`.

use super::ratfunc::RatFunc;
use super::poly::UniPoly;
use crate::error::{domain, Error, Result};
use crate::exact::{parse_rational, Rational};

/// Largest numerator or denominator degree accepted from text.
pub const PARSE_DEGREE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => {}
            'x' | 'X' => out.push(Tok::X),
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            d if d.is_ascii_digit() || d == '.' => {
                let start = i;
                while i + 1 < cs.len() && (cs[i + 1].is_ascii_digit() || cs[i + 1] == '.') {
                    i += 1;
                }
                let lit: String = cs[start..=i].iter().collect();
                out.push(Tok::Num(parse_rational(&lit)?));
            }
            other => return domain(format!("unexpected character {other:?} in map")),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
            check_degree(&acc)?;
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(&Tok::Slash) {
                acc = acc.div(&self.unary()?)?;
            } else if matches!(self.peek(), Some(Tok::X | Tok::LParen | Tok::Num(_))) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
            check_degree(&acc)?;
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat(&Tok::Minus) {
            let v = self.unary()?;
            return Ok(RatFunc::constant(Rational::from_integer((-1).into())).mul(&v));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let e = self.exponent()?;
        let mag = usize::try_from(e.unsigned_abs()).unwrap_or(usize::MAX);
        if !base.is_constant() && base.degree().saturating_mul(mag) > PARSE_DEGREE_CAP {
            return Err(Error::Resource(format!("degree exceeds {PARSE_DEGREE_CAP}")));
        }
        let p = base.pow(mag);
        if e < 0 {
            RatFunc::constant(Rational::from_integer(1.into())).div(&p)
        } else {
            Ok(p)
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat(&Tok::LParen);
        let neg = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let v = match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(q)) if q.is_integer() => {
                self.pos += 1;
                i64::try_from(q.to_integer()).map_err(|_| Error::Resource("exponent too large".into()))?
            }
            _ => return domain("exponent must be an integer literal"),
        };
        if paren && !self.eat(&Tok::RParen) {
            return domain("unbalanced parentheses in exponent");
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(RatFunc::constant(q))
            }
            Some(Tok::X) => {
                self.pos += 1;
                Ok(RatFunc::from_poly(UniPoly::x()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return domain("unbalanced parentheses");
                }
                Ok(v)
            }
            Some(t) => domain(format!("unexpected token {t:?}")),
            None => domain("unexpected end of map"),
        }
    }
}

fn check_degree(f: &RatFunc) -> Result<()> {
    if f.num().degree() > PARSE_DEGREE_CAP || f.den().degree() > PARSE_DEGREE_CAP {
        return Err(Error::Resource(format!("degree exceeds {PARSE_DEGREE_CAP}")));
    }
    Ok(())
}

/// Parses text such as `27/4*x^3 - 27/2*x^2 + 27/4*x` or `(x^2 + 1) / (x - 1)`.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return domain("empty map");
    }
    let mut p = Parser { toks, pos: 0 };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return domain(format!("trailing input in map {s:?}"));
    }
    check_degree(&f)?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn sparse_polynomials() {
        let f = parse_ratfunc("4*x^1 - 4*x^2").unwrap();
        assert_eq!(f, RatFunc::from_poly(UniPoly::from_ints(&[0, 4, -4])));
        let g = parse_ratfunc("27/4*x^3 - 27/2*x^2 + 27/4*x").unwrap();
        assert_eq!(g.to_string(), "27/4*x^3 - 27/2*x^2 + 27/4*x");
        assert_eq!(parse_ratfunc("4x(1-x)").unwrap(), f);
        assert_eq!(parse_ratfunc("-x^2").unwrap(), RatFunc::from_poly(UniPoly::from_ints(&[0, 0, -1])));
    }

    #[test]
    fn quotients() {
        let f = parse_ratfunc("(x^2 + 1) / (x - 1)").unwrap();
        assert_eq!(f.num(), &UniPoly::from_ints(&[1, 0, 1]));
        assert_eq!(f.den(), &UniPoly::from_ints(&[-1, 1]));
        let g = parse_ratfunc("x^-2").unwrap();
        assert_eq!(g.den(), &UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(parse_ratfunc("0.5x").unwrap(), RatFunc::from_poly(UniPoly::new(vec![rat(0, 1), rat(1, 2)])));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_ratfunc("x +"), Err(Error::Domain(_))));
        assert!(matches!(parse_ratfunc("(x"), Err(Error::Domain(_))));
        assert!(matches!(parse_ratfunc("1/(x-x)"), Err(Error::Domain(_))));
        assert!(matches!(parse_ratfunc("y"), Err(Error::Domain(_))));
        assert!(matches!(parse_ratfunc("x^65"), Err(Error::Resource(_))));
        assert!(matches!(parse_ratfunc("(x^40)*(x^40)"), Err(Error::Resource(_))));
    }
}
