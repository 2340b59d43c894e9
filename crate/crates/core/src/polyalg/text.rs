//! Canonical text rendering of polynomials and a parser for the same grammar.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Rendering writes terms in the polynomial's stored order, e.g.
//! `3/2*x^2*y - 1`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::monomial::MonomialOrder;
use super::poly::Polynomial;
use super::ratfun::RationalFunction;
use super::ring::VariableRing;
use super::Rational;
use crate::error::{Error, Result};

pub(crate) fn render(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let ring = p.ring();
    let mut out = String::new();
    for (k, (c, e)) in p.terms().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mut factors: Vec<String> = Vec::new();
        let is_one_mono = e.iter().all(|&x| x == 0);
        if !a.is_one() || is_one_mono {
            factors.push(a.to_string());
        }
        for (v, &x) in e.iter().enumerate() {
            match x {
                0 => {}
                1 => factors.push(ring.name(v).to_string()),
                _ => factors.push(format!("{}^{}", ring.name(v), x)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Parsed expression tree, independent of any ring.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let toks = tokenize(src)?;
        let mut p = Parser { toks, pos: 0 };
        let e = p.expr()?;
        if p.pos < p.toks.len() {
            return Err(Error::Parse {
                offset: p.toks[p.pos].1,
                message: "unexpected trailing input".into(),
            });
        }
        Ok(e)
    }

    pub fn identifiers(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_idents(&mut out);
        out
    }

    fn collect_idents(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_idents(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_idents(out);
                b.collect_idents(out);
            }
        }
    }

    pub fn to_rational(
        &self,
        ring: &Arc<VariableRing>,
        order: &MonomialOrder,
    ) -> Result<RationalFunction> {
        Ok(match self {
            Expr::Num(c) => RationalFunction::constant(ring, order, c.clone()),
            Expr::Var(v) => {
                let i = ring.index_of(v).ok_or_else(|| {
                    Error::MalformedInput(format!("unknown variable `{v}` (ring {ring})"))
                })?;
                RationalFunction::from_poly(Polynomial::var(ring, order, i))
            }
            Expr::Neg(a) => a.to_rational(ring, order)?.neg(),
            Expr::Add(a, b) => a.to_rational(ring, order)?.add(&b.to_rational(ring, order)?)?,
            Expr::Sub(a, b) => a.to_rational(ring, order)?.sub(&b.to_rational(ring, order)?)?,
            Expr::Mul(a, b) => a.to_rational(ring, order)?.mul(&b.to_rational(ring, order)?)?,
            Expr::Div(a, b) => a.to_rational(ring, order)?.div(&b.to_rational(ring, order)?)?,
            Expr::Pow(a, k) => {
                let base = a.to_rational(ring, order)?;
                let mut acc = RationalFunction::constant(ring, order, Rational::one());
                for _ in 0..*k {
                    acc = acc.mul(&base)?;
                }
                acc
            }
        })
    }
}

/// Parses a rational expression over `ring`.
pub fn parse_rational(
    src: &str,
    ring: &Arc<VariableRing>,
    order: &MonomialOrder,
) -> Result<RationalFunction> {
    Expr::parse(src)?.to_rational(ring, order)
}

/// Parses a polynomial over `ring`; a genuine quotient is rejected.
pub fn parse_polynomial(
    src: &str,
    ring: &Arc<VariableRing>,
    order: &MonomialOrder,
) -> Result<Polynomial> {
    let r = parse_rational(src, ring, order)?;
    if !r.is_polynomial() {
        return Err(Error::MalformedInput(format!("`{src}` is not a polynomial")));
    }
    Ok(r.numer().clone())
}

/// Parses a rational constant such as `3/4`, `-2` or `0`.
pub fn parse_rational_constant(src: &str) -> Result<Rational> {
    let e = Expr::parse(src)?;
    if !e.identifiers().is_empty() {
        return Err(Error::MalformedInput(format!("`{src}` is not a rational constant")));
    }
    let ring = VariableRing::unknowns::<&str>(&[])?;
    let o = MonomialOrder::lex(0);
    e.to_rational(&ring, &o)?
        .constant_value()
        .ok_or_else(|| Error::MalformedInput(format!("`{src}` is not a rational constant")))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((Tok::Num(s.parse().unwrap()), off));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((Tok::Ident(s), off));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), off));
            i += 1;
        } else {
            return Err(Error::Parse {
                offset: off,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((Tok::Sym(c), _)) => Some(*c),
            _ => None,
        }
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(usize::MAX)
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek_sym() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek_sym() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some((Tok::Num(n), _)) => {
                    let k: u32 = match u32::try_from(n) {
                        Ok(k) if k <= 10_000 => k,
                        _ => return self.err("exponent too large"),
                    };
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(n), _)) => {
                self.pos += 1;
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Some((Tok::Ident(s), _)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some((Tok::Sym('('), _)) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek_sym() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_canonical_form() {
        let r = VariableRing::unknowns(&["x", "y"]).unwrap();
        let o = MonomialOrder::lex(2);
        let p = parse_polynomial("-1 + y*x^2*3/2", &r, &o).unwrap();
        assert_eq!(p.to_string(), "3/2*x^2*y - 1");
        let q = parse_polynomial("-x + -y^3", &r, &o).unwrap();
        assert_eq!(q.to_string(), "-x - y^3");
        assert_eq!(parse_polynomial("x - x", &r, &o).unwrap().to_string(), "0");
    }

    #[test]
    fn render_parse_round_trip() {
        let r = VariableRing::unknowns(&["G12", "Q_1", "t"]).unwrap();
        let o = MonomialOrder::grevlex(3);
        let p = parse_polynomial("(G12 - 2/3*Q_1)^3 * t - 7", &r, &o).unwrap();
        let again = parse_polynomial(&p.to_string(), &r, &o).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn errors() {
        let r = VariableRing::unknowns(&["x"]).unwrap();
        let o = MonomialOrder::lex(1);
        assert!(matches!(parse_polynomial("x +", &r, &o), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x $ 2", &r, &o), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("z", &r, &o), Err(Error::MalformedInput(_))));
        assert!(parse_polynomial("1/x", &r, &o).is_err());
        assert!(matches!(parse_rational("x/0", &r, &o), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn constants() {
        assert_eq!(
            parse_rational_constant("-3/4").unwrap(),
            Rational::new((-3).into(), 4.into())
        );
        assert!(parse_rational_constant("x").is_err());
        let e = Expr::parse("a*b + c/(a-1)").unwrap();
        assert_eq!(
            e.identifiers().into_iter().collect::<Vec<_>>(),
            vec!["a", "b", "c"]
        );
    }
}
