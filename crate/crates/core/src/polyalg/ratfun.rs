use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::MonomialOrder;
use super::poly::Polynomial;
use super::ring::VariableRing;
use super::Rational;
use crate::error::{Error, Result};

/// Element of the fraction field `Q(vars)`, kept as an unreduced quotient.
///
/// Normal form: the denominator is monic (so its leading coefficient is
/// positive), common monomial content is cancelled, a zero numerator forces
/// denominator 1, and a denominator that divides the numerator exactly is
/// absorbed. No multivariate gcd is taken; use [`RationalFunction::equals`]
/// for equality.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// Field operation selector for [`rat_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Mul,
    Inv,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("zero denominator".into()));
        }
        if !super::ring::same_ring(num.ring(), den.ring()) {
            return Err(Error::MalformedInput(
                "numerator and denominator in different rings".into(),
            ));
        }
        let den = den.with_order(num.order());
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.ring(), p.order());
        Self { num: p, den }
    }

    pub fn zero(ring: &Arc<VariableRing>, order: &MonomialOrder) -> Self {
        Self::from_poly(Polynomial::zero(ring, order))
    }

    pub fn constant(ring: &Arc<VariableRing>, order: &MonomialOrder, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(ring, order, c))
    }

    fn normalized(mut num: Polynomial, mut den: Polynomial) -> Self {
        if num.is_zero() {
            let one = Polynomial::one(num.ring(), num.order());
            return Self { num, den: one };
        }
        let a = num.monomial_content();
        let b = den.monomial_content();
        let common: Vec<u32> = a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect();
        if common.iter().any(|&e| e > 0) {
            num = num.div_monomial(&common);
            den = den.div_monomial(&common);
        }
        let lc = den.leading_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if !den.is_constant() && den.len() <= num.len() {
            if let Ok(Some(q)) = num.div_exact(&den) {
                let one = Polynomial::one(num.ring(), num.order());
                return Self { num: q, den: one };
            }
        }
        Self { num, den }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        self.num.ring()
    }

    pub fn order(&self) -> &MonomialOrder {
        self.num.order()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.den == other.den {
            return Ok(Self::normalized(
                self.num.checked_add(&other.num)?,
                self.den.clone(),
            ));
        }
        let n = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        let d = self.den.checked_mul(&other.den)?;
        Ok(Self::normalized(n, d))
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring(), self.order()));
        }
        let n = self.num.checked_mul(&other.num)?;
        let d = self.den.checked_mul(&other.den)?;
        Ok(Self::normalized(n, d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of the zero function".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Equality in the fraction field, by cross-multiplication.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.num.checked_mul(&other.den)? == other.num.checked_mul(&self.den)?)
    }

    /// Value at a rational point, or `None` when the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    /// Value modulo a prime, or `None` when the denominator vanishes.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        let d = self.den.eval_mod(point, p)?;
        if d == 0 {
            return None;
        }
        let n = self.num.eval_mod(point, p)?;
        Some(super::poly::mulmod(n, super::poly::powmod(d, p - 2, p), p))
    }

    pub fn partial_eval(&self, values: &[(usize, Rational)]) -> Result<Self> {
        let d = self.den.partial_eval(values);
        if d.is_zero() {
            return Err(Error::DivisionByZero(
                "substitution makes a denominator vanish".into(),
            ));
        }
        Ok(Self::normalized(self.num.partial_eval(values), d))
    }

    pub fn to_ring(&self, ring: &Arc<VariableRing>, order: &MonomialOrder) -> Result<Self> {
        Ok(Self::normalized(
            self.num.to_ring(ring, order)?,
            self.den.to_ring(ring, order)?,
        ))
    }

    pub fn is_negative_constant(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_negative())
    }
}

/// Fraction-field arithmetic dispatcher.
pub fn rat_arith(
    op: RatOp,
    a: &RationalFunction,
    b: Option<&RationalFunction>,
) -> Result<RationalFunction> {
    match (op, b) {
        (RatOp::Add, Some(b)) => a.add(b),
        (RatOp::Mul, Some(b)) => a.mul(b),
        (RatOp::Inv, None) => a.inv(),
        (RatOp::Inv, Some(_)) => Err(Error::MalformedInput("Inv takes one operand".into())),
        (_, None) => Err(Error::MalformedInput(format!("{op:?} takes two operands"))),
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &Polynomial| {
                if p.len() > 1 || p.leading_coeff().is_some_and(|c| !c.is_one()) {
                    format!("({p})")
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_rational, VariableRing};

    fn setup() -> (Arc<VariableRing>, MonomialOrder) {
        (VariableRing::unknowns(&["x", "y"]).unwrap(), MonomialOrder::lex(2))
    }

    #[test]
    fn arithmetic_examples() {
        let (r, o) = setup();
        let q = |s: &str| parse_rational(s, &r, &o).unwrap();
        let s = rat_arith(RatOp::Add, &q("1/x"), Some(&q("1/x"))).unwrap();
        assert!(s.equals(&q("2/x")).unwrap());
        assert_eq!(s.numer().to_string(), "2");
        let inv = rat_arith(RatOp::Inv, &q("x/y"), None).unwrap();
        assert!(inv.equals(&q("y/x")).unwrap());
        let prod = rat_arith(RatOp::Mul, &q("x/(x+1)"), Some(&q("(x+1)/x"))).unwrap();
        assert!(prod.equals(&q("1")).unwrap());
    }

    #[test]
    fn inverse_of_zero_fails() {
        let (r, o) = setup();
        let z = RationalFunction::zero(&r, &o);
        assert!(matches!(z.inv(), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn normal_form() {
        let (r, o) = setup();
        let q = |s: &str| parse_rational(s, &r, &o).unwrap();
        let a = q("(2*x^2*y)/(-4*x*y^2)");
        assert_eq!(a.to_string(), "(-1/2*x)/y");
        let z = q("0/(x+y)");
        assert!(z.denom().is_one());
        let c = q("(x^2-y^2)/(x-y)");
        assert!(c.is_polynomial());
    }
}
