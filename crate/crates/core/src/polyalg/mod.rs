//! Exact sparse multivariate polynomials and rational functions over Q.

mod monomial;
mod poly;
mod ratfun;
mod ring;
mod text;

pub use monomial::{mono_compare, Monomial, MonomialOrder, OrderKind};
pub use poly::{poly_divmod, poly_mul, Polynomial};
pub use ratfun::{rat_arith, RatOp, RationalFunction};
pub use ring::{VarRole, VariableRing};
pub use text::{parse_polynomial, parse_rational, parse_rational_constant, Expr};

pub(crate) use monomial::{divides, is_coprime};
pub(crate) use poly::{mulmod, powmod, rat_mod};

/// Exact rational coefficients with arbitrary-precision parts.
pub type Rational = num_rational::BigRational;
