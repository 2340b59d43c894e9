use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{divides, Monomial, MonomialOrder};
use super::ring::{same_ring, VariableRing};
use super::Rational;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are stored flat (`exps` holds `len * arity` exponents) and kept
/// sorted strictly descending in `order`, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<VariableRing>,
    order: MonomialOrder,
    coeffs: Vec<Rational>,
    exps: Vec<u32>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<VariableRing>, order: &MonomialOrder) -> Self {
        assert_eq!(ring.arity(), order.arity(), "order arity must match ring");
        Self {
            ring: ring.clone(),
            order: order.clone(),
            coeffs: Vec::new(),
            exps: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<VariableRing>, order: &MonomialOrder, c: Rational) -> Self {
        let mut p = Self::zero(ring, order);
        if !c.is_zero() {
            p.coeffs.push(c);
            p.exps.extend(std::iter::repeat_n(0, ring.arity()));
        }
        p
    }

    pub fn one(ring: &Arc<VariableRing>, order: &MonomialOrder) -> Self {
        Self::constant(ring, order, Rational::one())
    }

    pub fn var(ring: &Arc<VariableRing>, order: &MonomialOrder, i: usize) -> Self {
        let mut p = Self::zero(ring, order);
        p.coeffs.push(Rational::one());
        let mut e = vec![0; ring.arity()];
        e[i] = 1;
        p.exps = e;
        p
    }

    /// Builds a polynomial from arbitrary terms; duplicates are merged and
    /// zero coefficients dropped.
    pub fn from_terms(
        ring: &Arc<VariableRing>,
        order: &MonomialOrder,
        terms: Vec<(Rational, Monomial)>,
    ) -> Result<Self> {
        let n = ring.arity();
        if order.arity() != n {
            return Err(Error::MalformedInput("order arity does not match ring".into()));
        }
        let mut raw = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            if m.arity() != n {
                return Err(Error::MalformedInput(format!(
                    "monomial of arity {} in a ring of arity {n}",
                    m.arity()
                )));
            }
            raw.push((c, m.exponents().to_vec()));
        }
        Ok(Self::from_raw(ring.clone(), order.clone(), raw))
    }

    pub(crate) fn from_raw(
        ring: Arc<VariableRing>,
        order: MonomialOrder,
        mut raw: Vec<(Rational, Vec<u32>)>,
    ) -> Self {
        raw.sort_by(|a, b| order.compare(&b.1, &a.1));
        let mut coeffs: Vec<Rational> = Vec::with_capacity(raw.len());
        let mut exps: Vec<u32> = Vec::with_capacity(raw.len() * ring.arity());
        let n = ring.arity();
        let mut last: Option<Vec<u32>> = None;
        for (c, e) in raw {
            if last.as_deref() == Some(&e[..]) {
                let lc = coeffs.last_mut().unwrap();
                *lc += c;
                continue;
            }
            if let Some(lc) = coeffs.last() {
                if lc.is_zero() {
                    coeffs.pop();
                    exps.truncate(exps.len() - n);
                }
            }
            coeffs.push(c);
            exps.extend_from_slice(&e);
            last = Some(e);
        }
        if let Some(lc) = coeffs.last() {
            if lc.is_zero() {
                coeffs.pop();
                exps.truncate(exps.len() - n);
            }
        }
        Self {
            ring,
            order,
            coeffs,
            exps,
        }
    }

    pub fn ring(&self) -> &Arc<VariableRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn arity(&self) -> usize {
        self.ring.arity()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty() || (self.coeffs.len() == 1 && self.exps.iter().all(|&e| e == 0))
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.coeffs[0].is_one()
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn exps(&self, i: usize) -> &[u32] {
        let n = self.arity();
        &self.exps[i * n..(i + 1) * n]
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &[u32])> + '_ {
        let n = self.arity();
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (c, &self.exps[i * n..(i + 1) * n]))
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms().map(|(_, e)| Monomial::from_exponents(e.to_vec())).collect()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    pub fn leading_exps(&self) -> Option<&[u32]> {
        (!self.is_zero()).then(|| self.exps(0))
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.leading_exps().map(|e| Monomial::from_exponents(e.to_vec()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms().map(|(_, e)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Which variables occur in some term.
    pub fn support(&self) -> Vec<bool> {
        let mut s = vec![false; self.arity()];
        for (_, e) in self.terms() {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    s[i] = true;
                }
            }
        }
        s
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms().any(|(_, e)| e[v] > 0)
    }

    /// Same polynomial sorted under another order of the same ring.
    pub fn with_order(&self, order: &MonomialOrder) -> Self {
        if &self.order == order {
            return self.clone();
        }
        assert_eq!(order.arity(), self.arity(), "order arity must match ring");
        let raw = self.terms().map(|(c, e)| (c.clone(), e.to_vec())).collect();
        Self::from_raw(self.ring.clone(), order.clone(), raw)
    }

    fn check_compatible(&self, other: &Self, what: &str) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::MalformedInput(format!(
                "{what}: operands live in different rings ({} vs {})",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    fn aligned<'a>(&self, other: &'a Self) -> std::borrow::Cow<'a, Self> {
        if self.order == other.order {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.with_order(&self.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "add")?;
        let o = self.aligned(other);
        Ok(self.add_scaled_shifted(&Rational::one(), None, &o))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "sub")?;
        let o = self.aligned(other);
        Ok(self.add_scaled_shifted(&-Rational::one(), None, &o))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "mul")?;
        let o = self.aligned(other);
        Ok(self.mul_aligned(&o))
    }

    fn mul_aligned(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring, &self.order);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        // Sum of shifted copies of the longer factor.
        let mut acc = Self::zero(&self.ring, &self.order);
        for (c, e) in small.terms() {
            acc = acc.add_scaled_shifted(c, Some(e), big);
        }
        acc
    }

    /// `self + c * x^shift * other`, merging two sorted term lists.
    /// Both operands must share ring and order.
    pub(crate) fn add_scaled_shifted(
        &self,
        c: &Rational,
        shift: Option<&[u32]>,
        other: &Self,
    ) -> Self {
        let n = self.arity();
        let mut coeffs = Vec::with_capacity(self.len() + other.len());
        let mut exps = Vec::with_capacity((self.len() + other.len()) * n);
        let mut buf = vec![0u32; n];
        let (mut i, mut j) = (0, 0);
        let shifted = |j: usize, buf: &mut Vec<u32>| {
            let e = other.exps(j);
            match shift {
                Some(s) => {
                    for k in 0..n {
                        buf[k] = e[k] + s[k];
                    }
                }
                None => buf.copy_from_slice(e),
            }
        };
        if j < other.len() {
            shifted(j, &mut buf);
        }
        while i < self.len() || j < other.len() {
            let ord = if i >= self.len() {
                Ordering::Less
            } else if j >= other.len() {
                Ordering::Greater
            } else {
                self.order.compare(self.exps(i), &buf)
            };
            match ord {
                Ordering::Greater => {
                    coeffs.push(self.coeffs[i].clone());
                    exps.extend_from_slice(self.exps(i));
                    i += 1;
                }
                Ordering::Less => {
                    coeffs.push(c * &other.coeffs[j]);
                    exps.extend_from_slice(&buf);
                    j += 1;
                    if j < other.len() {
                        shifted(j, &mut buf);
                    }
                }
                Ordering::Equal => {
                    let s = &self.coeffs[i] + c * &other.coeffs[j];
                    if !s.is_zero() {
                        coeffs.push(s);
                        exps.extend_from_slice(&buf);
                    }
                    i += 1;
                    j += 1;
                    if j < other.len() {
                        shifted(j, &mut buf);
                    }
                }
            }
        }
        Self {
            ring: self.ring.clone(),
            order: self.order.clone(),
            coeffs,
            exps,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring, &self.order);
        }
        Self {
            ring: self.ring.clone(),
            order: self.order.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            exps: self.exps.clone(),
        }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn mul_monomial(&self, e: &[u32]) -> Self {
        let n = self.arity();
        let mut exps = self.exps.clone();
        for chunk in exps.chunks_mut(n.max(1)) {
            for (k, x) in chunk.iter_mut().enumerate().take(n) {
                *x += e[k];
            }
        }
        Self {
            ring: self.ring.clone(),
            order: self.order.clone(),
            coeffs: self.coeffs.clone(),
            exps,
        }
    }

    /// Divides every term by `x^e`; `e` must divide every monomial.
    pub(crate) fn div_monomial(&self, e: &[u32]) -> Self {
        let n = self.arity();
        let mut exps = self.exps.clone();
        for chunk in exps.chunks_mut(n.max(1)) {
            for (k, x) in chunk.iter_mut().enumerate().take(n) {
                *x -= e[k];
            }
        }
        Self {
            ring: self.ring.clone(),
            order: self.order.clone(),
            coeffs: self.coeffs.clone(),
            exps,
        }
    }

    /// Componentwise minimum of the exponents of all terms.
    pub fn monomial_content(&self) -> Vec<u32> {
        let n = self.arity();
        if self.is_zero() {
            return vec![0; n];
        }
        let mut m = self.exps(0).to_vec();
        for (_, e) in self.terms().skip(1) {
            for k in 0..n {
                m[k] = m[k].min(e[k]);
            }
        }
        m
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring, &self.order);
        for _ in 0..k {
            acc = acc.mul_aligned(self);
        }
        acc
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Multivariate division of `self` by an ordered list of divisors in the
    /// order of `self`. Returns quotients and remainder with
    /// `self = sum q_i d_i + r` and no term of `r` divisible by any leading
    /// monomial.
    pub fn divmod(&self, divisors: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
        let mut divs = Vec::with_capacity(divisors.len());
        for d in divisors {
            self.check_compatible(d, "divmod")?;
            if d.is_zero() {
                return Err(Error::MalformedInput("zero divisor in division".into()));
            }
            divs.push(self.aligned(d).into_owned());
        }
        let mut quotients: Vec<Vec<(Rational, Vec<u32>)>> = vec![Vec::new(); divs.len()];
        let mut rem_terms: Vec<(Rational, Vec<u32>)> = Vec::new();
        let mut p = self.clone();
        let n = self.arity();
        while !p.is_zero() {
            let lt = p.exps(0).to_vec();
            let lc = p.coeffs[0].clone();
            let mut divided = false;
            for (k, d) in divs.iter().enumerate() {
                let dl = d.exps(0);
                if divides(dl, &lt) {
                    let shift: Vec<u32> = (0..n).map(|v| lt[v] - dl[v]).collect();
                    let c = &lc / &d.coeffs[0];
                    p = p.add_scaled_shifted(&-c.clone(), Some(&shift), d);
                    quotients[k].push((c, shift));
                    divided = true;
                    break;
                }
            }
            if !divided {
                rem_terms.push((lc, lt));
                p = p.drop_leading();
            }
        }
        let qs = quotients
            .into_iter()
            .map(|t| Self::from_raw(self.ring.clone(), self.order.clone(), t))
            .collect();
        let r = Self::from_raw(self.ring.clone(), self.order.clone(), rem_terms);
        Ok((qs, r))
    }

    fn drop_leading(mut self) -> Self {
        let n = self.arity();
        self.coeffs.remove(0);
        self.exps.drain(0..n);
        self
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        if let Some(c) = d.constant_value() {
            if c.is_zero() {
                return Err(Error::DivisionByZero("exact division by zero".into()));
            }
            return Ok(Some(self.scale(&c.recip())));
        }
        let (q, r) = self.divmod(std::slice::from_ref(d))?;
        Ok(r.is_zero().then(|| q.into_iter().next().unwrap()))
    }

    /// Evaluates at a rational point given for every variable.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity());
        let mut acc = Rational::zero();
        for (c, e) in self.terms() {
            let mut t = c.clone();
            for (v, &x) in e.iter().enumerate() {
                if x > 0 {
                    t *= pow_rat(&point[v], x);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluates modulo a prime; `point` holds residues for every variable.
    /// Returns `None` when a coefficient denominator vanishes mod `p`.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (c, e) in self.terms() {
            let mut t = rat_mod(c, p)?;
            for (v, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = mulmod(t, powmod(point[v], x as u64, p), p);
                }
            }
            acc = (acc + t) % p;
        }
        Some(acc)
    }

    /// Substitutes fixed rational values for some variables (the ring is
    /// unchanged, the variables simply no longer occur).
    pub fn partial_eval(&self, values: &[(usize, Rational)]) -> Self {
        let mut raw = Vec::with_capacity(self.len());
        for (c, e) in self.terms() {
            let mut c = c.clone();
            let mut e = e.to_vec();
            for (v, val) in values {
                if e[*v] > 0 {
                    c *= pow_rat(val, e[*v]);
                    e[*v] = 0;
                }
            }
            raw.push((c, e));
        }
        Self::from_raw(self.ring.clone(), self.order.clone(), raw)
    }

    /// Re-expresses the polynomial in another ring: variable `i` of `self`
    /// becomes variable `map[i]` of `ring`. Variables mapped to `None` must
    /// not occur.
    pub fn map_ring(
        &self,
        ring: &Arc<VariableRing>,
        order: &MonomialOrder,
        map: &[Option<usize>],
    ) -> Result<Self> {
        let m = ring.arity();
        let mut raw = Vec::with_capacity(self.len());
        for (c, e) in self.terms() {
            let mut ne = vec![0u32; m];
            for (v, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[v] {
                    Some(w) => ne[w] += x,
                    None => {
                        return Err(Error::MalformedInput(format!(
                            "variable `{}` has no image in {}",
                            self.ring.name(v),
                            ring
                        )))
                    }
                }
            }
            raw.push((c.clone(), ne));
        }
        Ok(Self::from_raw(ring.clone(), order.clone(), raw))
    }

    /// Maps into `ring` by variable name.
    pub fn to_ring(&self, ring: &Arc<VariableRing>, order: &MonomialOrder) -> Result<Self> {
        let map: Vec<Option<usize>> = self
            .ring
            .names()
            .iter()
            .map(|n| ring.index_of(n))
            .collect();
        self.map_ring(ring, order, &map)
    }

    /// Least common denominator of the coefficients, and the integer
    /// polynomial coefficients obtained after scaling by it.
    pub fn integer_coeffs(&self) -> (BigInt, Vec<BigInt>) {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        (l, ints)
    }
}

pub(crate) fn pow_rat(x: &Rational, e: u32) -> Rational {
    num_traits::pow::pow(x.clone(), e as usize)
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn int_mod(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    num_traits::ToPrimitive::to_u64(&r).unwrap()
}

/// Residue of a rational mod `p`; `None` if the denominator vanishes.
pub(crate) fn rat_mod(c: &Rational, p: u64) -> Option<u64> {
    let d = int_mod(c.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mulmod(int_mod(c.numer(), p), powmod(d, p - 2, p), p))
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !same_ring(&self.ring, &other.ring) || self.len() != other.len() {
            return false;
        }
        let o = self.aligned(other);
        self.coeffs == o.coeffs && self.exps == o.exps
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::render(self))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics if the operands live in different rings; see
    /// [`Polynomial::checked_add`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial add")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial sub")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial mul")
    }
}

/// Product of two polynomials of the same ring.
pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.checked_mul(q)
}

/// Division of `f` by an ordered divisor list under `order`.
pub fn poly_divmod(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: &MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    if order.arity() != f.arity() {
        return Err(Error::MalformedInput("order arity does not match ring".into()));
    }
    f.with_order(order).divmod(divisors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_polynomial;

    fn ring_xy() -> Arc<VariableRing> {
        VariableRing::unknowns(&["x", "y"]).unwrap()
    }

    fn p(s: &str, ring: &Arc<VariableRing>) -> Polynomial {
        parse_polynomial(s, ring, &MonomialOrder::lex(ring.arity())).unwrap()
    }

    #[test]
    fn product_examples() {
        let r = ring_xy();
        assert_eq!(&p("x+1", &r) * &p("x-1", &r), p("x^2-1", &r));
        assert!((&p("x+y", &r) * &Polynomial::zero(&r, &MonomialOrder::lex(2))).is_zero());
        assert_eq!(&p("x+y", &r) * &p("x+y", &r), p("x^2+2*x*y+y^2", &r));
    }

    #[test]
    fn ring_mismatch_is_malformed() {
        let r = ring_xy();
        let s = VariableRing::unknowns(&["a"]).unwrap();
        let a = p("x", &r);
        let b = parse_polynomial("a", &s, &MonomialOrder::lex(1)).unwrap();
        assert!(matches!(poly_mul(&a, &b), Err(Error::MalformedInput(_))));
    }

    #[test]
    fn division_examples() {
        let r = ring_xy();
        let lex = MonomialOrder::lex(2);
        let (q, rem) = poly_divmod(&p("x^2-1", &r), &[p("x-1", &r)], &lex).unwrap();
        assert_eq!(q[0], p("x+1", &r));
        assert!(rem.is_zero());

        let (q, rem) = poly_divmod(&p("x", &r), &[p("y", &r)], &lex).unwrap();
        assert!(q[0].is_zero());
        assert_eq!(rem, p("x", &r));

        // Worked by hand: x^2 y + x y^2 + y^2 by [xy - 1, y^2 - 1].
        let f = p("x^2*y+x*y^2+y^2", &r);
        let divs = [p("x*y-1", &r), p("y^2-1", &r)];
        let (q, rem) = poly_divmod(&f, &divs, &lex).unwrap();
        assert_eq!(rem, p("x+y+1", &r));
        assert_eq!(q[0], p("x+y", &r));
        assert_eq!(q[1], p("1", &r));
    }

    #[test]
    fn zero_divisor_rejected() {
        let r = ring_xy();
        let lex = MonomialOrder::lex(2);
        let z = Polynomial::zero(&r, &lex);
        assert!(matches!(
            poly_divmod(&p("x", &r), &[z], &lex),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn equality_ignores_storage_order() {
        let r = ring_xy();
        let a = p("x^2 + y^3", &r);
        let b = a.with_order(&MonomialOrder::grevlex(2));
        assert_eq!(a, b);
        assert_eq!(b.leading_exps().unwrap(), &[0, 3]);
        assert_eq!(a.leading_exps().unwrap(), &[2, 0]);
    }

    #[test]
    fn eval_and_partial_eval() {
        let r = ring_xy();
        let f = p("3/2*x^2*y - 1", &r);
        let half = Rational::new(1.into(), 2.into());
        let v = f.eval(&[Rational::from_integer(2.into()), half.clone()]);
        assert_eq!(v, Rational::from_integer(2.into()));
        let g = f.partial_eval(&[(1, half)]);
        assert_eq!(g, p("3/4*x^2 - 1", &r));
        assert_eq!(f.eval_mod(&[2, 4], 7), Some(2)); // 3/2*4*4 - 1 = 23
    }

    #[test]
    fn exact_division() {
        let r = ring_xy();
        let f = p("x^3 - x*y^2", &r);
        assert_eq!(f.div_exact(&p("x-y", &r)).unwrap(), Some(p("x^2+x*y", &r)));
        assert_eq!(f.div_exact(&p("x+2", &r)).unwrap(), None);
    }
}
