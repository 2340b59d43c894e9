use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize, exp: u32) -> Self {
        let mut e = vec![0; arity];
        e[i] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        divides(&self.0, &other.0)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn is_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Kind of term order. Every kind is refined by a variable priority.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Block order: the first `block` variables of the priority compared by
    /// grevlex, ties broken by grevlex on the remaining variables. Any
    /// monomial involving a first-block variable exceeds every monomial free
    /// of them, so it is an elimination order for the first block.
    Elimination { block: usize },
}

/// A monomial order on a ring of fixed arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Arc<[usize]>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let n = priority.len();
        let mut seen = vec![false; n];
        for &p in &priority {
            if p >= n || seen[p] {
                return Err(Error::MalformedInput(format!(
                    "variable priority {priority:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        if let OrderKind::Elimination { block } = kind {
            if block > n {
                return Err(Error::MalformedInput(format!(
                    "elimination block {block} exceeds arity {n}"
                )));
            }
        }
        Ok(Self {
            kind,
            priority: priority.into(),
        })
    }

    pub fn lex(arity: usize) -> Self {
        Self::new(OrderKind::Lex, (0..arity).collect()).unwrap()
    }

    pub fn grevlex(arity: usize) -> Self {
        Self::new(OrderKind::GrevLex, (0..arity).collect()).unwrap()
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    /// Variables from highest to lowest.
    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn arity(&self) -> usize {
        self.priority.len()
    }

    /// Same kind and priority on a ring with the variables relabelled:
    /// variable `i` becomes `map[i]`.
    pub fn relabel(&self, map: &[usize], new_arity: usize) -> Result<Self> {
        let pr: Vec<usize> = self.priority.iter().map(|&i| map[i]).collect();
        if pr.len() != new_arity {
            return Err(Error::MalformedInput("relabel arity mismatch".into()));
        }
        Self::new(self.kind.clone(), pr)
    }

    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), self.priority.len());
        debug_assert_eq!(b.len(), self.priority.len());
        match self.kind {
            OrderKind::Lex => lex_cmp(&self.priority, a, b),
            OrderKind::GrevLex => grevlex_cmp(&self.priority, a, b),
            OrderKind::Elimination { block } => {
                let (hi, lo) = self.priority.split_at(block);
                grevlex_cmp(hi, a, b).then_with(|| grevlex_cmp(lo, a, b))
            }
        }
    }

    /// Whether every variable outside `keep` is eliminated by this order,
    /// i.e. every monomial involving one of them beats every monomial in
    /// `keep` alone.
    pub fn eliminates_outside(&self, keep: &[bool]) -> bool {
        let n = self.priority.len();
        let eliminated = keep.iter().filter(|k| !**k).count();
        if eliminated == 0 {
            return true;
        }
        match self.kind {
            OrderKind::Lex => self.priority[..eliminated].iter().all(|&v| !keep[v]),
            OrderKind::GrevLex => eliminated == n,
            OrderKind::Elimination { block } => {
                block == eliminated && self.priority[..block].iter().all(|&v| !keep[v])
            }
        }
    }
}

fn lex_cmp(priority: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    for &v in priority {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = vars.iter().map(|&v| a[v] as u64).sum();
    let db: u64 = vars.iter().map(|&v| b[v] as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for &v in vars.iter().rev() {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrderKind::Lex => write!(f, "lex"),
            OrderKind::GrevLex => write!(f, "grevlex"),
            OrderKind::Elimination { block } => write!(f, "elimination({block})"),
        }
    }
}

/// Compares two monomials of the same ring under `order`.
pub fn mono_compare(a: &Monomial, b: &Monomial, order: &MonomialOrder) -> Result<Ordering> {
    if a.arity() != b.arity() || a.arity() != order.arity() {
        return Err(Error::MalformedInput(format!(
            "arity mismatch: {} vs {} under an order of arity {}",
            a.arity(),
            b.arity(),
            order.arity()
        )));
    }
    Ok(order.compare(a.exponents(), b.exponents()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn lex_and_grevlex_examples() {
        let lex = MonomialOrder::lex(2);
        let grl = MonomialOrder::grevlex(2);
        assert_eq!(mono_compare(&m(&[1, 0]), &m(&[0, 1]), &lex).unwrap(), Ordering::Greater);
        assert_eq!(mono_compare(&m(&[1, 1]), &m(&[2, 0]), &grl).unwrap(), Ordering::Less);
        assert_eq!(mono_compare(&m(&[2, 3]), &m(&[2, 3]), &grl).unwrap(), Ordering::Equal);
    }

    #[test]
    fn arity_mismatch_is_malformed() {
        let lex = MonomialOrder::lex(2);
        assert!(matches!(
            mono_compare(&m(&[1, 0]), &m(&[1, 0, 0]), &lex),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x*z^2 vs y^3 (3 vars, x>y>z): equal degree, smaller z exponent wins.
        let grl = MonomialOrder::grevlex(3);
        assert_eq!(grl.compare(&[1, 0, 2], &[0, 3, 0]), Ordering::Less);
        assert_eq!(grl.compare(&[1, 1, 1], &[0, 3, 0]), Ordering::Less);
        assert_eq!(grl.compare(&[2, 0, 1], &[1, 2, 0]), Ordering::Less);
    }

    #[test]
    fn priority_permutation_respected() {
        let lex_yx = MonomialOrder::new(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(lex_yx.compare(&[1, 0], &[0, 1]), Ordering::Less);
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn elimination_order_eliminates_first_block() {
        let ord = MonomialOrder::new(OrderKind::Elimination { block: 1 }, vec![0, 1, 2]).unwrap();
        // x beats y^5 z^5.
        assert_eq!(ord.compare(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        assert!(ord.eliminates_outside(&[false, true, true]));
        assert!(!ord.eliminates_outside(&[true, false, true]));
        assert!(MonomialOrder::lex(3).eliminates_outside(&[false, true, true]));
        assert!(!MonomialOrder::grevlex(3).eliminates_outside(&[false, true, true]));
    }

    #[test]
    fn monomial_arith() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(a.mul(&b), m(&[3, 4]));
        assert_eq!(a.div(&m(&[1, 1])), Some(m(&[1, 0])));
        assert_eq!(a.div(&b), None);
    }

    /// Exhaustive check over all monomials of degree <= 4 in 3 variables.
    #[test]
    fn total_multiplicative_orders() {
        let mut monos = Vec::new();
        for a in 0..=4u32 {
            for b in 0..=(4 - a) {
                for c in 0..=(4 - a - b) {
                    monos.push(vec![a, b, c]);
                }
            }
        }
        let orders = [
            MonomialOrder::lex(3),
            MonomialOrder::grevlex(3),
            MonomialOrder::new(OrderKind::GrevLex, vec![2, 0, 1]).unwrap(),
            MonomialOrder::new(OrderKind::Lex, vec![1, 2, 0]).unwrap(),
            MonomialOrder::new(OrderKind::Elimination { block: 1 }, vec![1, 0, 2]).unwrap(),
        ];
        let one = vec![0u32, 0, 0];
        for ord in &orders {
            for a in &monos {
                assert_ne!(ord.compare(a, &one), Ordering::Less, "1 must be minimal");
                for b in &monos {
                    let ab = ord.compare(a, b);
                    assert_eq!(ab, ord.compare(b, a).reverse(), "antisymmetry");
                    assert_eq!(ab == Ordering::Equal, a == b);
                    if ab == Ordering::Less {
                        for c in &monos {
                            let ac: Vec<u32> = a.iter().zip(c).map(|(x, y)| x + y).collect();
                            let bc: Vec<u32> = b.iter().zip(c).map(|(x, y)| x + y).collect();
                            assert_eq!(ord.compare(&ac, &bc), Ordering::Less, "multiplicative");
                            if ord.compare(b, c) == Ordering::Less {
                                assert_eq!(ord.compare(a, c), Ordering::Less, "transitive");
                            }
                        }
                    }
                }
            }
        }
    }
}
