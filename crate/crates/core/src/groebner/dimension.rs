use super::buchberger::{groebner_basis_with, GbConfig, GroebnerBasis};
use super::ideal::Ideal;
use crate::error::{Error, Result};
use crate::polyalg::{MonomialOrder, OrderKind};

/// Above this many variables the hitting-set search gets a node cap and a
/// capped answer is flagged heuristic.
pub const EXACT_SEARCH_VARS: usize = 20;
const NODE_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dimension {
    /// Krull dimension, `-1` for the empty variety.
    pub dim: i64,
    /// Set when the independent-set search was cut short; `dim` is then a
    /// lower bound.
    pub heuristic: bool,
    pub basis_len: usize,
}

/// Elements of `gb` involving only the variables in `keep`. The order of
/// `gb` must rank every other variable above all kept ones.
pub fn elimination_ideal(gb: &GroebnerBasis, keep: &[usize]) -> Result<Ideal> {
    let n = gb.ring().arity();
    let mut mask = vec![false; n];
    for &v in keep {
        if v >= n {
            return Err(Error::Precondition(format!("keep variable {v} out of range")));
        }
        mask[v] = true;
    }
    if !gb.order().eliminates_outside(&mask) {
        return Err(Error::Precondition(format!(
            "a {} order does not eliminate the variables outside {:?}",
            gb.order(),
            keep.iter().map(|&v| gb.ring().name(v)).collect::<Vec<_>>()
        )));
    }
    let gens = gb
        .elements()
        .iter()
        .filter(|g| g.support().iter().zip(&mask).all(|(used, k)| !used || *k))
        .cloned()
        .collect();
    Ideal::new(gb.ring(), gens)
}

pub fn ideal_dimension(ideal: &Ideal) -> Result<i64> {
    Ok(ideal_dimension_with(ideal, &GbConfig::default())?.dim)
}

/// Dimension from a fresh grevlex basis: `arity - ` the smallest set of
/// variables meeting the support of every leading monomial.
pub fn ideal_dimension_with(ideal: &Ideal, cfg: &GbConfig) -> Result<Dimension> {
    let n = ideal.ring().arity();
    if ideal.is_zero() {
        return Ok(Dimension {
            dim: n as i64,
            heuristic: false,
            basis_len: 0,
        });
    }
    let gb = groebner_basis_with(ideal, &MonomialOrder::grevlex(n), cfg)?;
    dimension_of_basis(&gb)
}

/// Dimension read off the leading monomials of a basis computed under a
/// degree-compatible order.
pub fn dimension_of_basis(gb: &GroebnerBasis) -> Result<Dimension> {
    if matches!(gb.order().kind(), OrderKind::Lex) && gb.ring().arity() > 1 {
        return Err(Error::Precondition(
            "dimension needs a basis under a graded order".into(),
        ));
    }
    let n = gb.ring().arity();
    if gb.is_one() {
        return Ok(Dimension {
            dim: -1,
            heuristic: false,
            basis_len: 1,
        });
    }
    if n > 128 {
        return Err(Error::MalformedInput(format!(
            "dimension search supports at most 128 variables, got {n}"
        )));
    }
    let mut sets: Vec<u128> = gb
        .elements()
        .iter()
        .map(|g| {
            g.leading_exps()
                .unwrap()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u128, |m, (v, _)| m | (1u128 << v))
        })
        .collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut minimal: Vec<u128> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|m| m & s == *m) {
            minimal.push(s);
        }
    }
    let (cover, exact) = min_hitting_set(&minimal, n);
    Ok(Dimension {
        dim: (n - cover) as i64,
        heuristic: !exact,
        basis_len: gb.len(),
    })
}

/// Size of a smallest variable set meeting every set in `sets`, by branch
/// and bound seeded with a greedy cover. The flag is false when the node
/// cap stopped the search.
fn min_hitting_set(sets: &[u128], n: usize) -> (usize, bool) {
    let mut best = greedy_cover(sets, n);
    let cap = if n <= EXACT_SEARCH_VARS { u64::MAX } else { NODE_CAP };
    let mut nodes = 0u64;
    let exact = branch(sets, 0, 0, &mut best, &mut nodes, cap);
    (best, exact)
}

fn greedy_cover(sets: &[u128], n: usize) -> usize {
    let mut chosen = 0u128;
    let mut size = 0;
    loop {
        let open: Vec<u128> = sets.iter().copied().filter(|s| s & chosen == 0).collect();
        if open.is_empty() {
            return size;
        }
        let v = (0..n)
            .max_by_key(|&v| (open.iter().filter(|s| *s >> v & 1 == 1).count(), n - v))
            .unwrap();
        chosen |= 1u128 << v;
        size += 1;
    }
}

fn branch(sets: &[u128], chosen: u128, size: usize, best: &mut usize, nodes: &mut u64, cap: u64) -> bool {
    *nodes += 1;
    if *nodes > cap {
        return false;
    }
    if size >= *best {
        return true;
    }
    let open = sets
        .iter()
        .filter(|s| *s & chosen == 0)
        .min_by_key(|s| s.count_ones());
    let Some(&s) = open else {
        *best = size;
        return true;
    };
    if size + 1 >= *best {
        return true;
    }
    let mut bits = s;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        if !branch(sets, chosen | (1u128 << v), size + 1, best, nodes, cap) {
            return false;
        }
    }
    true
}
