use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{elimination_ideal, groebner_basis_with, GbConfig, GroebnerBasis, Ideal};
use crate::polyalg::{MonomialOrder, OrderKind, Polynomial, VarRole, VariableRing};
use crate::ratmat::{clear_denominators, minors_iter, RationalMatrix};

/// Which order puts `t` on top when saturating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SaturationOrder {
    /// `t` in its own grevlex block above grevlex on the rest.
    #[default]
    Block,
    /// Pure lex, `t` first, then declaration order.
    Lex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankVerdict {
    /// `rank Pi >= k` wherever the denominators do not vanish.
    AlwaysAtLeastK,
    /// Every `k`-minor vanishes identically.
    GenericallyLessThanK,
    /// `rank Pi >= k` off the variety of `degenerate_locus`.
    GenericallyAtLeastK,
}

#[derive(Clone, Debug)]
pub struct RankCase {
    pub k: usize,
    pub verdict: RankVerdict,
    /// t-free basis elements; empty unless the verdict is the third case.
    pub degenerate_locus: Vec<Polynomial>,
    /// `D`, the denominator product used for saturation.
    pub denominator: Polynomial,
    pub nonzero_minors: usize,
    pub minors_examined: usize,
    pub basis: GroebnerBasis,
}

#[derive(Clone, Debug, Default)]
pub struct RankOptions {
    pub order: SaturationOrder,
    pub gb: GbConfig,
}

/// Classifies `rank Pi` against `k` from the basis of the ideal of the
/// `k`-minors of the cleared matrix together with `1 - tD`. Minors are fed
/// in growing batches so that a unit basis stops the enumeration early.
pub fn groebner_rank_case(pi: &RationalMatrix, k: usize, opts: &RankOptions) -> Result<RankCase> {
    let kmax = pi.rows().min(pi.cols());
    if k == 0 || k > kmax {
        return Err(Error::Precondition(format!("k = {k} outside 1..={kmax}")));
    }
    let cleared = clear_denominators(pi)?;
    let base = pi.entries()[0].ring().clone();
    let d = cleared.denom_product.clone();
    let use_t = !d.is_constant();

    let mut vars: Vec<(String, VarRole)> = Vec::new();
    if use_t {
        vars.push((fresh_t(&base), VarRole::Saturation));
    }
    vars.extend(base.names().iter().map(|n| (n.clone(), base.role(base.index_of(n).unwrap()))));
    let ring = VariableRing::new(vars)?;
    let n = ring.arity();
    let order = match (opts.order, use_t) {
        (SaturationOrder::Lex, _) => MonomialOrder::lex(n),
        (SaturationOrder::Block, true) => MonomialOrder::new(OrderKind::Elimination { block: 1 }, (0..n).collect())?,
        (SaturationOrder::Block, false) => MonomialOrder::grevlex(n),
    };
    let off = usize::from(use_t);
    let map: Vec<Option<usize>> = (0..base.arity()).map(|i| Some(i + off)).collect();
    let lift = |p: &Polynomial| p.map_ring(&ring, &order, &map);

    let mut gens: Vec<Polynomial> = Vec::new();
    let d_lift = lift(&d)?;
    if use_t {
        let t = Polynomial::var(&ring, &order, 0);
        gens.push(&Polynomial::one(&ring, &order) - &(&t * &d_lift));
    }
    let mut basis = groebner_basis_with(&Ideal::new(&ring, gens.clone())?, &order, &opts.gb)?;
    let mut pending: Vec<Polynomial> = Vec::new();
    let mut batch = 1usize;
    let (mut examined, mut nonzero) = (0usize, 0usize);
    let mut minors = minors_iter(&cleared.polys, k)?;
    loop {
        let next = minors.next().transpose()?;
        if let Some((_, _, m)) = &next {
            examined += 1;
            if !m.is_zero() {
                nonzero += 1;
                pending.push(lift(m)?);
            }
        }
        let flush = pending.len() >= batch || (next.is_none() && !pending.is_empty());
        if flush {
            let mut g: Vec<Polynomial> = basis.elements().to_vec();
            g.append(&mut pending);
            basis = groebner_basis_with(&Ideal::new(&ring, g)?, &order, &opts.gb)?;
            batch *= 2;
            if basis.is_one() {
                break;
            }
        }
        if next.is_none() {
            break;
        }
    }

    let (verdict, degenerate_locus) = if basis.is_one() {
        (RankVerdict::AlwaysAtLeastK, Vec::new())
    } else {
        let keep: Vec<usize> = (off..n).collect();
        let elim = elimination_ideal(&basis, &keep)?;
        if elim.is_zero() {
            (RankVerdict::GenericallyLessThanK, Vec::new())
        } else {
            let back: Vec<Option<usize>> = (0..n).map(|v| v.checked_sub(off)).collect();
            let base_order = MonomialOrder::grevlex(base.arity());
            let locus = elim
                .generators()
                .iter()
                .map(|g| g.map_ring(&base, &base_order, &back))
                .collect::<Result<Vec<_>>>()?;
            (RankVerdict::GenericallyAtLeastK, locus)
        }
    };
    Ok(RankCase {
        k,
        verdict,
        degenerate_locus,
        denominator: d,
        nonzero_minors: nonzero,
        minors_examined: examined,
        basis,
    })
}

fn fresh_t(ring: &Arc<VariableRing>) -> String {
    let mut t = "t".to_string();
    while ring.index_of(&t).is_some() {
        t.push('_');
    }
    t
}

/// Generic rank by descending search: the largest `k` whose case is not
/// `GenericallyLessThanK`, with that case as evidence.
pub fn groebner_generic_rank(pi: &RationalMatrix, opts: &RankOptions) -> Result<(usize, Option<RankCase>)> {
    let kmax = pi.rows().min(pi.cols());
    for k in (1..=kmax).rev() {
        let case = groebner_rank_case(pi, k, opts)?;
        if case.verdict != RankVerdict::GenericallyLessThanK {
            return Ok((k, Some(case)));
        }
    }
    Ok((0, None))
}
