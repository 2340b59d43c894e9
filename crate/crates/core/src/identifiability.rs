//! Generic local network identifiability: `dim V_o` against `dim V_c`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{elimination_ideal, groebner_basis_with, ideal_dimension_with, GbConfig, GroebnerBasis, Ideal};
use crate::netmodel::{subnetwork_transform, NetworkSpec, SubnetMode, SubnetTransform};
use crate::polyalg::{Expr, Monomial, MonomialOrder, OrderKind, Polynomial, Rational, RationalFunction, VarRole, VariableRing};
use crate::ratmat::{build_pi, distinct_denominators, RationalMatrix, DENOMINATOR_SURROGATE};

/// The closed-loop map `F(X) = R_y P^{-1} Q_r + S_yr` with its labels.
#[derive(Clone, Debug)]
pub struct ClosedLoopMap {
    pub f: RationalMatrix,
    /// The unknowns `X`, in declaration order.
    pub x: Vec<String>,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
}

impl ClosedLoopMap {
    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in 0..self.f.rows() {
            for j in 0..self.f.cols() {
                s.push_str(&format!("F[{}, {}] = {}\n", self.rows[i], self.cols[j], self.f.get(i, j)));
            }
        }
        s
    }
}

/// Builds `F` from a spec with its knowns substituted.
pub fn build_f(spec: &NetworkSpec) -> Result<ClosedLoopMap> {
    let s = spec.with_knowns_applied();
    let x = spec.x_names();
    let ring = VariableRing::unknowns(&x)?;
    let order = MonomialOrder::grevlex(ring.arity());
    let conv = |g: &Vec<Vec<crate::netmodel::EntrySpec>>, rows: usize, cols: usize| -> Result<RationalMatrix> {
        let mut e = Vec::with_capacity(rows * cols);
        for row in g {
            for x in row {
                e.push(x.to_rational(&ring, &order)?);
            }
        }
        RationalMatrix::new(rows, cols, e)
    };
    let p = conv(&s.p, s.n, s.n)?;
    let q = conv(&s.qr, s.n, s.m_r)?;
    let r = conv(&s.ry, s.p_y, s.n)?;
    let sy = conv(&s.syr, s.p_y, s.m_r)?;
    let f = build_pi(&p, &q, &r, &sy)?;
    Ok(ClosedLoopMap {
        f,
        x,
        rows: s.labels.y.clone(),
        cols: s.labels.r.clone(),
    })
}

/// Which order to use for eliminating `t`, `X` and auxiliaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EliminationOrder {
    /// Grevlex block on `(t, X, aux)` above grevlex on the `g` variables.
    #[default]
    Block,
    /// Pure lex with priority `t > X > aux > g`.
    Lex,
}

/// A closed-loop entry that received a fresh variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcVar {
    pub name: String,
    pub output: String,
    pub input: String,
    pub entry: String,
}

/// The ideal of `T (.) G_c - S`, `1 - tD` and the constraints.
#[derive(Clone, Debug)]
pub struct IdentIdeal {
    pub ideal: Ideal,
    pub order: MonomialOrder,
    pub t: Option<usize>,
    pub x_vars: Vec<usize>,
    pub aux_vars: Vec<usize>,
    pub g_vars: Vec<usize>,
    pub gc: Vec<GcVar>,
    /// `D`, empty when every `T` entry is constant.
    pub denominator: Option<Polynomial>,
    /// Entries of `F` behind each `g`, over the ring of `X`.
    entries: Vec<RationalFunction>,
    /// Denominators defining each auxiliary variable, over `X`.
    aux_denoms: Vec<Polynomial>,
    constraint_gens: Vec<Polynomial>,
}

impl IdentIdeal {
    pub fn ring(&self) -> &Arc<VariableRing> {
        self.ideal.ring()
    }

    /// Full coordinates of the point of `V` above `x`: `t = 1/D`,
    /// auxiliaries `1/den`, `g = F(x)`. `None` if a denominator vanishes.
    pub fn point_above(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let n = self.ring().arity();
        let mut pt = vec![Rational::zero(); n];
        for (k, &v) in self.x_vars.iter().enumerate() {
            pt[v] = x[k].clone();
        }
        if let (Some(t), Some(d)) = (self.t, &self.denominator) {
            let dv = d.eval(x);
            if dv.is_zero() {
                return None;
            }
            pt[t] = dv.recip();
        }
        for (k, &v) in self.aux_vars.iter().enumerate() {
            let dv = self.aux_denoms[k].eval(x);
            if dv.is_zero() {
                return None;
            }
            pt[v] = dv.recip();
        }
        for (k, &v) in self.g_vars.iter().enumerate() {
            pt[v] = self.entries[k].eval(x)?;
        }
        Some(pt)
    }

    /// Whether every generator vanishes at the point of `V` above `x`.
    pub fn vanishes_above(&self, x: &[Rational]) -> Option<bool> {
        let pt = self.point_above(x)?;
        Some(self.ideal.generators().iter().all(|g| g.eval(&pt).is_zero()))
    }

    /// The constraint generators over the ring of `X` and auxiliaries.
    pub fn constraint_generators(&self) -> &[Polynomial] {
        &self.constraint_gens
    }
}

fn fresh(base: &str, taken: &BTreeSet<String>) -> String {
    let mut s = base.to_string();
    while taken.contains(&s) {
        s.push('_');
    }
    s
}

/// Which entries of `F` get a `g` variable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KeepEntries {
    pub columns: Option<Vec<String>>,
    pub entries: Option<Vec<(String, String)>>,
    /// Input labels whose columns are removed after selection.
    pub drop: Vec<String>,
}

impl KeepEntries {
    fn select(&self, map: &ClosedLoopMap) -> Result<Vec<(usize, usize)>> {
        let col = |l: &str| {
            map.cols
                .iter()
                .position(|c| c == l)
                .ok_or_else(|| Error::MalformedInput(format!("closed-loop column {l:?} does not exist (columns: {})", map.cols.join(", "))))
        };
        let row = |l: &str| {
            map.rows
                .iter()
                .position(|c| c == l)
                .ok_or_else(|| Error::MalformedInput(format!("closed-loop row {l:?} does not exist (rows: {})", map.rows.join(", "))))
        };
        let out: Vec<(usize, usize)> = if let Some(es) = &self.entries {
            es.iter().map(|(y, u)| Ok((row(y)?, col(u)?))).collect::<Result<_>>()?
        } else if let Some(cs) = &self.columns {
            let js: Vec<usize> = cs.iter().map(|c| col(c)).collect::<Result<_>>()?;
            (0..map.rows.len()).flat_map(|i| js.iter().map(move |&j| (i, j))).collect()
        } else {
            (0..map.rows.len()).flat_map(|i| (0..map.cols.len()).map(move |j| (i, j))).collect()
        };
        let out: Vec<(usize, usize)> = out.into_iter().filter(|&(_, j)| !self.drop.contains(&map.cols[j])).collect();
        if out.is_empty() && !(map.rows.is_empty() || map.cols.is_empty()) {
            return Err(Error::Precondition("no closed-loop entries kept".into()));
        }
        Ok(out)
    }
}

/// Assembles the identifiability ideal for `F`, knowns already applied.
pub fn build_identifiability_ideal(
    map: &ClosedLoopMap,
    knowns: &[(String, Rational)],
    constraints: &[String],
    keep: &KeepEntries,
    order: EliminationOrder,
) -> Result<IdentIdeal> {
    let cells = keep.select(map)?;
    let xring = VariableRing::unknowns(&map.x)?;
    let xord = MonomialOrder::grevlex(xring.arity());
    let entries: Vec<RationalFunction> = cells.iter().map(|&(i, j)| map.f.get(i, j).to_ring(&xring, &xord)).collect::<Result<_>>()?;

    // Constraints over X, knowns substituted.
    let mut cons: Vec<RationalFunction> = Vec::new();
    for c in constraints {
        let e = Expr::parse(c)?;
        let mut names: Vec<String> = map.x.clone();
        for id in e.identifiers() {
            if map.x.contains(&id) {
                continue;
            }
            if knowns.iter().any(|(k, _)| *k == id) {
                names.push(id);
            } else {
                return Err(Error::MalformedInput(format!(
                    "constraint {c:?} involves {id}, which is not an unknown of the closed-loop map"
                )));
            }
        }
        let r = VariableRing::unknowns(&names)?;
        let o = MonomialOrder::grevlex(r.arity());
        let vals: Vec<(usize, Rational)> = knowns
            .iter()
            .filter_map(|(k, v)| r.index_of(k).map(|i| (i, v.clone())))
            .collect();
        let f = e.to_rational(&r, &o)?.partial_eval(&vals)?;
        let map_x: Vec<Option<usize>> = names.iter().map(|n| xring.index_of(n)).collect();
        let num = f.numer().map_ring(&xring, &xord, &map_x)?;
        let den = f.denom().map_ring(&xring, &xord, &map_x)?;
        cons.push(RationalFunction::new(num, den)?);
    }
    let aux_denoms = distinct_denominators(cons.iter());
    let t_denoms = distinct_denominators(entries.iter());
    let use_t = !t_denoms.is_empty();

    let mut taken: BTreeSet<String> = map.x.iter().cloned().collect();
    let mut vars: Vec<(String, VarRole)> = Vec::new();
    if use_t {
        let t = fresh("t", &taken);
        taken.insert(t.clone());
        vars.push((t, VarRole::Saturation));
    }
    vars.extend(map.x.iter().map(|x| (x.clone(), VarRole::Unknown)));
    for k in 0..aux_denoms.len() {
        let a = fresh(&format!("s{}", k + 1), &taken);
        taken.insert(a.clone());
        vars.push((a, VarRole::Auxiliary));
    }
    let mut gc = Vec::new();
    for (k, &(i, j)) in cells.iter().enumerate() {
        let g = fresh(&format!("g{}_{}", i + 1, j + 1), &taken);
        taken.insert(g.clone());
        vars.push((g.clone(), VarRole::ClosedLoop));
        gc.push(GcVar {
            name: g,
            output: map.rows[i].clone(),
            input: map.cols[j].clone(),
            entry: entries[k].to_string(),
        });
    }
    let ring = VariableRing::new(vars)?;
    let n = ring.arity();
    let t = use_t.then_some(0);
    let off = usize::from(use_t);
    let x_vars: Vec<usize> = (off..off + map.x.len()).collect();
    let aux_vars: Vec<usize> = (off + map.x.len()..off + map.x.len() + aux_denoms.len()).collect();
    let g_vars: Vec<usize> = (aux_vars.last().map_or(off + map.x.len(), |a| a + 1)..n).collect();
    let block = n - g_vars.len();
    let ord = match order {
        EliminationOrder::Block => MonomialOrder::new(OrderKind::Elimination { block }, (0..n).collect())?,
        EliminationOrder::Lex => MonomialOrder::lex(n),
    };
    let xmap: Vec<Option<usize>> = x_vars.iter().map(|&v| Some(v)).collect();
    let lift = |p: &Polynomial| p.map_ring(&ring, &ord, &xmap);
    let one = Polynomial::one(&ring, &ord);

    let mut gens = Vec::new();
    for (k, e) in entries.iter().enumerate() {
        let g = Polynomial::var(&ring, &ord, g_vars[k]);
        gens.push(&(&lift(e.denom())? * &g) - &lift(e.numer())?);
    }
    let denominator = if use_t {
        let d = t_denoms.iter().fold(Polynomial::one(&xring, &xord), |acc, p| &acc * p);
        let tv = Polynomial::var(&ring, &ord, 0);
        gens.push(&one - &(&tv * &lift(&d)?));
        Some(d)
    } else {
        None
    };
    let mut constraint_gens = Vec::new();
    for c in &cons {
        let p = lift(c.numer())?;
        constraint_gens.push(p.clone());
        gens.push(p);
    }
    for (k, d) in aux_denoms.iter().enumerate() {
        let a = Polynomial::var(&ring, &ord, aux_vars[k]);
        let p = &one - &(&a * &lift(d)?);
        constraint_gens.push(p.clone());
        gens.push(p);
    }
    Ok(IdentIdeal {
        ideal: Ideal::new(&ring, gens)?,
        order: ord,
        t,
        x_vars,
        aux_vars,
        g_vars,
        gc,
        denominator,
        entries,
        aux_denoms,
        constraint_gens,
    })
}

#[derive(Clone, Debug)]
pub struct DimVc {
    pub dim: i64,
    pub heuristic: bool,
    /// Generators of the elimination ideal, over the `g` ring.
    pub elimination: Vec<Polynomial>,
    pub basis: GroebnerBasis,
}

/// `dim V_c` from the elimination ideal in the `g` variables.
pub fn dim_vc(ii: &IdentIdeal, gb: &GbConfig) -> Result<DimVc> {
    let basis = groebner_basis_with(&ii.ideal, &ii.order, gb)?;
    if basis.is_one() {
        return Err(Error::EmptyVariety("the identifiability ideal is the whole ring".into()));
    }
    let elim = elimination_ideal(&basis, &ii.g_vars)?.restrict_to(&ii.g_vars)?;
    let d = ideal_dimension_with(&elim, gb)?;
    Ok(DimVc {
        dim: d.dim,
        heuristic: d.heuristic,
        elimination: elim.generators().to_vec(),
        basis,
    })
}

/// `dim V_o`: the number of unknowns, or the dimension of the constraint
/// variety when there are constraints.
pub fn dim_vo(ii: &IdentIdeal, gb: &GbConfig) -> Result<(i64, bool)> {
    if ii.constraint_gens.is_empty() {
        return Ok((ii.x_vars.len() as i64, false));
    }
    let vars: Vec<usize> = ii.x_vars.iter().chain(&ii.aux_vars).copied().collect();
    let ideal = Ideal::new(ii.ring(), ii.constraint_gens.clone())?.restrict_to(&vars)?;
    let d = ideal_dimension_with(&ideal, gb)?;
    if d.dim < 0 {
        return Err(Error::EmptyVariety("the constraints are inconsistent".into()));
    }
    Ok((d.dim, d.heuristic))
}

#[derive(Clone, Debug, Default)]
pub struct IdentifiabilityOptions {
    pub keep: KeepEntries,
    /// Extra constraints on top of the spec's own.
    pub constraints: Vec<String>,
    pub order: EliminationOrder,
    pub gb: GbConfig,
    /// Re-run this many times with the spec's knowns replaced by random
    /// rationals.
    pub resample_knowns: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentVerdict {
    GenericallyLocallyIdentifiable,
    NotGenericallyLocallyIdentifiable,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResampleRun {
    pub knowns: Vec<(String, String)>,
    pub dim_vo: i64,
    pub dim_vc: i64,
    pub verdict: IdentVerdict,
}

/// An unknown expressed through the closed-loop values by a basis element
/// `c(g) x + r(g)`, valid where `c` does not vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recovery {
    pub unknown: String,
    pub relation: String,
    /// `None` when the coefficient is a nonzero constant.
    pub valid_off: Option<String>,
}

/// Basis elements linear in one unknown with the rest in `g` only.
pub fn recovery_relations(ii: &IdentIdeal, basis: &GroebnerBasis) -> Vec<Recovery> {
    let g: BTreeSet<usize> = ii.g_vars.iter().copied().collect();
    let mut out = Vec::new();
    for p in basis.elements() {
        let sup = p.support();
        let xs: Vec<usize> = ii.x_vars.iter().copied().filter(|&v| sup[v]).collect();
        let others_ok = (0..sup.len()).all(|v| !sup[v] || g.contains(&v) || xs.contains(&v));
        let [x] = xs[..] else { continue };
        if !others_ok || p.terms().any(|(_, e)| e[x] > 1) {
            continue;
        }
        let coef: Vec<(Rational, Monomial)> = p
            .terms()
            .filter(|(_, e)| e[x] == 1)
            .map(|(c, e)| {
                let mut e = e.to_vec();
                e[x] = 0;
                (c.clone(), Monomial::from_exponents(e))
            })
            .collect();
        let Ok(c) = Polynomial::from_terms(p.ring(), p.order(), coef) else { continue };
        out.push(Recovery {
            unknown: p.ring().name(x).to_string(),
            relation: format!("{p} = 0"),
            valid_off: (!c.is_constant()).then(|| format!("{c} = 0")),
        });
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentifiabilityReport {
    pub k: usize,
    pub dim_vo: i64,
    pub dim_vc: i64,
    pub fiber_dim: i64,
    pub verdict: IdentVerdict,
    pub unknowns: Vec<String>,
    pub knowns: Vec<(String, String)>,
    pub constraints: Vec<String>,
    pub closed_loop_rows: Vec<String>,
    pub closed_loop_cols: Vec<String>,
    pub kept_entries: Vec<GcVar>,
    pub dropped_columns: Vec<String>,
    pub order: EliminationOrder,
    pub priority: Vec<String>,
    pub denominator: Option<String>,
    pub denominator_surrogate: &'static str,
    pub generators: Vec<String>,
    pub elimination_generators: Vec<String>,
    pub basis_len: usize,
    pub heuristic_dimension: bool,
    pub recovery: Vec<Recovery>,
    pub resamples: Vec<ResampleRun>,
    pub caveats: Vec<String>,
    #[serde(skip)]
    pub basis: Option<GroebnerBasis>,
    #[serde(skip)]
    pub map: Option<ClosedLoopMap>,
}

pub const CAVEAT_RATIONAL_POINTS: &str =
    "generic points are taken over Q; the complex single-frequency reading is not checked separately";

/// The identifiability report for `spec` (already restricted to the
/// sub-network of interest, if any).
pub fn identifiability_verdict(spec: &NetworkSpec, opts: &IdentifiabilityOptions) -> Result<IdentifiabilityReport> {
    let map = build_f(spec)?;
    let mut constraints = spec.constraints.clone();
    constraints.extend(opts.constraints.iter().cloned());
    let ii = build_identifiability_ideal(&map, &spec.knowns, &constraints, &opts.keep, opts.order)?;
    let (dvo, h1) = dim_vo(&ii, &opts.gb)?;
    let vc = dim_vc(&ii, &opts.gb)?;
    let verdict = if dvo == vc.dim {
        IdentVerdict::GenericallyLocallyIdentifiable
    } else {
        IdentVerdict::NotGenericallyLocallyIdentifiable
    };
    let kept_cols: BTreeSet<&str> = ii.gc.iter().map(|g| g.input.as_str()).collect();
    let mut caveats = vec![CAVEAT_RATIONAL_POINTS.to_string()];
    if vc.heuristic || h1 {
        caveats.push("dimension search was capped; the value is a lower bound".into());
    }
    if vc.dim > dvo {
        caveats.push(format!("dim V_c = {} exceeds dim V_o = {dvo}; the elimination is suspect", vc.dim));
    }

    let mut resamples = Vec::new();
    if opts.resample_knowns > 0 && !spec.knowns.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.resample_knowns {
            let mut s = spec.clone();
            for (_, v) in s.knowns.iter_mut() {
                let a: u64 = rng.gen_range(1..=10_000);
                let b: u64 = rng.gen_range(1..=10_000);
                *v = Rational::new(BigInt::from(a), BigInt::from(b));
            }
            let m = build_f(&s)?;
            let ii2 = build_identifiability_ideal(&m, &s.knowns, &constraints, &opts.keep, opts.order)?;
            let (vo, _) = dim_vo(&ii2, &opts.gb)?;
            let vc2 = dim_vc(&ii2, &opts.gb)?;
            let v = if vo == vc2.dim {
                IdentVerdict::GenericallyLocallyIdentifiable
            } else {
                IdentVerdict::NotGenericallyLocallyIdentifiable
            };
            if v != verdict {
                caveats.push("verdict changed under resampled known values; the given knowns may be non-generic".into());
            }
            resamples.push(ResampleRun {
                knowns: s.knowns.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
                dim_vo: vo,
                dim_vc: vc2.dim,
                verdict: v,
            });
        }
        caveats.dedup();
    }

    let ring = ii.ring().clone();
    Ok(IdentifiabilityReport {
        k: map.k(),
        dim_vo: dvo,
        dim_vc: vc.dim,
        fiber_dim: dvo - vc.dim,
        verdict,
        unknowns: map.x.clone(),
        knowns: spec.knowns.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        constraints,
        closed_loop_rows: map.rows.clone(),
        closed_loop_cols: map.cols.clone(),
        kept_entries: ii.gc.clone(),
        dropped_columns: map.cols.iter().filter(|c| !kept_cols.contains(c.as_str())).cloned().collect(),
        order: opts.order,
        priority: ii.order.priority().iter().map(|&v| ring.name(v).to_string()).collect(),
        denominator: ii.denominator.as_ref().map(|d| d.to_string()),
        denominator_surrogate: DENOMINATOR_SURROGATE,
        generators: ii.ideal.generators().iter().map(|g| g.to_string()).collect(),
        elimination_generators: vc.elimination.iter().map(|g| g.to_string()).collect(),
        basis_len: vc.basis.len(),
        heuristic_dimension: vc.heuristic || h1,
        recovery: recovery_relations(&ii, &vc.basis),
        resamples,
        caveats,
        basis: Some(vc.basis),
        map: Some(map),
    })
}

/// Keep-entries from the spec's identification section.
pub fn keep_from_spec(spec: &NetworkSpec) -> KeepEntries {
    KeepEntries {
        columns: spec.identification.gc_columns.clone(),
        entries: spec.identification.gc_entries.clone(),
        drop: Vec::new(),
    }
}

/// Identifiability of the sub-network on `a_nodes` (the whole network when
/// `None`). Keep-entries fall back to the spec's identification section.
pub fn network_identifiability(
    spec: &NetworkSpec,
    a_nodes: Option<&[String]>,
    mode: &SubnetMode,
    opts: &IdentifiabilityOptions,
) -> Result<(IdentifiabilityReport, Option<SubnetTransform>)> {
    let (ident, tr) = match a_nodes {
        Some(a) => {
            let tr = subnetwork_transform(spec, a, mode)?;
            (tr.ident.clone(), Some(tr))
        }
        None => (spec.clone(), None),
    };
    for d in &opts.keep.drop {
        // Noise labels are accepted since one drop list serves both analyses;
        // they never name a column of F.
        let known = [&spec.labels.r, &spec.labels.e, &ident.labels.r];
        if !known.iter().any(|l| l.contains(d)) {
            return Err(Error::MalformedInput(format!("cannot drop unknown input {d:?}")));
        }
    }
    let mut o = opts.clone();
    if o.keep.columns.is_none() && o.keep.entries.is_none() {
        let s = keep_from_spec(&ident);
        o.keep.columns = s.columns;
        o.keep.entries = s.entries;
    }
    Ok((identifiability_verdict(&ident, &o)?, tr))
}
