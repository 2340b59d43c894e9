use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::entry::{EntrySpec, Grid};
use super::spec::NetworkSpec;
use crate::error::{Error, Result};
use crate::polyalg::{MonomialOrder, Rational, VariableRing};
use crate::ratmat::RationalMatrix;

/// Where a column of `M` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColKind {
    Node(usize),
    R(usize),
    E(usize),
}

/// Where a row of `M` comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowKind {
    Node(usize),
    Output(usize),
    /// A measured signal added by a sub-network rewrite.
    Extra,
    /// The `r` passthrough of the predictor input.
    Passthrough(usize),
}

/// The structured block matrix `[[P, Q], [R, S]]`: rows are the nodes then
/// the predictor inputs, columns the nodes then the excitations. The lower
/// left block holds `+R`; numeric rank checks negate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MMatrix {
    pub n: usize,
    pub grid: Grid,
    pub row_kinds: Vec<RowKind>,
    pub col_kinds: Vec<ColKind>,
    /// Signal names per row (node labels, then output/extra/r labels).
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl MMatrix {
    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn cols(&self) -> usize {
        self.col_kinds.len()
    }

    /// Number of predictor-input rows, i.e. rows of `Pi`.
    pub fn z_rows(&self) -> usize {
        self.rows() - self.n
    }

    pub fn u_cols(&self) -> usize {
        self.cols() - self.n
    }

    /// Vertex names for the path graph: `W1..`, `R1..`/`E1..` (original
    /// input numbering), `Z1..` (predictor rows in order).
    pub fn col_vertex(&self, j: usize) -> String {
        match self.col_kinds[j] {
            ColKind::Node(i) => format!("W{}", i + 1),
            ColKind::R(i) => format!("R{}", i + 1),
            ColKind::E(i) => format!("E{}", i + 1),
        }
    }

    pub fn row_vertex(&self, i: usize) -> String {
        if i < self.n {
            format!("W{}", i + 1)
        } else {
            format!("Z{}", i - self.n + 1)
        }
    }

    /// Free names in row-major first-appearance order.
    pub fn free_names(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for row in &self.grid {
            for e in row {
                if let Some(n) = e.free_name() {
                    if !out.iter().any(|x| x == n) {
                        out.push(n.to_string());
                    }
                }
            }
        }
        out
    }

    pub fn has_constants(&self) -> bool {
        self.grid
            .iter()
            .flatten()
            .any(|e| matches!(e, EntrySpec::One | EntrySpec::Const(_)))
    }

    /// Polynomial ring of the free names under grevlex.
    pub fn ring(&self) -> Result<(Arc<VariableRing>, MonomialOrder)> {
        let ring = VariableRing::unknowns(&self.free_names())?;
        let order = MonomialOrder::grevlex(ring.arity());
        Ok((ring, order))
    }

    fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>, ring: &Arc<VariableRing>, order: &MonomialOrder) -> Result<RationalMatrix> {
        let (r, c) = (rows.len(), cols.len());
        let mut e = Vec::with_capacity(r * c);
        for i in rows {
            for j in cols.clone() {
                e.push(self.grid[i][j].to_rational(ring, order)?);
            }
        }
        RationalMatrix::new(r, c, e)
    }

    /// The four blocks `(P, Q, R, S)` over `ring`, with `Pi = R P^{-1} Q + S`.
    pub fn blocks(&self, ring: &Arc<VariableRing>, order: &MonomialOrder) -> Result<[RationalMatrix; 4]> {
        let (n, nr, nc) = (self.n, self.rows(), self.cols());
        Ok([
            self.block(0..n, 0..n, ring, order)?,
            self.block(0..n, n..nc, ring, order)?,
            self.block(n..nr, 0..n, ring, order)?,
            self.block(n..nr, n..nc, ring, order)?,
        ])
    }

    /// Numeric `[[P, Q], [-R, S]]` at a valuation of the free names.
    pub fn eval_numeric(&self, values: &HashMap<String, Rational>) -> Result<Vec<Vec<Rational>>> {
        let mut out = Vec::with_capacity(self.rows());
        for (i, row) in self.grid.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, e) in row.iter().enumerate() {
                let v = match e {
                    EntrySpec::Zero => Rational::zero(),
                    EntrySpec::One => Rational::from_integer(1.into()),
                    EntrySpec::Const(c) => c.clone(),
                    EntrySpec::Free { name, negated } => {
                        let v = values.get(name).ok_or_else(|| {
                            Error::MalformedInput(format!("no value for free entry {name}"))
                        })?;
                        if *negated { -v } else { v.clone() }
                    }
                };
                r.push(if i >= self.n && j < self.n { -v } else { v });
            }
            out.push(r);
        }
        Ok(out)
    }

    /// Text table with row and column labels.
    pub fn render(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .grid
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        let lw = self.row_labels.iter().map(|l| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain([self.col_labels[j].len()])
                    .max()
                    .unwrap()
            })
            .collect();
        let mut s = format!("{:lw$}", "");
        for (j, l) in self.col_labels.iter().enumerate() {
            s.push_str(&format!("  {:>w$}", l, w = widths[j]));
        }
        s.push('\n');
        for (i, r) in cells.iter().enumerate() {
            s.push_str(&format!("{:lw$}", self.row_labels[i]));
            for (j, c) in r.iter().enumerate() {
                s.push_str(&format!("  {:>w$}", c, w = widths[j]));
            }
            s.push('\n');
        }
        s
    }
}

/// An extra predictor row given over the node columns.
#[derive(Clone, Debug)]
pub struct ExtraRow {
    pub label: String,
    pub entries: Vec<EntrySpec>,
}

/// Assembles `M` after drops: dropping an `r` input removes
/// its column and its passthrough row, dropping an `e` input removes its
/// column, dropping a predictor row removes it by label.
pub fn assemble_informativity_m(
    spec: &NetworkSpec,
    drop_inputs: &[String],
    drop_predictor_rows: &[String],
) -> Result<MMatrix> {
    assemble_with_extra(spec, &[], drop_inputs, drop_predictor_rows)
}

pub fn assemble_with_extra(
    spec: &NetworkSpec,
    extra: &[ExtraRow],
    drop_inputs: &[String],
    drop_predictor_rows: &[String],
) -> Result<MMatrix> {
    let s = spec.with_knowns_applied();
    let n = s.n;
    for d in drop_inputs {
        if !s.labels.r.contains(d) && !s.labels.e.contains(d) {
            return Err(Error::MalformedInput(format!("--drop-inputs: no input named {d:?}")));
        }
    }
    let extra_labels: Vec<&String> = extra.iter().map(|x| &x.label).collect();
    for d in drop_predictor_rows {
        if !s.labels.y.contains(d) && !s.labels.r.contains(d) && !extra_labels.contains(&d) {
            return Err(Error::MalformedInput(format!(
                "--drop-predictor: no predictor row named {d:?}"
            )));
        }
    }
    let mut col_kinds: Vec<ColKind> = (0..n).map(ColKind::Node).collect();
    let mut col_labels = s.labels.nodes.clone();
    for (j, l) in s.labels.r.iter().enumerate() {
        if !drop_inputs.contains(l) {
            col_kinds.push(ColKind::R(j));
            col_labels.push(l.clone());
        }
    }
    for (j, l) in s.labels.e.iter().enumerate() {
        if !drop_inputs.contains(l) {
            col_kinds.push(ColKind::E(j));
            col_labels.push(l.clone());
        }
    }
    if col_kinds.len() == n {
        return Err(Error::Precondition("no excitation columns remain".into()));
    }
    let pick = |p: &[EntrySpec], qr: &[EntrySpec], qe: &[EntrySpec]| -> Vec<EntrySpec> {
        col_kinds
            .iter()
            .map(|k| match *k {
                ColKind::Node(i) => p[i].clone(),
                ColKind::R(j) => qr[j].clone(),
                ColKind::E(j) => qe[j].clone(),
            })
            .collect()
    };
    let zr = vec![EntrySpec::Zero; s.m_r];
    let ze = vec![EntrySpec::Zero; s.m_e];
    let zn = vec![EntrySpec::Zero; n];
    let mut grid = Vec::new();
    let mut row_kinds = Vec::new();
    let mut row_labels = Vec::new();
    for i in 0..n {
        grid.push(pick(&s.p[i], &s.qr[i], &s.qe[i]));
        row_kinds.push(RowKind::Node(i));
        row_labels.push(s.labels.nodes[i].clone());
    }
    for i in 0..s.p_y {
        if drop_predictor_rows.contains(&s.labels.y[i]) {
            continue;
        }
        grid.push(pick(&s.ry[i], &s.syr[i], &s.sye[i]));
        row_kinds.push(RowKind::Output(i));
        row_labels.push(s.labels.y[i].clone());
    }
    for x in extra {
        if drop_predictor_rows.contains(&x.label) {
            continue;
        }
        let mut e = x.entries.clone();
        for (k, v) in &s.knowns {
            e = e.iter().map(|en| en.substitute(k, v)).collect();
        }
        grid.push(pick(&e, &zr, &ze));
        row_kinds.push(RowKind::Extra);
        row_labels.push(x.label.clone());
    }
    for (j, l) in s.labels.r.iter().enumerate() {
        if drop_inputs.contains(l) || drop_predictor_rows.contains(l) {
            continue;
        }
        let mut unit = zr.clone();
        unit[j] = EntrySpec::One;
        grid.push(pick(&zn, &unit, &ze));
        row_kinds.push(RowKind::Passthrough(j));
        row_labels.push(l.clone());
    }
    Ok(MMatrix {
        n,
        grid,
        row_kinds,
        col_kinds,
        row_labels,
        col_labels,
    })
}
