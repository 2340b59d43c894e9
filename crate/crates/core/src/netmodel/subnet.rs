use std::collections::BTreeSet;

use super::entry::{EntrySpec, Grid};
use super::mmatrix::{assemble_with_extra, ExtraRow, MMatrix};
use super::prune::{prune, IndexMap, PruneRule};
use super::spec::{Identification, Labels, MeasureMode, NetworkSpec, SubnetMode};
use crate::error::{Error, Result};
use crate::polyalg::Expr;

/// Result of restricting the identification problem to the nodes `A`.
#[derive(Clone, Debug)]
pub struct SubnetTransform {
    /// The A-network with B-signals turned into inputs.
    pub ident: NetworkSpec,
    /// Predictor rows appended to the full-network `M` for informativity.
    pub extra_rows: Vec<ExtraRow>,
    /// Candidate input columns before pruning, by label.
    pub candidate_inputs: Vec<String>,
    /// Which candidate inputs survived.
    pub input_map: IndexMap,
    /// Which outputs of the full spec survived, by position.
    pub output_map: IndexMap,
    /// Human-readable notes (dropped constraints, deduplicated rows).
    pub notes: Vec<String>,
    pub info_m: MMatrix,
}

impl SubnetTransform {
    /// True when `A` is every node and the spec was passed through.
    pub fn is_identity(&self) -> bool {
        self.ident.n == self.info_m.n
    }

    /// The informativity matrix with drops applied on top of the rewrite.
    pub fn info_m_with(&self, full: &NetworkSpec, drop_inputs: &[String], drop_rows: &[String]) -> Result<MMatrix> {
        assemble_with_extra(full, &self.extra_rows, drop_inputs, drop_rows)
    }
}

struct Candidate {
    label: String,
    q: Vec<EntrySpec>,
    s: Vec<EntrySpec>,
    /// Entries over the node columns of the informativity row it induces.
    info_row: Option<Vec<EntrySpec>>,
    combination: bool,
}

/// Rewrites `spec` so that only the dynamics of `a_nodes` are identified.
/// B-nodes measured directly become inputs named after the node; measured
/// combinations become inputs `wt_<a>` (for `-P_AB w_B`) and `wh_<y>`
/// (for `R_yB w_B`). Outputs whose `R_yA` and `S_yr` rows vanish are
/// dropped, then zero input columns are pruned.
pub fn subnetwork_transform(spec: &NetworkSpec, a_nodes: &[String], mode: &SubnetMode) -> Result<SubnetTransform> {
    if a_nodes.is_empty() {
        return Err(Error::Precondition("a_nodes is empty".into()));
    }
    let mut a_idx = Vec::new();
    for l in a_nodes {
        let i = spec
            .labels
            .nodes
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| Error::MalformedInput(format!("a_nodes: unknown node {l:?}")))?;
        if a_idx.contains(&i) {
            return Err(Error::MalformedInput(format!("a_nodes: {l:?} listed twice")));
        }
        a_idx.push(i);
    }
    a_idx.sort_unstable();
    let b_idx: Vec<usize> = (0..spec.n).filter(|i| !a_idx.contains(i)).collect();

    if b_idx.is_empty() {
        let info_m = assemble_with_extra(spec, &[], &[], &[])?;
        return Ok(SubnetTransform {
            ident: spec.clone(),
            extra_rows: Vec::new(),
            candidate_inputs: Vec::new(),
            input_map: IndexMap::identity(spec.m_r),
            output_map: IndexMap::identity(spec.p_y),
            notes: Vec::new(),
            info_m,
        });
    }

    let mut b_nodes = Vec::new();
    let mut b_comb = Vec::new();
    for &b in &b_idx {
        let l = &spec.labels.nodes[b];
        match mode.for_node(l) {
            Some(MeasureMode::Node) => b_nodes.push(b),
            Some(MeasureMode::Combinations) => b_comb.push(b),
            None => {
                return Err(Error::Precondition(format!(
                    "mixed mode: B-node {l:?} has no measurement choice"
                )))
            }
        }
    }

    // Outputs: keep rows where R_yA or the original S_yr is non-zero.
    let mut output_map = IndexMap::default();
    for i in 0..spec.p_y {
        let nz = a_idx.iter().any(|&a| !spec.ry[i][a].is_zero()) || spec.syr[i].iter().any(|e| !e.is_zero());
        if nz {
            output_map.kept.push(i);
        } else {
            output_map.removed.push(i);
        }
    }
    let ys = &output_map.kept;
    let na = a_idx.len();

    let mut cands: Vec<Candidate> = Vec::new();
    for &b in &b_nodes {
        cands.push(Candidate {
            label: spec.labels.nodes[b].clone(),
            q: a_idx.iter().map(|&a| spec.p[a][b].neg()).collect(),
            s: ys.iter().map(|&i| spec.ry[i][b].clone()).collect(),
            info_row: Some(unit(spec.n, b)),
            combination: false,
        });
    }
    if !b_comb.is_empty() {
        for (k, &a) in a_idx.iter().enumerate() {
            let row: Vec<EntrySpec> = (0..spec.n)
                .map(|j| if b_comb.contains(&j) { spec.p[a][j].neg() } else { EntrySpec::Zero })
                .collect();
            let mut q = vec![EntrySpec::Zero; na];
            q[k] = EntrySpec::One;
            cands.push(Candidate {
                label: format!("wt_{}", spec.labels.nodes[a]),
                info_row: (!row.iter().all(EntrySpec::is_zero)).then_some(row),
                q,
                s: vec![EntrySpec::Zero; ys.len()],
                combination: true,
            });
        }
        for (k, &i) in ys.iter().enumerate() {
            let row: Vec<EntrySpec> = (0..spec.n)
                .map(|j| if b_comb.contains(&j) { spec.ry[i][j].clone() } else { EntrySpec::Zero })
                .collect();
            let mut s = vec![EntrySpec::Zero; ys.len()];
            s[k] = EntrySpec::One;
            cands.push(Candidate {
                label: format!("wh_{}", spec.labels.y[i]),
                info_row: (!row.iter().all(EntrySpec::is_zero)).then_some(row),
                q: vec![EntrySpec::Zero; na],
                s,
                combination: true,
            });
        }
    }
    for j in 0..spec.m_r {
        cands.push(Candidate {
            label: spec.labels.r[j].clone(),
            q: a_idx.iter().map(|&a| spec.qr[a][j].clone()).collect(),
            s: ys.iter().map(|&i| spec.syr[i][j].clone()).collect(),
            info_row: None,
            combination: false,
        });
    }
    // A combination signal that is structurally zero is not an input at all.
    let live: Vec<bool> = cands.iter().map(|c| !(c.combination && c.info_row.is_none())).collect();
    let stacked: Grid = (0..na + ys.len())
        .map(|r| {
            cands
                .iter()
                .zip(&live)
                .map(|(c, &ok)| {
                    if !ok {
                        EntrySpec::Zero
                    } else if r < na {
                        c.q[r].clone()
                    } else {
                        c.s[r - na].clone()
                    }
                })
                .collect()
        })
        .collect();
    let (_, input_map) = prune(&stacked, cands.len(), PruneRule::ZeroCols);
    let kept: Vec<&Candidate> = input_map.kept.iter().map(|&j| &cands[j]).collect();

    let mut notes = Vec::new();
    let r_labels: Vec<String> = kept.iter().map(|c| c.label.clone()).collect();
    let mut y_labels: Vec<String> = ys.iter().map(|&i| spec.labels.y[i].clone()).collect();
    for y in y_labels.iter_mut() {
        if r_labels.contains(y) || spec.labels.e.contains(y) {
            let renamed = format!("y_{y}");
            notes.push(format!("output {y} renamed {renamed} to avoid a clash with an input"));
            *y = renamed;
        }
    }
    for r in &r_labels {
        if a_nodes.contains(r) || spec.labels.e.contains(r) {
            return Err(Error::MalformedInput(format!("subnet input label {r:?} clashes with a signal")));
        }
    }

    let sub = |g: &Grid, rows: &[usize], cols: &[usize]| -> Grid {
        rows.iter().map(|&i| cols.iter().map(|&j| g[i][j].clone()).collect()).collect()
    };
    let all_e: Vec<usize> = (0..spec.m_e).collect();
    let mut ident = NetworkSpec {
        name: format!("{}[{}]", spec.name, a_nodes.join(",")),
        n: na,
        m_r: kept.len(),
        m_e: spec.m_e,
        p_y: ys.len(),
        labels: Labels {
            nodes: a_idx.iter().map(|&a| spec.labels.nodes[a].clone()).collect(),
            r: r_labels,
            e: spec.labels.e.clone(),
            y: y_labels,
        },
        p: sub(&spec.p, &a_idx, &a_idx),
        qr: (0..na).map(|r| kept.iter().map(|c| c.q[r].clone()).collect()).collect(),
        qe: sub(&spec.qe, &a_idx, &all_e),
        ry: sub(&spec.ry, ys, &a_idx),
        syr: (0..ys.len()).map(|r| kept.iter().map(|c| c.s[r].clone()).collect()).collect(),
        sye: sub(&spec.sye, ys, &all_e),
        constraints: Vec::new(),
        knowns: Vec::new(),
        assumptions: spec.assumptions.clone(),
        identification: Identification {
            gc_columns: spec.identification.gc_columns.clone(),
            gc_entries: spec.identification.gc_entries.clone(),
            ..Identification::default()
        },
        notices: Vec::new(),
    };
    let names: BTreeSet<String> = ident.free_names().into_iter().collect();
    for (k, v) in &spec.knowns {
        if names.contains(k) {
            ident.knowns.push((k.clone(), v.clone()));
        }
    }
    for c in &spec.constraints {
        let ids = Expr::parse(c)?.identifiers();
        if ids.iter().all(|i| names.contains(i)) {
            ident.constraints.push(c.clone());
        } else {
            notes.push(format!("constraint {c:?} dropped: it involves B-network entries"));
        }
    }
    // Round trip through the file format so the result is a validated spec.
    let ident = NetworkSpec::from_json(&ident.to_json())?;

    let mut extra_rows: Vec<ExtraRow> = Vec::new();
    let full_rows: Vec<Vec<EntrySpec>> = spec.ry.clone();
    for c in &kept {
        let Some(row) = &c.info_row else { continue };
        let dup = full_rows
            .iter()
            .enumerate()
            .any(|(i, r)| r == row && spec.syr[i].iter().chain(&spec.sye[i]).all(EntrySpec::is_zero));
        if dup {
            notes.push(format!("signal {} is already a predictor input", c.label));
            continue;
        }
        let mut label = c.label.clone();
        if spec.labels.y.contains(&label) || spec.labels.r.contains(&label) {
            label = format!("wB_{label}");
        }
        extra_rows.push(ExtraRow {
            label,
            entries: row.clone(),
        });
    }
    let info_m = assemble_with_extra(spec, &extra_rows, &[], &[])?;
    Ok(SubnetTransform {
        ident,
        extra_rows,
        candidate_inputs: cands.iter().map(|c| c.label.clone()).collect(),
        input_map,
        output_map,
        notes,
        info_m,
    })
}

fn unit(n: usize, k: usize) -> Vec<EntrySpec> {
    let mut v = vec![EntrySpec::Zero; n];
    v[k] = EntrySpec::One;
    v
}
