//! The run report: one JSON document per invocation plus a text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::identifiability::{IdentVerdict, IdentifiabilityReport};
use crate::informativity::{InformativityReport, InformativityVerdict};

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub path: String,
    pub name: String,
    /// SHA-256 of the canonical serialization.
    pub digest: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OptionsEcho {
    pub method: String,
    pub drop_inputs: Vec<String>,
    pub drop_predictor: Vec<String>,
    pub knowns: Vec<(String, String)>,
    pub constraints: Vec<String>,
    pub gc_columns: Option<Vec<String>>,
    pub resample_knowns: usize,
    pub order: String,
    pub step_budget: u64,
    pub seed: u64,
    pub trials: usize,
    pub pool: String,
    pub a_nodes: Option<Vec<String>>,
    pub mode: Option<String>,
    pub k: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubnetEcho {
    pub a_nodes: Vec<String>,
    pub mode: String,
    pub identity: bool,
    pub candidate_inputs: Vec<String>,
    pub kept_inputs: Vec<String>,
    pub ident_inputs: Vec<String>,
    pub ident_outputs: Vec<String>,
    pub extra_predictor_rows: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankEcho {
    pub method: String,
    pub pi_shape: [usize; 2],
    pub generic_rank: usize,
    pub k: Option<usize>,
    pub case: Option<String>,
    pub degenerate_locus: Vec<String>,
    pub graph_count: Option<usize>,
    pub numeric_rank: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub affirmative: bool,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: InputEcho,
    pub options: OptionsEcho,
    pub notices: Vec<String>,
    pub subnet: Option<SubnetEcho>,
    pub informativity: Option<InformativityReport>,
    pub identifiability: Option<IdentifiabilityReport>,
    pub rank: Option<RankEcho>,
    pub outcome: Outcome,
    /// Seconds per phase; only present when requested, since it breaks
    /// byte-identical reruns.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    pub fn new(command: &str, input: InputEcho, options: OptionsEcho) -> Self {
        Self {
            tool: "netalg",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input,
            options,
            notices: Vec::new(),
            subnet: None,
            informativity: None,
            identifiability: None,
            rank: None,
            outcome: Outcome {
                affirmative: true,
                exit_code: 0,
            },
            timings: None,
        }
    }

    /// Fills in the outcome from whatever analyses ran.
    pub fn settle(&mut self) {
        let info_ok = self
            .informativity
            .as_ref()
            .is_none_or(|r| r.verdict == InformativityVerdict::Informative);
        let ident_ok = self
            .identifiability
            .as_ref()
            .is_none_or(|r| r.verdict == IdentVerdict::GenericallyLocallyIdentifiable);
        // Without a requested k the question is full row rank; `r.k` may
        // then hold the k found by the search.
        let rank_ok = self.rank.as_ref().is_none_or(|r| match self.options.k {
            Some(_) => r.case.as_deref() != Some("GenericallyLessThanK"),
            None => r.generic_rank == r.pi_shape[0],
        });
        let ok = info_ok && ident_ok && rank_ok;
        self.outcome = Outcome {
            affirmative: ok,
            exit_code: if ok { 0 } else { 1 },
        };
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "netalg {} {} ({})", self.command, self.input.path, self.input.name);
        let _ = writeln!(s, "digest {}", self.input.digest);
        for n in &self.notices {
            let _ = writeln!(s, "notice: {n}");
        }
        if let Some(sub) = &self.subnet {
            let _ = writeln!(s, "\nsub-network A = {{{}}} ({})", sub.a_nodes.join(", "), sub.mode);
            if sub.identity {
                let _ = writeln!(s, "  A covers every node; the network is used as is");
            } else {
                let _ = writeln!(s, "  identification inputs: {}", sub.ident_inputs.join(", "));
                let _ = writeln!(s, "  identification outputs: {}", sub.ident_outputs.join(", "));
                if !sub.extra_predictor_rows.is_empty() {
                    let _ = writeln!(s, "  extra predictor rows: {}", sub.extra_predictor_rows.join(", "));
                }
            }
            for n in &sub.notes {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        if let Some(r) = &self.informativity {
            render_informativity(&mut s, r);
        }
        if let Some(r) = &self.identifiability {
            render_identifiability(&mut s, r);
        }
        if let Some(r) = &self.rank {
            let _ = writeln!(s, "\nrank of Pi ({}x{}, method {})", r.pi_shape[0], r.pi_shape[1], r.method);
            let _ = writeln!(s, "  generic rank {}", r.generic_rank);
            if let (Some(k), Some(c)) = (r.k, &r.case) {
                let _ = writeln!(s, "  k = {k}: {c}");
            }
            for p in &r.degenerate_locus {
                let _ = writeln!(s, "  locus: {p}");
            }
        }
        let _ = writeln!(
            s,
            "\nresult: {} (exit {})",
            if self.outcome.affirmative { "affirmative" } else { "negative" },
            self.outcome.exit_code
        );
        s
    }
}

fn render_informativity(s: &mut String, r: &InformativityReport) {
    let _ = writeln!(s, "\ninformativity (method {:?})", r.method);
    let _ = writeln!(s, "  M {}x{}, Pi {}x{}", r.m_shape[0], r.m_shape[1], r.pi_shape[0], r.pi_shape[1]);
    let _ = writeln!(s, "  predictor rows: {}", r.predictor_rows.join(", "));
    let _ = writeln!(s, "  excitation columns: {}", r.excitation_columns.join(", "));
    if !r.dropped_inputs.is_empty() {
        let _ = writeln!(s, "  dropped inputs: {}", r.dropped_inputs.join(", "));
    }
    if !r.dropped_predictor_rows.is_empty() {
        let _ = writeln!(s, "  dropped predictor rows: {}", r.dropped_predictor_rows.join(", "));
    }
    let _ = writeln!(s, "  generic rank {} / required {}", r.generic_rank, r.required_rank);
    if let Some(g) = &r.graph {
        let _ = writeln!(s, "  graph: {} disjoint paths", g.count);
        for p in &g.paths {
            let _ = writeln!(s, "    {}", p.join(" -> "));
        }
    }
    if let Some(g) = &r.groebner {
        let case = g.case.map_or("none".to_string(), |c| format!("{c:?}"));
        let _ = writeln!(s, "  groebner: rank {} ({case} at k = {}), D = {}", g.generic_rank, g.k, g.denominator);
        for p in &g.degenerate_locus {
            let _ = writeln!(s, "    locus: {p}");
        }
    }
    if let Some(n) = &r.numeric {
        let _ = writeln!(s, "  numeric: rank {} over {} trials (seed {})", n.rank, n.trials, n.seed);
    }
    for c in &r.caveats {
        let _ = writeln!(s, "  caveat: {c}");
    }
    let _ = writeln!(s, "  verdict: {}", match r.verdict {
        InformativityVerdict::Informative => "informative",
        InformativityVerdict::NotInformativeByThisTest => "not informative by this test",
    });
}

fn render_identifiability(s: &mut String, r: &IdentifiabilityReport) {
    let _ = writeln!(s, "\nidentifiability");
    let _ = writeln!(s, "  unknowns ({}): {}", r.k, r.unknowns.join(", "));
    for g in &r.kept_entries {
        let _ = writeln!(s, "  {} = F[{}, {}] = {}", g.name, g.output, g.input, g.entry);
    }
    if !r.dropped_columns.is_empty() {
        let _ = writeln!(s, "  dropped columns: {}", r.dropped_columns.join(", "));
    }
    let _ = writeln!(s, "  dim V_o = {}, dim V_c = {}, fiber dim {}", r.dim_vo, r.dim_vc, r.fiber_dim);
    if r.elimination_generators.is_empty() {
        let _ = writeln!(s, "  elimination ideal: zero");
    }
    for g in &r.elimination_generators {
        let _ = writeln!(s, "  elimination: {g}");
    }
    for x in &r.recovery {
        match &x.valid_off {
            Some(v) => writeln!(s, "  recovery of {}: {} (valid off {v})", x.unknown, x.relation),
            None => writeln!(s, "  recovery of {}: {}", x.unknown, x.relation),
        }
        .ok();
    }
    for c in &r.caveats {
        let _ = writeln!(s, "  caveat: {c}");
    }
    let _ = writeln!(s, "  verdict: {}", match r.verdict {
        IdentVerdict::GenericallyLocallyIdentifiable => "generically locally identifiable",
        IdentVerdict::NotGenericallyLocallyIdentifiable => "not generically locally identifiable",
    });
}
