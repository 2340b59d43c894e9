use serde::Serialize;

use super::graph::{all_free_and_distinct, max_disjoint_paths, DisjointPaths};
use super::rank::{groebner_generic_rank, RankCase, RankOptions, RankVerdict, SaturationOrder};
use crate::error::{Error, Result};
use crate::netmodel::{assemble_informativity_m, MMatrix, NetworkSpec};
use crate::oracle::{random_rank_probe, Pool, ProbeConfig, ProbeResult};
use crate::ratmat::{build_pi, RationalMatrix, DENOMINATOR_SURROGATE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Graph,
    Groebner,
    Numeric,
    All,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(Method::Graph),
            "groebner" | "grobner" => Ok(Method::Groebner),
            "numeric" => Ok(Method::Numeric),
            "all" => Ok(Method::All),
            _ => Err(Error::MalformedInput(format!(
                "unknown method {s:?}; expected graph, groebner, numeric or all"
            ))),
        }
    }

    fn runs(self, m: Method) -> bool {
        self == Method::All || self == m
    }
}

#[derive(Clone, Debug)]
pub struct InformativityOptions {
    pub method: Method,
    pub drop_inputs: Vec<String>,
    pub drop_predictor: Vec<String>,
    pub rank: RankOptions,
    pub probe: ProbeConfig,
}

impl Default for InformativityOptions {
    fn default() -> Self {
        Self {
            method: Method::All,
            drop_inputs: Vec::new(),
            drop_predictor: Vec::new(),
            rank: RankOptions::default(),
            probe: ProbeConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InformativityVerdict {
    Informative,
    NotInformativeByThisTest,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroebnerEvidence {
    pub generic_rank: usize,
    pub k: usize,
    pub case: Option<RankVerdict>,
    pub degenerate_locus: Vec<String>,
    pub denominator: String,
    pub denominator_surrogate: &'static str,
    pub order: SaturationOrder,
    pub priority: Vec<String>,
    pub basis_len: usize,
    pub minors_examined: usize,
    pub nonzero_minors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericEvidence {
    pub rank: usize,
    pub trial_ranks: Vec<usize>,
    pub resamples: usize,
    pub seed: u64,
    pub trials: usize,
    pub pool: Pool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InformativityReport {
    pub method: Method,
    pub m_shape: [usize; 2],
    pub pi_shape: [usize; 2],
    pub predictor_rows: Vec<String>,
    pub excitation_columns: Vec<String>,
    pub dropped_inputs: Vec<String>,
    pub dropped_predictor_rows: Vec<String>,
    pub generic_rank: usize,
    pub required_rank: usize,
    pub verdict: InformativityVerdict,
    pub assumption_spectrum_positive_definite: bool,
    pub graph: Option<DisjointPaths>,
    pub groebner: Option<GroebnerEvidence>,
    pub numeric: Option<NumericEvidence>,
    pub caveats: Vec<String>,
    /// Evidence kept out of the serialized report (for `--dump-basis`).
    #[serde(skip)]
    pub rank_case: Option<RankCase>,
}

/// Informativity of the full network, with drops applied.
pub fn informativity_verdict(spec: &NetworkSpec, opts: &InformativityOptions) -> Result<InformativityReport> {
    let m = assemble_informativity_m(spec, &opts.drop_inputs, &opts.drop_predictor)?;
    informativity_of_m(&m, spec.assumptions.input_spectrum_positive_definite, opts)
}

/// `Pi` of an assembled `M`.
pub fn pi_of(m: &MMatrix) -> Result<RationalMatrix> {
    let (ring, order) = m.ring()?;
    let [p, q, r, s] = m.blocks(&ring, &order)?;
    build_pi(&p, &q, &r, &s)
}

pub const CAVEAT_ASSUMPTION: &str = "spectrum assumption unasserted";
pub const CAVEAT_DET_P: &str =
    "the Groebner certificate excludes zeros of the denominator product D only; zeros of det P outside V(D) are not excluded";

/// Runs the requested methods on `M` and forms the verdict. The Groebner
/// rank is authoritative when computed, then the numeric probe, then the
/// graph count.
pub fn informativity_of_m(m: &MMatrix, asserted: bool, opts: &InformativityOptions) -> Result<InformativityReport> {
    let method = opts.method;
    let required = m.z_rows();
    let mut caveats = Vec::new();
    let needs_pi = method.runs(Method::Groebner) || method.runs(Method::Numeric);
    let pi = if needs_pi { Some(pi_of(m)?) } else { None };

    // The three methods are independent; graph and the first numeric pass
    // run beside the Gröbner search and are joined in a fixed order.
    let (graph, first_probe, grob) = std::thread::scope(|sc| {
        let graph = sc.spawn(|| method.runs(Method::Graph).then(|| max_disjoint_paths(m)));
        let num = sc.spawn(|| {
            method
                .runs(Method::Numeric)
                .then(|| probe(pi.as_ref().unwrap(), &opts.probe))
                .transpose()
        });
        let grob = method
            .runs(Method::Groebner)
            .then(|| groebner_generic_rank(pi.as_ref().unwrap(), &opts.rank))
            .transpose();
        (
            graph.join().expect("graph worker"),
            num.join().expect("probe worker"),
            grob,
        )
    });

    let mut groebner = None;
    let mut rank_case = None;
    if let Some((rank, case)) = grob? {
        let ring = pi.as_ref().and_then(|p| p.entries().first()).map(|e| e.ring().clone());
        groebner = Some(GroebnerEvidence {
            generic_rank: rank,
            k: case.as_ref().map_or(0, |c| c.k),
            case: case.as_ref().map(|c| c.verdict),
            degenerate_locus: case
                .as_ref()
                .map(|c| c.degenerate_locus.iter().map(|p| p.to_string()).collect())
                .unwrap_or_default(),
            denominator: case.as_ref().map_or("1".into(), |c| c.denominator.to_string()),
            denominator_surrogate: DENOMINATOR_SURROGATE,
            order: opts.rank.order,
            priority: case
                .as_ref()
                .map(|c| c.basis.order().priority().iter().map(|&v| c.basis.ring().name(v).to_string()).collect())
                .or_else(|| ring.map(|r| r.names().to_vec()))
                .unwrap_or_default(),
            basis_len: case.as_ref().map_or(0, |c| c.basis.len()),
            minors_examined: case.as_ref().map_or(0, |c| c.minors_examined),
            nonzero_minors: case.as_ref().map_or(0, |c| c.nonzero_minors),
        });
        if case.as_ref().is_some_and(|c| !c.denominator.is_constant()) {
            caveats.push(CAVEAT_DET_P.to_string());
        }
        rank_case = case;
    }

    let mut numeric = None;
    if let Some(mut res) = first_probe? {
        let mut cfg = opts.probe.clone();
        let target = groebner.as_ref().map(|g| g.generic_rank);
        if matches!(cfg.pool, Pool::Prime { .. }) && target.is_some_and(|t| res.rank < t) {
            // A modular drop may be spurious; Q decides.
            cfg.pool = Pool::Rational {
                max: crate::oracle::DEFAULT_POOL_MAX,
            };
            caveats.push("modular probe fell short; re-ran over Q".into());
            res = probe(pi.as_ref().unwrap(), &cfg)?;
        }
        numeric = Some(NumericEvidence {
            rank: res.rank,
            trial_ranks: res.trial_ranks,
            resamples: res.resamples,
            seed: cfg.seed,
            trials: cfg.trials,
            pool: cfg.pool,
        });
    }

    let generic_rank = groebner
        .as_ref()
        .map(|g| g.generic_rank)
        .or(numeric.as_ref().map(|n| n.rank))
        .or(graph.as_ref().map(|g| g.count))
        .unwrap_or(0);

    if let (Some(g), Some(n)) = (&groebner, &numeric) {
        if n.rank != g.generic_rank {
            return Err(Error::Inconsistency(format!(
                "numeric probe rank {} differs from Groebner generic rank {}",
                n.rank, g.generic_rank
            )));
        }
    }
    if let Some(gr) = &graph {
        caveats.extend(gr.caveats.iter().cloned());
        if gr.count != generic_rank && (groebner.is_some() || numeric.is_some()) {
            if all_free_and_distinct(m) {
                return Err(Error::Inconsistency(format!(
                    "graph count {} differs from generic rank {generic_rank} on an all-free M",
                    gr.count
                )));
            }
            caveats.push(format!(
                "graph count {} differs from the generic rank {generic_rank}",
                gr.count
            ));
        }
    }
    if m.z_rows() > m.u_cols() {
        caveats.push(format!(
            "{} predictor inputs exceed {} excitation columns; full row rank is impossible",
            m.z_rows(),
            m.u_cols()
        ));
    }
    if !asserted {
        caveats.push(CAVEAT_ASSUMPTION.to_string());
    }
    let verdict = if asserted && generic_rank == required {
        InformativityVerdict::Informative
    } else {
        InformativityVerdict::NotInformativeByThisTest
    };
    Ok(InformativityReport {
        method,
        m_shape: [m.rows(), m.cols()],
        pi_shape: [m.z_rows(), m.u_cols()],
        predictor_rows: m.row_labels[m.n..].to_vec(),
        excitation_columns: m.col_labels[m.n..].to_vec(),
        dropped_inputs: opts.drop_inputs.clone(),
        dropped_predictor_rows: opts.drop_predictor.clone(),
        generic_rank,
        required_rank: required,
        verdict,
        assumption_spectrum_positive_definite: asserted,
        graph,
        groebner,
        numeric,
        caveats,
        rank_case,
    })
}

fn probe(pi: &RationalMatrix, cfg: &ProbeConfig) -> Result<ProbeResult> {
    if pi.rows() == 0 || pi.cols() == 0 {
        return Ok(ProbeResult {
            rank: 0,
            trial_ranks: vec![0; cfg.trials],
            resamples: 0,
        });
    }
    random_rank_probe(pi, cfg)
}
