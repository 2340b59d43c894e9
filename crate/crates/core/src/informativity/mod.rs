//! Generic rank of the closed-loop map and the informativity verdict.

mod graph;
mod rank;
mod verdict;

pub use graph::{all_free_and_distinct, max_disjoint_paths, DisjointPaths, FlowGraph, VertexKind, CAVEAT_NOT_ALL_FREE};
pub use rank::{groebner_generic_rank, groebner_rank_case, RankCase, RankOptions, RankVerdict, SaturationOrder};
pub use verdict::{
    informativity_of_m, informativity_verdict, pi_of, GroebnerEvidence, InformativityOptions,
    InformativityReport, InformativityVerdict, Method, NumericEvidence, CAVEAT_ASSUMPTION, CAVEAT_DET_P,
};

use crate::error::Result;
use crate::netmodel::MMatrix;

/// Generic rank of `Pi` for `M` by one method, or by all of them with a
/// disagreement reported as an error.
pub fn generic_rank(m: &MMatrix, method: Method, opts: &InformativityOptions) -> Result<usize> {
    let opts = InformativityOptions {
        method,
        ..opts.clone()
    };
    Ok(informativity_of_m(m, true, &opts)?.generic_rank)
}
