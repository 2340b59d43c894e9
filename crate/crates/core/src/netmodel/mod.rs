//! Network descriptions, the structured matrix `M`, and sub-network rewrites.

mod entry;
mod mmatrix;
mod prune;
mod spec;
mod subnet;

pub use entry::{zero_grid, EntrySpec, Grid};
pub use mmatrix::{assemble_informativity_m, assemble_with_extra, ColKind, ExtraRow, MMatrix, RowKind};
pub use prune::{prune, IndexMap, PruneRule};
pub use spec::{
    validate_spec, Assumptions, Identification, Labels, MeasureMode, NetworkSpec, SubnetMode,
};
pub use subnet::{subnetwork_transform, SubnetTransform};
