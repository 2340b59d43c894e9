use serde::Serialize;

use super::entry::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneRule {
    ZeroRows,
    ZeroCols,
}

/// Original positions of the rows or columns that survived a prune.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct IndexMap {
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
}

impl IndexMap {
    pub fn identity(n: usize) -> Self {
        Self {
            kept: (0..n).collect(),
            removed: Vec::new(),
        }
    }
}

/// Removes structurally zero rows or columns. `ncols` is needed for grids
/// with no rows.
pub fn prune(grid: &Grid, ncols: usize, rule: PruneRule) -> (Grid, IndexMap) {
    let mut map = IndexMap::default();
    match rule {
        PruneRule::ZeroRows => {
            let mut out = Vec::new();
            for (i, row) in grid.iter().enumerate() {
                if row.iter().all(|e| e.is_zero()) {
                    map.removed.push(i);
                } else {
                    map.kept.push(i);
                    out.push(row.clone());
                }
            }
            (out, map)
        }
        PruneRule::ZeroCols => {
            for j in 0..ncols {
                if grid.iter().all(|row| row[j].is_zero()) {
                    map.removed.push(j);
                } else {
                    map.kept.push(j);
                }
            }
            let out = grid
                .iter()
                .map(|row| map.kept.iter().map(|&j| row[j].clone()).collect())
                .collect();
            (out, map)
        }
    }
}
