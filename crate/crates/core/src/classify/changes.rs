use std::collections::BTreeMap;

use crate::ca::{CellularAutomaton, Configuration, Orbit, Pos};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeProfile {
    pub max_changes_observed: usize,
    /// Per cell, the largest count over all sampled orbits.
    pub per_cell: BTreeMap<Pos, usize>,
    pub horizon: usize,
    pub sample_count: usize,
}

/// Number of `t < horizon` with `F^{t+1}(c)_z ≠ F^t(c)_z`, for each cell.
pub fn change_counts(ca: &CellularAutomaton, c: &Configuration, cells: &[Pos], horizon: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0; cells.len()];
    let mut prev: Option<Vec<_>> = None;
    for cfg in Orbit::new(ca, c)?.take(horizon + 1) {
        let row: Vec<_> = cells.iter().map(|p| cfg.get(p)).collect();
        if let Some(p) = &prev {
            for (i, (a, b)) in p.iter().zip(&row).enumerate() {
                if a != b {
                    counts[i] += 1;
                }
            }
        }
        prev = Some(row);
    }
    Ok(counts)
}

pub fn change_profile(ca: &CellularAutomaton, configs: &[Configuration], cells: &[Pos], horizon: usize) -> Result<ChangeProfile> {
    if horizon == 0 {
        return Err(Error::InvalidConfiguration("change profile needs horizon ≥ 1".into()));
    }
    let mut per_cell: BTreeMap<Pos, usize> = cells.iter().map(|p| (p.clone(), 0)).collect();
    for c in configs {
        for (p, n) in cells.iter().zip(change_counts(ca, c, cells, horizon)?) {
            let e = per_cell.get_mut(p).expect("cell listed");
            *e = (*e).max(n);
        }
    }
    Ok(ChangeProfile {
        max_changes_observed: per_cell.values().copied().max().unwrap_or(0),
        per_cell,
        horizon,
        sample_count: configs.len(),
    })
}
