use crate::ca::{CellularAutomaton, State};
use crate::error::{Error, Result};
use crate::predict::naive::PredictionInstance;
use crate::predict::rle::RleColumn;

pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub state: State,
    /// Columns `−rt … rt` of the assembly found.
    pub columns: Vec<RleColumn>,
    pub nodes: u64,
}

pub fn predict_column_search(ca: &CellularAutomaton, inst: &PredictionInstance, k: usize) -> Result<State> {
    Ok(column_search(ca, inst, k, DEFAULT_BUDGET)?.state)
}

/// For each partial context over the offsets `v ≤ 0`, the set of outputs
/// reachable by some completion of the offsets `v > 0`.
struct ImageTable {
    known: Vec<usize>,
    words: usize,
    bits: Vec<u64>,
}

impl ImageTable {
    const MAX_ENTRIES: usize = 1 << 22;

    fn build(ca: &CellularAutomaton, offs: &[i64]) -> Option<Self> {
        let q = ca.num_states();
        let known: Vec<usize> = (0..offs.len()).filter(|&j| offs[j] <= 0).collect();
        let entries = q.checked_pow(known.len() as u32)?;
        let words = q.div_ceil(64);
        if entries.checked_mul(words)? > Self::MAX_ENTRIES {
            return None;
        }
        let mut bits = vec![0u64; entries * words];
        let n = offs.len();
        for (idx, &out) in ca.table().iter().enumerate() {
            // idx is the mixed-radix context, first offset most significant
            let mut sub = 0;
            for &j in &known {
                let digit = idx / q.pow((n - 1 - j) as u32) % q;
                sub = sub * q + digit;
            }
            bits[sub * words + out.index() / 64] |= 1 << (out.index() % 64);
        }
        Some(ImageTable { known, words, bits })
    }

    fn allows(&self, q: usize, ctx: &[State], out: State) -> bool {
        let sub = self.known.iter().fold(0, |acc, &j| acc * q + ctx[j].index());
        self.bits[sub * self.words + out.index() / 64] >> (out.index() % 64) & 1 == 1
    }
}

/// Depth-first search over column values, cell by cell in column-major order,
/// with every local equation checked as soon as its cells are all assigned.
pub fn column_search(ca: &CellularAutomaton, inst: &PredictionInstance, k: usize, budget: u64) -> Result<SearchResult> {
    if ca.dim() != 1 {
        return Err(Error::NotOneDimensional);
    }
    let r = ca.radius();
    if inst.input.radius() != r * inst.t {
        return Err(Error::Precondition("input radius must equal r·t".into()));
    }
    let q = ca.num_states();
    let offs: Vec<i64> = ca.neighborhood().offsets().iter().map(|o| o[0]).collect();
    let big_r = (r * inst.t) as i64;
    let ncols = (2 * big_r + 1) as usize;
    let heights: Vec<usize> = (0..ncols)
        .map(|ci| {
            let i = ci as i64 - big_r;
            if r == 0 {
                inst.t
            } else {
                ((big_r - i.abs()) / r as i64) as usize
            }
        })
        .collect();
    let mut grid: Vec<Vec<State>> = (0..ncols)
        .map(|ci| {
            let mut v = vec![State(0); heights[ci] + 1];
            v[0] = inst.input.row()[ci];
            v
        })
        .collect();
    let mut col_start = vec![0usize; ncols];
    let mut cells = Vec::new();
    for ci in 0..ncols {
        col_start[ci] = cells.len();
        cells.extend((1..=heights[ci]).map(|tau| (ci, tau)));
    }
    let order = |ci: usize, tau: usize| col_start[ci] + tau - 1;
    let has_eq = |j: i64, tau: usize| -> bool {
        if j < 0 || j >= ncols as i64 || tau == 0 || tau > heights[j as usize] {
            return false;
        }
        offs.iter().all(|&v| {
            let c = j + v;
            c >= 0 && c < ncols as i64 && tau - 1 <= heights[c as usize]
        })
    };
    let image = ImageTable::build(ca, &offs);
    let mut ctx = vec![State(0); offs.len()];
    let mut segs = vec![1usize; ncols];
    let mut bumped = vec![false; cells.len()];
    let mut next = vec![0usize; cells.len()];
    let mut nodes = 0u64;
    let mut pos = 0;
    while pos < cells.len() {
        let (ci, tau) = cells[pos];
        if bumped[pos] {
            segs[ci] -= 1;
            bumped[pos] = false;
        }
        let prev = grid[ci][tau - 1];
        let mut found = false;
        while next[pos] < q {
            let c = next[pos];
            next[pos] += 1;
            // unchanged first, then the other states in order
            let x = if c == 0 {
                prev
            } else if c > prev.index() {
                State(c as u16)
            } else {
                State((c - 1) as u16)
            };
            nodes += 1;
            if nodes > budget {
                return Err(Error::BudgetExhausted(budget));
            }
            if x != prev && segs[ci] + 1 > k + 1 {
                continue;
            }
            let i = ci as i64;
            if let Some(img) = &image {
                if has_eq(i, tau) {
                    for (slot, &v) in ctx.iter_mut().zip(&offs) {
                        if v <= 0 {
                            *slot = grid[(i + v) as usize][tau - 1];
                        }
                    }
                    if !img.allows(q, &ctx, x) {
                        continue;
                    }
                }
            }
            grid[ci][tau] = x;
            let known = |c: i64, s: usize| s == 0 || order(c as usize, s) <= pos;
            let mut ok = true;
            let targets = std::iter::once((i, tau)).chain(offs.iter().map(|&v| (i - v, tau + 1)));
            for (j, s) in targets {
                if !has_eq(j, s) || !known(j, s) || !offs.iter().all(|&v| known(j + v, s - 1)) {
                    continue;
                }
                for (slot, &v) in ctx.iter_mut().zip(&offs) {
                    *slot = grid[(j + v) as usize][s - 1];
                }
                if ca.apply(&ctx) != grid[j as usize][s] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            if x != prev {
                segs[ci] += 1;
                bumped[pos] = true;
            }
            found = true;
            break;
        }
        if found {
            pos += 1;
            if pos < cells.len() {
                next[pos] = 0;
                bumped[pos] = false;
            }
        } else {
            if pos == 0 {
                return Err(Error::NoConsistentAssembly(format!("no assembly with at most {} segments per column", k + 1)));
            }
            next[pos] = 0;
            pos -= 1;
        }
    }
    // every equation once more, independently of the search bookkeeping
    for j in 0..ncols as i64 {
        for s in 1..=heights[j as usize] {
            if has_eq(j, s) {
                for (slot, &v) in ctx.iter_mut().zip(&offs) {
                    *slot = grid[(j + v) as usize][s - 1];
                }
                if ca.apply(&ctx) != grid[j as usize][s] {
                    return Err(Error::NoConsistentAssembly(format!("equation at ({j}, {s}) fails")));
                }
            }
        }
    }
    let center = big_r as usize;
    Ok(SearchResult {
        state: grid[center][heights[center]],
        columns: grid.iter().map(|c| RleColumn::from_states(c)).collect(),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{Alphabet, Neighborhood};
    use crate::predict::{predict_naive, true_columns};
    use crate::zoo;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_center() {
        let id = zoo::identity(Alphabet::numeric(3), Neighborhood::interval(-1, 1)).unwrap();
        let row = [2, 0, 1, 1, 0].map(State);
        let inst = PredictionInstance::from_row(&id, 2, &row, None).unwrap();
        assert_eq!(predict_column_search(&id, &inst, 0).unwrap(), State(1));
    }

    #[test]
    fn max_is_window_or() {
        let ca = zoo::max_rule(2, -1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let t = rng.gen_range(1..6);
            let row: Vec<State> = (0..2 * t + 1).map(|_| State(u16::from(rng.gen_bool(0.15)))).collect();
            let inst = PredictionInstance::from_row(&ca, t, &row, None).unwrap();
            let want = State(u16::from(row.contains(&State(1))));
            let res = column_search(&ca, &inst, 1, DEFAULT_BUDGET).unwrap();
            assert_eq!(res.state, want);
            assert_eq!(res.columns, true_columns(&ca, &inst).unwrap());
        }
    }

    #[test]
    fn too_small_bound_fails() {
        let ca = zoo::max_rule(2, -1, 1);
        let row = [0, 0, 1, 0, 0].map(State);
        let inst = PredictionInstance::from_row(&ca, 2, &row, None).unwrap();
        assert!(predict_column_search(&ca, &inst, 1).is_ok());
        let flip = CellularAutomaton::from_fn(Alphabet::numeric(2), Neighborhood::interval(-1, 1), |c| State(1 - c[1].0)).unwrap();
        let inst = PredictionInstance::from_row(&flip, 2, &row, None).unwrap();
        assert!(matches!(predict_column_search(&flip, &inst, 1), Err(Error::NoConsistentAssembly(_))));
        assert_eq!(predict_column_search(&flip, &inst, 2).unwrap(), predict_naive(&flip, &inst).unwrap());
    }
}
