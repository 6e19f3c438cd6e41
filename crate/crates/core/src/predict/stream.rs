use std::collections::VecDeque;

use crate::ca::{CellularAutomaton, State};
use crate::error::{Error, Result};
use crate::predict::naive::PredictionInstance;
use crate::predict::rle::{Cursor, RleColumn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamPrediction {
    pub state: State,
    /// Most columns held at once (finished ones plus the one being built).
    pub peak_live_columns: usize,
    pub max_segments: usize,
}

/// Sweep a one-way 1D instance in the dependency direction, deriving each
/// column event by event from the `r` columns behind it.
pub fn predict_oneway_stream(ca: &CellularAutomaton, inst: &PredictionInstance, k: usize) -> Result<State> {
    Ok(predict_oneway_stream_metered(ca, inst, k)?.state)
}

pub fn predict_oneway_stream_metered(ca: &CellularAutomaton, inst: &PredictionInstance, k: usize) -> Result<StreamPrediction> {
    if ca.dim() != 1 {
        return Err(Error::NotOneDimensional);
    }
    let r = ca.radius();
    if inst.input.radius() != r * inst.t {
        return Err(Error::Precondition("input radius must equal r·t".into()));
    }
    let offs: Vec<i64> = ca.neighborhood().offsets().iter().map(|o| o[0]).collect();
    let (offs, row): (Vec<i64>, Vec<State>) = if offs.iter().all(|&v| v <= 0) {
        (offs, inst.input.row().to_vec())
    } else if offs.iter().all(|&v| v >= 0) {
        // mirror: read the input right to left
        (offs.iter().map(|v| -v).collect(), inst.input.row().iter().rev().copied().collect())
    } else {
        return Err(Error::NotOneWay);
    };
    let big_r = (r * inst.t) as i64;
    let height = |i: i64| if r == 0 { inst.t } else { ((i + big_r) / r as i64) as usize };
    let mut ctx = vec![State(0); offs.len()];
    // behind[j] is column i − len + j
    let mut behind: VecDeque<RleColumn> = VecDeque::new();
    let mut peak = 0;
    let mut max_segments = 0;
    for i in -big_r..=0 {
        let h = height(i);
        let mut col = RleColumn::new();
        let mut x = row[(i + big_r) as usize];
        col.push(x, 1);
        peak = peak.max(behind.len() + 1);
        let mut cursors: Vec<Option<Cursor>> = offs
            .iter()
            .map(|&v| (v < 0 && h > 0).then(|| Cursor::new(&behind[(behind.len() as i64 + v) as usize])))
            .collect();
        let mut tau = 1;
        while tau <= h {
            let mut limit = h;
            for (slot, cur) in ctx.iter_mut().zip(cursors.iter_mut()) {
                match cur {
                    Some(c) => {
                        let (s, end) = c.at(tau - 1);
                        *slot = s;
                        limit = limit.min(end);
                    }
                    None => *slot = x,
                }
            }
            let y = ca.apply(&ctx);
            if y == x {
                col.push(x, limit - tau + 1);
                tau = limit + 1;
            } else {
                col.push(y, 1);
                x = y;
                tau += 1;
                if col.segment_count() > k + 1 {
                    return Err(Error::BoundViolation {
                        cell: i,
                        segments: col.segment_count(),
                        allowed: k + 1,
                    });
                }
            }
        }
        max_segments = max_segments.max(col.segment_count());
        drop(cursors);
        behind.push_back(col);
        if behind.len() > r.max(1) {
            behind.pop_front();
        }
    }
    let state = behind.back().and_then(|c| c.last()).expect("column 0 computed");
    Ok(StreamPrediction {
        state,
        peak_live_columns: peak,
        max_segments,
    })
}
