//! Plain PGM (P2) output: state id as gray level, maxval = |Q| − 1.

use std::fmt::Write as _;

use super::{Configuration, State};

fn header(width: usize, height: usize, num_states: usize) -> String {
    // PGM forbids maxval 0, which a one-state alphabet would give
    format!("P2\n{width} {height}\n{}\n", num_states.saturating_sub(1).max(1))
}

fn push_row(out: &mut String, row: impl Iterator<Item = State>) {
    let mut first = true;
    for s in row {
        if !first {
            out.push(' ');
        }
        first = false;
        write!(out, "{}", s.0).expect("string write");
    }
    out.push('\n');
}

/// Space-time diagram of a 1D orbit over cells `lo..=hi`, one row per time step.
pub fn orbit_pgm(orbit: &[Configuration], lo: i64, hi: i64, num_states: usize) -> String {
    let width = (hi - lo + 1).max(0) as usize;
    let mut out = header(width, orbit.len(), num_states);
    for c in orbit {
        push_row(&mut out, (lo..=hi).map(|z| c.at(z)));
    }
    out
}

/// 2D snapshot over `[x0, x1] × [y0, y1]`; the top row is the largest y.
pub fn snapshot_pgm(c: &Configuration, x: (i64, i64), y: (i64, i64), num_states: usize) -> String {
    let width = (x.1 - x.0 + 1).max(0) as usize;
    let height = (y.1 - y.0 + 1).max(0) as usize;
    let mut out = header(width, height, num_states);
    for yy in (y.0..=y.1).rev() {
        push_row(&mut out, (x.0..=x.1).map(|xx| c.get(&[xx, yy])));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_layout() {
        let c = Configuration::from_row(State(0), 0, &[State(1), State(2)]);
        let s = orbit_pgm(&[c.clone(), c], -1, 1, 3);
        assert_eq!(s, "P2\n3 2\n2\n0 1 2\n0 1 2\n");
    }

    #[test]
    fn snapshot_rows_top_down() {
        let c = Configuration::from_cells(2, State(0), [(vec![0, 1], State(1))]).unwrap();
        let s = snapshot_pgm(&c, (0, 1), (0, 1), 2);
        assert_eq!(s, "P2\n2 2\n1\n1 0\n0 0\n");
    }
}
