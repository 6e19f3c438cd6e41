use crate::ca::State;

/// A column of states stored as `(state, duration)` runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RleColumn {
    segments: Vec<(State, usize)>,
}

impl RleColumn {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_states(states: &[State]) -> Self {
        let mut c = RleColumn::new();
        for &s in states {
            c.push(s, 1);
        }
        c
    }

    /// Append `n` copies of `s`, merging with the last run.
    pub fn push(&mut self, s: State, n: usize) {
        if n == 0 {
            return;
        }
        match self.segments.last_mut() {
            Some((last, d)) if *last == s => *d += n,
            _ => self.segments.push((s, n)),
        }
    }

    pub fn segments(&self) -> &[(State, usize)] {
        &self.segments
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    pub fn total_height(&self) -> usize {
        self.segments.iter().map(|(_, d)| d).sum()
    }

    pub fn last(&self) -> Option<State> {
        self.segments.last().map(|(s, _)| *s)
    }

    pub fn get(&self, tau: usize) -> Option<State> {
        let mut acc = 0;
        for &(s, d) in &self.segments {
            acc += d;
            if tau < acc {
                return Some(s);
            }
        }
        None
    }

    pub fn expand(&self) -> Vec<State> {
        self.segments.iter().flat_map(|&(s, d)| std::iter::repeat_n(s, d)).collect()
    }
}

/// Walks a column run by run; `end` is one past the last index of the current run.
#[derive(Clone, Debug)]
pub(crate) struct Cursor<'a> {
    col: &'a RleColumn,
    seg: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(col: &'a RleColumn) -> Self {
        let end = col.segments.first().map_or(0, |s| s.1);
        Cursor { col, seg: 0, end }
    }

    /// Value at `tau` (non-decreasing calls only) and the end of its run.
    pub(crate) fn at(&mut self, tau: usize) -> (State, usize) {
        while tau >= self.end {
            self.seg += 1;
            self.end += self.col.segments[self.seg].1;
        }
        (self.col.segments[self.seg].0, self.end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_merge() {
        let s = [0, 0, 1, 1, 1, 0].map(State);
        let c = RleColumn::from_states(&s);
        assert_eq!(c.segments(), &[(State(0), 2), (State(1), 3), (State(0), 1)]);
        assert_eq!(c.total_height(), 6);
        assert_eq!(c.expand(), s.to_vec());
        assert_eq!(c.get(4), Some(State(1)));
        assert_eq!(c.get(6), None);
        let mut cur = Cursor::new(&c);
        assert_eq!(cur.at(0), (State(0), 2));
        assert_eq!(cur.at(5), (State(0), 6));
    }
}
