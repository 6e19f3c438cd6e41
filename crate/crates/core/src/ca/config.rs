use std::collections::BTreeMap;

use super::{Pos, State};
use crate::error::{Error, Result};

/// What a configuration looks like away from its overrides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Background {
    Uniform(State),
    /// Axis-aligned periodic tiling; `block` lists one period, last axis fastest.
    Periodic { periods: Vec<i64>, block: Vec<State> },
}

impl Background {
    pub fn at(&self, pos: &[i64]) -> State {
        match self {
            Background::Uniform(q) => *q,
            Background::Periodic { periods, block } => block[block_index(periods, pos)],
        }
    }

    pub fn states(&self) -> Vec<State> {
        match self {
            Background::Uniform(q) => vec![*q],
            Background::Periodic { block, .. } => block.clone(),
        }
    }
}

pub(crate) fn block_index(periods: &[i64], pos: &[i64]) -> usize {
    let mut idx = 0usize;
    for (p, x) in periods.iter().zip(pos) {
        idx = idx * (*p as usize) + x.rem_euclid(*p) as usize;
    }
    idx
}

/// Position inside the block for a flat block index.
pub(crate) fn block_pos(periods: &[i64], mut idx: usize) -> Pos {
    let mut pos = vec![0; periods.len()];
    for a in (0..periods.len()).rev() {
        let p = periods[a] as usize;
        pos[a] = (idx % p) as i64;
        idx /= p;
    }
    pos
}

/// A configuration of ℤ^d: a finitely describable background plus finitely many
/// overrides. Overrides never repeat the background value (canonical form).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    dim: usize,
    background: Background,
    overrides: BTreeMap<Pos, State>,
}

impl Configuration {
    pub fn uniform(dim: usize, q: State) -> Self {
        Configuration {
            dim,
            background: Background::Uniform(q),
            overrides: BTreeMap::new(),
        }
    }

    pub fn periodic(dim: usize, periods: Vec<i64>, block: Vec<State>) -> Result<Self> {
        let bg = make_periodic(dim, periods, block)?;
        Ok(Configuration {
            dim,
            background: bg,
            overrides: BTreeMap::new(),
        })
    }

    pub fn with_background(dim: usize, background: Background) -> Result<Self> {
        let background = match background {
            Background::Periodic { periods, block } => make_periodic(dim, periods, block)?,
            u => u,
        };
        Ok(Configuration {
            dim,
            background,
            overrides: BTreeMap::new(),
        })
    }

    /// Background `q` with the listed cells set.
    pub fn from_cells<I>(dim: usize, q: State, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Pos, State)>,
    {
        let mut c = Configuration::uniform(dim, q);
        for (p, s) in cells {
            c.set(p, s)?;
        }
        Ok(c)
    }

    /// 1D helper: `states[i]` at position `start + i`.
    pub fn from_row(background: State, start: i64, states: &[State]) -> Self {
        let mut c = Configuration::uniform(1, background);
        for (i, s) in states.iter().enumerate() {
            c.set(vec![start + i as i64], *s).expect("1D position");
        }
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn background(&self) -> &Background {
        &self.background
    }

    pub fn overrides(&self) -> &BTreeMap<Pos, State> {
        &self.overrides
    }

    pub fn get(&self, pos: &[i64]) -> State {
        match self.overrides.get(pos) {
            Some(s) => *s,
            None => self.background.at(pos),
        }
    }

    /// 1D shorthand.
    pub fn at(&self, z: i64) -> State {
        self.get(&[z])
    }

    pub fn set(&mut self, pos: Pos, s: State) -> Result<()> {
        if pos.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: pos.len(),
            });
        }
        if self.background.at(&pos) == s {
            self.overrides.remove(&pos);
        } else {
            self.overrides.insert(pos, s);
        }
        Ok(())
    }

    /// Every state that occurs somewhere.
    pub fn states(&self) -> Vec<State> {
        let mut v = self.background.states();
        v.extend(self.overrides.values().copied());
        v.sort();
        v.dedup();
        v
    }

    /// Bounding box of the overrides, `None` when there are none.
    pub fn bounding_box(&self) -> Option<(Pos, Pos)> {
        let mut it = self.overrides.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in it {
            for a in 0..self.dim {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        Some((lo, hi))
    }

    /// `shift_s(c)(z) = c(z − s)`.
    pub fn shift(&self, s: &[i64]) -> Result<Configuration> {
        if s.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: s.len(),
            });
        }
        let background = match &self.background {
            Background::Uniform(q) => Background::Uniform(*q),
            Background::Periodic { periods, block } => {
                let mut nb = vec![State(0); block.len()];
                for (i, slot) in nb.iter_mut().enumerate() {
                    let p = block_pos(periods, i);
                    let src: Pos = p.iter().zip(s).map(|(x, d)| x - d).collect();
                    *slot = block[block_index(periods, &src)];
                }
                Background::Periodic {
                    periods: periods.clone(),
                    block: nb,
                }
            }
        };
        let overrides = self
            .overrides
            .iter()
            .map(|(p, q)| (p.iter().zip(s).map(|(x, d)| x + d).collect(), *q))
            .collect();
        Ok(Configuration {
            dim: self.dim,
            background,
            overrides,
        })
    }

    /// 1D window `[lo, hi]` as a state vector.
    pub fn row(&self, lo: i64, hi: i64) -> Vec<State> {
        (lo..=hi).map(|z| self.at(z)).collect()
    }

    pub(crate) fn from_parts(dim: usize, background: Background, overrides: BTreeMap<Pos, State>) -> Self {
        Configuration {
            dim,
            background,
            overrides,
        }
    }
}

fn make_periodic(dim: usize, periods: Vec<i64>, block: Vec<State>) -> Result<Background> {
    if periods.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: periods.len(),
        });
    }
    if periods.iter().any(|&p| p <= 0) {
        return Err(Error::InvalidConfiguration("periods must be positive".into()));
    }
    let size: i64 = periods.iter().product();
    if block.len() as i64 != size {
        return Err(Error::InvalidConfiguration(format!(
            "periodic block needs {size} states, got {}",
            block.len()
        )));
    }
    Ok(normalize_background(periods, block))
}

pub(crate) fn normalize_background(periods: Vec<i64>, block: Vec<State>) -> Background {
    if block.iter().all(|s| *s == block[0]) {
        Background::Uniform(block[0])
    } else {
        Background::Periodic { periods, block }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_overrides() {
        let mut c = Configuration::uniform(1, State(0));
        c.set(vec![3], State(1)).unwrap();
        c.set(vec![3], State(0)).unwrap();
        assert!(c.overrides().is_empty());
    }

    #[test]
    fn periodic_lookup_and_shift() {
        let c = Configuration::periodic(1, vec![3], vec![State(0), State(1), State(2)]).unwrap();
        assert_eq!(c.at(-1), State(2));
        assert_eq!(c.at(4), State(1));
        let s = c.shift(&[1]).unwrap();
        for z in -5..5 {
            assert_eq!(s.at(z), c.at(z - 1));
        }
        let u = Configuration::periodic(1, vec![2], vec![State(1), State(1)]).unwrap();
        assert_eq!(u.background(), &Background::Uniform(State(1)));
    }

    #[test]
    fn bad_periods_rejected() {
        assert!(Configuration::periodic(1, vec![0], vec![]).is_err());
        assert!(Configuration::periodic(1, vec![2], vec![State(0)]).is_err());
    }
}
