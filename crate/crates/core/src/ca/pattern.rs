use super::{ball_positions, Configuration, Pos, State};
use crate::error::{Error, Result};

/// A total assignment of states to the ball B(n) = [−n, n]^d.
/// Cells are stored last coordinate fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    dim: usize,
    radius: usize,
    cells: Vec<State>,
}

impl Pattern {
    pub fn new(dim: usize, radius: usize, cells: Vec<State>) -> Result<Self> {
        let side = 2 * radius + 1;
        let want = side.pow(dim as u32);
        if cells.len() != want {
            return Err(Error::InvalidConfiguration(format!(
                "pattern of radius {radius} in dimension {dim} needs {want} cells, got {}",
                cells.len()
            )));
        }
        Ok(Pattern { dim, radius, cells })
    }

    pub fn from_fn(dim: usize, radius: usize, mut f: impl FnMut(&[i64]) -> State) -> Self {
        let cells = ball_positions(dim, radius as i64).iter().map(|p| f(p)).collect();
        Pattern { dim, radius, cells }
    }

    /// Restriction of a configuration to B(radius).
    pub fn from_configuration(c: &Configuration, radius: usize) -> Self {
        Pattern::from_fn(c.dim(), radius, |p| c.get(p))
    }

    /// 1D helper; `states` covers [−n, n].
    pub fn from_row(states: &[State]) -> Result<Self> {
        if states.len().is_multiple_of(2) {
            return Err(Error::InvalidConfiguration("1D pattern needs odd length".into()));
        }
        Pattern::new(1, states.len() / 2, states.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn cells(&self) -> &[State] {
        &self.cells
    }

    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn index(&self, pos: &[i64]) -> Option<usize> {
        let r = self.radius as i64;
        let side = self.side();
        let mut idx = 0usize;
        for &x in pos {
            if x < -r || x > r {
                return None;
            }
            idx = idx * side + (x + r) as usize;
        }
        Some(idx)
    }

    pub fn get(&self, pos: &[i64]) -> Option<State> {
        self.index(pos).map(|i| self.cells[i])
    }

    pub fn center(&self) -> State {
        let mid = vec![0; self.dim];
        self.get(&mid).expect("center")
    }

    pub fn positions(&self) -> Vec<Pos> {
        ball_positions(self.dim, self.radius as i64)
    }

    /// Central sub-pattern of radius `n ≤ radius`.
    pub fn sub_pattern(&self, n: usize) -> Result<Pattern> {
        if n > self.radius {
            return Err(Error::RadiusTooSmall {
                required: n,
                got: self.radius,
            });
        }
        Ok(Pattern::from_fn(self.dim, n, |p| self.get(p).expect("inside")))
    }

    /// `c ∈ [u]`.
    pub fn matches(&self, c: &Configuration) -> bool {
        c.dim() == self.dim && self.positions().iter().zip(&self.cells).all(|(p, s)| c.get(p) == *s)
    }

    /// The configuration equal to the pattern on B(n) and `background` elsewhere.
    pub fn to_configuration(&self, background: State) -> Configuration {
        let mut c = Configuration::uniform(self.dim, background);
        for (p, s) in self.positions().into_iter().zip(&self.cells) {
            c.set(p, *s).expect("same dimension");
        }
        c
    }

    /// 1D row view.
    pub fn row(&self) -> &[State] {
        &self.cells
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_layout() {
        let p = Pattern::from_fn(2, 1, |pos| State(((pos[0] + 1) * 3 + pos[1] + 1) as u16));
        assert_eq!(p.cells()[0], State(0));
        assert_eq!(p.get(&[1, -1]), Some(State(6)));
        assert_eq!(p.center(), State(4));
        assert_eq!(p.get(&[2, 0]), None);
        assert_eq!(p.sub_pattern(0).unwrap().cells(), &[State(4)]);
    }

    #[test]
    fn configuration_round_trip() {
        let p = Pattern::from_row(&[State(1), State(0), State(2)]).unwrap();
        let c = p.to_configuration(State(0));
        assert!(p.matches(&c));
        assert_eq!(Pattern::from_configuration(&c, 1), p);
    }
}
