//! Alphabets, neighborhoods, local rules, configurations and simulation.

mod config;
pub mod format;
mod pattern;
mod reach;
pub mod render;
mod sim;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub use config::{Background, Configuration};
pub use pattern::Pattern;
pub use reach::{cyreach_bounded, Reach, ReachQuery};
pub use sim::{
    apply_to_pattern, chi, freezing_report, limit_window, simulate, step, trace, FreezingReport,
    Guarantee, LimitWindow, Orbit, Trace,
};

/// A cell position in ℤ^d.
pub type Pos = Vec<i64>;

/// Integer id of a state inside its alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct State(pub u16);

impl State {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Largest transition table we are willing to materialize.
pub const MAX_TABLE: u128 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    ids: HashMap<String, State>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("empty alphabet".into()));
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidAlphabet("too many states".into()));
        }
        let mut ids = HashMap::new();
        let mut out = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if n.is_empty() || n.starts_with('#') || n.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!("bad state name {n:?}")));
            }
            if ids.insert(n.to_string(), State(i as u16)).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate state {n}")));
            }
            out.push(n.to_string());
        }
        Ok(Alphabet { names: out, ids })
    }

    /// Alphabet `0, 1, …, n−1`.
    pub fn numeric(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Alphabet::new(&names).expect("numeric alphabet")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, s: State) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Result<State> {
        self.ids
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn contains(&self, s: State) -> bool {
        s.index() < self.names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = State> + Clone {
        (0..self.names.len() as u16).map(State)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    dim: usize,
    offsets: Vec<Pos>,
}

impl Neighborhood {
    pub fn new(dim: usize, offsets: Vec<Pos>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidNeighborhood("dimension must be ≥ 1".into()));
        }
        if offsets.is_empty() {
            return Err(Error::InvalidNeighborhood("no offsets".into()));
        }
        let mut seen = BTreeSet::new();
        for o in &offsets {
            if o.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: o.len(),
                });
            }
            if !seen.insert(o.clone()) {
                return Err(Error::InvalidNeighborhood(format!("duplicate offset {o:?}")));
            }
        }
        Ok(Neighborhood { dim, offsets })
    }

    /// 1D interval `{lo, …, hi}`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        Neighborhood::new(1, (lo..=hi).map(|v| vec![v]).collect()).expect("interval")
    }

    /// `{z : |z|₁ ≤ 1}`, center first when included.
    pub fn von_neumann(dim: usize, include_center: bool) -> Self {
        let mut offs = Vec::new();
        if include_center {
            offs.push(vec![0; dim]);
        }
        for a in 0..dim {
            for s in [1, -1] {
                let mut v = vec![0; dim];
                v[a] = s;
                offs.push(v);
            }
        }
        Neighborhood::new(dim, offs).expect("von Neumann")
    }

    /// The ball B(r) for the max norm, in lexicographic order.
    pub fn moore(dim: usize, r: i64) -> Self {
        Neighborhood::new(dim, ball_positions(dim, r)).expect("Moore")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offsets(&self) -> &[Pos] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn radius(&self) -> usize {
        self.offsets
            .iter()
            .flat_map(|o| o.iter())
            .map(|v| v.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn center_index(&self) -> Option<usize> {
        self.offsets.iter().position(|o| o.iter().all(|&v| v == 0))
    }
}

/// All positions of B(r) = [−r, r]^d, last coordinate fastest.
pub fn ball_positions(dim: usize, r: i64) -> Vec<Pos> {
    let side = (2 * r + 1) as usize;
    let total = side.pow(dim as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![-r; dim];
    for _ in 0..total {
        out.push(cur.clone());
        for a in (0..dim).rev() {
            cur[a] += 1;
            if cur[a] <= r {
                break;
            }
            cur[a] = -r;
        }
    }
    out
}

/// A d-dimensional CA given by a total local table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularAutomaton {
    name: Option<String>,
    alphabet: Alphabet,
    neighborhood: Neighborhood,
    table: Vec<State>,
}

impl CellularAutomaton {
    fn table_size(alphabet: &Alphabet, nb: &Neighborhood) -> Result<usize> {
        let size = (alphabet.len() as u128)
            .checked_pow(nb.len() as u32)
            .unwrap_or(u128::MAX);
        if size > MAX_TABLE {
            return Err(Error::TableTooLarge(size));
        }
        Ok(size as usize)
    }

    /// Materialize the table by evaluating `f` on every context (in neighborhood order).
    pub fn from_fn<F>(alphabet: Alphabet, neighborhood: Neighborhood, mut f: F) -> Result<Self>
    where
        F: FnMut(&[State]) -> State,
    {
        let size = Self::table_size(&alphabet, &neighborhood)?;
        let n = alphabet.len() as u16;
        let m = neighborhood.len();
        let mut ctx = vec![State(0); m];
        let mut table = Vec::with_capacity(size);
        for _ in 0..size {
            let out = f(&ctx);
            if !alphabet.contains(out) {
                return Err(Error::InvalidTable(format!("output id {} out of range", out.0)));
            }
            table.push(out);
            for j in (0..m).rev() {
                ctx[j].0 += 1;
                if ctx[j].0 < n {
                    break;
                }
                ctx[j].0 = 0;
            }
        }
        Ok(CellularAutomaton {
            name: None,
            alphabet,
            neighborhood,
            table,
        })
    }

    pub fn from_table(alphabet: Alphabet, neighborhood: Neighborhood, table: Vec<State>) -> Result<Self> {
        let size = Self::table_size(&alphabet, &neighborhood)?;
        if table.len() != size {
            return Err(Error::InvalidTable(format!(
                "expected {size} entries, got {}",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|s| !alphabet.contains(**s)) {
            return Err(Error::InvalidTable(format!("output id {} out of range", bad.0)));
        }
        Ok(CellularAutomaton {
            name: None,
            alphabet,
            neighborhood,
            table,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn neighborhood(&self) -> &Neighborhood {
        &self.neighborhood
    }

    pub fn table(&self) -> &[State] {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.neighborhood.dim
    }

    pub fn radius(&self) -> usize {
        self.neighborhood.radius()
    }

    pub fn num_states(&self) -> usize {
        self.alphabet.len()
    }

    pub fn index_of(&self, ctx: &[State]) -> usize {
        let n = self.alphabet.len();
        ctx.iter().fold(0usize, |acc, s| acc * n + s.index())
    }

    pub fn context_of(&self, mut index: usize) -> Vec<State> {
        let n = self.alphabet.len();
        let m = self.neighborhood.len();
        let mut ctx = vec![State(0); m];
        for j in (0..m).rev() {
            ctx[j] = State((index % n) as u16);
            index /= n;
        }
        ctx
    }

    #[inline]
    pub fn apply(&self, ctx: &[State]) -> State {
        self.table[self.index_of(ctx)]
    }

    /// Image of the uniform context `q…q`.
    pub fn apply_uniform(&self, q: State) -> State {
        let n = self.alphabet.len();
        let idx = (0..self.neighborhood.len()).fold(0usize, |acc, _| acc * n + q.index());
        self.table[idx]
    }

    /// The state-change relation `q →_F q′` (q ≠ q′) realized by the table.
    pub fn state_change_arcs(&self) -> BTreeSet<(State, State)> {
        let n = self.alphabet.len();
        let mut seen = vec![false; n * n];
        match self.neighborhood.center_index() {
            Some(ci) => {
                let m = self.neighborhood.len();
                let weight = n.pow((m - 1 - ci) as u32);
                for (idx, out) in self.table.iter().enumerate() {
                    let q = (idx / weight) % n;
                    if q != out.index() {
                        seen[q * n + out.index()] = true;
                    }
                }
            }
            None => {
                // the cell's own state is invisible: any realized output can follow any state
                let mut outs = vec![false; n];
                for out in &self.table {
                    outs[out.index()] = true;
                }
                for q in 0..n {
                    for (o, &hit) in outs.iter().enumerate() {
                        if hit && o != q {
                            seen[q * n + o] = true;
                        }
                    }
                }
            }
        }
        let mut arcs = BTreeSet::new();
        for q in 0..n {
            for o in 0..n {
                if seen[q * n + o] {
                    arcs.insert((State(q as u16), State(o as u16)));
                }
            }
        }
        arcs
    }

    /// Same CA with a larger neighborhood; the new offsets are ignored by the rule.
    pub fn expand_neighborhood(&self, extra: &[Pos]) -> Result<CellularAutomaton> {
        let mut offs = self.neighborhood.offsets.clone();
        for o in extra {
            if !offs.contains(o) {
                offs.push(o.clone());
            }
        }
        let nb = Neighborhood::new(self.dim(), offs)?;
        let m = self.neighborhood.len();
        let mut tmp = Vec::with_capacity(m);
        let out = CellularAutomaton::from_fn(self.alphabet.clone(), nb, |ctx| {
            tmp.clear();
            tmp.extend_from_slice(&ctx[..m]);
            self.apply(&tmp)
        })?;
        Ok(match &self.name {
            Some(n) => out.with_name(n.clone()),
            None => out,
        })
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: d,
            });
        }
        Ok(())
    }

    pub(crate) fn check_state(&self, s: State) -> Result<()> {
        if !self.alphabet.contains(s) {
            return Err(Error::UnknownState(format!("id {}", s.0)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(Alphabet::new(&["a", "b", "a"]).is_err());
        let a = Alphabet::new(&["a", "b"]).unwrap();
        assert_eq!(a.id("b").unwrap(), State(1));
        assert!(a.id("c").is_err());
    }

    #[test]
    fn neighborhood_radius_and_center() {
        let v = Neighborhood::von_neumann(2, true);
        assert_eq!(v.radius(), 1);
        assert_eq!(v.center_index(), Some(0));
        assert_eq!(v.len(), 5);
        assert_eq!(Neighborhood::moore(2, 1).len(), 9);
        assert!(Neighborhood::new(1, vec![vec![0], vec![0]]).is_err());
    }

    #[test]
    fn table_index_round_trip() {
        let ca = CellularAutomaton::from_fn(Alphabet::numeric(3), Neighborhood::interval(-1, 1), |c| c[0])
            .unwrap();
        for idx in 0..27 {
            let ctx = ca.context_of(idx);
            assert_eq!(ca.index_of(&ctx), idx);
            assert_eq!(ca.apply(&ctx), ctx[0]);
        }
    }

    #[test]
    fn arcs_without_center() {
        // f(a,b) on V = {-1, 1}: outputs seen are {0}; every q ≠ 0 may move to 0
        let ca = CellularAutomaton::from_fn(
            Alphabet::numeric(2),
            Neighborhood::new(1, vec![vec![-1], vec![1]]).unwrap(),
            |_| State(0),
        )
        .unwrap();
        let arcs: Vec<_> = ca.state_change_arcs().into_iter().collect();
        assert_eq!(arcs, vec![(State(1), State(0))]);
    }
}
