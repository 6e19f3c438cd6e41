use std::collections::BTreeMap;

use super::config::{block_pos, normalize_background};
use super::{Background, CellularAutomaton, Configuration, Pattern, Pos, State};
use crate::error::{Error, Result};

fn validate(ca: &CellularAutomaton, c: &Configuration) -> Result<()> {
    ca.check_dim(c.dim())?;
    for s in c.states() {
        ca.check_state(s)?;
    }
    Ok(())
}

/// One synchronous step of `ca` on `c`.
pub fn step(ca: &CellularAutomaton, c: &Configuration) -> Result<Configuration> {
    validate(ca, c)?;
    Ok(step_unchecked(ca, c))
}

fn step_background(ca: &CellularAutomaton, bg: &Background) -> Background {
    match bg {
        Background::Uniform(q) => Background::Uniform(ca.apply_uniform(*q)),
        Background::Periodic { periods, block } => {
            let offs = ca.neighborhood().offsets();
            let mut ctx = vec![State(0); offs.len()];
            let mut nb = Vec::with_capacity(block.len());
            for i in 0..block.len() {
                let p = block_pos(periods, i);
                for (slot, v) in ctx.iter_mut().zip(offs) {
                    let q: Pos = p.iter().zip(v).map(|(a, b)| a + b).collect();
                    *slot = bg.at(&q);
                }
                nb.push(ca.apply(&ctx));
            }
            normalize_background(periods.clone(), nb)
        }
    }
}

/// Odometer over the box `[lo, hi]`, last axis fastest.
fn for_each_in_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    let d = lo.len();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut cur = lo.to_vec();
    loop {
        f(&cur);
        let mut a = d;
        loop {
            if a == 0 {
                return;
            }
            a -= 1;
            cur[a] += 1;
            if cur[a] <= hi[a] {
                break;
            }
            cur[a] = lo[a];
        }
    }
}

pub(crate) fn step_unchecked(ca: &CellularAutomaton, c: &Configuration) -> Configuration {
    let d = c.dim();
    let new_bg = step_background(ca, c.background());
    let Some((lo, hi)) = c.bounding_box() else {
        return Configuration::from_parts(d, new_bg, BTreeMap::new());
    };
    let r = ca.radius() as i64;
    let in_lo: Vec<i64> = lo.iter().map(|x| x - 2 * r).collect();
    let in_hi: Vec<i64> = hi.iter().map(|x| x + 2 * r).collect();
    let sizes: Vec<usize> = in_lo.iter().zip(&in_hi).map(|(a, b)| (b - a + 1) as usize).collect();
    let mut strides = vec![1usize; d];
    for a in (0..d.saturating_sub(1)).rev() {
        strides[a] = strides[a + 1] * sizes[a + 1];
    }
    let total: usize = sizes.iter().product();
    let lin = |p: &[i64]| -> usize {
        p.iter()
            .zip(&in_lo)
            .zip(&strides)
            .map(|((x, l), s)| (x - l) as usize * s)
            .sum()
    };

    let mut dense = Vec::with_capacity(total);
    match c.background() {
        Background::Uniform(q) => dense.resize(total, *q),
        bg => for_each_in_box(&in_lo, &in_hi, |p| dense.push(bg.at(p))),
    }
    for (p, s) in c.overrides() {
        dense[lin(p)] = *s;
    }

    let n = ca.num_states();
    let deltas: Vec<isize> = ca
        .neighborhood()
        .offsets()
        .iter()
        .map(|v| v.iter().zip(&strides).map(|(a, s)| *a as isize * *s as isize).sum())
        .collect();
    let table = ca.table();
    let out_lo: Vec<i64> = lo.iter().map(|x| x - r).collect();
    let out_hi: Vec<i64> = hi.iter().map(|x| x + r).collect();
    let mut overrides = BTreeMap::new();
    for_each_in_box(&out_lo, &out_hi, |p| {
        let base = lin(p) as isize;
        let mut idx = 0usize;
        for dl in &deltas {
            idx = idx * n + dense[(base + dl) as usize].index();
        }
        let s = table[idx];
        if s != new_bg.at(p) {
            overrides.insert(p.to_vec(), s);
        }
    });
    Configuration::from_parts(d, new_bg, overrides)
}

/// `[c, F(c), …, F^t(c)]`.
pub fn simulate(ca: &CellularAutomaton, c: &Configuration, t: usize) -> Result<Vec<Configuration>> {
    validate(ca, c)?;
    let mut out = Vec::with_capacity(t + 1);
    out.push(c.clone());
    for _ in 0..t {
        let next = step_unchecked(ca, out.last().expect("nonempty"));
        out.push(next);
    }
    Ok(out)
}

/// Lazy orbit `c, F(c), F²(c), …` (unbounded; take what you need).
pub struct Orbit<'a> {
    ca: &'a CellularAutomaton,
    next: Configuration,
}

impl<'a> Orbit<'a> {
    pub fn new(ca: &'a CellularAutomaton, c: &Configuration) -> Result<Self> {
        validate(ca, c)?;
        Ok(Orbit { ca, next: c.clone() })
    }
}

impl Iterator for Orbit<'_> {
    type Item = Configuration;
    fn next(&mut self) -> Option<Configuration> {
        let following = step_unchecked(self.ca, &self.next);
        Some(std::mem::replace(&mut self.next, following))
    }
}

/// F acting on a finite pattern: radius n + r in, radius n out.
pub fn apply_to_pattern(ca: &CellularAutomaton, u: &Pattern) -> Result<Pattern> {
    ca.check_dim(u.dim())?;
    for s in u.cells() {
        ca.check_state(*s)?;
    }
    let r = ca.radius();
    if u.radius() < r {
        return Err(Error::RadiusTooSmall {
            required: r,
            got: u.radius(),
        });
    }
    let n = u.radius() - r;
    let offs = ca.neighborhood().offsets();
    let mut ctx = vec![State(0); offs.len()];
    let mut q = vec![0i64; u.dim()];
    Ok(Pattern::from_fn(u.dim(), n, |p| {
        for (slot, v) in ctx.iter_mut().zip(offs) {
            for a in 0..p.len() {
                q[a] = p[a] + v[a];
            }
            *slot = u.get(&q).expect("inside input pattern");
        }
        ca.apply(&ctx)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub base: Vec<Pos>,
    pub rows: Vec<Vec<State>>,
    pub eventually_constant_at: Option<usize>,
}

fn constant_tail_start<T: PartialEq>(rows: &[T]) -> usize {
    let mut t0 = rows.len() - 1;
    while t0 > 0 && rows[t0 - 1] == rows[rows.len() - 1] {
        t0 -= 1;
    }
    t0
}

/// Restrictions of `F^i(c)` to `base` for `i = 0..=horizon`.
pub fn trace(ca: &CellularAutomaton, c: &Configuration, base: &[Pos], horizon: usize) -> Result<Trace> {
    if base.is_empty() {
        return Err(Error::InvalidConfiguration("trace base must be nonempty".into()));
    }
    for p in base {
        ca.check_dim(p.len())?;
    }
    let rows: Vec<Vec<State>> = Orbit::new(ca, c)?
        .take(horizon + 1)
        .map(|cfg| base.iter().map(|p| cfg.get(p)).collect())
        .collect();
    let t0 = constant_tail_start(&rows);
    // a single final row says nothing about stabilization
    let eventually_constant_at = (t0 < horizon).then_some(t0);
    Ok(Trace {
        base: base.to_vec(),
        rows,
        eventually_constant_at,
    })
}

/// Why a reported freezing time can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guarantee {
    /// The limit state has no outgoing arc in →_F: the cell can never change again.
    Absorbing,
    /// Constant for this many observed steps, nothing more.
    ObservedTail(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreezingReport {
    pub cell: Pos,
    pub freezing_time: Option<usize>,
    pub limit_state: Option<State>,
    pub guarantee: Option<Guarantee>,
}

fn absorbing_states(ca: &CellularAutomaton) -> Vec<bool> {
    let mut abs = vec![true; ca.num_states()];
    for (q, _) in ca.state_change_arcs() {
        abs[q.index()] = false;
    }
    abs
}

fn report_from_column(cell: Pos, column: &[State], horizon: usize, confirm_tail: usize, absorbing: &[bool]) -> FreezingReport {
    let t0 = constant_tail_start(column);
    let last = column[column.len() - 1];
    let guarantee = if absorbing[last.index()] {
        Some(Guarantee::Absorbing)
    } else if horizon - t0 >= confirm_tail {
        Some(Guarantee::ObservedTail(horizon - t0))
    } else {
        None
    };
    FreezingReport {
        cell,
        freezing_time: guarantee.map(|_| t0),
        limit_state: guarantee.map(|_| last),
        guarantee,
    }
}

pub fn freezing_report(
    ca: &CellularAutomaton,
    c: &Configuration,
    z: &[i64],
    horizon: usize,
    confirm_tail: usize,
) -> Result<FreezingReport> {
    ca.check_dim(z.len())?;
    let column: Vec<State> = Orbit::new(ca, c)?.take(horizon + 1).map(|cfg| cfg.get(z)).collect();
    Ok(report_from_column(z.to_vec(), &column, horizon, confirm_tail, &absorbing_states(ca)))
}

/// Positions of B(radius) holding state `q`.
pub fn chi(c: &Configuration, q: State, radius: usize) -> Vec<Pos> {
    super::ball_positions(c.dim(), radius as i64)
        .into_iter()
        .filter(|p| c.get(p) == q)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitWindow {
    pub radius: usize,
    /// Limit state per cell of B(radius) (pattern order), where witnessed.
    pub states: Vec<Option<State>>,
    pub reports: Vec<FreezingReport>,
}

impl LimitWindow {
    /// The limit pattern, if every cell was witnessed.
    pub fn pattern(&self, dim: usize) -> Option<Pattern> {
        let cells: Option<Vec<State>> = self.states.iter().copied().collect();
        Pattern::new(dim, self.radius, cells?).ok()
    }
}

pub fn limit_window(
    ca: &CellularAutomaton,
    c: &Configuration,
    radius: usize,
    horizon: usize,
    confirm_tail: usize,
) -> Result<LimitWindow> {
    let cells = super::ball_positions(c.dim(), radius as i64);
    let mut columns: Vec<Vec<State>> = vec![Vec::with_capacity(horizon + 1); cells.len()];
    for cfg in Orbit::new(ca, c)?.take(horizon + 1) {
        for (col, p) in columns.iter_mut().zip(&cells) {
            col.push(cfg.get(p));
        }
    }
    let absorbing = absorbing_states(ca);
    let reports: Vec<FreezingReport> = cells
        .into_iter()
        .zip(&columns)
        .map(|(p, col)| report_from_column(p, col, horizon, confirm_tail, &absorbing))
        .collect();
    Ok(LimitWindow {
        radius,
        states: reports.iter().map(|r| r.limit_state).collect(),
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{Alphabet, Neighborhood};

    fn identity_1d() -> CellularAutomaton {
        CellularAutomaton::from_fn(Alphabet::numeric(2), Neighborhood::interval(-1, 1), |c| c[1]).unwrap()
    }

    fn xor_1d() -> CellularAutomaton {
        CellularAutomaton::from_fn(Alphabet::numeric(2), Neighborhood::interval(-1, 1), |c| {
            State(c[0].0 ^ c[2].0)
        })
        .unwrap()
    }

    #[test]
    fn identity_step_is_identity() {
        let ca = identity_1d();
        let c = Configuration::from_row(State(0), -2, &[State(1), State(0), State(1)]);
        assert_eq!(step(&ca, &c).unwrap(), c);
    }

    #[test]
    fn periodic_background_steps() {
        let ca = xor_1d();
        let c = Configuration::periodic(1, vec![3], vec![State(1), State(0), State(0)]).unwrap();
        let s = step(&ca, &c).unwrap();
        for z in -6..6 {
            let want = State(c.at(z - 1).0 ^ c.at(z + 1).0);
            assert_eq!(s.at(z), want);
        }
        assert!(s.overrides().is_empty());
    }

    #[test]
    fn dimension_and_state_errors() {
        let ca = identity_1d();
        assert!(step(&ca, &Configuration::uniform(2, State(0))).is_err());
        assert!(matches!(step(&ca, &Configuration::uniform(1, State(7))), Err(Error::UnknownState(_))));
    }

    #[test]
    fn xor_against_direct_evaluation() {
        let ca = xor_1d();
        let c = Configuration::from_row(State(0), -1, &[State(1), State(1), State(0), State(1)]);
        let out = simulate(&ca, &c, 5).unwrap();
        assert_eq!(out.len(), 6);
        for w in out.windows(2) {
            for z in -10..10 {
                assert_eq!(w[1].at(z), State(w[0].at(z - 1).0 ^ w[0].at(z + 1).0));
            }
        }
    }

    #[test]
    fn pattern_radius_checked() {
        let ca = identity_1d();
        let u = Pattern::new(1, 0, vec![State(1)]).unwrap();
        assert!(matches!(apply_to_pattern(&ca, &u), Err(Error::RadiusTooSmall { .. })));
    }

    #[test]
    fn trace_requires_two_equal_rows() {
        let ca = identity_1d();
        let c = Configuration::uniform(1, State(0));
        let t = trace(&ca, &c, &[vec![0]], 0).unwrap();
        assert_eq!(t.eventually_constant_at, None);
        let t = trace(&ca, &c, &[vec![0]], 2).unwrap();
        assert_eq!(t.eventually_constant_at, Some(0));
    }
}
