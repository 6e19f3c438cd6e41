use crate::ca::{Configuration, Orbit, Pattern, State};
use crate::error::{Error, Result};
use crate::minsky::compile::{CompiledMinsky, Mark, Symbol};

/// The input word for counter values χ: a wall, the unary counters, the
/// start head `(q₀, −1…−1)` at cell 0, and blanks; radius `l + 2`, `l = max χ`.
pub fn encode_input(cm: &CompiledMinsky, chis: &[u64]) -> Result<Pattern> {
    let k = cm.counters();
    if chis.len() != k {
        return Err(Error::Precondition(format!("expected {k} counter values, got {}", chis.len())));
    }
    let l = chis.iter().copied().max().unwrap_or(0) as i64;
    let rad = (l + 2) as usize;
    let q0 = cm.machine.initial();
    Ok(Pattern::from_fn(1, rad, |p| {
        let j = p[0];
        match j {
            _ if j == -l - 2 => cm.wall(),
            _ if j < 0 => {
                let depth = -j;
                cm.encode(&Symbol::Counter(
                    chis.iter()
                        .map(|&x| if depth - 1 < x as i64 { (Mark::One, -1) } else { (Mark::Hash(-1), 0) })
                        .collect(),
                ))
            }
            0 => cm.encode(&Symbol::Control(q0, vec![-1; k])),
            _ => cm.blank(),
        }
    }))
}

/// The input word on a blank background. The wall never changes, so whatever
/// lies to its left cannot influence the cells right of it.
pub fn canonical_configuration(cm: &CompiledMinsky, chis: &[u64]) -> Result<Configuration> {
    let v = encode_input(cm, chis)?;
    Ok(v.to_configuration(cm.blank()))
}

/// `i₀` on the `width` cells ending at 0, blank elsewhere.
pub fn prefix_configuration(cm: &CompiledMinsky, width: usize) -> Configuration {
    let row = vec![cm.init(0); width];
    Configuration::from_row(cm.blank(), 1 - width as i64, &row)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnReading {
    pub cell: i64,
    /// Every counter component passed through #−1, #0, #1 in that order.
    pub valid: bool,
    /// The unique machine state seen under a control head, if any.
    pub state: Option<usize>,
    /// Steps during which component i held the digit 1.
    pub counters: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnOutcome {
    Settled(ColumnReading),
    /// The column could still change after the horizon.
    Indeterminate { cell: i64, horizon: usize },
}

impl ColumnOutcome {
    pub fn reading(&self) -> Option<&ColumnReading> {
        match self {
            ColumnOutcome::Settled(r) => Some(r),
            ColumnOutcome::Indeterminate { .. } => None,
        }
    }
}

/// No later state of the cell can change its reading: h, w, or all marks #1
/// (from which only h is reachable).
pub fn is_settled(cm: &CompiledMinsky, s: State) -> bool {
    match cm.decode(s) {
        Symbol::Wall => true,
        Symbol::Bare(q) => *q == cm.machine.halting(),
        Symbol::Counter(c) => c.iter().all(|&(m, _)| m == Mark::Hash(1)),
        _ => false,
    }
}

/// Read a finished column (the trace of one cell).
pub fn read_column(cm: &CompiledMinsky, cell: i64, column: &[State]) -> ColumnReading {
    let k = cm.counters();
    let mut progress = vec![0usize; k];
    let mut counters = vec![0u64; k];
    let mut states: Vec<usize> = Vec::new();
    for &s in column {
        match cm.decode(s) {
            Symbol::Counter(c) => {
                for (i, &(m, _)) in c.iter().enumerate() {
                    if m == Mark::One {
                        counters[i] += 1;
                    }
                    let want = [Mark::Hash(-1), Mark::Hash(0), Mark::Hash(1)];
                    if progress[i] < 3 && m == want[progress[i]] {
                        progress[i] += 1;
                    }
                }
            }
            Symbol::Control(q, _)
                if !states.contains(q) => {
                    states.push(*q);
                }
            _ => {}
        }
    }
    ColumnReading {
        cell,
        valid: progress.iter().all(|&p| p == 3),
        state: if states.len() == 1 { Some(states[0]) } else { None },
        counters,
    }
}

/// Simulate until every requested column is settled or `horizon` steps have run.
pub fn read_columns(cm: &CompiledMinsky, c: &Configuration, cells: &[i64], horizon: usize) -> Result<Vec<ColumnOutcome>> {
    let mut columns: Vec<Vec<State>> = vec![Vec::new(); cells.len()];
    for (t, cfg) in Orbit::new(&cm.ca, c)?.enumerate() {
        for (col, &z) in columns.iter_mut().zip(cells) {
            col.push(cfg.at(z));
        }
        if t >= horizon || columns.iter().all(|col| is_settled(cm, *col.last().expect("nonempty"))) {
            break;
        }
    }
    Ok(columns
        .iter()
        .zip(cells)
        .map(|(col, &z)| {
            if is_settled(cm, *col.last().expect("nonempty")) {
                ColumnOutcome::Settled(read_column(cm, z, col))
            } else {
                ColumnOutcome::Indeterminate { cell: z, horizon }
            }
        })
        .collect())
}

/// A generous bound on the steps needed to settle columns `0..=steps`.
pub fn default_horizon(cm: &CompiledMinsky, steps: usize, max_counter: u64, width: usize) -> usize {
    (steps * (max_counter as usize + 4) + cm.big_k() + width + 8).min(20_000)
}

/// Columns `0..=steps` of the canonical orbit for input χ.
pub fn simulate_and_read(cm: &CompiledMinsky, chis: &[u64], steps: usize) -> Result<Vec<ColumnOutcome>> {
    let c = canonical_configuration(cm, chis)?;
    let traj = cm.machine.trajectory(&cm.machine.start(chis), steps);
    let max = traj.iter().flat_map(|m| m.counters.iter().copied()).max().unwrap_or(0);
    let cells: Vec<i64> = (0..=steps as i64).collect();
    read_columns(cm, &c, &cells, default_horizon(cm, steps, max, chis.len() + max as usize))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationCheck {
    pub expected_state: usize,
    pub expected_counters: Vec<u64>,
    pub observed: ColumnReading,
    pub holds: bool,
}

/// Check one machine step across columns z → z+1 for an arbitrary `c` with a
/// control head at z, a blank at z+1 and a valid column at z.
pub fn verify_correct_simulation(cm: &CompiledMinsky, c: &Configuration, z: i64, horizon: usize) -> Result<SimulationCheck> {
    if !matches!(cm.decode(c.at(z)), Symbol::Control(..)) {
        return Err(Error::Precondition("cell z must hold a control state".into()));
    }
    if c.at(z + 1) != cm.blank() {
        return Err(Error::Precondition("cell z+1 must be blank".into()));
    }
    let out = read_columns(cm, c, &[z, z + 1], horizon)?;
    let (ColumnOutcome::Settled(here), ColumnOutcome::Settled(next)) = (&out[0], &out[1]) else {
        return Err(Error::Precondition(format!("columns did not settle within {horizon} steps")));
    };
    if !here.valid {
        return Err(Error::Precondition("column z is not valid".into()));
    }
    let q = here.state.ok_or_else(|| Error::Precondition("column z has no unique machine state".into()))?;
    let flags: Vec<bool> = here.counters.iter().map(|&v| v > 0).collect();
    let (q2, d) = cm.machine.tau(q, &flags);
    let expected_counters: Vec<u64> = here
        .counters
        .iter()
        .zip(d)
        .map(|(&v, &d)| (v as i64 + d as i64).max(0) as u64)
        .collect();
    let holds = next.valid && next.state == Some(q2) && next.counters == expected_counters;
    Ok(SimulationCheck {
        expected_state: q2,
        expected_counters,
        observed: next.clone(),
        holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaltingWitness {
    /// First step at which cell 0 holds h.
    Halted(usize),
    NoHaltWithin(usize),
}

/// Run the canonical orbit for χ and watch cell 0 for the halting state.
pub fn halting_witness(cm: &CompiledMinsky, chis: &[u64], t_max: usize) -> Result<HaltingWitness> {
    let c = canonical_configuration(cm, chis)?;
    let h = cm.halt();
    for (t, cfg) in Orbit::new(&cm.ca, &c)?.take(t_max + 1).enumerate() {
        if cfg.at(0) == h {
            return Ok(HaltingWitness::Halted(t));
        }
    }
    Ok(HaltingWitness::NoHaltWithin(t_max))
}

/// Changes of cell 0 over `t_max` steps from the `i₀`-prefix configuration.
pub fn max_change_witness(cm: &CompiledMinsky, width: usize, t_max: usize) -> Result<usize> {
    let c = prefix_configuration(cm, width);
    let mut changes = 0;
    let mut prev = c.at(0);
    for cfg in Orbit::new(&cm.ca, &c)?.take(t_max + 1).skip(1) {
        let now = cfg.at(0);
        changes += usize::from(now != prev);
        prev = now;
    }
    Ok(changes)
}
