//! Named example rules and rule transformers.

pub mod atam;

use crate::ca::{Alphabet, CellularAutomaton, Neighborhood, Pos, State};
use crate::classify::{check_freezing, FreezingOrder};
use crate::error::{Error, Result};

pub use atam::{atam_step, atam_to_ca, parse_tileset, toy_directed_system, AtamSystem, Tile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedClass {
    Freezing,
    BoundedChange,
    Convergent,
    None,
}

impl ExpectedClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ExpectedClass::Freezing => "freezing",
            ExpectedClass::BoundedChange => "bounded-change",
            ExpectedClass::Convergent => "convergent",
            ExpectedClass::None => "none",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub params: String,
    pub ca: CellularAutomaton,
    pub expected: ExpectedClass,
}

fn count(ctx: &[State], q: State) -> usize {
    ctx.iter().filter(|s| **s == q).count()
}

pub fn identity(alphabet: Alphabet, nb: Neighborhood) -> Result<CellularAutomaton> {
    let ci = nb
        .center_index()
        .ok_or_else(|| Error::InvalidNeighborhood("identity needs the origin".into()))?;
    Ok(CellularAutomaton::from_fn(alphabet, nb, |c| c[ci])?.with_name("identity"))
}

pub fn constant(alphabet: Alphabet, nb: Neighborhood, q: State) -> Result<CellularAutomaton> {
    Ok(CellularAutomaton::from_fn(alphabet, nb, |_| q)?.with_name(format!("constant-{}", q.0)))
}

/// 1D max over `{lo..=hi}` on `{0, …, n−1}`.
pub fn max_rule(states: usize, lo: i64, hi: i64) -> CellularAutomaton {
    CellularAutomaton::from_fn(Alphabet::numeric(states), Neighborhood::interval(lo, hi), |c| {
        *c.iter().max().expect("nonempty")
    })
    .expect("small table")
    .with_name("max")
}

/// `f(a, b) = a` on V = {−1, 0}: content moves one cell right per step.
pub fn shift_rule(states: usize) -> CellularAutomaton {
    CellularAutomaton::from_fn(Alphabet::numeric(states), Neighborhood::interval(-1, 0), |c| c[0])
        .expect("small table")
        .with_name("shift")
}

/// Ulam's rule: a 0 becomes 1 when exactly one 1 sits in its von Neumann neighborhood.
pub fn ulam() -> CellularAutomaton {
    let nb = Neighborhood::von_neumann(2, true);
    CellularAutomaton::from_fn(Alphabet::numeric(2), nb, |c| {
        if c[0] == State(0) && count(c, State(1)) != 1 {
            State(0)
        } else {
            State(1)
        }
    })
    .expect("small table")
    .with_name("ulam")
}

/// The same local rule on V = {−1, 0, 1}.
pub fn ulam_1d() -> CellularAutomaton {
    CellularAutomaton::from_fn(Alphabet::numeric(2), Neighborhood::interval(-1, 1), |c| {
        if c[1] == State(0) && count(c, State(1)) != 1 {
            State(0)
        } else {
            State(1)
        }
    })
    .expect("small table")
    .with_name("ulam-1d")
}

/// 0 → 1 once at least θ cells of the neighborhood hold 1; 1 is permanent.
pub fn threshold_growth(theta: usize, nb: Neighborhood) -> Result<CellularAutomaton> {
    let ci = nb.center_index();
    Ok(CellularAutomaton::from_fn(Alphabet::numeric(2), nb, |c| {
        let own = ci.map(|i| c[i]);
        if own == Some(State(1)) || count(c, State(1)) >= theta {
            State(1)
        } else {
            State(0)
        }
    })?
    .with_name(format!("threshold-{theta}")))
}

/// Conway's B3/S23 on the Moore neighborhood.
pub fn game_of_life() -> CellularAutomaton {
    let nb = Neighborhood::moore(2, 1);
    let ci = nb.center_index().expect("origin in B(1)");
    CellularAutomaton::from_fn(Alphabet::numeric(2), nb, |c| {
        let alive = count(c, State(1)) - usize::from(c[ci] == State(1));
        let live = if c[ci] == State(1) { alive == 2 || alive == 3 } else { alive == 3 };
        State(u16::from(live))
    })
    .expect("512 entries")
    .with_name("game-of-life")
}

/// `F_≤(c)_z = min(c_z, F(c)_z)` for the total order given minimal-first.
pub fn freeze_under_order(inner: &CellularAutomaton, order: &[State]) -> Result<CellularAutomaton> {
    let n = inner.num_states();
    let mut rank = vec![usize::MAX; n];
    for (i, s) in order.iter().enumerate() {
        inner.check_state(*s)?;
        if rank[s.index()] != usize::MAX {
            return Err(Error::InvalidAlphabet(format!("state {} listed twice in order", s.0)));
        }
        rank[s.index()] = i;
    }
    if rank.contains(&usize::MAX) {
        return Err(Error::InvalidAlphabet("order must list every state".into()));
    }
    let origin: Pos = vec![0; inner.dim()];
    let base = if inner.neighborhood().center_index().is_some() {
        inner.clone()
    } else {
        inner.expand_neighborhood(&[origin])?
    };
    let ci = base.neighborhood().center_index().expect("origin present");
    let out = CellularAutomaton::from_fn(base.alphabet().clone(), base.neighborhood().clone(), |c| {
        let f = base.apply(c);
        if rank[c[ci].index()] <= rank[f.index()] {
            c[ci]
        } else {
            f
        }
    })?;
    Ok(out.with_name(format!("frozen-{}", inner.name().unwrap_or("rule"))))
}

pub fn life_without_death() -> CellularAutomaton {
    freeze_under_order(&game_of_life(), &[State(1), State(0)])
        .expect("valid order")
        .with_name("life-without-death")
}

pub const SIR_S: State = State(0);
pub const SIR_I: State = State(1);
pub const SIR_R: State = State(2);

/// Deterministic SIR: S catches I from ≥ θ infected neighbors, I recovers next step.
pub fn sir(nb: Neighborhood, theta: usize) -> Result<CellularAutomaton> {
    let ci = nb
        .center_index()
        .ok_or_else(|| Error::InvalidNeighborhood("SIR needs the origin".into()))?;
    let theta = theta.max(1);
    Ok(CellularAutomaton::from_fn(Alphabet::new(&["S", "I", "R"])?, nb, |c| match c[ci] {
        SIR_S if count(c, SIR_I) >= theta => SIR_I,
        SIR_S => SIR_S,
        _ => SIR_R,
    })?
    .with_name("sir"))
}

/// `F(c)_z = min(c_z, c_{z+(0,1)})` over {0, 1}.
pub fn vertical_min() -> CellularAutomaton {
    let nb = Neighborhood::new(2, vec![vec![0, 0], vec![0, 1]]).expect("two offsets");
    CellularAutomaton::from_fn(Alphabet::numeric(2), nb, |c| c[0].min(c[1]))
        .expect("small table")
        .with_name("vertical-min")
}

/// 2D freezing lift of a 1D rule: rows above a seed line fill in with successive iterates.
/// The extra state `*` is the last state id.
pub fn line_lift(inner: &CellularAutomaton) -> Result<CellularAutomaton> {
    if inner.dim() != 1 {
        return Err(Error::NotOneDimensional);
    }
    let mut names: Vec<String> = inner.alphabet().names().to_vec();
    names.push("*".to_string());
    let alphabet = Alphabet::new(&names)?;
    let star = State(inner.num_states() as u16);
    let mut offs: Vec<Pos> = vec![vec![0, 0]];
    offs.extend(inner.neighborhood().offsets().iter().map(|v| vec![v[0], -1]));
    let nb = Neighborhood::new(2, offs)?;
    let out = CellularAutomaton::from_fn(alphabet, nb, |c| {
        if c[0] != star {
            c[0]
        } else if c[1..].contains(&star) {
            star
        } else {
            inner.apply(&c[1..])
        }
    })?;
    Ok(out.with_name(format!("lift-{}", inner.name().unwrap_or("rule"))))
}

/// The 3-state nilpotent, non-freezing rule on V = {0, 1}: f(a, b) = 1 if b = 0 else 2.
pub fn nonfreezing_example() -> CellularAutomaton {
    CellularAutomaton::from_fn(Alphabet::numeric(3), Neighborhood::interval(0, 1), |c| {
        if c[1] == State(0) {
            State(1)
        } else {
            State(2)
        }
    })
    .expect("small table")
    .with_name("nonfreezing-example")
}

pub const NAMES: &[&str] = &[
    "identity",
    "constant-0",
    "shift",
    "max",
    "max-oneway",
    "ulam",
    "ulam-1d",
    "bootstrap",
    "threshold-1d-r2",
    "game-of-life",
    "life-without-death",
    "sir",
    "vertical-min",
    "line-lift-max",
    "nonfreezing-example",
    "highcc",
    "atam-toy",
    "minsky-fig2",
    "szone-max",
];

pub fn list() -> &'static [&'static str] {
    NAMES
}

/// Build a named entry and validate its expected class where that is decidable.
pub fn build(name: &str) -> Result<ZooEntry> {
    use ExpectedClass::*;
    let v3 = Neighborhood::interval(-1, 1);
    let (name, params, ca, expected): (&'static str, String, CellularAutomaton, ExpectedClass) = match name {
        "identity" => ("identity", "Q={0,1} V={-1,0,1}".into(), identity(Alphabet::numeric(2), v3)?, Freezing),
        "constant-0" => (
            "constant-0",
            "Q={0,1} V={-1,0,1}".into(),
            constant(Alphabet::numeric(2), v3, State(0))?,
            Freezing,
        ),
        "shift" => ("shift", "Q={0,1} V={-1,0}".into(), shift_rule(2), None),
        "max" => ("max", "Q={0,1} V={-1,0,1}".into(), max_rule(2, -1, 1), Freezing),
        "max-oneway" => ("max-oneway", "Q={0,1} V={-1,0}".into(), max_rule(2, -1, 0).with_name("max-oneway"), Freezing),
        "ulam" => ("ulam", "d=2 von Neumann".into(), ulam(), Freezing),
        "ulam-1d" => ("ulam-1d", "V={-1,0,1}".into(), ulam_1d(), Freezing),
        "bootstrap" => (
            "bootstrap",
            "d=2 theta=2 von Neumann".into(),
            threshold_growth(2, Neighborhood::von_neumann(2, true))?.with_name("bootstrap"),
            Freezing,
        ),
        "threshold-1d-r2" => (
            "threshold-1d-r2",
            "d=1 theta=2 V={-2..2}".into(),
            threshold_growth(2, Neighborhood::interval(-2, 2))?.with_name("threshold-1d-r2"),
            Freezing,
        ),
        "game-of-life" => ("game-of-life", "B3/S23".into(), game_of_life(), None),
        "life-without-death" => ("life-without-death", "order 1<0".into(), life_without_death(), Freezing),
        "sir" => (
            "sir",
            "d=2 von Neumann theta=1".into(),
            sir(Neighborhood::von_neumann(2, true), 1)?,
            Freezing,
        ),
        "vertical-min" => ("vertical-min", "V={(0,0),(0,1)}".into(), vertical_min(), Freezing),
        "line-lift-max" => (
            "line-lift-max",
            "inner=max V={-1,0,1}".into(),
            line_lift(&max_rule(2, -1, 1))?.with_name("line-lift-max"),
            Freezing,
        ),
        "nonfreezing-example" => ("nonfreezing-example", "V={0,1}".into(), nonfreezing_example(), BoundedChange),
        "highcc" => ("highcc", "d=1".into(), crate::commproto::build_highcc_rule(1)?, None),
        "atam-toy" => {
            let sys = toy_directed_system();
            (
                "atam-toy",
                "6 tiles, threshold 2".into(),
                atam_to_ca(&sys)?.with_name("atam-toy"),
                Freezing,
            )
        }
        "minsky-fig2" => {
            let m = crate::minsky::MinskyMachine::blip();
            (
                "minsky-fig2",
                "k=1, K=6".into(),
                crate::minsky::compile_minsky(&m)?.ca.with_name("minsky-fig2"),
                Freezing,
            )
        }
        "szone-max" => {
            let z = crate::szone::build_szone(&max_rule(2, -1, 1))?;
            ("szone-max", "inner=max".into(), z.ca.with_name("szone-max"), Convergent)
        }
        other => return Err(Error::UnknownZooEntry(other.to_string())),
    };
    let ca = if ca.name() == Some(name) { ca } else { ca.with_name(name) };
    if expected == Freezing {
        if let FreezingOrder::NotFreezing { cycle } = check_freezing(&ca) {
            return Err(Error::InvalidTable(format!("{name} expected freezing, cycle {cycle:?}")));
        }
    }
    Ok(ZooEntry {
        name,
        params,
        ca,
        expected,
    })
}
