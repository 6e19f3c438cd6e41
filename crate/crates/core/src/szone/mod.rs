//! The shrinking-zone construction: a bouncing head applies one inner step per
//! pass over a working zone that loses a cell at each end per round trip.

use crate::ca::{step, Alphabet, CellularAutomaton, Configuration, Neighborhood, Orbit, State};
use crate::classify::is_spreading;
use crate::error::{Error, Result};

/// `←`, `→` are the head moving left/right; `l`, `r` mark cells left/right of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    HeadLeft,
    HeadRight,
    L,
    R,
}

impl Dir {
    const ALL: [Dir; 4] = [Dir::HeadLeft, Dir::HeadRight, Dir::L, Dir::R];

    fn index(self) -> usize {
        self as usize
    }

    fn symbol(self) -> &'static str {
        match self {
            Dir::HeadLeft => "<",
            Dir::HeadRight => ">",
            Dir::L => "l",
            Dir::R => "r",
        }
    }

    fn is_head(self) -> bool {
        matches!(self, Dir::HeadLeft | Dir::HeadRight)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Blank,
    BlankPlus,
    Error,
    Work(State, State, Dir),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Plain,
    /// Any working cell carrying the spreading state erases its neighborhood.
    Erasing { spreading: State },
}

#[derive(Clone, Debug)]
pub struct SZoneRule {
    pub ca: CellularAutomaton,
    pub inner: CellularAutomaton,
    pub variant: Variant,
}

impl SZoneRule {
    pub fn inner_states(&self) -> usize {
        self.inner.num_states()
    }

    pub fn encode(&self, c: Cell) -> State {
        encode_cell(self.inner.num_states(), c)
    }

    pub fn decode(&self, s: State) -> Cell {
        decode_cell(self.inner.num_states(), s)
    }

    pub fn blank(&self) -> State {
        State(0)
    }

    pub fn error(&self) -> State {
        State(2)
    }

    /// Number of heads in the configuration's finite support.
    pub fn heads(&self, c: &Configuration) -> usize {
        c.overrides()
            .values()
            .filter(|&&s| matches!(self.decode(s), Cell::Work(_, _, d) if d.is_head()))
            .count()
    }
}

fn encode_cell(q: usize, c: Cell) -> State {
    State(match c {
        Cell::Blank => 0,
        Cell::BlankPlus => 1,
        Cell::Error => 2,
        Cell::Work(x, y, d) => 3 + (x.index() * q + y.index()) * 4 + d.index(),
    } as u16)
}

fn decode_cell(q: usize, s: State) -> Cell {
    match s.index() {
        0 => Cell::Blank,
        1 => Cell::BlankPlus,
        2 => Cell::Error,
        i => {
            let i = i - 3;
            let xy = i / 4;
            Cell::Work(State((xy / q) as u16), State((xy % q) as u16), Dir::ALL[i % 4])
        }
    }
}

fn forbidden(a: Cell, b: Cell) -> bool {
    use Dir::*;
    let (Cell::Work(_, _, da), Cell::Work(_, _, db)) = (a, b) else {
        return false;
    };
    matches!((da, db), (R, L) | (L, R) | (R, HeadLeft | HeadRight) | (HeadLeft | HeadRight, L))
        || (da.is_head() && db.is_head())
}

fn blankish(c: Cell) -> bool {
    matches!(c, Cell::Blank | Cell::BlankPlus)
}

fn dir_of(c: Cell) -> Option<Dir> {
    match c {
        Cell::Work(_, _, d) => Some(d),
        _ => None,
    }
}

fn first(c: Cell) -> State {
    match c {
        Cell::Work(x, _, _) => x,
        _ => unreachable!("only called on working cells"),
    }
}

fn local_rule(inner: &CellularAutomaton, variant: Variant, l: Cell, c: Cell, r: Cell) -> Cell {
    use Dir::*;
    if [l, c, r].contains(&Cell::Error) {
        return Cell::Error;
    }
    if let Variant::Erasing { spreading } = variant {
        let carries = |x: Cell| matches!(x, Cell::Work(a, b, _) if a == spreading || b == spreading);
        if carries(l) || carries(c) || carries(r) {
            return Cell::Error;
        }
    }
    let Cell::Work(x, y, d) = c else {
        return Cell::Blank;
    };
    if forbidden(l, c) || forbidden(c, r) {
        return Cell::Error;
    }
    let (dl, dr) = (dir_of(l), dir_of(r));
    let delta = |a: State, b: State, cc: State| inner.apply(&[a, b, cc]);
    let lb = l == Cell::Blank;
    let rb = r == Cell::Blank;
    match (dl, d, dr) {
        // inside the zone
        (Some(L), HeadLeft, Some(R)) => Cell::Work(x, y, R),
        (Some(L), L, Some(HeadLeft)) => Cell::Work(x, y, HeadLeft),
        (Some(L), HeadRight, Some(R)) => Cell::Work(y, x, L),
        (Some(HeadRight), R, Some(R)) => Cell::Work(x, delta(first(l), x, first(r)), HeadRight),
        // left border
        (None, L, Some(HeadLeft)) if lb => Cell::Work(x, y, HeadLeft),
        (None, HeadLeft, Some(R)) if lb => Cell::Work(x, y, HeadRight),
        (None, HeadRight, Some(R)) if lb => Cell::Work(y, x, L),
        (None, L, Some(HeadRight)) if lb => Cell::BlankPlus,
        // right border
        (Some(HeadRight), R, None) if rb => Cell::Work(x, y, HeadRight),
        (Some(L), HeadRight, None) if rb => Cell::Work(x, y, HeadLeft),
        (Some(L), HeadLeft, None) if rb => Cell::Work(x, y, R),
        (Some(HeadLeft), R, None) if rb => Cell::BlankPlus,
        _ if blankish(l) && blankish(r) => Cell::Work(x, y, R),
        _ if d.is_head() => Cell::Error,
        _ => c,
    }
}

fn build(inner: &CellularAutomaton, variant: Variant) -> Result<SZoneRule> {
    if inner.dim() != 1 {
        return Err(Error::NotOneDimensional);
    }
    if inner.neighborhood() != &Neighborhood::interval(-1, 1) {
        let canon = crate::classify::canonical_1d(inner)?;
        if canon.radius() != 1 {
            return Err(Error::WrongRadius {
                expected: 1,
                got: inner.radius(),
            });
        }
        return build(&canon, variant);
    }
    let q = inner.num_states();
    let mut names = vec!["b".to_string(), "b+".into(), "e".into()];
    for x in inner.alphabet().names() {
        for y in inner.alphabet().names() {
            for d in Dir::ALL {
                names.push(format!("{x}|{y}|{}", d.symbol()));
            }
        }
    }
    let alphabet = Alphabet::new(&names)?;
    let ca = CellularAutomaton::from_fn(alphabet, Neighborhood::interval(-1, 1), |ctx| {
        let cells = [decode_cell(q, ctx[0]), decode_cell(q, ctx[1]), decode_cell(q, ctx[2])];
        encode_cell(q, local_rule(inner, variant, cells[0], cells[1], cells[2]))
    })?;
    let name = match variant {
        Variant::Plain => "szone",
        Variant::Erasing { .. } => "szone-erasing",
    };
    Ok(SZoneRule {
        ca: ca.with_name(name),
        inner: inner.clone(),
        variant,
    })
}

/// Wrap a one-dimensional radius-1 rule (radius 0 is lifted).
pub fn build_szone(inner: &CellularAutomaton) -> Result<SZoneRule> {
    build(inner, Variant::Plain)
}

/// As [`build_szone`], but a working cell carrying `s` turns its neighborhood into `e`.
pub fn build_erasing_variant(inner: &CellularAutomaton, s: State) -> Result<SZoneRule> {
    if !is_spreading(inner, s) {
        return Err(Error::NotSpreading(inner.alphabet().name(s).to_string()));
    }
    build(inner, Variant::Erasing { spreading: s })
}

#[derive(Clone, Debug)]
pub struct LambdaInput {
    pub n: usize,
    pub c: Configuration,
    pub c2: Configuration,
    pub realized: Configuration,
}

/// Head `(c₋ₙ, c′₋ₙ, →)` at −n, `(c_z, c′_z, r)` on (−n, n], blank elsewhere.
pub fn make_lambda(sz: &SZoneRule, n: usize, c: &Configuration, c2: &Configuration) -> Result<LambdaInput> {
    if n == 0 {
        return Err(Error::Precondition("a working zone needs n ≥ 1".into()));
    }
    Ok(LambdaInput {
        n,
        c: c.clone(),
        c2: c2.clone(),
        realized: lambda_config(sz, n as i64, c, c2),
    })
}

/// λ for any n ≥ 0 (n = 0 is a lone head).
fn lambda_config(sz: &SZoneRule, n: i64, c: &Configuration, c2: &Configuration) -> Configuration {
    let row: Vec<State> = (-n..=n)
        .map(|z| {
            let d = if z == -n { Dir::HeadRight } else { Dir::R };
            sz.encode(Cell::Work(c.at(z), c2.at(z), d))
        })
        .collect();
    Configuration::from_row(sz.blank(), -n, &row)
}

/// `Σ_{i=n−t+1}^{n} (4i + 1)`.
pub fn zone_time(n: usize, t: usize) -> usize {
    (n + 1 - t..=n).map(|i| 4 * i + 1).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZoneTimingReport {
    pub n: usize,
    pub t: usize,
    pub t_n: usize,
    /// `(z, expected, got)` on |z| ≤ n − t.
    pub mismatches: Vec<(i64, State, State)>,
    /// `(time, z)` of working cells whose layers are not inner states at nearby times.
    pub intermediate_violations: Vec<(usize, i64)>,
}

impl ZoneTimingReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.intermediate_violations.is_empty()
    }
}

/// Simulate λ_{n,c,c} for t_n steps and compare with λ_{n−t, F^t(c), F^{t−1}(c)}.
pub fn verify_zone_timing(sz: &SZoneRule, c: &Configuration, n: usize, t: usize) -> Result<ZoneTimingReport> {
    if t == 0 || t > n {
        return Err(Error::Precondition("need n ≥ t ≥ 1".into()));
    }
    let inner_orbit: Vec<Configuration> = Orbit::new(&sz.inner, c)?.take(t + 1).collect();
    let t_n = zone_time(n, t);
    let seed = lambda_config(sz, n as i64, c, c);
    let nn = n as i64;
    let mut intermediate_violations = Vec::new();
    let mut last = seed.clone();
    for (time, cfg) in Orbit::new(&sz.ca, &seed)?.take(t_n + 1).enumerate() {
        for z in -nn..=nn {
            if let Cell::Work(x, y, _) = sz.decode(cfg.at(z)) {
                let ok = (0..=t).any(|t1| {
                    inner_orbit[t1].at(z) == x
                        && (t1.saturating_sub(1)..=(t1 + 1).min(t)).any(|t2| inner_orbit[t2].at(z) == y)
                });
                if !ok {
                    intermediate_violations.push((time, z));
                }
            }
        }
        last = cfg;
    }
    let expected = lambda_config(sz, nn - t as i64, &inner_orbit[t], &inner_orbit[t - 1]);
    let r = nn - t as i64;
    let mismatches = (-r..=r)
        .filter_map(|z| {
            let (e, g) = (expected.at(z), last.at(z));
            (e != g).then_some((z, e, g))
        })
        .collect();
    Ok(ZoneTimingReport {
        n,
        t,
        t_n,
        mismatches,
        intermediate_violations,
    })
}

/// Changes of cell 0 over the orbit of λ_{n,c,c} until the zone is gone.
pub fn center_changes(sz: &SZoneRule, c: &Configuration, n: usize) -> Result<usize> {
    let seed = lambda_config(sz, n as i64, c, c);
    let horizon = zone_time(n, n) + 4 * n + 8;
    let mut changes = 0;
    let mut prev = seed.at(0);
    let mut cur = seed;
    for _ in 0..horizon {
        cur = step(&sz.ca, &cur)?;
        let now = cur.at(0);
        changes += usize::from(now != prev);
        prev = now;
    }
    Ok(changes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_inner(q: usize, rng: &mut ChaCha8Rng) -> CellularAutomaton {
        CellularAutomaton::from_fn(Alphabet::numeric(q), Neighborhood::interval(-1, 1), |_| {
            State(rng.gen_range(0..q) as u16)
        })
        .unwrap()
    }

    fn random_row(q: usize, n: i64, rng: &mut ChaCha8Rng) -> Configuration {
        let row: Vec<State> = (0..2 * n + 1).map(|_| State(rng.gen_range(0..q) as u16)).collect();
        Configuration::from_row(State(0), -n, &row)
    }

    #[test]
    fn alphabet_formula() {
        let sz = build_szone(&zoo::max_rule(2, -1, 1)).unwrap();
        assert_eq!(sz.ca.num_states(), 19);
        for s in sz.ca.alphabet().states() {
            assert_eq!(sz.encode(sz.decode(s)), s);
        }
    }

    #[test]
    fn error_spreads_and_blank_is_fixed() {
        let sz = build_szone(&zoo::max_rule(2, -1, 1)).unwrap();
        let e = sz.error();
        for a in sz.ca.alphabet().states() {
            for b in sz.ca.alphabet().states() {
                assert_eq!(sz.ca.apply(&[e, a, b]), e);
                assert_eq!(sz.ca.apply(&[a, e, b]), e);
                assert_eq!(sz.ca.apply(&[a, b, e]), e);
                if a != e && b != e {
                    assert_eq!(sz.ca.apply(&[a, State(0), b]), State(0));
                    assert_eq!(sz.ca.apply(&[a, State(1), b]), State(0));
                }
            }
        }
    }

    #[test]
    fn single_cell_zone_loses_head() {
        let sz = build_szone(&zoo::max_rule(2, -1, 1)).unwrap();
        let head = sz.encode(Cell::Work(State(1), State(0), Dir::HeadLeft));
        assert_eq!(sz.ca.apply(&[State(0), head, State(1)]), sz.encode(Cell::Work(State(1), State(0), Dir::R)));
    }

    #[test]
    fn lambda_shape() {
        let sz = build_szone(&zoo::max_rule(2, -1, 1)).unwrap();
        let c = Configuration::uniform(1, State(0));
        let lam = make_lambda(&sz, 1, &c, &c).unwrap();
        let names: Vec<&str> = lam.realized.row(-2, 2).iter().map(|&s| sz.ca.alphabet().name(s)).collect();
        assert_eq!(names, ["b", "0|0|>", "0|0|r", "0|0|r", "b"]);
        assert!(make_lambda(&sz, 0, &c, &c).is_err());
    }

    #[test]
    fn zone_timing_small() {
        assert_eq!(zone_time(3, 2), 22);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..4 {
            let inner = random_inner(3, &mut rng);
            let sz = build_szone(&inner).unwrap();
            let c = random_row(3, 8, &mut rng);
            for n in 1..=5 {
                for t in 1..=n {
                    let rep = verify_zone_timing(&sz, &c, n, t).unwrap();
                    assert!(rep.passed(), "{rep:?}");
                }
            }
        }
    }

    #[test]
    fn one_head_per_zone() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sz = build_szone(&random_inner(2, &mut rng)).unwrap();
        let c = random_row(2, 6, &mut rng);
        let seed = make_lambda(&sz, 6, &c, &c).unwrap().realized;
        for cfg in Orbit::new(&sz.ca, &seed).unwrap().take(300) {
            assert!(sz.heads(&cfg) <= 1);
            assert!(!cfg.states().contains(&sz.error()));
        }
    }

    #[test]
    fn cell_zero_changes_grow() {
        let sz = build_szone(&zoo::shift_rule(2)).unwrap();
        let c = Configuration::from_row(State(0), -8, &[State(1), State(0)].repeat(9));
        for n in [2, 4, 8] {
            assert!(center_changes(&sz, &c, n).unwrap() > n);
        }
    }

    #[test]
    fn erasing_variant() {
        let mx = zoo::max_rule(2, -1, 1);
        assert!(matches!(build_erasing_variant(&zoo::shift_rule(2), State(1)), Err(Error::NotSpreading(_))));
        let f2 = build_erasing_variant(&mx, State(1)).unwrap();
        let plain = build_szone(&mx).unwrap();
        // configurations free of the spreading state step identically
        let c = Configuration::uniform(1, State(0));
        let seed = lambda_config(&plain, 3, &c, &c);
        assert_eq!(step(&f2.ca, &seed).unwrap(), step(&plain.ca, &seed).unwrap());
        let c1 = Configuration::from_row(State(0), 0, &[State(1)]);
        let seed = lambda_config(&plain, 3, &c1, &c1);
        let end = Orbit::new(&f2.ca, &seed).unwrap().nth(10).unwrap();
        assert!(end.states().contains(&f2.error()));
    }
}
