//! Two-party prediction: Alice holds the half-ball with first coordinate ≤ 0,
//! Bob the rest; protocols are metered in bits.

mod highcc;

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::ca::{apply_to_pattern, CellularAutomaton, Pattern, Pos, State};
use crate::error::{Error, Result};
use crate::predict::{predict_naive, PredictionInstance};

pub use highcc::{build_highcc_rule, check_fooling_set, highcc_candidates, highcc_state, FoolingOutcome};

/// `⌈log₂ x⌉`, with 0 for x ≤ 1.
pub fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// The ball B(rn) split at the first coordinate; both halves in pattern order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitInstance {
    pub n: usize,
    pub dim: usize,
    pub radius: usize,
    pub alice: Vec<State>,
    pub bob: Vec<State>,
}

impl SplitInstance {
    /// Split a pattern of radius `r·n`.
    pub fn from_pattern(ca: &CellularAutomaton, n: usize, u: &Pattern) -> Result<Self> {
        if u.radius() != ca.radius() * n {
            return Err(Error::Precondition("pattern radius must be r·n".into()));
        }
        let (mut alice, mut bob) = (Vec::new(), Vec::new());
        for (p, &s) in u.positions().iter().zip(u.cells()) {
            if p[0] <= 0 {
                alice.push(s);
            } else {
                bob.push(s);
            }
        }
        Ok(SplitInstance {
            n,
            dim: u.dim(),
            radius: u.radius(),
            alice,
            bob,
        })
    }

    /// The concatenation `u|v`.
    pub fn join(&self) -> Pattern {
        let (mut a, mut b) = (self.alice.iter(), self.bob.iter());
        Pattern::from_fn(self.dim, self.radius, |p| {
            *if p[0] <= 0 { a.next() } else { b.next() }.expect("sizes match the ball")
        })
    }

    pub fn with_halves(&self, alice: &[State], bob: &[State]) -> Result<Self> {
        if alice.len() != self.alice.len() || bob.len() != self.bob.len() {
            return Err(Error::InvalidInstance("half sizes do not match".into()));
        }
        Ok(SplitInstance {
            alice: alice.to_vec(),
            bob: bob.to_vec(),
            ..self.clone()
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Party {
    Alice,
    Bob,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Init,
    Counter,
    DiffReport,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Init => "init",
            Tag::Counter => "counter",
            Tag::DiffReport => "diffReport",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub sender: Party,
    pub bits: usize,
    pub tag: Tag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtocolTranscript {
    pub rounds: Vec<Round>,
    pub answer: State,
    pub total_bits: usize,
    /// Cell changes carried by diff reports.
    pub reported_changes: usize,
}

impl ProtocolTranscript {
    fn new() -> Self {
        ProtocolTranscript {
            rounds: Vec::new(),
            answer: State(0),
            total_bits: 0,
            reported_changes: 0,
        }
    }

    fn send(&mut self, sender: Party, bits: usize, tag: Tag) {
        self.rounds.push(Round { sender, bits, tag });
        self.total_bits += bits;
    }

    pub fn bits_with_tag(&self, tag: Tag) -> usize {
        self.rounds.iter().filter(|r| r.tag == tag).map(|r| r.bits).sum()
    }

    /// One `sender tag bits` line per round, then the totals.
    pub fn to_text(&self, ca: &CellularAutomaton) -> String {
        let mut out = String::new();
        for r in &self.rounds {
            let who = match r.sender {
                Party::Alice => "alice",
                Party::Bob => "bob",
            };
            writeln!(out, "round {who} {} {}", r.tag.as_str(), r.bits).unwrap();
        }
        writeln!(out, "answer: {}", ca.alphabet().name(self.answer)).unwrap();
        writeln!(out, "total_bits: {}", self.total_bits).unwrap();
        out
    }
}

/// Alice sends her whole half; Bob computes the answer.
pub fn run_trivial_protocol(ca: &CellularAutomaton, inst: &SplitInstance) -> Result<ProtocolTranscript> {
    let mut tr = ProtocolTranscript::new();
    tr.send(Party::Alice, inst.alice.len() * ceil_log2(ca.num_states()), Tag::Init);
    let pi = PredictionInstance::new(ca, inst.n, inst.join(), None)?;
    tr.answer = predict_naive(ca, &pi)?;
    Ok(tr)
}

/// Whether both parties' reconstructions matched the true orbit after a round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditEntry {
    pub time: usize,
    pub alice_consistent: bool,
    pub bob_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ProtocolAudit {
    pub entries: Vec<AuditEntry>,
}

impl ProtocolAudit {
    pub fn all_consistent(&self) -> bool {
        self.entries.iter().all(|e| e.alice_consistent && e.bob_consistent)
    }
}

struct Geometry {
    positions: Vec<Pos>,
    index: HashMap<Pos, usize>,
    /// Per cell: indices of its neighbors (when inside the ball).
    nbrs: Vec<Option<Vec<usize>>>,
    r: i64,
    n: usize,
}

impl Geometry {
    fn new(ca: &CellularAutomaton, inst: &SplitInstance) -> Self {
        let u = inst.join();
        let positions = u.positions();
        let index: HashMap<Pos, usize> = positions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let nbrs = positions
            .iter()
            .map(|p| {
                ca.neighborhood()
                    .offsets()
                    .iter()
                    .map(|v| {
                        let q: Pos = p.iter().zip(v).map(|(a, b)| a + b).collect();
                        index.get(&q).copied()
                    })
                    .collect()
            })
            .collect();
        Geometry {
            positions,
            index,
            nbrs,
            r: ca.radius() as i64,
            n: inst.n,
        }
    }

    fn norm(&self, i: usize) -> i64 {
        self.positions[i].iter().map(|a| a.abs()).max().unwrap_or(0)
    }

    /// Inside B(r(n − s)).
    fn valid_at(&self, i: usize, s: usize) -> bool {
        s <= self.n && self.norm(i) <= self.r * (self.n - s) as i64
    }

    fn on_side(&self, i: usize, p: Party) -> bool {
        match p {
            Party::Alice => self.positions[i][0] <= 0,
            Party::Bob => self.positions[i][0] > 0,
        }
    }

    fn in_zone(&self, i: usize, p: Party) -> bool {
        let x = self.positions[i][0];
        match p {
            Party::Alice => -self.r < x && x <= 0,
            Party::Bob => 0 < x && x <= self.r,
        }
    }
}

/// One step of a party's own half from time `s` to `s + 1`, the other side frozen.
fn party_step(ca: &CellularAutomaton, g: &Geometry, grid: &[State], s: usize, who: Party) -> Vec<State> {
    let mut out = grid.to_vec();
    let mut ctx = vec![State(0); ca.neighborhood().len()];
    for i in 0..grid.len() {
        if !g.on_side(i, who) || !g.valid_at(i, s + 1) {
            continue;
        }
        let nb = g.nbrs[i].as_ref().expect("neighbors exist");
        for (slot, j) in ctx.iter_mut().zip(nb) {
            *slot = grid[*j];
        }
        out[i] = ca.apply(&ctx);
    }
    out
}

/// Simulate from `t0` until a change shows in the party's own zone, or time n.
fn run_until_change(ca: &CellularAutomaton, g: &Geometry, start: &[State], t0: usize, who: Party) -> Vec<Vec<State>> {
    let mut snaps = vec![start.to_vec()];
    for s in t0..g.n {
        let next = party_step(ca, g, snaps.last().expect("nonempty"), s, who);
        let changed = (0..next.len()).any(|i| g.in_zone(i, who) && g.valid_at(i, s + 1) && next[i] != snaps[0][i]);
        snaps.push(next);
        if changed {
            break;
        }
    }
    snaps
}

pub fn run_diffreport_protocol(ca: &CellularAutomaton, inst: &SplitInstance, k: usize) -> Result<ProtocolTranscript> {
    Ok(run_diffreport_protocol_audited(ca, inst, k)?.0)
}

/// The diff-report protocol, with every round checked against a full simulation.
pub fn run_diffreport_protocol_audited(
    ca: &CellularAutomaton,
    inst: &SplitInstance,
    k: usize,
) -> Result<(ProtocolTranscript, ProtocolAudit)> {
    let joined = inst.join();
    if joined.radius() != ca.radius() * inst.n {
        return Err(Error::Precondition("instance radius must be r·n".into()));
    }
    let g = Geometry::new(ca, inst);
    let n = inst.n;
    let d = inst.dim;
    let state_bits = ceil_log2(ca.num_states());
    let counter_bits = ceil_log2(n + 1);
    let change_bits = state_bits + (d + 1) * ceil_log2(n);

    // reference orbit, only for the audit
    let mut reference = vec![joined.clone()];
    for _ in 0..n {
        let next = apply_to_pattern(ca, reference.last().expect("nonempty"))?;
        reference.push(next);
    }
    let truth = |s: usize, i: usize| reference[s].get(&g.positions[i]);

    let mut tr = ProtocolTranscript::new();
    let mut audit = ProtocolAudit::default();
    let cells = joined.cells();
    let zone_a: Vec<usize> = (0..cells.len()).filter(|&i| g.in_zone(i, Party::Alice)).collect();
    let zone_b: Vec<usize> = (0..cells.len()).filter(|&i| g.in_zone(i, Party::Bob)).collect();
    // each party knows its half and the other's zone; every other cell is never read
    let blank = State(0);
    let know = |who: Party| -> Vec<State> {
        (0..cells.len())
            .map(|i| {
                let other = match who {
                    Party::Alice => Party::Bob,
                    Party::Bob => Party::Alice,
                };
                if g.on_side(i, who) || g.in_zone(i, other) {
                    cells[i]
                } else {
                    blank
                }
            })
            .collect()
    };
    let mut alice = know(Party::Alice);
    let mut bob = know(Party::Bob);
    tr.send(Party::Alice, zone_a.len() * state_bits, Tag::Init);
    tr.send(Party::Bob, zone_b.len() * state_bits, Tag::Init);

    let mut changes: HashMap<usize, usize> = HashMap::new();
    let mut t = 0;
    loop {
        let snaps_a = run_until_change(ca, &g, &alice, t, Party::Alice);
        let snaps_b = run_until_change(ca, &g, &bob, t, Party::Bob);
        let (ta, tb) = (t + snaps_a.len() - 1, t + snaps_b.len() - 1);
        tr.send(Party::Alice, counter_bits, Tag::Counter);
        tr.send(Party::Bob, counter_bits, Tag::Counter);
        let tm = ta.min(tb);
        if tm == n {
            alice = snaps_a[n - t].clone();
            break;
        }
        let mut next_a = snaps_a[tm - t].clone();
        let mut next_b = snaps_b[tm - t].clone();
        for (who, tx, zone, snaps) in [(Party::Alice, ta, &zone_a, &snaps_a), (Party::Bob, tb, &zone_b, &snaps_b)] {
            if tx != tm {
                continue;
            }
            let diff: Vec<usize> = zone
                .iter()
                .copied()
                .filter(|&i| g.valid_at(i, tm) && snaps[tm - t][i] != snaps[0][i])
                .collect();
            for &i in &diff {
                let c = changes.entry(i).or_insert(0);
                *c += 1;
                if *c > k {
                    return Err(Error::BoundViolation {
                        cell: g.positions[i][0],
                        segments: *c + 1,
                        allowed: k + 1,
                    });
                }
                let v = snaps[tm - t][i];
                match who {
                    Party::Alice => next_b[i] = v,
                    Party::Bob => next_a[i] = v,
                }
            }
            tr.reported_changes += diff.len();
            tr.send(who, diff.len() * change_bits, Tag::DiffReport);
        }
        alice = next_a;
        bob = next_b;
        t = tm;
        let check = |grid: &[State], who: Party| {
            let other = if who == Party::Alice { Party::Bob } else { Party::Alice };
            (0..grid.len())
                .filter(|&i| g.valid_at(i, t) && (g.on_side(i, who) || g.in_zone(i, other)))
                .all(|i| truth(t, i) == Some(grid[i]))
        };
        audit.entries.push(AuditEntry {
            time: t,
            alice_consistent: check(&alice, Party::Alice),
            bob_consistent: check(&bob, Party::Bob),
        });
    }
    let origin = g.index[&vec![0; d]];
    tr.answer = alice[origin];
    Ok((tr, audit))
}

/// `n,total_bits,init_bits,counter_bits,diff_bits` rows.
pub fn bits_csv(rows: &[(usize, &ProtocolTranscript)]) -> String {
    let mut out = String::from("n,total_bits,init_bits,counter_bits,diff_bits\n");
    for (n, tr) in rows {
        writeln!(
            out,
            "{n},{},{},{},{}",
            tr.total_bits,
            tr.bits_with_tag(Tag::Init),
            tr.bits_with_tag(Tag::Counter),
            tr.bits_with_tag(Tag::DiffReport)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{Alphabet, Neighborhood};
    use crate::zoo;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_split(ca: &CellularAutomaton, n: usize, rng: &mut ChaCha8Rng) -> SplitInstance {
        let q = ca.num_states();
        let row: Vec<State> = (0..2 * ca.radius() * n + 1).map(|_| State(rng.gen_range(0..q) as u16)).collect();
        SplitInstance::from_pattern(ca, n, &Pattern::from_row(&row).unwrap()).unwrap()
    }

    #[test]
    fn log_sizes() {
        assert_eq!([1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn trivial_bits() {
        let ca = zoo::max_rule(2, -1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let inst = random_split(&ca, 4, &mut rng);
        assert_eq!(run_trivial_protocol(&ca, &inst).unwrap().total_bits, 5);
        let id = zoo::identity(Alphabet::numeric(3), Neighborhood::interval(-1, 1)).unwrap();
        let inst = random_split(&id, 1, &mut rng);
        assert_eq!(run_trivial_protocol(&id, &inst).unwrap().answer, inst.alice[1]);
    }

    #[test]
    fn identity_sends_no_diffs() {
        let id = zoo::identity(Alphabet::numeric(4), Neighborhood::interval(-1, 1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let inst = random_split(&id, 8, &mut rng);
        let tr = run_diffreport_protocol(&id, &inst, 0).unwrap();
        assert_eq!(tr.bits_with_tag(Tag::Init), 2 * 2);
        assert_eq!(tr.bits_with_tag(Tag::DiffReport), 0);
        assert_eq!(tr.answer, inst.alice.last().copied().unwrap());
    }

    #[test]
    fn diffreport_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ca in [zoo::max_rule(3, -1, 1), zoo::ulam_1d(), zoo::max_rule(2, -2, 1)] {
            for n in [1, 3, 8, 16] {
                let inst = random_split(&ca, n, &mut rng);
                let (tr, audit) = run_diffreport_protocol_audited(&ca, &inst, ca.num_states()).unwrap();
                let oracle = run_trivial_protocol(&ca, &inst).unwrap().answer;
                assert_eq!(tr.answer, oracle);
                assert!(audit.all_consistent());
            }
        }
    }

    #[test]
    fn two_dimensional_split() {
        let ca = zoo::ulam();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 4;
        let u = Pattern::from_fn(2, n, |_| State(u16::from(rng.gen_bool(0.1))));
        let inst = SplitInstance::from_pattern(&ca, n, &u).unwrap();
        assert_eq!(inst.join(), u);
        let (tr, audit) = run_diffreport_protocol_audited(&ca, &inst, 1).unwrap();
        assert_eq!(tr.answer, run_trivial_protocol(&ca, &inst).unwrap().answer);
        assert!(audit.all_consistent());
    }

    #[test]
    fn change_bound_enforced() {
        let flip = CellularAutomaton::from_fn(Alphabet::numeric(2), Neighborhood::interval(-1, 1), |c| State(1 - c[1].0)).unwrap();
        let row = vec![State(0); 9];
        let inst = SplitInstance::from_pattern(&flip, 4, &Pattern::from_row(&row).unwrap()).unwrap();
        assert!(matches!(run_diffreport_protocol(&flip, &inst, 1), Err(Error::BoundViolation { .. })));
    }
}
