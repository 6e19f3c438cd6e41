use crate::ca::{Alphabet, CellularAutomaton, Neighborhood, Pattern, State};
use crate::commproto::SplitInstance;
use crate::error::{Error, Result};
use crate::predict::{predict_naive, PredictionInstance};

const LEFT: u16 = 0;
const RIGHT: u16 = 1;
const TEST: u16 = 2;

/// `(direction, bit)` with direction 0 = ←, 1 = →, 2 = T.
pub fn highcc_state(direction: u16, bit: u16) -> State {
    State(direction * 2 + bit)
}

/// Arrows carry bits toward the column `π₁ = 0`, where T cells compare mirror
/// images and a failure spreads as `(T, 0)`.
pub fn build_highcc_rule(d: usize) -> Result<CellularAutomaton> {
    if d == 0 {
        return Err(Error::InvalidNeighborhood("dimension must be ≥ 1".into()));
    }
    let nb = Neighborhood::moore(d, 1);
    let find = |p: Vec<i64>| nb.offsets().iter().position(|o| *o == p).expect("in the ball");
    let mut e1 = vec![0; d];
    e1[0] = -1;
    let from_left = find(e1.clone());
    e1[0] = 1;
    let from_right = find(e1);
    let center = find(vec![0; d]);
    let alphabet = Alphabet::new(&["<0", "<1", ">0", ">1", "T0", "T1"])?;
    let t0 = highcc_state(TEST, 0);
    Ok(CellularAutomaton::from_fn(alphabet, nb, |c| match c[center].0 / 2 {
        RIGHT => c[from_left],
        LEFT => c[from_right],
        _ => {
            if c.contains(&t0) || c[from_left].0 % 2 != c[from_right].0 % 2 {
                t0
            } else {
                highcc_state(TEST, 1)
            }
        }
    })?
    .with_name(format!("highcc-{d}d")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoolingOutcome {
    Verified { size: usize, diagonal: State },
    /// `(i, j)` with both cross answers equal to the diagonal value (or `i = j`
    /// when the diagonal itself is not constant).
    Counterexample { i: usize, j: usize },
}

/// Check `F^n(a_i|b_i) = z` for all i and, for i ≠ j, `F^n(a_i|b_j) ≠ z` or `F^n(a_j|b_i) ≠ z`.
pub fn check_fooling_set(ca: &CellularAutomaton, n: usize, candidates: &[SplitInstance]) -> Result<FoolingOutcome> {
    if candidates.is_empty() {
        return Err(Error::Precondition("need at least one candidate".into()));
    }
    for (i, a) in candidates.iter().enumerate() {
        if candidates[..i].contains(a) {
            return Err(Error::Precondition(format!("candidate {i} repeats an earlier one")));
        }
    }
    let m = candidates.len();
    let mut answers = vec![State(0); m * m];
    for i in 0..m {
        for j in 0..m {
            let inst = candidates[i].with_halves(&candidates[i].alice, &candidates[j].bob)?;
            let pi = PredictionInstance::new(ca, n, inst.join(), None)?;
            answers[i * m + j] = predict_naive(ca, &pi)?;
        }
    }
    let z = answers[0];
    for i in 0..m {
        if answers[i * m + i] != z {
            return Ok(FoolingOutcome::Counterexample { i, j: i });
        }
        for j in i + 1..m {
            if answers[i * m + j] == z && answers[j * m + i] == z {
                return Ok(FoolingOutcome::Counterexample { i, j });
            }
        }
    }
    Ok(FoolingOutcome::Verified { size: m, diagonal: z })
}

/// The 1D correct configurations at size n whose mirrored bits agree outside
/// B(⌈n/2⌉): one candidate per assignment of the free bits.
pub fn highcc_candidates(ca: &CellularAutomaton, n: usize) -> Result<Vec<SplitInstance>> {
    if ca.dim() != 1 {
        return Err(Error::NotOneDimensional);
    }
    let free = n.div_ceil(2);
    let mut out = Vec::new();
    for bits in 0..1u64 << free {
        let bit = |z: i64| -> u16 {
            let a = z.unsigned_abs() as usize;
            if a <= free {
                (bits >> (a - 1) & 1) as u16
            } else {
                0
            }
        };
        let row: Vec<State> = (-(n as i64)..=n as i64)
            .map(|z| match z {
                0 => highcc_state(TEST, 1),
                _ if z < 0 => highcc_state(RIGHT, bit(z)),
                _ => highcc_state(LEFT, bit(z)),
            })
            .collect();
        out.push(SplitInstance::from_pattern(ca, n, &Pattern::from_row(&row)?)?);
    }
    Ok(out)
}
