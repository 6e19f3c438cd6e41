use super::sim::{simulate, Orbit};
use super::{ball_positions, CellularAutomaton, Configuration, Pattern, Pos, State};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ReachQuery {
    pub t_max: usize,
    /// Extensions assign the ring B(n+e) \ B(n) for e ≤ this.
    pub extension_radius: usize,
    /// Quiescent backgrounds tried for each extension.
    pub backgrounds: Vec<State>,
    /// Stop after this many candidate configurations.
    pub candidate_budget: usize,
}

impl ReachQuery {
    pub fn new(t_max: usize, extension_radius: usize, backgrounds: Vec<State>) -> Self {
        ReachQuery {
            t_max,
            extension_radius,
            backgrounds,
            candidate_budget: 1 << 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reach {
    Reached { t: usize, witness: Configuration },
    /// Nothing found; `exhausted` is false when the budget cut the search short.
    Unknown { candidates: usize, exhausted: bool },
}

fn max_norm(p: &[i64]) -> i64 {
    p.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// Bounded semi-decision of cylinder reachability: is there a c ∈ [u] (u extended
/// by a finite ring over a uniform background) with F^t(c) ∈ [v] for some t ≤ t_max?
pub fn cyreach_bounded(ca: &CellularAutomaton, u: &Pattern, v: &Pattern, q: &ReachQuery) -> Result<Reach> {
    ca.check_dim(u.dim())?;
    ca.check_dim(v.dim())?;
    for s in u.cells().iter().chain(v.cells()).chain(&q.backgrounds) {
        ca.check_state(*s)?;
    }
    if q.backgrounds.is_empty() {
        return Err(Error::InvalidConfiguration("no background states given".into()));
    }
    let n = u.radius() as i64;
    let states: Vec<State> = ca.alphabet().states().collect();
    let mut candidates = 0usize;
    for e in 0..=q.extension_radius as i64 {
        let ring: Vec<Pos> = ball_positions(u.dim(), n + e)
            .into_iter()
            .filter(|p| max_norm(p) > n)
            .collect();
        let outer: Vec<usize> = ring
            .iter()
            .enumerate()
            .filter(|(_, p)| max_norm(p) == n + e)
            .map(|(i, _)| i)
            .collect();
        for &bg in &q.backgrounds {
            let base = u.to_configuration(bg);
            let mut digits = vec![0usize; ring.len()];
            loop {
                // shells whose outermost layer is all background were covered at e − 1
                let fresh = e == 0 || outer.iter().any(|&i| states[digits[i]] != bg);
                if fresh {
                    if candidates >= q.candidate_budget {
                        return Ok(Reach::Unknown {
                            candidates,
                            exhausted: false,
                        });
                    }
                    candidates += 1;
                    let mut c = base.clone();
                    for (p, d) in ring.iter().zip(&digits) {
                        c.set(p.clone(), states[*d])?;
                    }
                    if let Some(t) = Orbit::new(ca, &c)?.take(q.t_max + 1).position(|x| v.matches(&x)) {
                        // independent re-verification
                        let orbit = simulate(ca, &c, t)?;
                        if u.matches(&c) && v.matches(&orbit[t]) {
                            return Ok(Reach::Reached { t, witness: c });
                        }
                        return Err(Error::InvalidConfiguration("reachability witness failed re-verification".into()));
                    }
                }
                let mut a = digits.len();
                loop {
                    if a == 0 {
                        break;
                    }
                    a -= 1;
                    digits[a] += 1;
                    if digits[a] < states.len() {
                        break;
                    }
                    digits[a] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
    }
    Ok(Reach::Unknown {
        candidates,
        exhausted: true,
    })
}
