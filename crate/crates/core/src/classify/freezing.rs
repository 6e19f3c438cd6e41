use std::collections::VecDeque;

use crate::ca::{CellularAutomaton, State};

/// Reflexive-transitive closure of the reversed state-change relation:
/// `leq(a, b)` iff a cell in state b can eventually be in state a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrder {
    n: usize,
    leq: Vec<bool>,
}

impl PartialOrder {
    pub fn leq(&self, a: State, b: State) -> bool {
        self.leq[a.index() * self.n + b.index()]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// All pairs `(a, b)` with `a ⪯ b`.
    pub fn comparabilities(&self) -> Vec<(State, State)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.leq[a * self.n + b] {
                    out.push((State(a as u16), State(b as u16)));
                }
            }
        }
        out
    }

    /// A total order compatible with ⪯, minimal states first.
    pub fn linear_extension(&self) -> Vec<State> {
        let mut states: Vec<State> = (0..self.n as u16).map(State).collect();
        // number of strict predecessors is a valid sort key for a partial order
        states.sort_by_key(|&b| (0..self.n).filter(|&a| a != b.index() && self.leq[a * self.n + b.index()]).count());
        states
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreezingOrder {
    Freezing { arcs: Vec<(State, State)>, order: PartialOrder },
    /// A shortest cycle `q₀ → q₁ → … → q₀` of the state-change relation.
    NotFreezing { cycle: Vec<State> },
}

impl FreezingOrder {
    pub fn is_freezing(&self) -> bool {
        matches!(self, FreezingOrder::Freezing { .. })
    }
}

/// Build →_F from the table and test it for cycles.
pub fn check_freezing(ca: &CellularAutomaton) -> FreezingOrder {
    let n = ca.num_states();
    let arcs: Vec<(State, State)> = ca.state_change_arcs().into_iter().collect();
    let mut succ = vec![Vec::new(); n];
    for (a, b) in &arcs {
        succ[a.index()].push(b.index());
    }
    if let Some(cycle) = shortest_cycle(&succ) {
        return FreezingOrder::NotFreezing {
            cycle: cycle.into_iter().map(|i| State(i as u16)).collect(),
        };
    }
    let mut leq = vec![false; n * n];
    for src in 0..n {
        // everything reachable from src is below src
        let mut seen = vec![false; n];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            leq[u * n + src] = true;
            for &v in &succ[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    FreezingOrder::Freezing {
        arcs,
        order: PartialOrder { n, leq },
    }
}

/// BFS from every vertex; the shortest return path over all starts.
fn shortest_cycle(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n {
        let mut parent = vec![usize::MAX; n];
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        let mut closing = None;
        'bfs: while let Some(u) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| dist[u] + 1 >= b.len()) {
                break;
            }
            for &v in &succ[u] {
                if v == s {
                    closing = Some(u);
                    break 'bfs;
                }
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if let Some(mut u) = closing {
            let mut path = vec![u];
            while u != s {
                u = parent[u];
                path.push(u);
            }
            path.reverse();
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn ulam_order() {
        match check_freezing(&zoo::ulam()) {
            FreezingOrder::Freezing { arcs, order } => {
                assert_eq!(arcs, vec![(State(0), State(1))]);
                assert!(order.leq(State(1), State(0)));
                assert!(!order.leq(State(0), State(1)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nonfreezing_two_cycle() {
        match check_freezing(&zoo::nonfreezing_example()) {
            FreezingOrder::NotFreezing { cycle } => {
                let mut c = cycle.clone();
                c.sort();
                assert_eq!(c, vec![State(1), State(2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn linear_extension_respects_order() {
        let ca = zoo::sir(crate::ca::Neighborhood::von_neumann(2, true), 1).unwrap();
        let FreezingOrder::Freezing { order, .. } = check_freezing(&ca) else { panic!() };
        assert_eq!(order.linear_extension(), vec![zoo::SIR_R, zoo::SIR_I, zoo::SIR_S]);
    }
}
