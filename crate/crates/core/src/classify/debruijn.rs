use std::collections::VecDeque;

use rand::Rng;

use crate::ca::{step, Alphabet, CellularAutomaton, Configuration, Neighborhood, State};
use crate::classify::freezing::check_freezing;
use crate::error::{Error, Result};

/// Re-express a 1D rule on the full interval `{−R, …, R}`, `R = max(r, 1)`.
pub fn canonical_1d(ca: &CellularAutomaton) -> Result<CellularAutomaton> {
    if ca.dim() != 1 {
        return Err(Error::NotOneDimensional);
    }
    let r = ca.radius().max(1) as i64;
    let full = Neighborhood::interval(-r, r);
    if ca.neighborhood() == &full {
        return Ok(ca.clone());
    }
    let picks: Vec<usize> = ca.neighborhood().offsets().iter().map(|o| (o[0] + r) as usize).collect();
    let mut tmp = vec![State(0); picks.len()];
    let out = CellularAutomaton::from_fn(ca.alphabet().clone(), full, |ctx| {
        for (slot, &i) in tmp.iter_mut().zip(&picks) {
            *slot = ctx[i];
        }
        ca.apply(&tmp)
    })?;
    Ok(match ca.name() {
        Some(n) => out.with_name(n),
        None => out,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: State,
    /// The label equals the center letter: the edge can occur in a fixed point.
    pub fixed: bool,
    pub center: State,
}

/// Vertices are words of length 2r (base-|Q| integers, leftmost letter most
/// significant); one edge per table entry.
#[derive(Clone, Debug)]
pub struct DeBruijnGraph {
    pub num_states: usize,
    pub radius: usize,
    pub num_vertices: usize,
    pub edges: Vec<Edge>,
}

pub fn build_debruijn(ca: &CellularAutomaton) -> Result<DeBruijnGraph> {
    let ca = canonical_1d(ca)?;
    let q = ca.num_states();
    let r = ca.radius();
    let nv = q.pow(2 * r as u32);
    let mut edges = Vec::with_capacity(ca.table().len());
    for (idx, &label) in ca.table().iter().enumerate() {
        // idx spells a_{−r} … a_r in base q
        let from = idx / q;
        let to = idx % nv;
        let center = State(((idx / q.pow(r as u32)) % q) as u16);
        edges.push(Edge {
            from,
            to,
            label,
            fixed: label == center,
            center,
        });
    }
    Ok(DeBruijnGraph {
        num_states: q,
        radius: r,
        num_vertices: nv,
        edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Census {
    /// Two distinct fixed points, each verified by simulation.
    AtLeastTwo { witnesses: Vec<Configuration> },
    ExactlyOneUniform(State),
    NoneFound,
}

fn uniform_fixed_points(ca: &CellularAutomaton) -> Vec<State> {
    ca.alphabet().states().filter(|&q| ca.apply_uniform(q) == q).collect()
}

/// Strongly connected component ids (iterative Tarjan).
fn scc(nv: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut index = vec![usize::MAX; nv];
    let mut low = vec![0; nv];
    let mut on_stack = vec![false; nv];
    let mut comp = vec![usize::MAX; nv];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut ncomp = 0;
    let mut work: Vec<(usize, usize)> = Vec::new();
    for root in 0..nv {
        if index[root] != usize::MAX {
            continue;
        }
        work.push((root, 0));
        while let Some((v, i)) = work.pop() {
            if i == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if i < adj[v].len() {
                work.push((v, i + 1));
                let w = adj[v][i];
                if index[w] == usize::MAX {
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("on stack");
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
        }
    }
    comp
}

/// Edges of a circuit through `e` in the fixed subgraph (BFS from e.to back to e.from).
fn circuit_through(g: &DeBruijnGraph, fixed_out: &[Vec<usize>], e: usize) -> Vec<usize> {
    let start = g.edges[e].to;
    let goal = g.edges[e].from;
    let mut via = vec![usize::MAX; g.num_vertices];
    let mut seen = vec![false; g.num_vertices];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if u == goal {
            break;
        }
        for &ei in &fixed_out[u] {
            let v = g.edges[ei].to;
            if !seen[v] {
                seen[v] = true;
                via[v] = ei;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![];
    let mut v = goal;
    while v != start {
        let ei = via[v];
        path.push(ei);
        v = g.edges[ei].from;
    }
    path.reverse();
    let mut out = vec![e];
    out.extend(path);
    out
}

fn verified_fixed(ca: &CellularAutomaton, c: Configuration) -> Result<Configuration> {
    if step(ca, &c)? != c {
        return Err(Error::InvalidTable("census witness is not a fixed point".into()));
    }
    Ok(c)
}

pub fn census_fixed_points(ca: &CellularAutomaton) -> Result<Census> {
    let canon = canonical_1d(ca)?;
    let uniform = uniform_fixed_points(&canon);
    if uniform.len() >= 2 {
        let witnesses = uniform[..2]
            .iter()
            .map(|&q| verified_fixed(&canon, Configuration::uniform(1, q)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Census::AtLeastTwo { witnesses });
    }
    let g = build_debruijn(&canon)?;
    let mut fixed_out = vec![Vec::new(); g.num_vertices];
    let mut adj = vec![Vec::new(); g.num_vertices];
    for (i, e) in g.edges.iter().enumerate() {
        if e.fixed {
            fixed_out[e.from].push(i);
            adj[e.from].push(e.to);
        }
    }
    let comp = scc(g.num_vertices, &adj);
    let q = uniform.first().copied();
    let hit = g
        .edges
        .iter()
        .position(|e| e.fixed && comp[e.from] == comp[e.to] && Some(e.label) != q);
    match (hit, q) {
        (Some(e), _) => {
            let circuit = circuit_through(&g, &fixed_out, e);
            let block: Vec<State> = circuit.iter().map(|&i| g.edges[i].center).collect();
            let period = block.len() as i64;
            let c = Configuration::periodic(1, vec![period], block)?;
            // a non-uniform periodic fixed point and its shift are distinct fixed points;
            // with a uniform fixed point q the circuit word is never uniform
            let second = match q {
                Some(q) => Configuration::uniform(1, q),
                None => c.shift(&[1])?,
            };
            let first = verified_fixed(&canon, c)?;
            let second = verified_fixed(&canon, second)?;
            if first == second {
                return Err(Error::InvalidTable("census produced identical witnesses".into()));
            }
            Ok(Census::AtLeastTwo {
                witnesses: vec![first, second],
            })
        }
        (None, Some(q)) => Ok(Census::ExactlyOneUniform(q)),
        (None, None) => Ok(Census::NoneFound),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Verified with `check_freezing` before answering.
    Freezing,
    /// Caller vouches that the rule is convergent.
    AssumedConvergent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Nilpotent,
    NotNilpotent { witnesses: Vec<Configuration> },
}

/// For convergent 1D rules: nilpotent iff there are not two distinct fixed points.
pub fn decide_nilpotency_1d(ca: &CellularAutomaton, certificate: Option<Certificate>) -> Result<Nilpotency> {
    match certificate {
        None => return Err(Error::MissingCertificate),
        Some(Certificate::Freezing) => {
            if !check_freezing(ca).is_freezing() {
                return Err(Error::Precondition("freezing certificate given for a non-freezing rule".into()));
            }
        }
        Some(Certificate::AssumedConvergent) => {}
    }
    Ok(match census_fixed_points(ca)? {
        Census::AtLeastTwo { witnesses } => Nilpotency::NotNilpotent { witnesses },
        _ => Nilpotency::Nilpotent,
    })
}

/// A random radius-1 freezing rule on `q` states: a random total order, and
/// every output is at most the center in that order.
pub fn random_freezing_table<R: Rng>(q: usize, rng: &mut R) -> CellularAutomaton {
    let mut rank: Vec<usize> = (0..q).collect();
    for i in (1..q).rev() {
        rank.swap(i, rng.gen_range(0..=i));
    }
    let by_rank: Vec<State> = {
        let mut v = vec![State(0); q];
        for (s, &r) in rank.iter().enumerate() {
            v[r] = State(s as u16);
        }
        v
    };
    CellularAutomaton::from_fn(Alphabet::numeric(q), Neighborhood::interval(-1, 1), |ctx| {
        let c = ctx[1];
        if rng.gen_bool(0.5) {
            c
        } else {
            by_rank[rng.gen_range(0..=rank[c.index()])]
        }
    })
    .expect("small table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn graph_counts() {
        let g = build_debruijn(&zoo::max_rule(2, -1, 1)).unwrap();
        assert_eq!(g.num_vertices, 4);
        assert_eq!(g.edges.len(), 8);
        // r = 0 lifts to r = 1
        let id0 = zoo::identity(Alphabet::numeric(2), Neighborhood::interval(0, 0)).unwrap();
        let g0 = build_debruijn(&id0).unwrap();
        assert_eq!((g0.num_vertices, g0.edges.len()), (4, 8));
        for e in &g0.edges {
            assert!(e.fixed);
            assert_eq!(e.label, State((e.from % 2) as u16));
            assert_eq!(e.label, State((e.to / 2) as u16));
        }
    }

    #[test]
    fn census_examples() {
        let id = zoo::identity(Alphabet::numeric(2), Neighborhood::interval(-1, 1)).unwrap();
        assert!(matches!(census_fixed_points(&id).unwrap(), Census::AtLeastTwo { .. }));
        let c0 = zoo::constant(Alphabet::numeric(2), Neighborhood::interval(-1, 1), State(0)).unwrap();
        assert_eq!(census_fixed_points(&c0).unwrap(), Census::ExactlyOneUniform(State(0)));
    }

    #[test]
    fn periodic_witness_found() {
        // 0 ↦ 1 unless both neighbors are 1; 1 ↦ 0 unless both neighbors are 0:
        // only uniform fixed point is none; (01)^∞ is fixed
        let ca = CellularAutomaton::from_fn(Alphabet::numeric(2), Neighborhood::interval(-1, 1), |c| {
            if c[0] != c[1] && c[2] != c[1] {
                c[1]
            } else {
                State(1 - c[1].0)
            }
        })
        .unwrap();
        match census_fixed_points(&ca).unwrap() {
            Census::AtLeastTwo { witnesses } => {
                for w in &witnesses {
                    assert_eq!(&step(&ca, w).unwrap(), w);
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn needs_certificate() {
        assert_eq!(
            decide_nilpotency_1d(&zoo::ulam_1d(), None),
            Err(Error::MissingCertificate)
        );
        assert!(matches!(
            decide_nilpotency_1d(&zoo::ulam_1d(), Some(Certificate::Freezing)).unwrap(),
            Nilpotency::NotNilpotent { .. }
        ));
    }
}
