//! Abstract tile assembly systems and their freezing-CA translation.
//!
//! Tile-set text format:
//! ```text
//! threshold 2
//! tile S N=sb:2 E=sa:2
//! tile A W=sa:2
//! seed S
//! order S A        # optional min-selection order, default: declaration order
//! ```
//! Sides are N, E, S, W; a side without a glue entry has no glue.

use std::collections::{BTreeSet, VecDeque};

use crate::ca::{Alphabet, CellularAutomaton, Configuration, Neighborhood, Pos, State};
use crate::error::{parse_err, Error, Result};

/// Side order everywhere: N, E, S, W.
pub const SIDES: [&str; 4] = ["N", "E", "S", "W"];
const DIRS: [[i64; 2]; 4] = [[0, 1], [1, 0], [0, -1], [-1, 0]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub name: String,
    pub glues: [Option<(String, u32)>; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtamSystem {
    pub tiles: Vec<Tile>,
    pub seed: usize,
    pub threshold: u32,
    /// Min-selection order (tile indices, smallest first).
    pub order: Vec<usize>,
}

impl AtamSystem {
    pub fn new(tiles: Vec<Tile>, seed: usize, threshold: u32, order: Option<Vec<usize>>) -> Result<Self> {
        if seed >= tiles.len() {
            return Err(Error::InvalidConfiguration("seed is not a tile".into()));
        }
        let order = order.unwrap_or_else(|| (0..tiles.len()).collect());
        let mut sorted = order.clone();
        sorted.sort();
        if sorted != (0..tiles.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidConfiguration("order must list every tile once".into()));
        }
        Ok(AtamSystem {
            tiles,
            seed,
            threshold,
            order,
        })
    }

    /// The empty cell ε (last state id).
    pub fn epsilon(&self) -> State {
        State(self.tiles.len() as u16)
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        let mut names: Vec<String> = self.tiles.iter().map(|t| t.name.clone()).collect();
        names.push("eps".into());
        Alphabet::new(&names)
    }

    /// Bond strength tile `t` would get from the neighbors `m` (N, E, S, W).
    pub fn strength(&self, m: &[State], t: usize) -> u32 {
        let tile = &self.tiles[t];
        let mut total = 0;
        for side in 0..4 {
            let nb = m[side];
            if nb == self.epsilon() {
                continue;
            }
            let opposite = (side + 2) % 4;
            if let (Some((c, s)), Some((c2, s2))) = (&tile.glues[side], &self.tiles[nb.index()].glues[opposite]) {
                if c == c2 && s == s2 {
                    total += s;
                }
            }
        }
        total
    }

    /// `(m, t) ∈ R`.
    pub fn relation(&self, m: &[State], t: State) -> bool {
        t == self.epsilon() || self.strength(m, t.index()) >= self.threshold
    }

    pub fn seed_configuration(&self) -> Configuration {
        Configuration::from_cells(2, self.epsilon(), [(vec![0, 0], State(self.seed as u16))]).expect("2D")
    }

    fn context(&self, c: &Configuration, z: &[i64]) -> [State; 4] {
        let mut m = [self.epsilon(); 4];
        for (slot, d) in m.iter_mut().zip(DIRS) {
            *slot = c.get(&[z[0] + d[0], z[1] + d[1]]);
        }
        m
    }
}

/// All one-tile attachments `c → c′`.
pub fn atam_step(sys: &AtamSystem, c: &Configuration) -> Vec<Configuration> {
    let eps = sys.epsilon();
    let mut frontier: BTreeSet<Pos> = BTreeSet::new();
    for (p, s) in c.overrides() {
        if *s == eps {
            continue;
        }
        for d in DIRS {
            let q = vec![p[0] + d[0], p[1] + d[1]];
            if c.get(&q) == eps {
                frontier.insert(q);
            }
        }
    }
    let mut out = Vec::new();
    for z in frontier {
        let m = sys.context(c, &z);
        for &t in &sys.order {
            if sys.relation(&m, State(t as u16)) {
                let mut next = c.clone();
                next.set(z.clone(), State(t as u16)).expect("2D");
                out.push(next);
            }
        }
    }
    out
}

/// Every terminal assembly reachable from the seed (exhaustive closure).
pub fn terminal_assemblies(sys: &AtamSystem, max_assemblies: usize) -> Result<Vec<Configuration>> {
    let start = sys.seed_configuration();
    let mut seen: BTreeSet<Vec<(Pos, State)>> = BTreeSet::new();
    let key = |c: &Configuration| c.overrides().iter().map(|(p, s)| (p.clone(), *s)).collect::<Vec<_>>();
    seen.insert(key(&start));
    let mut queue = VecDeque::from([start]);
    let mut terminal = Vec::new();
    while let Some(c) = queue.pop_front() {
        let next = atam_step(sys, &c);
        if next.is_empty() {
            terminal.push(c);
            continue;
        }
        for n in next {
            if seen.insert(key(&n)) {
                if seen.len() > max_assemblies {
                    return Err(Error::BudgetExhausted(max_assemblies as u64));
                }
                queue.push_back(n);
            }
        }
    }
    Ok(terminal)
}

/// The freezing CA F_R: empty cells take the order-minimal attachable tile.
pub fn atam_to_ca(sys: &AtamSystem) -> Result<CellularAutomaton> {
    let nb = Neighborhood::new(
        2,
        std::iter::once(vec![0, 0]).chain(DIRS.iter().map(|d| d.to_vec())).collect(),
    )?;
    let eps = sys.epsilon();
    CellularAutomaton::from_fn(sys.alphabet()?, nb, |c| {
        if c[0] != eps {
            return c[0];
        }
        sys.order
            .iter()
            .map(|&t| State(t as u16))
            .find(|&t| sys.relation(&c[1..], t))
            .unwrap_or(eps)
    })
}

fn glue(color: &str, strength: u32) -> Option<(String, u32)> {
    Some((color.to_string(), strength))
}

/// A six-tile directed system assembling a 3×2 rectangle, with cooperative
/// (two strength-1 bonds) attachments on the top row.
pub fn toy_directed_system() -> AtamSystem {
    let t = |name: &str, n, e, s, w| Tile {
        name: name.to_string(),
        glues: [n, e, s, w],
    };
    let tiles = vec![
        t("S", glue("sb", 2), glue("sa", 2), None, None),
        t("A1", glue("a1", 1), glue("a", 2), None, glue("sa", 2)),
        t("A2", glue("a2", 1), None, None, glue("a", 2)),
        t("B", None, glue("b", 1), glue("sb", 2), None),
        t("C1", None, glue("c", 1), glue("a1", 1), glue("b", 1)),
        t("C2", None, None, glue("a2", 1), glue("c", 1)),
    ];
    AtamSystem::new(tiles, 0, 2, None).expect("well-formed")
}

pub fn parse_tileset(text: &str) -> Result<AtamSystem> {
    let mut tiles: Vec<Tile> = Vec::new();
    let mut threshold = None;
    let mut seed_name = None;
    let mut order_names: Option<(usize, Vec<String>)> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "threshold" => {
                threshold = Some(words.get(1).and_then(|w| w.parse().ok()).ok_or_else(|| parse_err(ln, "bad threshold"))?)
            }
            "seed" => seed_name = Some((ln, words.get(1).ok_or_else(|| parse_err(ln, "seed needs a name"))?.to_string())),
            "order" => order_names = Some((ln, words[1..].iter().map(|s| s.to_string()).collect())),
            "tile" => {
                let name = words.get(1).ok_or_else(|| parse_err(ln, "tile needs a name"))?.to_string();
                let mut glues: [Option<(String, u32)>; 4] = Default::default();
                for spec in &words[2..] {
                    let (side, rest) = spec.split_once('=').ok_or_else(|| parse_err(ln, format!("bad glue {spec:?}")))?;
                    let (color, strength) = rest.split_once(':').ok_or_else(|| parse_err(ln, format!("bad glue {spec:?}")))?;
                    let strength: u32 = strength.parse().map_err(|_| parse_err(ln, format!("bad strength in {spec:?}")))?;
                    let idx = SIDES.iter().position(|s| *s == side).ok_or_else(|| parse_err(ln, format!("bad side {side}")))?;
                    glues[idx] = Some((color.to_string(), strength));
                }
                if tiles.iter().any(|t| t.name == name) || name == "eps" {
                    return Err(parse_err(ln, format!("duplicate or reserved tile name {name}")));
                }
                tiles.push(Tile { name, glues });
            }
            other => return Err(parse_err(ln, format!("unknown directive {other:?}"))),
        }
    }
    let index = |name: &str, ln: usize| {
        tiles
            .iter()
            .position(|t| t.name == name)
            .ok_or_else(|| parse_err(ln, format!("unknown tile {name}")))
    };
    let (sln, sname) = seed_name.ok_or_else(|| parse_err(0, "missing seed line"))?;
    let seed = index(&sname, sln)?;
    let order = match order_names {
        Some((ln, names)) => Some(names.iter().map(|n| index(n, ln)).collect::<Result<Vec<_>>>()?),
        None => None,
    };
    AtamSystem::new(tiles, seed, threshold.ok_or_else(|| parse_err(0, "missing threshold"))?, order)
}

pub fn emit_tileset(sys: &AtamSystem) -> String {
    let mut out = format!("threshold {}\n", sys.threshold);
    for t in &sys.tiles {
        out.push_str("tile ");
        out.push_str(&t.name);
        for (side, g) in SIDES.iter().zip(&t.glues) {
            if let Some((c, s)) = g {
                out.push_str(&format!(" {side}={c}:{s}"));
            }
        }
        out.push('\n');
    }
    out.push_str(&format!("seed {}\n", sys.tiles[sys.seed].name));
    let names: Vec<&str> = sys.order.iter().map(|&i| sys.tiles[i].name.as_str()).collect();
    out.push_str(&format!("order {}\n", names.join(" ")));
    out
}
