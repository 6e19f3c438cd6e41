use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

/// A deterministic k-counter machine. `tau[q·2^k + flags]` is `(q′, deltas)`,
/// where bit `k−1−i` of `flags` says counter i is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinskyMachine {
    states: Vec<String>,
    q0: usize,
    h: usize,
    k: usize,
    tau: Vec<(usize, Vec<i8>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinskyConfig {
    pub state: usize,
    pub counters: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunResult {
    Halted(usize),
    Running(MinskyConfig),
}

/// One transition: in `state` with positivity `flags`, go to `target` applying `deltas`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub state: String,
    pub flags: Vec<bool>,
    pub target: String,
    pub deltas: Vec<i8>,
}

impl MinskyMachine {
    /// Rules for the halting state may be omitted; any given must be `(h, 0…0)`.
    pub fn new(states: Vec<String>, q0: &str, h: &str, k: usize, rules: &[Rule]) -> Result<Self> {
        if k == 0 || k > 4 {
            return Err(Error::InvalidMachine("counter count must be in 1..=4".into()));
        }
        let mut ids = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || "@:|".contains(c)) {
                return Err(Error::InvalidMachine(format!("bad state name {s:?}")));
            }
            if ids.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidMachine(format!("duplicate state {s}")));
            }
        }
        let id = |s: &str| ids.get(s).copied().ok_or_else(|| Error::InvalidMachine(format!("unknown state {s}")));
        let q0 = id(q0)?;
        let h = id(h)?;
        let width = 1usize << k;
        let mut tau: Vec<Option<(usize, Vec<i8>)>> = vec![None; states.len() * width];
        for r in rules {
            if r.flags.len() != k || r.deltas.len() != k {
                return Err(Error::InvalidMachine(format!("rule for {} needs {k} flags and deltas", r.state)));
            }
            if r.deltas.iter().any(|d| !(-1..=1).contains(d)) {
                return Err(Error::InvalidMachine("deltas must be in {-1,0,1}".into()));
            }
            let q = id(&r.state)?;
            let slot = q * width + flags_index(&r.flags);
            let val = (id(&r.target)?, r.deltas.clone());
            if q == h && val != (h, vec![0; k]) {
                return Err(Error::InvalidMachine("the halting state must map to itself with no counter change".into()));
            }
            if let Some(prev) = &tau[slot] {
                if *prev != val {
                    return Err(Error::InvalidMachine(format!("conflicting rules for {}", r.state)));
                }
            }
            tau[slot] = Some(val);
        }
        for f in 0..width {
            tau[h * width + f].get_or_insert((h, vec![0; k]));
        }
        let mut out = Vec::with_capacity(tau.len());
        for (slot, t) in tau.into_iter().enumerate() {
            match t {
                Some(v) => out.push(v),
                None => {
                    return Err(Error::InvalidMachine(format!(
                        "no rule for state {} with flags {}",
                        states[slot / width],
                        flags_string(slot % width, k)
                    )))
                }
            }
        }
        Ok(MinskyMachine {
            states,
            q0,
            h,
            k,
            tau: out,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn initial(&self) -> usize {
        self.q0
    }

    pub fn halting(&self) -> usize {
        self.h
    }

    pub fn counters(&self) -> usize {
        self.k
    }

    /// τ(q, flags) with flags as positivity bits (true = positive).
    pub fn tau(&self, q: usize, flags: &[bool]) -> (usize, &[i8]) {
        let (t, d) = &self.tau[q * (1 << self.k) + flags_index(flags)];
        (*t, d)
    }

    pub fn start(&self, chis: &[u64]) -> MinskyConfig {
        MinskyConfig {
            state: self.q0,
            counters: chis.to_vec(),
        }
    }

    pub fn step(&self, cfg: &MinskyConfig) -> MinskyConfig {
        let flags: Vec<bool> = cfg.counters.iter().map(|&c| c > 0).collect();
        let (q, d) = self.tau(cfg.state, &flags);
        MinskyConfig {
            state: q,
            counters: cfg
                .counters
                .iter()
                .zip(d)
                .map(|(&c, &d)| (c as i64 + d as i64).max(0) as u64)
                .collect(),
        }
    }

    pub fn run(&self, cfg: &MinskyConfig, t_max: usize) -> RunResult {
        let mut cur = cfg.clone();
        for t in 0..=t_max {
            if cur.state == self.h {
                return RunResult::Halted(t);
            }
            if t < t_max {
                cur = self.step(&cur);
            }
        }
        RunResult::Running(cur)
    }

    /// `[cfg, M(cfg), …, M^steps(cfg)]`.
    pub fn trajectory(&self, cfg: &MinskyConfig, steps: usize) -> Vec<MinskyConfig> {
        let mut out = vec![cfg.clone()];
        for _ in 0..steps {
            let next = self.step(out.last().expect("nonempty"));
            out.push(next);
        }
        out
    }

    /// +1, −1, then count down to zero and halt.
    pub fn blip() -> Self {
        let names = ["q0", "q1", "q2", "h"].map(String::from).to_vec();
        let r = |s: &str, f: bool, t: &str, d: i8| Rule {
            state: s.into(),
            flags: vec![f],
            target: t.into(),
            deltas: vec![d],
        };
        let rules = [
            r("q0", false, "q1", 1),
            r("q0", true, "q1", 1),
            r("q1", false, "q2", -1),
            r("q1", true, "q2", -1),
            r("q2", true, "q2", -1),
            r("q2", false, "h", 0),
        ];
        MinskyMachine::new(names, "q0", "h", 1, &rules).expect("well-formed")
    }

    /// Increment `n` times, then decrement back to zero and halt.
    pub fn up_down(n: usize) -> Self {
        let mut names: Vec<String> = (0..=n).map(|i| format!("u{i}")).collect();
        names.push("down".into());
        names.push("h".into());
        let mut rules = Vec::new();
        for i in 0..n {
            for f in [false, true] {
                rules.push(Rule {
                    state: format!("u{i}"),
                    flags: vec![f],
                    target: format!("u{}", i + 1),
                    deltas: vec![1],
                });
            }
        }
        for f in [false, true] {
            rules.push(Rule {
                state: format!("u{n}"),
                flags: vec![f],
                target: "down".into(),
                deltas: vec![0],
            });
        }
        rules.push(Rule {
            state: "down".into(),
            flags: vec![true],
            target: "down".into(),
            deltas: vec![-1],
        });
        rules.push(Rule {
            state: "down".into(),
            flags: vec![false],
            target: "h".into(),
            deltas: vec![0],
        });
        MinskyMachine::new(names, "u0", "h", 1, &rules).expect("well-formed")
    }

    /// Decrement the input to zero, then halt.
    pub fn countdown() -> Self {
        let names = ["run", "h"].map(String::from).to_vec();
        let rules = [
            Rule {
                state: "run".into(),
                flags: vec![true],
                target: "run".into(),
                deltas: vec![-1],
            },
            Rule {
                state: "run".into(),
                flags: vec![false],
                target: "h".into(),
                deltas: vec![0],
            },
        ];
        MinskyMachine::new(names, "run", "h", 1, &rules).expect("well-formed")
    }

    /// Increments forever.
    pub fn forever_increment() -> Self {
        let names = ["inc", "h"].map(String::from).to_vec();
        let rules: Vec<Rule> = [false, true]
            .iter()
            .map(|&f| Rule {
                state: "inc".into(),
                flags: vec![f],
                target: "inc".into(),
                deltas: vec![1],
            })
            .collect();
        MinskyMachine::new(names, "inc", "h", 1, &rules).expect("well-formed")
    }

    /// A single state that loops without touching the counter.
    pub fn idle_loop() -> Self {
        let names = ["spin", "h"].map(String::from).to_vec();
        let rules: Vec<Rule> = [false, true]
            .iter()
            .map(|&f| Rule {
                state: "spin".into(),
                flags: vec![f],
                target: "spin".into(),
                deltas: vec![0],
            })
            .collect();
        MinskyMachine::new(names, "spin", "h", 1, &rules).expect("well-formed")
    }

    /// Two counters: move counter 1 into counter 2, then halt.
    pub fn transfer() -> Self {
        let names = ["mv", "h"].map(String::from).to_vec();
        let mut rules = Vec::new();
        for f2 in [false, true] {
            rules.push(Rule {
                state: "mv".into(),
                flags: vec![true, f2],
                target: "mv".into(),
                deltas: vec![-1, 1],
            });
            rules.push(Rule {
                state: "mv".into(),
                flags: vec![false, f2],
                target: "h".into(),
                deltas: vec![0, 0],
            });
        }
        MinskyMachine::new(names, "mv", "h", 2, &rules).expect("well-formed")
    }

    /// Starts halted.
    pub fn already_halted() -> Self {
        MinskyMachine::new(vec!["h".into()], "h", "h", 1, &[]).expect("well-formed")
    }

    /// Rules in file order (every state, every flag combination).
    pub fn rules(&self) -> Vec<Rule> {
        let width = 1 << self.k;
        let mut out = Vec::new();
        for q in 0..self.states.len() {
            for f in 0..width {
                let (t, d) = &self.tau[q * width + f];
                out.push(Rule {
                    state: self.states[q].clone(),
                    flags: (0..self.k).map(|i| f >> (self.k - 1 - i) & 1 == 1).collect(),
                    target: self.states[*t].clone(),
                    deltas: d.clone(),
                });
            }
        }
        out
    }
}

fn flags_index(flags: &[bool]) -> usize {
    flags.iter().fold(0, |acc, &f| acc * 2 + usize::from(f))
}

fn flags_string(idx: usize, k: usize) -> String {
    (0..k).map(|i| if idx >> (k - 1 - i) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Machine file:
/// ```text
/// states q0 q1 q2 h
/// initial q0
/// halting h
/// counters 1
/// rule q0 0 -> q1 +1
/// ```
/// Zero-flags are one character per counter, `1` meaning the counter is positive.
pub fn parse_machine(text: &str) -> Result<MinskyMachine> {
    let mut states = None;
    let mut initial = None;
    let mut halting = None;
    let mut k = None;
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let w: Vec<&str> = line.split_whitespace().collect();
        match w[0] {
            "states" => states = Some(w[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>()),
            "initial" => initial = Some(w.get(1).ok_or_else(|| parse_err(ln, "initial needs a state"))?.to_string()),
            "halting" => halting = Some(w.get(1).ok_or_else(|| parse_err(ln, "halting needs a state"))?.to_string()),
            "counters" => k = Some(w.get(1).and_then(|x| x.parse::<usize>().ok()).ok_or_else(|| parse_err(ln, "bad counter count"))?),
            "rule" => {
                let k = k.ok_or_else(|| parse_err(ln, "rule before counters"))?;
                if w.len() != 5 + k || w[3] != "->" {
                    return Err(parse_err(ln, format!("rule needs: state flags -> target and {k} deltas")));
                }
                let flags: Vec<bool> = w[2]
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(parse_err(ln, format!("bad flag {c:?}"))),
                    })
                    .collect::<Result<_>>()?;
                let deltas = w[5..]
                    .iter()
                    .map(|d| match *d {
                        "-1" => Ok(-1),
                        "0" => Ok(0),
                        "+1" | "1" => Ok(1),
                        _ => Err(parse_err(ln, format!("bad delta {d:?}"))),
                    })
                    .collect::<Result<Vec<i8>>>()?;
                rules.push((
                    ln,
                    Rule {
                        state: w[1].into(),
                        flags,
                        target: w[4].into(),
                        deltas,
                    },
                ));
            }
            other => return Err(parse_err(ln, format!("unknown directive {other:?}"))),
        }
    }
    let states = states.ok_or_else(|| parse_err(0, "missing states line"))?;
    let initial = initial.ok_or_else(|| parse_err(0, "missing initial line"))?;
    let halting = halting.ok_or_else(|| parse_err(0, "missing halting line"))?;
    let k = k.ok_or_else(|| parse_err(0, "missing counters line"))?;
    let last = rules.last().map_or(0, |(ln, _)| *ln);
    let rules: Vec<Rule> = rules.into_iter().map(|(_, r)| r).collect();
    MinskyMachine::new(states, &initial, &halting, k, &rules).map_err(|e| parse_err(last, e.to_string()))
}

pub fn emit_machine(m: &MinskyMachine) -> String {
    let mut out = String::new();
    writeln!(out, "states {}", m.states.join(" ")).unwrap();
    writeln!(out, "initial {}", m.states[m.q0]).unwrap();
    writeln!(out, "halting {}", m.states[m.h]).unwrap();
    writeln!(out, "counters {}", m.k).unwrap();
    for r in m.rules() {
        let flags: String = r.flags.iter().map(|&f| if f { '1' } else { '0' }).collect();
        let deltas: Vec<&str> = r
            .deltas
            .iter()
            .map(|d| match d {
                -1 => "-1",
                0 => "0",
                _ => "+1",
            })
            .collect();
        writeln!(out, "rule {} {flags} -> {} {}", r.state, r.target, deltas.join(" ")).unwrap();
    }
    out
}
