use crate::ca::{Alphabet, CellularAutomaton, Neighborhood, State};
use crate::error::{Error, Result};
use crate::minsky::machine::MinskyMachine;

/// Mark of one counter component: the unary digit `1` or a wall `#α`, α ∈ {−1, 0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mark {
    One,
    Hash(i8),
}

impl Mark {
    fn index(self) -> usize {
        match self {
            Mark::One => 0,
            Mark::Hash(a) => (a + 2) as usize,
        }
    }

    fn from_index(i: usize) -> Mark {
        if i == 0 {
            Mark::One
        } else {
            Mark::Hash(i as i8 - 2)
        }
    }

    fn name(self) -> &'static str {
        match self {
            Mark::One => "1",
            Mark::Hash(-1) => "#-1",
            Mark::Hash(0) => "#0",
            _ => "#1",
        }
    }
}

/// The states of the compiled automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Blank,
    Wall,
    /// One `(mark, δ)` pair per counter.
    Counter(Vec<(Mark, i8)>),
    /// Machine state with the pending counter updates.
    Control(usize, Vec<i8>),
    Bare(usize),
    Init(usize),
}

fn delta_name(d: i8) -> &'static str {
    match d {
        -1 => "-1",
        0 => "0",
        _ => "+1",
    }
}

#[derive(Clone, Debug)]
pub struct CompiledMinsky {
    pub ca: CellularAutomaton,
    pub machine: MinskyMachine,
    symbols: Vec<Symbol>,
}

fn pow(b: usize, e: usize) -> usize {
    b.pow(e as u32)
}

impl CompiledMinsky {
    pub fn counters(&self) -> usize {
        self.machine.counters()
    }

    /// Length of the `i₀ … i_K` prefix sequence, `K = 3k + 3`.
    pub fn big_k(&self) -> usize {
        3 * self.counters() + 3
    }

    pub fn num_states(&self) -> usize {
        self.symbols.len()
    }

    pub fn decode(&self, s: State) -> &Symbol {
        &self.symbols[s.index()]
    }

    pub fn encode(&self, sym: &Symbol) -> State {
        encode_symbol(&self.machine, sym)
    }


    pub fn blank(&self) -> State {
        State(0)
    }

    pub fn wall(&self) -> State {
        State(1)
    }

    pub fn bare(&self, q: usize) -> State {
        self.encode(&Symbol::Bare(q))
    }

    pub fn halt(&self) -> State {
        self.bare(self.machine.halting())
    }

    pub fn init(&self, n: usize) -> State {
        self.encode(&Symbol::Init(n))
    }
}

fn encode_symbol(m: &MinskyMachine, sym: &Symbol) -> State {
    let k = m.counters();
    let nq = m.num_states();
    let counters = pow(12, k);
    let controls = nq * pow(3, k);
    let id = match sym {
        Symbol::Blank => 0,
        Symbol::Wall => 1,
        Symbol::Counter(c) => 2 + c.iter().fold(0, |acc, &(m, d)| acc * 12 + m.index() * 3 + (d + 1) as usize),
        Symbol::Control(q, d) => 2 + counters + q * pow(3, k) + d.iter().fold(0, |acc, &d| acc * 3 + (d + 1) as usize),
        Symbol::Bare(q) => 2 + counters + controls + q,
        Symbol::Init(n) => 2 + counters + controls + nq + n,
    };
    State(id as u16)
}

/// Every symbol, in state-id order.
fn enumerate_symbols(m: &MinskyMachine) -> Vec<Symbol> {
    let k = m.counters();
    let mut out = vec![Symbol::Blank, Symbol::Wall];
    for idx in 0..pow(12, k) {
        let comps = (0..k)
            .map(|i| {
                let c = idx / pow(12, k - 1 - i) % 12;
                (Mark::from_index(c / 3), (c % 3) as i8 - 1)
            })
            .collect();
        out.push(Symbol::Counter(comps));
    }
    for q in 0..m.num_states() {
        for idx in 0..pow(3, k) {
            out.push(Symbol::Control(q, (0..k).map(|i| (idx / pow(3, k - 1 - i) % 3) as i8 - 1).collect()));
        }
    }
    out.extend((0..m.num_states()).map(Symbol::Bare));
    out.extend((0..=3 * k + 3).map(Symbol::Init));
    out
}

fn symbol_name(m: &MinskyMachine, s: &Symbol) -> String {
    match s {
        Symbol::Blank => "b".into(),
        Symbol::Wall => "w".into(),
        Symbol::Counter(c) => format!(
            "C:{}",
            c.iter()
                .map(|&(mk, d)| format!("{}@{}", mk.name(), delta_name(d)))
                .collect::<Vec<_>>()
                .join("|")
        ),
        Symbol::Control(q, d) => format!(
            "{}@{}",
            m.state_name(*q),
            d.iter().map(|&d| delta_name(d)).collect::<Vec<_>>().join(",")
        ),
        Symbol::Bare(q) => m.state_name(*q).to_string(),
        Symbol::Init(n) => format!("i{n}"),
    }
}

/// α(y, x): the counter-digit update given the left neighbor's mark.
fn alpha((c, d): (Mark, i8), x: Mark) -> (Mark, i8) {
    match c {
        Mark::Hash(a) => (Mark::Hash((a + 1).min(1)), d),
        Mark::One if x == Mark::Hash(d) => (Mark::Hash(-1), d),
        Mark::One => (Mark::One, d),
    }
}

/// β(x, δ): turn the digit under a control head into its new value.
fn beta(x: Mark, d: i8) -> (Mark, i8) {
    match x {
        Mark::Hash(-1) if d == -1 => (Mark::Hash(-1), d),
        Mark::Hash(0) if d < 1 => (Mark::Hash(-1), d),
        _ => (Mark::One, d),
    }
}

/// The local rule on (x, y, z) = (left, center, right); cases are tried in order.
fn local_rule(m: &MinskyMachine, x: &Symbol, y: &Symbol, z: &Symbol) -> Symbol {
    use Symbol::*;
    let k = m.counters();
    let big_k = 3 * k + 3;
    let h = m.halting();
    let all_hash1 = |c: &[(Mark, i8)]| c.iter().all(|&(mk, _)| mk == Mark::Hash(1));
    if *y == Bare(h) || (*z == Bare(h) && matches!(y, Counter(c) if all_hash1(c))) {
        return Bare(h);
    }
    match (x, y) {
        (Control(q, _), Blank) => return Bare(*q),
        (_, Blank) => return Blank,
        (Control(..), _) => return Wall,
        (Wall, Counter(c)) if c.iter().all(|(mk, _)| matches!(mk, Mark::Hash(_))) => {
            return Counter(c.iter().map(|&(mk, d)| alpha((mk, d), Mark::One)).collect());
        }
        (Counter(xc), Counter(yc)) => {
            return Counter(yc.iter().zip(xc).map(|(&yi, &(xm, _))| alpha(yi, xm)).collect());
        }
        (Counter(xc), Bare(q)) => {
            let flags: Vec<bool> = xc.iter().map(|&(mk, _)| mk == Mark::One).collect();
            let (t, d) = m.tau(*q, &flags);
            return Control(t, d.to_vec());
        }
        (Counter(xc), Control(_, d)) => {
            return Counter(xc.iter().zip(d).map(|(&(xm, _), &di)| beta(xm, di)).collect());
        }
        (Init(a), Init(b)) if a == b && *b < big_k => return Init(b + 1),
        _ => {}
    }
    if *y == Init(big_k) && *z == Blank {
        return Control(m.initial(), vec![0; k]);
    }
    if *x == Wall && matches!(y, Control(..)) {
        return Counter(vec![(Mark::Hash(-1), 0); k]);
    }
    Wall
}

/// Compile a counter machine into a one-dimensional radius-1 freezing rule.
pub fn compile_minsky(m: &MinskyMachine) -> Result<CompiledMinsky> {
    let symbols = enumerate_symbols(m);
    let names: Vec<String> = symbols.iter().map(|s| symbol_name(m, s)).collect();
    let alphabet = Alphabet::new(&names)
        .map_err(|e| Error::InvalidMachine(format!("machine state names clash with reserved names: {e}")))?;
    let ca = CellularAutomaton::from_fn(alphabet, Neighborhood::interval(-1, 1), |c| {
        let out = local_rule(m, &symbols[c[0].index()], &symbols[c[1].index()], &symbols[c[2].index()]);
        encode_symbol(m, &out)
    })?;
    Ok(CompiledMinsky {
        ca: ca.with_name("minsky"),
        machine: m.clone(),
        symbols,
    })
}
