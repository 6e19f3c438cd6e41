//! The `fca` command line: one verb per capability, `key: value` reports on
//! stdout, artifacts in the output directory.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ca::format::{emit_configuration, emit_pattern, emit_rule, parse_configuration, parse_pattern, parse_rule};
use crate::ca::render::{orbit_pgm, snapshot_pgm};
use crate::ca::{
    cyreach_bounded, limit_window, simulate, Alphabet, CellularAutomaton, Configuration, Neighborhood, Pattern, Reach,
    ReachQuery, State,
};
use crate::classify::{
    census_fixed_points, check_freezing, decide_nilpotency_1d, is_spreading, limit_segment_with_counts, Census,
    Certificate, FreezingOrder, Nilpotency,
};
use crate::commproto::{
    bits_csv, build_highcc_rule, ceil_log2, check_fooling_set, highcc_candidates, run_diffreport_protocol_audited,
    run_trivial_protocol, FoolingOutcome, ProtocolTranscript, SplitInstance, Tag,
};
use crate::error::{Error, Result};
use crate::minsky::{
    canonical_configuration, compile_minsky, halting_witness, max_change_witness, parse_machine, simulate_and_read,
    ColumnOutcome, HaltingWitness, MinskyMachine, RunResult,
};
use crate::predict::{column_search, predict_naive, predict_oneway_stream_metered, PredictionInstance, DEFAULT_BUDGET};
use crate::szone::{build_erasing_variant, build_szone, center_changes, make_lambda, verify_zone_timing};
use crate::zoo;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "FCA_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "fca", version, about = "Freezing cellular automata toolkit")]
struct Cli {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Artifact directory (default: $FCA_OUT_DIR, else ./fca-out).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Run a rule for some steps and write the final configuration.
    Simulate(SimulateArgs),
    /// Write a PGM space-time diagram (1D) or snapshot (2D).
    Render(RenderArgs),
    /// Freezing check, fixed-point census, nilpotency, spreading states
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Decide F^t(u)_0 with the naive, streaming or column-search predictor.
    Predict(PredictArgs),
    /// Compile a counter machine into a freezing 1D rule.
    Compile(CompileArgs),
    /// Shrinking-zone construction: build, seed and verify
    #[command(subcommand)]
    Szone(SzoneCmd),
    /// Run a two-party protocol and write its bit counts as CSV.
    Commcc(CommccArgs),
    /// Bounded cylinder reachability.
    Reach(ReachArgs),
    /// Limit configurations of freezing rules
    #[command(subcommand)]
    Limit(LimitCmd),
    /// Built-in rules
    #[command(subcommand)]
    Zoo(ZooCmd),
    /// End-to-end checks of the Minsky compiler and the fooling set
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Debug)]
struct RuleArg {
    /// Zoo name or path to a rule file.
    #[arg(long)]
    rule: String,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    rule: RuleArg,
    /// Configuration file (default: uniform first state).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value = "simulate.cfg")]
    out: String,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[command(flatten)]
    rule: RuleArg,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 16)]
    steps: usize,
    /// Cell range `lo:hi` (x range in 2D).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-16:16")]
    x: (i64, i64),
    /// y range for 2D snapshots.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-16:16")]
    y: (i64, i64),
    #[arg(long, default_value = "render.pgm")]
    out: String,
}

#[derive(Subcommand, Debug)]
enum ClassifyCmd {
    /// Is →_F acyclic?
    Freezing(RuleArg),
    /// Count fixed points of a 1D radius-1 rule.
    Census(RuleArg),
    /// Decide nilpotency of a 1D freezing (or assumed convergent) rule.
    Nilpotency {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        assume_convergent: bool,
    },
    /// Is a state spreading?
    Spreading {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        state: String,
    },
}

#[derive(Args, Debug)]
struct PredictArgs {
    #[command(flatten)]
    rule: RuleArg,
    /// Pattern file of radius r·t; omit to draw random instances.
    #[arg(long)]
    pattern: Option<PathBuf>,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value = "naive")]
    method: String,
    /// Change bound (default |Q| − 1).
    #[arg(long)]
    k: Option<usize>,
    /// Number of random instances checked against the naive predictor.
    #[arg(long, default_value_t = 0)]
    random: usize,
}

#[derive(Args, Debug)]
struct CompileArgs {
    /// Builtin machine name or path to a machine file.
    #[arg(long)]
    machine: String,
    #[arg(long, default_value = "minsky.rule")]
    out: String,
    /// Also write the canonical configuration for these counter values.
    #[arg(long, value_delimiter = ',')]
    input: Option<Vec<u64>>,
}

#[derive(Subcommand, Debug)]
enum SzoneCmd {
    /// Build the shrinking-zone rule over a radius-1 inner rule.
    Build {
        #[command(flatten)]
        rule: RuleArg,
        /// Spreading state for the erasing variant.
        #[arg(long)]
        spreading: Option<String>,
        #[arg(long, default_value = "szone.rule")]
        out: String,
    },
    /// Write the configuration λ_{n,c,c′}.
    Lambda {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        config2: Option<PathBuf>,
        #[arg(long, default_value = "lambda.cfg")]
        out: String,
    },
    /// Check the shrinking-zone simulation claim for all t ≤ n ≤ n-max.
    Verify {
        /// Inner rule; omit to draw random radius-1 rules.
        #[arg(long)]
        rule: Option<String>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        rules: usize,
        #[arg(long, default_value_t = 3)]
        states: usize,
    },
}

#[derive(Args, Debug)]
struct CommccArgs {
    #[command(flatten)]
    rule: RuleArg,
    #[arg(long, default_value = "diffreport")]
    protocol: String,
    #[arg(long, value_delimiter = ',', default_value = "8")]
    n: Vec<usize>,
    /// Random instances per n.
    #[arg(long, default_value_t = 10)]
    instances: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "commcc.csv")]
    out: String,
}

#[derive(Args, Debug)]
struct ReachArgs {
    #[command(flatten)]
    rule: RuleArg,
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
    #[arg(long, default_value_t = 16)]
    t_max: usize,
    #[arg(long, default_value_t = 1)]
    extension: usize,
    /// Background states (default: all).
    #[arg(long, value_delimiter = ',')]
    background: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
enum LimitCmd {
    /// Limit states of B(radius) by simulation, with their guarantees.
    Window {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long, default_value_t = 200)]
        horizon: usize,
        #[arg(long, default_value_t = 50)]
        confirm: usize,
    },
    /// Limit on [z, z′] from exact change counts.
    Segment {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        z: i64,
        #[arg(long, allow_hyphen_values = true)]
        z2: i64,
        /// λ(z),λ(z′); measured over `--horizon` steps when omitted.
        #[arg(long, value_delimiter = ',')]
        counts: Option<Vec<usize>>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 2000)]
        horizon: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ZooCmd {
    /// Names of all built-in rules.
    List,
    /// Write a zoo rule as a rule file.
    #[command(visible_alias = "emit")]
    Show {
        name: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Re-check the expected class of every freezing entry.
    Check,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Column readings against the machine trajectory, halting and change witnesses.
    Minsky {
        #[arg(long)]
        machine: String,
        #[arg(long, value_delimiter = ',')]
        input: Option<Vec<u64>>,
        /// Machine steps to compare (default: until halting, at most 30).
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 2000)]
        t_max: usize,
    },
    /// Fooling set for the mirror-test rule.
    Fooling {
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo = a.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let hi = b.trim().parse::<i64>().map_err(|e| e.to_string())?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    seed: u64,
    out_dir: PathBuf,
    failed: bool,
}

impl Ctx<'_> {
    fn kv(&mut self, key: &str, value: impl Display) -> Result<()> {
        writeln!(self.out, "{key}: {value}")?;
        Ok(())
    }

    fn check(&mut self, key: &str, ok: bool) -> Result<()> {
        self.failed |= !ok;
        self.kv(key, if ok { "pass" } else { "FAIL" })
    }

    /// Write an artifact, with a `# seed:` header for the commented text formats.
    fn artifact(&mut self, name: &str, body: &str, header: bool) -> Result<()> {
        std::fs::create_dir_all(&self.out_dir)?;
        let path = self.out_dir.join(name);
        let text = if header { format!("# seed: {}\n{body}", self.seed) } else { body.to_string() };
        std::fs::write(&path, text)?;
        self.kv("artifact", path.display())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A zoo name, or a rule file whose `builtin` lines resolve through the zoo.
pub fn load_rule(spec: &str) -> Result<CellularAutomaton> {
    let path = Path::new(spec);
    if path.is_file() {
        parse_rule(&read(path)?, &|name| zoo::build(name).map(|e| e.ca))
    } else {
        zoo::build(spec).map(|e| e.ca)
    }
}

/// A builtin machine (`blip`, `up-down-N`, `countdown`, `forever-increment`,
/// `idle-loop`, `transfer`, `already-halted`) or a machine file.
pub fn load_machine(spec: &str) -> Result<MinskyMachine> {
    let path = Path::new(spec);
    if path.is_file() {
        return parse_machine(&read(path)?);
    }
    Ok(match spec {
        "blip" => MinskyMachine::blip(),
        "countdown" => MinskyMachine::countdown(),
        "forever-increment" => MinskyMachine::forever_increment(),
        "idle-loop" => MinskyMachine::idle_loop(),
        "transfer" => MinskyMachine::transfer(),
        "already-halted" => MinskyMachine::already_halted(),
        _ => match spec.strip_prefix("up-down-").and_then(|n| n.parse().ok()) {
            Some(n) => MinskyMachine::up_down(n),
            None => return Err(Error::InvalidMachine(format!("no machine file or builtin named {spec:?}"))),
        },
    })
}

fn load_config(path: Option<&Path>, ca: &CellularAutomaton) -> Result<Configuration> {
    match path {
        Some(p) => parse_configuration(&read(p)?, ca.alphabet(), ca.dim()),
        None => Ok(Configuration::uniform(ca.dim(), State(0))),
    }
}

fn state_list(alphabet: &Alphabet, states: &[State]) -> String {
    states.iter().map(|&s| alphabet.name(s)).collect::<Vec<_>>().join(" ")
}

fn random_pattern(rng: &mut impl Rng, dim: usize, radius: usize, q: usize) -> Pattern {
    Pattern::from_fn(dim, radius, |_| State(rng.gen_range(0..q) as u16))
}

fn default_k(ca: &CellularAutomaton, k: Option<usize>) -> Result<usize> {
    match k {
        Some(k) => Ok(k),
        None if check_freezing(ca).is_freezing() => Ok(ca.num_states() - 1),
        None => Err(Error::Precondition("rule is not freezing; pass --k".into())),
    }
}

/// Run the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("fca-out"));
    let mut ctx = Ctx {
        out,
        seed: cli.seed,
        out_dir,
        failed: false,
    };
    match dispatch(&mut ctx, &cli.verb) {
        Ok(()) if ctx.failed => 1,
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(ctx.out, "error: {e}");
            2
        }
    }
}

fn dispatch(ctx: &mut Ctx, verb: &Verb) -> Result<()> {
    ctx.kv("seed", ctx.seed)?;
    match verb {
        Verb::Simulate(a) => simulate_verb(ctx, a),
        Verb::Render(a) => render_verb(ctx, a),
        Verb::Classify(c) => classify_verb(ctx, c),
        Verb::Predict(a) => predict_verb(ctx, a),
        Verb::Compile(a) => compile_verb(ctx, a),
        Verb::Szone(c) => szone_verb(ctx, c),
        Verb::Commcc(a) => commcc_verb(ctx, a),
        Verb::Reach(a) => reach_verb(ctx, a),
        Verb::Limit(c) => limit_verb(ctx, c),
        Verb::Zoo(c) => zoo_verb(ctx, c),
        Verb::Verify(c) => verify_verb(ctx, c),
    }
}

fn simulate_verb(ctx: &mut Ctx, a: &SimulateArgs) -> Result<()> {
    ctx.kv("verb", "simulate")?;
    let ca = load_rule(&a.rule.rule)?;
    let c = load_config(a.config.as_deref(), &ca)?;
    let orbit = simulate(&ca, &c, a.steps)?;
    let last = orbit.last().expect("nonempty orbit");
    ctx.kv("steps", a.steps)?;
    ctx.kv("support", last.overrides().len())?;
    ctx.artifact(&a.out, &emit_configuration(last, ca.alphabet()), true)
}

fn render_verb(ctx: &mut Ctx, a: &RenderArgs) -> Result<()> {
    ctx.kv("verb", "render")?;
    let ca = load_rule(&a.rule.rule)?;
    let c = load_config(a.config.as_deref(), &ca)?;
    let orbit = simulate(&ca, &c, a.steps)?;
    let pgm = match ca.dim() {
        1 => orbit_pgm(&orbit, a.x.0, a.x.1, ca.num_states()),
        2 => snapshot_pgm(orbit.last().expect("nonempty"), a.x, a.y, ca.num_states()),
        d => return Err(Error::Precondition(format!("cannot render dimension {d}"))),
    };
    ctx.kv("steps", a.steps)?;
    ctx.artifact(&a.out, &pgm, false)
}

fn classify_verb(ctx: &mut Ctx, c: &ClassifyCmd) -> Result<()> {
    ctx.kv("verb", "classify")?;
    match c {
        ClassifyCmd::Freezing(r) => {
            let ca = load_rule(&r.rule)?;
            match check_freezing(&ca) {
                FreezingOrder::Freezing { arcs, order } => {
                    ctx.kv("freezing", "yes")?;
                    ctx.kv("arcs", arcs.len())?;
                    ctx.kv("order", state_list(ca.alphabet(), &order.linear_extension()))?;
                }
                FreezingOrder::NotFreezing { cycle } => {
                    ctx.kv("freezing", "no")?;
                    ctx.kv("cycle", state_list(ca.alphabet(), &cycle))?;
                }
            }
        }
        ClassifyCmd::Census(r) => {
            let ca = load_rule(&r.rule)?;
            match census_fixed_points(&ca)? {
                Census::AtLeastTwo { witnesses } => {
                    ctx.kv("fixed_points", "at-least-two")?;
                    for (i, w) in witnesses.iter().enumerate() {
                        ctx.artifact(&format!("fixed-point-{i}.cfg"), &emit_configuration(w, ca.alphabet()), true)?;
                    }
                }
                Census::ExactlyOneUniform(q) => {
                    ctx.kv("fixed_points", "exactly-one")?;
                    ctx.kv("state", ca.alphabet().name(q))?;
                }
                Census::NoneFound => ctx.kv("fixed_points", "none")?,
            }
        }
        ClassifyCmd::Nilpotency { rule, assume_convergent } => {
            let ca = load_rule(&rule.rule)?;
            let cert = if *assume_convergent { Certificate::AssumedConvergent } else { Certificate::Freezing };
            match decide_nilpotency_1d(&ca, Some(cert))? {
                Nilpotency::Nilpotent => ctx.kv("nilpotent", "yes")?,
                Nilpotency::NotNilpotent { witnesses } => {
                    ctx.kv("nilpotent", "no")?;
                    for (i, w) in witnesses.iter().enumerate() {
                        ctx.artifact(&format!("fixed-point-{i}.cfg"), &emit_configuration(w, ca.alphabet()), true)?;
                    }
                }
            }
        }
        ClassifyCmd::Spreading { rule, state } => {
            let ca = load_rule(&rule.rule)?;
            let s = ca.alphabet().id(state)?;
            ctx.kv("spreading", if is_spreading(&ca, s) { "yes" } else { "no" })?;
        }
    }
    Ok(())
}

fn predict_one(ca: &CellularAutomaton, inst: &PredictionInstance, method: &str, k: usize) -> Result<(State, String)> {
    Ok(match method {
        "naive" => (predict_naive(ca, inst)?, String::new()),
        "stream" => {
            let p = predict_oneway_stream_metered(ca, inst, k)?;
            (p.state, format!("peak_live_columns={} max_segments={}", p.peak_live_columns, p.max_segments))
        }
        "search" => {
            let s = column_search(ca, inst, k, DEFAULT_BUDGET)?;
            (s.state, format!("nodes={}", s.nodes))
        }
        other => return Err(Error::Precondition(format!("unknown method {other:?} (naive|stream|search)"))),
    })
}

fn predict_verb(ctx: &mut Ctx, a: &PredictArgs) -> Result<()> {
    ctx.kv("verb", "predict")?;
    let ca = load_rule(&a.rule.rule)?;
    let k = if a.method == "naive" { 0 } else { default_k(&ca, a.k)? };
    ctx.kv("method", &a.method)?;
    ctx.kv("t", a.t)?;
    if let Some(p) = &a.pattern {
        let u = parse_pattern(&read(p)?, ca.alphabet())?;
        let inst = PredictionInstance::new(&ca, a.t, u, None)?;
        let (s, meter) = predict_one(&ca, &inst, &a.method, k)?;
        ctx.kv("state", ca.alphabet().name(s))?;
        if !meter.is_empty() {
            ctx.kv("meter", meter)?;
        }
    }
    if a.random > 0 {
        let mut rng = ctx.rng();
        let mut agree = 0;
        for _ in 0..a.random {
            let u = random_pattern(&mut rng, ca.dim(), ca.radius() * a.t, ca.num_states());
            let inst = PredictionInstance::new(&ca, a.t, u, None)?;
            let (s, _) = predict_one(&ca, &inst, &a.method, k)?;
            agree += usize::from(s == predict_naive(&ca, &inst)?);
        }
        ctx.kv("random_instances", a.random)?;
        ctx.kv("agree_with_naive", agree)?;
        ctx.check("agreement", agree == a.random)?;
    }
    Ok(())
}

fn compile_verb(ctx: &mut Ctx, a: &CompileArgs) -> Result<()> {
    ctx.kv("verb", "compile")?;
    let m = load_machine(&a.machine)?;
    let cm = compile_minsky(&m)?;
    ctx.kv("counters", cm.counters())?;
    ctx.kv("machine_states", m.num_states())?;
    ctx.kv("states", cm.num_states())?;
    ctx.kv("K", cm.big_k())?;
    ctx.kv("freezing", if check_freezing(&cm.ca).is_freezing() { "yes" } else { "no" })?;
    ctx.artifact(&a.out, &emit_rule(&cm.ca), true)?;
    if let Some(chis) = &a.input {
        let c = canonical_configuration(&cm, chis)?;
        ctx.artifact("minsky-input.cfg", &emit_configuration(&c, cm.ca.alphabet()), true)?;
    }
    Ok(())
}

fn szone_verb(ctx: &mut Ctx, c: &SzoneCmd) -> Result<()> {
    ctx.kv("verb", "szone")?;
    match c {
        SzoneCmd::Build { rule, spreading, out } => {
            let inner = load_rule(&rule.rule)?;
            let sz = match spreading {
                Some(s) => build_erasing_variant(&inner, inner.alphabet().id(s)?)?,
                None => build_szone(&inner)?,
            };
            ctx.kv("states", sz.ca.num_states())?;
            ctx.artifact(out, &emit_rule(&sz.ca), true)
        }
        SzoneCmd::Lambda { rule, n, config, config2, out } => {
            let inner = load_rule(&rule.rule)?;
            let sz = build_szone(&inner)?;
            let c = load_config(config.as_deref(), &inner)?;
            let c2 = match config2 {
                Some(_) => load_config(config2.as_deref(), &inner)?,
                None => c.clone(),
            };
            let lam = make_lambda(&sz, *n, &c, &c2)?;
            ctx.kv("n", n)?;
            ctx.artifact(out, &emit_configuration(&lam.realized, sz.ca.alphabet()), true)
        }
        SzoneCmd::Verify { rule, n_max, rules, states } => {
            let mut rng = ctx.rng();
            let inners: Vec<CellularAutomaton> = match rule {
                Some(r) => vec![load_rule(r)?],
                None => (0..*rules).map(|_| random_rule(&mut rng, *states)).collect(),
            };
            let (mut checks, mut passed) = (0, 0);
            for inner in &inners {
                let sz = build_szone(inner)?;
                for n in 1..=*n_max {
                    let row: Vec<State> = (0..2 * n + 1).map(|_| State(rng.gen_range(0..inner.num_states()) as u16)).collect();
                    let c = Configuration::from_row(State(0), -(n as i64), &row);
                    for t in 1..=n {
                        checks += 1;
                        passed += usize::from(verify_zone_timing(&sz, &c, n, t)?.passed());
                    }
                }
            }
            ctx.kv("inner_rules", inners.len())?;
            ctx.kv("checks", checks)?;
            ctx.kv("passed", passed)?;
            ctx.check("simulation", passed == checks)?;
            let sz = build_szone(&inners[0])?;
            for n in [2usize, 4, 8].into_iter().filter(|n| n <= n_max) {
                let c = Configuration::uniform(1, State(0));
                let ch = center_changes(&sz, &c, n)?;
                ctx.kv(&format!("center_changes_n{n}"), ch)?;
                ctx.check(&format!("unbounded_n{n}"), ch > n)?;
            }
            Ok(())
        }
    }
}

/// A uniformly random radius-1 table on `q` states.
fn random_rule(rng: &mut impl Rng, q: usize) -> CellularAutomaton {
    CellularAutomaton::from_fn(Alphabet::numeric(q), Neighborhood::interval(-1, 1), |_| {
        State(rng.gen_range(0..q) as u16)
    })
    .expect("small table")
}

fn commcc_verb(ctx: &mut Ctx, a: &CommccArgs) -> Result<()> {
    ctx.kv("verb", "commcc")?;
    let ca = load_rule(&a.rule.rule)?;
    ctx.kv("protocol", &a.protocol)?;
    let k = if a.protocol == "diffreport" { default_k(&ca, a.k)? } else { 0 };
    let mut rng = ctx.rng();
    let mut rows: Vec<(usize, ProtocolTranscript)> = Vec::new();
    let mut mismatches = 0;
    for &n in &a.n {
        let mut worst_diff = 0;
        for _ in 0..a.instances {
            let u = random_pattern(&mut rng, ca.dim(), ca.radius() * n, ca.num_states());
            let inst = SplitInstance::from_pattern(&ca, n, &u)?;
            let tr = match a.protocol.as_str() {
                "trivial" => run_trivial_protocol(&ca, &inst)?,
                "diffreport" => {
                    let (tr, audit) = run_diffreport_protocol_audited(&ca, &inst, k)?;
                    mismatches += usize::from(!audit.all_consistent());
                    tr
                }
                other => return Err(Error::Precondition(format!("unknown protocol {other:?} (trivial|diffreport)"))),
            };
            let naive = predict_naive(&ca, &PredictionInstance::new(&ca, n, u, None)?)?;
            mismatches += usize::from(tr.answer != naive);
            worst_diff = worst_diff.max(tr.bits_with_tag(Tag::DiffReport));
            rows.push((n, tr));
        }
        if a.protocol == "diffreport" && ca.dim() == 1 {
            let q = ca.num_states();
            let bound = 2 * ca.radius() * (q - 1) * (ceil_log2(q) + 2 * ceil_log2(n));
            ctx.kv(&format!("max_diff_bits_n{n}"), format!("{worst_diff} (bound {bound})"))?;
            ctx.check(&format!("diff_bound_n{n}"), worst_diff <= bound)?;
        }
    }
    ctx.kv("instances", rows.len())?;
    ctx.check("answers", mismatches == 0)?;
    let refs: Vec<(usize, &ProtocolTranscript)> = rows.iter().map(|(n, t)| (*n, t)).collect();
    ctx.artifact(&a.out, &bits_csv(&refs), false)
}

fn reach_verb(ctx: &mut Ctx, a: &ReachArgs) -> Result<()> {
    ctx.kv("verb", "reach")?;
    let ca = load_rule(&a.rule.rule)?;
    let u = parse_pattern(&read(&a.from)?, ca.alphabet())?;
    let v = parse_pattern(&read(&a.to)?, ca.alphabet())?;
    let backgrounds = match &a.background {
        Some(names) => names.iter().map(|n| ca.alphabet().id(n)).collect::<Result<Vec<_>>>()?,
        None => ca.alphabet().states().collect(),
    };
    match cyreach_bounded(&ca, &u, &v, &ReachQuery::new(a.t_max, a.extension, backgrounds))? {
        Reach::Reached { t, witness } => {
            ctx.kv("reached", "yes")?;
            ctx.kv("t", t)?;
            ctx.artifact("reach-witness.cfg", &emit_configuration(&witness, ca.alphabet()), true)?;
        }
        Reach::Unknown { candidates, exhausted } => {
            ctx.kv("reached", "unknown")?;
            ctx.kv("candidates", candidates)?;
            ctx.kv("exhausted", exhausted)?;
        }
    }
    Ok(())
}

fn limit_verb(ctx: &mut Ctx, c: &LimitCmd) -> Result<()> {
    ctx.kv("verb", "limit")?;
    match c {
        LimitCmd::Window { rule, config, radius, horizon, confirm } => {
            let ca = load_rule(&rule.rule)?;
            let cfg = load_config(config.as_deref(), &ca)?;
            let w = limit_window(&ca, &cfg, *radius, *horizon, *confirm)?;
            let known = w.states.iter().filter(|s| s.is_some()).count();
            ctx.kv("cells", w.states.len())?;
            ctx.kv("witnessed", known)?;
            if let Some(p) = w.pattern(ca.dim()) {
                ctx.artifact("limit.pat", &emit_pattern(&p, ca.alphabet()), true)?;
            }
        }
        LimitCmd::Segment { rule, config, z, z2, counts, k, horizon } => {
            let ca = load_rule(&rule.rule)?;
            let cfg = load_config(config.as_deref(), &ca)?;
            let k = default_k(&ca, *k)?;
            let (lz, lz2) = match counts.as_deref() {
                Some([a, b]) => (*a, *b),
                Some(_) => return Err(Error::Precondition("--counts takes two values".into())),
                None => {
                    let ch = crate::classify::change_counts(&ca, &cfg, &[vec![*z], vec![*z2]], *horizon)?;
                    (ch[0], ch[1])
                }
            };
            ctx.kv("counts", format!("{lz},{lz2}"))?;
            let seg = limit_segment_with_counts(&ca, &cfg, *z, *z2, lz, lz2, k, *horizon)?;
            ctx.kv("segment", state_list(ca.alphabet(), &seg))?;
        }
    }
    Ok(())
}

fn zoo_verb(ctx: &mut Ctx, c: &ZooCmd) -> Result<()> {
    ctx.kv("verb", "zoo")?;
    match c {
        ZooCmd::List => {
            for name in zoo::list() {
                ctx.kv("entry", name)?;
            }
        }
        ZooCmd::Show { name, out } => {
            let e = zoo::build(name)?;
            ctx.kv("name", e.name)?;
            ctx.kv("params", &e.params)?;
            ctx.kv("expected", e.expected.as_str())?;
            ctx.kv("states", e.ca.num_states())?;
            ctx.kv("radius", e.ca.radius())?;
            let file = out.clone().unwrap_or_else(|| format!("{name}.rule"));
            ctx.artifact(&file, &emit_rule(&e.ca), true)?;
        }
        ZooCmd::Check => {
            for name in zoo::list() {
                let e = zoo::build(name)?;
                let freezing = check_freezing(&e.ca).is_freezing();
                let ok = freezing == (e.expected == zoo::ExpectedClass::Freezing);
                ctx.check(name, ok)?;
            }
        }
    }
    Ok(())
}

fn verify_verb(ctx: &mut Ctx, c: &VerifyCmd) -> Result<()> {
    ctx.kv("verb", "verify")?;
    match c {
        VerifyCmd::Minsky { machine, input, steps, t_max } => {
            let m = load_machine(machine)?;
            let cm = compile_minsky(&m)?;
            let chis = input.clone().unwrap_or_else(|| vec![0; m.counters()]);
            let start = m.start(&chis);
            let halts_at = match m.run(&start, *t_max) {
                RunResult::Halted(t) => Some(t),
                RunResult::Running(_) => None,
            };
            let steps = steps.unwrap_or_else(|| halts_at.unwrap_or(30).min(30));
            ctx.check("freezing", check_freezing(&cm.ca).is_freezing())?;
            let traj = m.trajectory(&start, steps);
            let columns = simulate_and_read(&cm, &chis, steps)?;
            let mut bad = 0;
            for (o, want) in columns.iter().zip(&traj) {
                match o {
                    ColumnOutcome::Settled(r) => {
                        let ok = r.valid && r.state == Some(want.state) && r.counters == want.counters;
                        bad += usize::from(!ok);
                    }
                    ColumnOutcome::Indeterminate { .. } => bad += 1,
                }
            }
            ctx.kv("columns", columns.len())?;
            ctx.check("column_readings", bad == 0)?;
            let witness = halting_witness(&cm, &chis, *t_max)?;
            match witness {
                HaltingWitness::Halted(t) => ctx.kv("halting_witness", format!("h at cell 0, step {t}"))?,
                HaltingWitness::NoHaltWithin(t) => ctx.kv("halting_witness", format!("none within {t}"))?,
            }
            ctx.kv("machine_halts", halts_at.map_or("no".to_string(), |t| format!("step {t}")))?;
            // h shows up only after the machine halts, so a running verdict is
            // only conclusive when the machine did not halt within the bound
            let consistent = match (halts_at, witness) {
                (Some(_), HaltingWitness::Halted(_)) | (None, HaltingWitness::NoHaltWithin(_)) => true,
                (None, HaltingWitness::Halted(_)) => false,
                (Some(_), HaltingWitness::NoHaltWithin(_)) => false,
            };
            ctx.check("halting", consistent)?;
            let empty_halts = matches!(m.run(&m.start(&vec![0; m.counters()]), *t_max), RunResult::Halted(_));
            let big_k = cm.big_k();
            let changes = max_change_witness(&cm, big_k + 1, *t_max)?;
            ctx.kv("max_changes", changes)?;
            let ok = if empty_halts { changes == big_k + 5 } else { changes <= big_k + 4 };
            ctx.check("change_witness", ok)?;
        }
        VerifyCmd::Fooling { n } => {
            let ca = build_highcc_rule(1)?;
            let cands = highcc_candidates(&ca, *n)?;
            match check_fooling_set(&ca, *n, &cands)? {
                FoolingOutcome::Verified { size, .. } => {
                    ctx.kv("fooling_set", size)?;
                    ctx.kv("lower_bound_bits", ceil_log2(size))?;
                    ctx.check("fooling", size == 1 << n.div_ceil(2))?;
                }
                FoolingOutcome::Counterexample { i, j } => {
                    ctx.kv("counterexample", format!("{i},{j}"))?;
                    ctx.check("fooling", false)?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_in(dir: &Path, args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let mut full = vec!["fca", "--out-dir", dir.to_str().unwrap()];
        full.extend_from_slice(args);
        let code = run(full, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    fn tmp(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("fca-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        d
    }

    #[test]
    fn classify_ulam() {
        let d = tmp("ulam");
        let (code, out) = run_in(&d, &["classify", "freezing", "--rule", "ulam"]);
        assert_eq!(code, 0);
        assert!(out.contains("freezing: yes"), "{out}");
    }

    #[test]
    fn identity_echoes_input() {
        let d = tmp("echo");
        let cfg = d.join("in.cfg");
        std::fs::write(&cfg, "dim 1\nbackground 0\ncell (3) 1\n").unwrap();
        let (code, _) = run_in(&d, &["simulate", "--rule", "identity", "--steps", "0", "--config", cfg.to_str().unwrap()]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(d.join("simulate.cfg")).unwrap();
        assert!(text.ends_with("dim 1\nbackground 0\ncell (3) 1\n"), "{text}");
    }

    #[test]
    fn usage_error_is_nonzero() {
        let d = tmp("usage");
        assert_eq!(run_in(&d, &["frobnicate"]).0, 2);
        assert_eq!(run_in(&d, &["classify", "freezing", "--rule", "no-such-rule"]).0, 2);
    }

    #[test]
    fn parse_error_reports_line() {
        let d = tmp("parse");
        let bad = d.join("bad.rule");
        std::fs::write(&bad, "dim 1\nalphabet 0 1\nneighborhood (0)\nentry 0 -> 0\nentry 7 -> 0\n").unwrap();
        let (code, out) = run_in(&d, &["classify", "freezing", "--rule", bad.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(out.contains("line 5"), "{out}");
    }

    #[test]
    fn range_parser() {
        assert_eq!(parse_range("-3:4"), Ok((-3, 4)));
        assert!(parse_range("4:3").is_err());
    }
}
