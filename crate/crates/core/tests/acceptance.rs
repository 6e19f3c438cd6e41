// Acceptance suite, one line per criterion. Runs as a plain binary
// (`harness = false`) so the report is always printed.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use freezing_ca::ca::{simulate, step};
use freezing_ca::classify::{
    change_counts, check_freezing, decide_nilpotency_1d, limit_segment_with_counts, Certificate, FreezingOrder,
    Nilpotency,
};
use freezing_ca::commproto::{
    build_highcc_rule, ceil_log2, check_fooling_set, highcc_candidates, run_diffreport_protocol, FoolingOutcome,
    SplitInstance, Tag,
};
use freezing_ca::minsky::{
    canonical_configuration, compile_minsky, halting_witness, max_change_witness, simulate_and_read, HaltingWitness,
    MinskyMachine, RunResult,
};
use freezing_ca::predict::{
    column_search, predict_naive, predict_oneway_stream_metered, true_columns, PredictionInstance, DEFAULT_BUDGET,
};
use freezing_ca::szone::{build_szone, center_changes, verify_zone_timing};
use freezing_ca::zoo::{self, atam::terminal_assemblies};
use freezing_ca::{Alphabet, CellularAutomaton, Configuration, Neighborhood, Pattern, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn random_table(rng: &mut ChaCha8Rng, q: usize, nb: Neighborhood) -> CellularAutomaton {
    CellularAutomaton::from_fn(Alphabet::numeric(q), nb, |_| State(rng.gen_range(0..q) as u16)).unwrap()
}

/// Freezing by construction: outputs never rise in a random total order.
fn random_freezing(rng: &mut ChaCha8Rng, q: usize, nb: Neighborhood, keep: f64) -> CellularAutomaton {
    let mut by_rank: Vec<u16> = (0..q as u16).collect();
    for i in (1..q).rev() {
        by_rank.swap(i, rng.gen_range(0..=i));
    }
    let mut rank = vec![0; q];
    for (r, &s) in by_rank.iter().enumerate() {
        rank[s as usize] = r;
    }
    let ci = nb.center_index().expect("center");
    CellularAutomaton::from_fn(Alphabet::numeric(q), nb, |c| {
        let own = c[ci];
        if rng.gen_bool(keep) {
            own
        } else {
            State(by_rank[rng.gen_range(0..=rank[own.index()])])
        }
    })
    .unwrap()
}

fn minsky_machines() -> Vec<MinskyMachine> {
    vec![
        MinskyMachine::blip(),
        MinskyMachine::up_down(20),
        MinskyMachine::countdown(),
        MinskyMachine::transfer(),
        MinskyMachine::forever_increment(),
        MinskyMachine::idle_loop(),
        MinskyMachine::already_halted(),
    ]
}

fn criterion_1() -> Outcome {
    let mut rules: Vec<(String, CellularAutomaton)> = vec![
        ("ulam".into(), zoo::ulam()),
        ("threshold-2 2d".into(), zoo::threshold_growth(2, Neighborhood::von_neumann(2, true)).unwrap()),
        ("threshold-2 1d".into(), zoo::threshold_growth(2, Neighborhood::interval(-2, 2)).unwrap()),
        ("life-without-death".into(), zoo::life_without_death()),
        ("sir".into(), zoo::sir(Neighborhood::von_neumann(2, true), 1).unwrap()),
        ("vertical-min".into(), zoo::vertical_min()),
        ("atam-toy".into(), zoo::atam_to_ca(&zoo::toy_directed_system()).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, inner) in [
        ("max", zoo::max_rule(2, -1, 1)),
        ("shift", zoo::shift_rule(2)),
        ("nonfreezing", zoo::nonfreezing_example()),
        ("random4", random_table(&mut rng, 4, Neighborhood::interval(-1, 1))),
    ] {
        rules.push((format!("line-lift {name}"), zoo::line_lift(&inner).unwrap()));
    }
    for m in minsky_machines() {
        rules.push((format!("minsky {}", m.num_states()), compile_minsky(&m).unwrap().ca));
    }
    let mut slowest = Duration::ZERO;
    let mut bad = Vec::new();
    for (name, ca) in &rules {
        let t0 = Instant::now();
        let ok = check_freezing(ca).is_freezing();
        let dt = t0.elapsed();
        if ca.num_states() <= 40 && ca.neighborhood().len() <= 3 {
            slowest = slowest.max(dt);
        }
        if !ok {
            bad.push(name.clone());
        }
    }
    // a dense 40-state, 3-offset table for timing
    let big = random_freezing(&mut rng, 40, Neighborhood::interval(-1, 1), 0.5);
    let t0 = Instant::now();
    let big_ok = check_freezing(&big).is_freezing();
    slowest = slowest.max(t0.elapsed());

    let nf = zoo::nonfreezing_example();
    let arcs = nf.state_change_arcs();
    let cycle_ok = match check_freezing(&nf) {
        FreezingOrder::NotFreezing { cycle } => {
            cycle.len() == 2 && (0..2).all(|i| arcs.contains(&(cycle[i], cycle[(i + 1) % 2])))
        }
        FreezingOrder::Freezing { .. } => false,
    };
    outcome(
        bad.is_empty() && big_ok && cycle_ok && slowest < Duration::from_secs(1),
        format!(
            "{} freezing rules ok, non-freezing 2-cycle {}, slowest {:.1} ms{}",
            rules.len() - bad.len(),
            if cycle_ok { "valid" } else { "INVALID" },
            slowest.as_secs_f64() * 1e3,
            if bad.is_empty() { String::new() } else { format!(", failed: {bad:?}") }
        ),
    )
}

fn criterion_2() -> Outcome {
    let t0 = Instant::now();
    let cases: Vec<(MinskyMachine, Vec<u64>, usize)> = vec![
        (MinskyMachine::blip(), vec![0], 3),
        (MinskyMachine::blip(), vec![4], 7),
        (MinskyMachine::up_down(20), vec![0], 42),
        (MinskyMachine::countdown(), vec![20], 21),
        (MinskyMachine::transfer(), vec![5, 3], 6),
        (MinskyMachine::forever_increment(), vec![0], 25),
        (MinskyMachine::idle_loop(), vec![7], 20),
    ];
    let (mut columns, mut bad, mut halting_bad) = (0, 0, 0);
    for (m, chis, steps) in &cases {
        let cm = compile_minsky(m).unwrap();
        let traj = m.trajectory(&m.start(chis), *steps);
        let out = simulate_and_read(&cm, chis, *steps).unwrap();
        for (o, want) in out.iter().zip(&traj) {
            columns += 1;
            let ok = matches!(o.reading(), Some(r) if r.valid && r.state == Some(want.state) && r.counters == want.counters);
            bad += usize::from(!ok);
        }
        let bound = 4000;
        let halts = matches!(m.run(&m.start(chis), bound), RunResult::Halted(_));
        let seen = matches!(halting_witness(&cm, chis, bound).unwrap(), HaltingWitness::Halted(_));
        halting_bad += usize::from(halts != seen);
    }
    let dt = t0.elapsed();
    outcome(
        bad == 0 && halting_bad == 0 && dt < Duration::from_secs(30),
        format!(
            "{} machines, {columns} columns, {bad} mismatches, {halting_bad} halting errors, {:.2} s",
            cases.len(),
            dt.as_secs_f64()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for m in minsky_machines() {
        let cm = compile_minsky(&m).unwrap();
        let big_k = cm.big_k();
        let halts = matches!(m.run(&m.start(&vec![0; m.counters()]), 4000), RunResult::Halted(_));
        let w = max_change_witness(&cm, big_k + 1, 6000).unwrap();
        let good = if halts { w == big_k + 5 } else { w <= big_k + 4 };
        ok &= good;
        lines.push(format!("{}{}:{w}", if halts { "H" } else { "N" }, cm.counters()));
    }
    outcome(ok, format!("witness per machine (H halts on empty, digit = k) {}", lines.join(" ")))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut checks, mut failed) = (0, 0);
    for i in 0..20 {
        let q = 2 + i % 2;
        let inner = random_table(&mut rng, q, Neighborhood::interval(-1, 1));
        let sz = build_szone(&inner).unwrap();
        for n in 1..=8usize {
            let row: Vec<State> = (0..2 * n + 1).map(|_| State(rng.gen_range(0..q) as u16)).collect();
            let c = Configuration::from_row(State(0), -(n as i64), &row);
            for t in 1..=n {
                checks += 1;
                failed += usize::from(!verify_zone_timing(&sz, &c, n, t).unwrap().passed());
            }
        }
    }
    let sz = build_szone(&zoo::max_rule(2, -1, 1)).unwrap();
    let c = Configuration::uniform(1, State(0));
    let changes: Vec<(usize, usize)> = [2, 4, 8].iter().map(|&n| (n, center_changes(&sz, &c, n).unwrap())).collect();
    let unbounded = changes.iter().all(|&(n, ch)| ch > n);
    outcome(
        failed == 0 && unbounded,
        format!("{checks} (rule, n, t) checks, {failed} failed; center changes {changes:?}"),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // one-way rules for the streaming predictor
    let oneway: Vec<CellularAutomaton> = vec![
        zoo::max_rule(2, -1, 0),
        zoo::max_rule(3, 0, 1),
        zoo::threshold_growth(2, Neighborhood::interval(-2, 0)).unwrap(),
        random_freezing(&mut rng, 3, Neighborhood::interval(-1, 0), 0.3),
        random_freezing(&mut rng, 4, Neighborhood::interval(-1, 0), 0.3),
        random_freezing(&mut rng, 3, Neighborhood::interval(0, 2), 0.3),
    ];
    let (mut stream_n, mut stream_bad, mut live_bad, mut seg_bad) = (0, 0, 0, 0);
    for ca in &oneway {
        let q = ca.num_states();
        for _ in 0..100 {
            let t = rng.gen_range(1..=24);
            let density = rng.gen_range(0.05..0.9);
            let u = Pattern::from_fn(1, ca.radius() * t, |_| {
                State(if rng.gen_bool(density) { rng.gen_range(0..q) } else { 0 } as u16)
            });
            let inst = PredictionInstance::new(ca, t, u, None).unwrap();
            let want = predict_naive(ca, &inst).unwrap();
            let p = predict_oneway_stream_metered(ca, &inst, q - 1).unwrap();
            stream_n += 1;
            stream_bad += usize::from(p.state != want);
            live_bad += usize::from(p.peak_live_columns > 2 * ca.radius() + 1);
            seg_bad += usize::from(p.max_segments > q);
            seg_bad += true_columns(ca, &inst).unwrap().iter().filter(|c| c.segment_count() > q).count();
        }
    }
    // two-sided rules for the column search
    let fm = compile_minsky(&MinskyMachine::blip()).unwrap();
    let fm_k = fm.big_k() + 5;
    let mut two_sided: Vec<(CellularAutomaton, usize)> = vec![
        (zoo::max_rule(2, -1, 1), 1),
        (zoo::ulam_1d(), 1),
        (zoo::threshold_growth(2, Neighborhood::interval(-2, 2)).unwrap(), 1),
        (fm.ca.clone(), fm_k),
    ];
    let r3 = random_freezing(&mut rng, 3, Neighborhood::interval(-1, 1), 0.3);
    two_sided.push((r3, 2));
    let (mut search_n, mut search_bad, mut worst_nodes) = (0, 0, 0);
    let fm_orbit = simulate(&fm.ca, &canonical_configuration(&fm, &[2]).unwrap(), 30).unwrap();
    for (ca, k) in &two_sided {
        let q = ca.num_states();
        for i in 0..100 {
            let t = rng.gen_range(1..=24);
            let r = ca.radius() * t;
            let u = if ca.num_states() == fm.num_states() && i % 2 == 0 {
                // windows of a genuine F_M orbit
                let s = rng.gen_range(0..fm_orbit.len());
                let z = rng.gen_range(-4..8i64);
                Pattern::from_row(&fm_orbit[s].row(z - r as i64, z + r as i64)).unwrap()
            } else {
                Pattern::from_fn(1, r, |_| State(rng.gen_range(0..q) as u16))
            };
            let inst = PredictionInstance::new(ca, t, u, None).unwrap();
            let want = predict_naive(ca, &inst).unwrap();
            search_n += 1;
            match column_search(ca, &inst, *k, DEFAULT_BUDGET) {
                Ok(res) => {
                    search_bad += usize::from(res.state != want);
                    worst_nodes = worst_nodes.max(res.nodes);
                }
                Err(_) => search_bad += 1,
            }
        }
    }
    outcome(
        stream_bad + search_bad + live_bad + seg_bad == 0 && stream_n >= 500 && search_n >= 500,
        format!(
            "stream {stream_n} on {} rules ({stream_bad} wrong, {live_bad} live-column, {seg_bad} segment violations); \
             search {search_n} on {} rules ({search_bad} wrong, worst {worst_nodes} nodes)",
            oneway.len(),
            two_sided.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let rules: Vec<CellularAutomaton> = vec![
        zoo::max_rule(2, -1, 1),
        zoo::ulam_1d(),
        zoo::threshold_growth(2, Neighborhood::interval(-2, 2)).unwrap(),
        zoo::max_rule(2, -1, 0),
        random_freezing(&mut rng, 3, Neighborhood::interval(-1, 1), 0.3),
        random_freezing(&mut rng, 4, Neighborhood::interval(-1, 1), 0.5),
    ];
    let (mut total, mut wrong, mut over) = (0, 0, 0);
    let mut worst_ratio = 0.0f64;
    for ca in &rules {
        let q = ca.num_states();
        for &n in &[8usize, 16, 32, 64] {
            let bound = 2 * ca.radius() * (q - 1) * (ceil_log2(q) + 2 * ceil_log2(n));
            for _ in 0..13 {
                let density = rng.gen_range(0.02..0.6);
                let u = Pattern::from_fn(1, ca.radius() * n, |_| {
                    State(if rng.gen_bool(density) { rng.gen_range(0..q) } else { 0 } as u16)
                });
                let inst = SplitInstance::from_pattern(ca, n, &u).unwrap();
                let tr = run_diffreport_protocol(ca, &inst, q - 1).unwrap();
                let naive = predict_naive(ca, &PredictionInstance::new(ca, n, u, None).unwrap()).unwrap();
                total += 1;
                wrong += usize::from(tr.answer != naive);
                let diff = tr.bits_with_tag(Tag::DiffReport);
                over += usize::from(diff > bound);
                worst_ratio = worst_ratio.max(diff as f64 / bound as f64);
            }
        }
    }
    // a 2D instance set for answer agreement only
    let ulam = zoo::ulam();
    for _ in 0..20 {
        let n = rng.gen_range(2..=5);
        let u = Pattern::from_fn(2, n, |_| State(u16::from(rng.gen_bool(0.1))));
        let inst = SplitInstance::from_pattern(&ulam, n, &u).unwrap();
        let tr = run_diffreport_protocol(&ulam, &inst, 1).unwrap();
        let naive = predict_naive(&ulam, &PredictionInstance::new(&ulam, n, u, None).unwrap()).unwrap();
        total += 1;
        wrong += usize::from(tr.answer != naive);
    }
    let hc = build_highcc_rule(1).unwrap();
    let fooling = check_fooling_set(&hc, 6, &highcc_candidates(&hc, 6).unwrap()).unwrap();
    let fool_ok = matches!(fooling, FoolingOutcome::Verified { size: 8, .. });
    outcome(
        wrong == 0 && over == 0 && total >= 300 && fool_ok,
        format!(
            "{total} instances, {wrong} wrong answers, {over} over the diff bound (worst {:.0}% of bound); fooling set {fooling:?}",
            worst_ratio * 100.0
        ),
    )
}

/// Periodic configurations of period ≤ 9 cover every cycle of the 9-vertex
/// window graph, so two distinct fixed points show up among their limits.
fn periodic_oracle_nilpotent(ca: &CellularAutomaton) -> bool {
    let q = ca.num_states();
    let mut limits: BTreeMap<Vec<u16>, ()> = BTreeMap::new();
    for p in 1..=9usize {
        for code in 0..q.pow(p as u32) {
            let mut cur: Vec<State> = (0..p).map(|i| State((code / q.pow(i as u32) % q) as u16)).collect();
            loop {
                let next: Vec<State> = (0..p)
                    .map(|i| ca.apply(&[cur[(i + p - 1) % p], cur[i], cur[(i + 1) % p]]))
                    .collect();
                if next == cur {
                    break;
                }
                cur = next;
            }
            // canonical form: the limit as a uniform state if it is one
            let uniform = cur.iter().all(|&s| s == cur[0]);
            let key = if uniform { vec![cur[0].0] } else { cur.iter().map(|s| s.0 + 100).collect() };
            limits.insert(key, ());
            if limits.len() > 1 {
                return false;
            }
        }
    }
    // a single limit; nilpotent iff it is uniform
    limits.keys().all(|k| k.len() == 1)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut total, mut disagree, mut nilpotent) = (0, 0, 0);
    for i in 0..120 {
        let q = 2 + i % 2;
        let keep = [0.0, 0.1, 0.3, 0.5][i % 4];
        let ca = random_freezing(&mut rng, q, Neighborhood::interval(-1, 1), keep);
        let decided = decide_nilpotency_1d(&ca, Some(Certificate::Freezing)).unwrap() == Nilpotency::Nilpotent;
        let oracle = periodic_oracle_nilpotent(&ca);
        total += 1;
        nilpotent += usize::from(oracle);
        disagree += usize::from(decided != oracle);
    }
    outcome(
        disagree == 0 && total >= 100,
        format!("{total} random freezing tables ({nilpotent} nilpotent), {disagree} disagreements"),
    )
}

fn criterion_8() -> Outcome {
    let horizon = 2000;
    let (mut segs, mut bad) = (0, 0);
    let mut check = |ca: &CellularAutomaton, c: &Configuration, k: usize, segments: &[(i64, i64)]| {
        let cells: Vec<Vec<i64>> = segments.iter().flat_map(|&(z, z2)| [vec![z], vec![z2]]).collect();
        let counts = change_counts(ca, c, &cells, horizon).unwrap();
        let last = simulate(ca, c, horizon).unwrap().pop().unwrap();
        for (i, &(z, z2)) in segments.iter().enumerate() {
            let got = limit_segment_with_counts(ca, c, z, z2, counts[2 * i], counts[2 * i + 1], k, 2 * horizon);
            segs += 1;
            bad += usize::from(got != Ok(last.row(z, z2)));
        }
    };
    for (m, chis) in [
        (MinskyMachine::blip(), vec![0]),
        (MinskyMachine::blip(), vec![3]),
        (MinskyMachine::countdown(), vec![5]),
        (MinskyMachine::forever_increment(), vec![0]),
        (MinskyMachine::idle_loop(), vec![2]),
    ] {
        let cm = compile_minsky(&m).unwrap();
        let c = canonical_configuration(&cm, &chis).unwrap();
        check(&cm.ca, &c, cm.big_k() + 5, &[(-3, 3), (0, 8), (-8, -1), (2, 12)]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for name in ["identity", "constant-0", "max", "max-oneway", "ulam-1d"] {
        let ca = zoo::build(name).unwrap().ca;
        for _ in 0..4 {
            let row: Vec<State> = (0..30).map(|_| State(u16::from(rng.gen_bool(0.2)))).collect();
            let c = Configuration::from_row(State(0), -15, &row);
            let z = rng.gen_range(-20..10);
            check(&ca, &c, ca.num_states() - 1, &[(z, z + rng.gen_range(0..10))]);
        }
    }
    let sys = zoo::toy_directed_system();
    let ca = zoo::atam_to_ca(&sys).unwrap();
    let closure = terminal_assemblies(&sys, 10_000).unwrap();
    let mut c = sys.seed_configuration();
    for _ in 0..50 {
        c = step(&ca, &c).unwrap();
    }
    let window_ok = closure.len() == 1 && closure[0] == c && sys.alphabet().unwrap().len() <= 7;
    outcome(
        bad == 0 && window_ok,
        format!("{segs} segments, {bad} mismatches; aTAM window equals the unique terminal assembly: {window_ok}"),
    )
}

fn run_cli(dir: &Path, args: &[&str]) -> (i32, String) {
    let mut buf = Vec::new();
    let mut full = vec!["fca", "--seed", "42", "--out-dir", dir.to_str().unwrap()];
    full.extend_from_slice(args);
    let code = freezing_ca::cli::run(full, &mut buf);
    let text = String::from_utf8(buf).unwrap().replace(dir.to_str().unwrap(), "<out>");
    (code, text)
}

fn dir_snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .map(|rd| {
            rd.filter_map(|e| e.ok())
                .map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap()))
                .collect()
        })
        .unwrap_or_default()
}

fn criterion_9() -> Outcome {
    let base = std::env::temp_dir().join(format!("fca-acceptance-{}", std::process::id()));
    let inputs = base.join("inputs");
    std::fs::create_dir_all(&inputs).unwrap();
    let cfg = inputs.join("seed.cfg");
    std::fs::write(&cfg, "dim 1\nbackground 0\ncell (0) 1\ncell (3) 1\n").unwrap();
    let cfg2 = inputs.join("seed2d.cfg");
    std::fs::write(&cfg2, "dim 2\nbackground 0\ncell (0,0) 1\n").unwrap();
    let u = inputs.join("u.pat");
    std::fs::write(&u, "dim 1\nradius 1\ncells 0 0 0\n").unwrap();
    let v = inputs.join("v.pat");
    std::fs::write(&v, "dim 1\nradius 0\ncells 1\n").unwrap();
    let p = inputs.join("p.pat");
    std::fs::write(&p, "dim 1\nradius 4\ncells 0 0 1 0 0 0 0 0 0\n").unwrap();
    let (cfg, cfg2, u, v, p) = (
        cfg.to_str().unwrap().to_string(),
        cfg2.to_str().unwrap().to_string(),
        u.to_str().unwrap().to_string(),
        v.to_str().unwrap().to_string(),
        p.to_str().unwrap().to_string(),
    );
    let invocations: Vec<Vec<&str>> = vec![
        vec!["simulate", "--rule", "max", "--config", &cfg, "--steps", "5"],
        vec!["render", "--rule", "ulam", "--config", &cfg2, "--steps", "6", "--x=-8:8", "--y=-8:8"],
        vec!["classify", "freezing", "--rule", "ulam"],
        vec!["classify", "nilpotency", "--rule", "max"],
        vec!["predict", "--rule", "max", "--pattern", &p, "--t", "4", "--method", "search", "--random", "20"],
        vec!["compile", "--machine", "blip", "--input", "2"],
        vec!["szone", "verify", "--n-max", "4", "--rules", "2"],
        vec!["szone", "lambda", "--rule", "max", "--n", "3", "--config", &cfg],
        vec!["commcc", "--rule", "max", "--n", "8,16", "--instances", "4"],
        vec!["reach", "--rule", "max", "--from", &u, "--to", &v, "--t-max", "4"],
        vec!["limit", "window", "--rule", "max", "--config", &cfg, "--radius", "5"],
        vec!["zoo", "show", "sir"],
        vec!["verify", "minsky", "--machine", "blip"],
        vec!["verify", "fooling", "--n", "4"],
    ];
    let mut failures = Vec::new();
    for (i, args) in invocations.iter().enumerate() {
        let runs: Vec<(i32, String, BTreeMap<String, Vec<u8>>)> = (0..2)
            .map(|rep| {
                let d = base.join(format!("run{i}-{rep}"));
                let _ = std::fs::remove_dir_all(&d);
                let (code, out) = run_cli(&d, args);
                (code, out, dir_snapshot(&d))
            })
            .collect();
        let same = runs[0] == runs[1];
        if !same || runs[0].0 != 0 {
            failures.push(format!("{} (exit {}, identical {same})", args[..2].join(" "), runs[0].0));
        }
    }
    let _ = std::fs::remove_dir_all(&base);
    outcome(
        failures.is_empty(),
        format!("{} verb invocations rerun with seed 42{}", invocations.len(), if failures.is_empty() { String::new() } else { format!(", failed: {failures:?}") }),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("freezing decision", criterion_1),
        ("counter-machine fidelity", criterion_2),
        ("change witness", criterion_3),
        ("shrinking-zone simulation", criterion_4),
        ("predictors", criterion_5),
        ("protocol", criterion_6),
        ("nilpotency", criterion_7),
        ("limits", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let o = f();
        all &= o.ok;
        println!(
            "criterion {} {:<26} {} ({:.1} s) {}",
            i + 1,
            name,
            if o.ok { "PASS" } else { "FAIL" },
            t0.elapsed().as_secs_f64(),
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
