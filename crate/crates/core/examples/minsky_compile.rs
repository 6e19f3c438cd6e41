// Compile a counter machine and read its run back off the space-time diagram.
use freezing_ca::minsky::{compile_minsky, halting_witness, simulate_and_read, MinskyMachine, RunResult};

fn main() {
    let m = MinskyMachine::blip();
    let cm = compile_minsky(&m).expect("compile");
    println!("states={} K={}", cm.num_states(), cm.big_k());
    for input in [0u64, 3] {
        let RunResult::Halted(steps) = m.run(&m.start(&[input]), 100) else {
            unreachable!("blip halts")
        };
        let traj = m.trajectory(&m.start(&[input]), steps);
        let cols = simulate_and_read(&cm, &[input], traj.len() - 1).expect("simulate");
        for (z, (col, want)) in cols.iter().zip(&traj).enumerate() {
            let r = col.reading().expect("column settles");
            let q = r.state.map_or("?", |q| m.state_name(q));
            println!(
                "x={input} column {z}: {q} {:?}  machine: {} {:?}",
                r.counters,
                m.state_name(want.state),
                want.counters
            );
        }
        println!("halting: {:?}", halting_witness(&cm, &[input], 500).unwrap());
    }
}
