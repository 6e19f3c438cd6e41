// A directed tile assembly system and the freezing CA that grows it.
use freezing_ca::ca::simulate;
use freezing_ca::zoo::{atam::terminal_assemblies, atam_to_ca, toy_directed_system};

fn main() {
    let sys = toy_directed_system();
    let ca = atam_to_ca(&sys).unwrap();
    let names = sys.alphabet().unwrap();
    let terminal = terminal_assemblies(&sys, 10_000).unwrap();
    println!("terminal assemblies: {}", terminal.len());
    let orbit = simulate(&ca, &sys.seed_configuration(), 6).unwrap();
    for (t, c) in orbit.iter().enumerate() {
        println!("t={t} tiles={}", c.overrides().len());
    }
    let last = orbit.last().unwrap();
    for y in (0..=1).rev() {
        let row: Vec<&str> = (0..=2).map(|x| names.name(last.get(&[x, y]))).collect();
        println!("{}", row.join("\t"));
    }
    println!("matches closure: {}", terminal[0] == *last);
}
