// Limit segments from exact change counts, checked against long simulation.
use freezing_ca::ca::simulate;
use freezing_ca::classify::{change_counts, limit_segment_with_counts};
use freezing_ca::minsky::{canonical_configuration, compile_minsky, MinskyMachine};

fn main() {
    let cm = compile_minsky(&MinskyMachine::blip()).unwrap();
    let c = canonical_configuration(&cm, &[2]).unwrap();
    let k = cm.big_k() + 5;
    let (z, z2) = (-3i64, 6i64);
    let counts = change_counts(&cm.ca, &c, &[vec![z], vec![z2]], 2000).unwrap();
    let seg = limit_segment_with_counts(&cm.ca, &c, z, z2, counts[0], counts[1], k, 4000).unwrap();
    let direct = simulate(&cm.ca, &c, 2000).unwrap().pop().unwrap().row(z, z2);
    let names: Vec<&str> = seg.iter().map(|&s| cm.ca.alphabet().name(s)).collect();
    println!("counts {counts:?}");
    println!("limit [{z},{z2}]: {}", names.join(" "));
    println!("equals horizon-2000 simulation: {}", seg == direct);
}
