// Decide the freezing property for the zoo and show a state-change cycle.
use freezing_ca::classify::{check_freezing, FreezingOrder};
use freezing_ca::zoo;

fn main() {
    for name in zoo::list() {
        let e = zoo::build(name).expect("zoo entry");
        match check_freezing(&e.ca) {
            FreezingOrder::Freezing { order, .. } => {
                println!("{name:22} freezing     ({} comparable pairs)", order.len());
            }
            FreezingOrder::NotFreezing { cycle } => {
                let names: Vec<&str> = cycle.iter().map(|&s| e.ca.alphabet().name(s)).collect();
                println!("{name:22} not freezing cycle {}", names.join(" -> "));
            }
        }
    }
}
