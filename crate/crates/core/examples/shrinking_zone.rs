// A zone of width 2n+1 simulates n steps of the inner rule while shrinking;
// its center changes more than n times although each zone cell is bounded.
use freezing_ca::szone::{build_szone, center_changes, zone_time, verify_zone_timing};
use freezing_ca::zoo;
use freezing_ca::{Configuration, State};

fn main() {
    let inner = zoo::ulam_1d();
    let sz = build_szone(&inner).expect("szone");
    println!("inner states={} zone states={}", inner.num_states(), sz.ca.num_states());
    let c = Configuration::from_row(State(0), 0, &[State(1)]);
    for n in 1..=6 {
        for t in [1, n] {
            let rep = verify_zone_timing(&sz, &c, n, t).unwrap();
            println!("n={n} t={t} T={} passed={}", zone_time(n, t), rep.passed());
        }
    }
    for n in [2, 4, 8] {
        println!("n={n} center changes={}", center_changes(&sz, &c, n).unwrap());
    }
}
