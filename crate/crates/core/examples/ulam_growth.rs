// Ulam's growth rule from a single seed: the support only ever grows.
use freezing_ca::ca::simulate;
use freezing_ca::classify::check_freezing;
use freezing_ca::zoo;
use freezing_ca::{Configuration, State};

fn main() {
    let ca = zoo::ulam();
    let seed = Configuration::from_cells(2, State(0), [(vec![0, 0], State(1))]).expect("2D seed");
    let orbit = simulate(&ca, &seed, 8).expect("simulate");
    for (t, c) in orbit.iter().enumerate() {
        println!("t={t} live={}", c.overrides().len());
    }
    let last = orbit.last().unwrap();
    for y in (-8..=8).rev() {
        let row: String = (-8..=8).map(|x| if last.get(&[x, y]) == State(1) { '#' } else { '.' }).collect();
        println!("{row}");
    }
    println!("freezing: {}", check_freezing(&ca).is_freezing());
}
