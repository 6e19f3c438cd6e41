// Bounded search for a configuration in [u] whose orbit enters [v].
use freezing_ca::ca::{cyreach_bounded, Reach, ReachQuery};
use freezing_ca::zoo;
use freezing_ca::{Pattern, State};

fn main() {
    let ca = zoo::build("threshold-1d-r2").unwrap().ca;
    let u = Pattern::from_row(&[State(0), State(0), State(0)]).unwrap();
    let v = Pattern::from_row(&[State(1)]).unwrap();
    for ext in 0..=3 {
        match cyreach_bounded(&ca, &u, &v, &ReachQuery::new(6, ext, vec![State(0)])).unwrap() {
            Reach::Reached { t, witness } => {
                println!("extension {ext}: reached at t={t}, witness row {:?}", witness.row(-4, 4));
            }
            Reach::Unknown { candidates, exhausted } => {
                println!("extension {ext}: unknown after {candidates} candidates (exhausted={exhausted})");
            }
        }
    }
}
