// Bits exchanged by the diff-report protocol versus sending a whole half.
use freezing_ca::commproto::{bits_csv, run_diffreport_protocol, run_trivial_protocol, SplitInstance};
use freezing_ca::zoo;
use freezing_ca::{Pattern, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let ca = zoo::max_rule(2, -1, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut rows = Vec::new();
    for n in [8usize, 16, 32, 64] {
        let row: Vec<State> = (0..2 * n + 1).map(|_| State(u16::from(rng.gen_bool(0.05)))).collect();
        let inst = SplitInstance::from_pattern(&ca, n, &Pattern::from_row(&row).unwrap()).unwrap();
        let trivial = run_trivial_protocol(&ca, &inst).unwrap();
        let diff = run_diffreport_protocol(&ca, &inst, 1).unwrap();
        assert_eq!(trivial.answer, diff.answer);
        println!("n={n}: trivial={} diffreport={}", trivial.total_bits, diff.total_bits);
        rows.push((n, diff));
    }
    let refs: Vec<_> = rows.iter().map(|(n, t)| (*n, t)).collect();
    print!("{}", bits_csv(&refs));
}
