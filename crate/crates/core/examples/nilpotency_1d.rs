// Nilpotency of 1D freezing rules via the fixed-point census.
use freezing_ca::classify::{decide_nilpotency_1d, random_freezing_table, Certificate, Nilpotency};
use freezing_ca::zoo;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    for name in ["max", "constant-0", "ulam-1d"] {
        let ca = zoo::build(name).unwrap().ca;
        let v = decide_nilpotency_1d(&ca, Some(Certificate::Freezing)).unwrap();
        println!("{name}: nilpotent={}", v == Nilpotency::Nilpotent);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut nilpotent = 0;
    for _ in 0..50 {
        let ca = random_freezing_table(3, &mut rng);
        nilpotent += usize::from(decide_nilpotency_1d(&ca, Some(Certificate::Freezing)).unwrap() == Nilpotency::Nilpotent);
    }
    println!("random 3-state freezing rules: {nilpotent}/50 nilpotent");
}
