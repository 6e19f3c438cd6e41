// Three predictors for F^t(u)_0 on bounded-change rules.
use freezing_ca::predict::{
    column_search, predict_naive, predict_oneway_stream_metered, PredictionInstance, DEFAULT_BUDGET,
};
use freezing_ca::zoo;
use freezing_ca::{Pattern, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let oneway = zoo::build("max-oneway").unwrap().ca;
    let two_sided = zoo::build("threshold-1d-r2").unwrap().ca;
    for t in [4usize, 12, 24] {
        let row: Vec<State> = (0..2 * t + 1).map(|_| State(u16::from(rng.gen_bool(0.1)))).collect();
        let inst = PredictionInstance::new(&oneway, t, Pattern::from_row(&row).unwrap(), None).unwrap();
        let s = predict_oneway_stream_metered(&oneway, &inst, 1).unwrap();
        println!(
            "oneway t={t}: naive={} stream={} live={} segments={}",
            predict_naive(&oneway, &inst).unwrap().0,
            s.state.0,
            s.peak_live_columns,
            s.max_segments
        );
        let row: Vec<State> = (0..4 * t + 1).map(|_| State(u16::from(rng.gen_bool(0.3)))).collect();
        let inst = PredictionInstance::new(&two_sided, t, Pattern::from_row(&row).unwrap(), None).unwrap();
        let r = column_search(&two_sided, &inst, 1, DEFAULT_BUDGET).unwrap();
        println!(
            "threshold t={t}: naive={} search={} nodes={}",
            predict_naive(&two_sided, &inst).unwrap().0,
            r.state.0,
            r.nodes
        );
    }
}
