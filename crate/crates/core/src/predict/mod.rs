//! Predicting `F^t(u)` at the origin: a direct oracle, a streaming predictor
//! for one-way rules and a column-guessing search, both on run-length columns.

mod naive;
mod rle;
mod search;
mod stream;

pub use naive::{predict_naive, true_columns, PredictionInstance};
pub use rle::RleColumn;
pub use search::{column_search, predict_column_search, SearchResult, DEFAULT_BUDGET};
pub use stream::{predict_oneway_stream, predict_oneway_stream_metered, StreamPrediction};
