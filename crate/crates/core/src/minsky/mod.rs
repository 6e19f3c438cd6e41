//! Counter machines and their compilation into a one-dimensional freezing rule.

mod compile;
mod machine;
mod reading;

pub use compile::{compile_minsky, CompiledMinsky, Mark, Symbol};
pub use machine::{emit_machine, parse_machine, MinskyConfig, MinskyMachine, Rule, RunResult};
pub use reading::{
    canonical_configuration, default_horizon, encode_input, halting_witness, is_settled, max_change_witness,
    prefix_configuration, read_column, read_columns, simulate_and_read, verify_correct_simulation, ColumnOutcome,
    ColumnReading, HaltingWitness, SimulationCheck,
};
