//! Structural classes: freezing order, change counts, 1D nilpotency and limits.

mod changes;
mod debruijn;
mod freezing;
mod lift;
mod limits;

pub use changes::{change_counts, change_profile, ChangeProfile};
pub use debruijn::{
    build_debruijn, canonical_1d, census_fixed_points, decide_nilpotency_1d, random_freezing_table, Census,
    Certificate, DeBruijnGraph, Edge, Nilpotency,
};
pub use freezing::{check_freezing, FreezingOrder, PartialOrder};
pub use lift::{is_spreading, lift_spreading_product};
pub use limits::{group_blocks, group_configuration, limit_segment_with_counts};
