mod bridge;
mod engine;
mod search;

pub use bridge::{
    forcing_to_universality, sampled_forcing_coefficients, with_initial_sets, ForcingUniversality,
    MembershipCheck,
};
pub use engine::{
    forcing_run, generalized_forcing_run, hyper_forcing_run, is_forcing_set, replay_trace,
    stage_types, zero_forcing_run, ForcingMode, ForcingOptions, ForcingState, Infects, Step,
};
pub use search::{minimal_forcing_search, MinimalForcing, SEARCH_LIMIT};
