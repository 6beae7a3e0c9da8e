//! Exact witness campaigns: containment checks, vanishing on component
//! samplers, and separation by nonvanishing.

mod checks;
mod report;
mod samplers;

pub use checks::{
    verify_concurrent_lines, verify_grid_realization, verify_intersection_axiom, verify_rank_two_component,
    verify_rigidity, verify_terracini, RIGIDITY_CASES, TERRACINI_CASES,
};
pub use report::{Failure, Fact, SeparationCount, Status, SymbolicCheck, SymbolicStatus, VanishCount, WitnessReport};
pub use samplers::{concurrent_lines_sampler, loop_sampler, low_rank_sampler, ComponentSampler};
