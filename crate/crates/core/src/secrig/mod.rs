//! Secant dimensions by tangent spans, mixture and join sampling, and
//! rigidity matrices of bar-joint frameworks.

mod rigidity;
mod secant;

pub use rigidity::{
    expected_rigidity_rank, generic_rigidity_check, rigidity_matrix, rotation_vectors, translation_vectors, Framework,
    RigidityReport,
};
pub use secant::{
    join_point, join_sample, mixture_sample, rank_one_sample, secant_dimension, ParametrizedModel, SecantDimension,
    SegreModel, TangentModel,
};
