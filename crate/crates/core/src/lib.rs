//! Exact determinantal ideals of conditional-independence models with hidden
//! variables and of hypergraphs, together with the matroids, secant
//! dimensions and rigidity ranks attached to them.
//!
//! All arithmetic is over the rationals. Claims about varieties are checked
//! by symbolic containment where the Gröbner budget allows and otherwise by
//! exact evaluation at sampled rational points.

pub mod cimodel;
pub mod combinatorics;
pub mod error;
pub mod hypergraph;
pub mod linalg;
pub mod matroid;
pub mod polycore;
pub mod rng;
pub mod secrig;
pub mod verify;

pub use cimodel::{CiStatement, DiscreteModel, ProbTensor};
pub use error::{Error, Result};
pub use hypergraph::{GridSpec, Hypergraph};
pub use linalg::Matrix;
pub use matroid::{Matroid, PolyMap};
pub use polycore::{Budget, Ideal, Monomial, MonomialOrder, PolyMatrix, Polynomial, Scalar, Var};
pub use verify::WitnessReport;
