//! Exact polynomial arithmetic, symbolic minors and Gröbner bases.

pub mod groebner;
pub mod minor;
pub mod poly;
pub mod scalar;

pub use groebner::{buchberger, eliminate, intersect, normal_form, same_ideal, Budget, GroebnerBasis, Ideal};
pub use minor::PolyMatrix;
pub use poly::{parse_polynomial, Assignment, Monomial, MonomialOrder, Polynomial, Var};
pub use scalar::Scalar;
