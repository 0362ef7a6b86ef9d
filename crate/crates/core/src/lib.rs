//! Matrix-valued orthogonal polynomials for a three-parameter family of
//! 2x2 Jacobi-type weights on (0,1).
//!
//! The library constructs the monic orthogonal families by three independent
//! routes (an explicit Rodrigues-Jacobi formula, a terminating matrix
//! hypergeometric series and the three-term recurrence), exposes their
//! closed-form norms, recurrence and Christoffel-Darboux data, the Pearson
//! ladder between derivative families, first-order shift operators with
//! their Rodrigues chain, and the five-dimensional space of order-at-most-two
//! differential operators that have the family as eigenfunctions. A
//! verification layer re-derives every structural identity numerically and
//! reports machine-readable pass/fail checks.

pub mod diffop;
pub mod error;
pub mod family;
pub mod gamma;
pub mod jacobi;
pub mod mat2;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use mat2::{CMat2, MatrixPolynomial, ScalarPoly};
pub use weights::{InverseWeightFactors, Parameters, PearsonData, WeightMatrix};
