//! Dimensions of secant varieties of two-factor Segre-Veronese varieties.
//!
//! Dimensions are computed two independent ways, by tangent-space ranks at
//! random points and by fat-point ideals in `P^(n+m)`, both exactly over
//! prime fields. For `P^n x P^1` they are checked against the closed-form
//! classification of defective cases, whose inductive proof is replayed as
//! exact arithmetic, and applied to Grassmann secant varieties of Veronese
//! varieties.

pub mod affine;
pub mod error;
pub mod field;
pub mod grassmann;
pub mod matrix;
pub mod monomial;
pub mod numerology;
pub mod replay;
pub mod sweep;
pub mod terracini;
pub mod variety;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use matrix::ConditionMatrix;
pub use numerology::{classify, ClassificationVerdict, Numerology, Rule};
pub use terracini::{MonteCarloPlan, SecantReport};
pub use variety::SegreVeroneseSpec;
