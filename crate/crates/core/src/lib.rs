//! Exact computations for walled Brauer diagrams, labeled-partition functors,
//! coends over the downward walled Brauer category, the presented ring
//! `Λ*(Λ²H^∨⊗H)/IH`, a (2,1)-valent graph calculus and GL-multiplicity tables.
//!
//! Everything is exact: rationals are `num_rational::BigRational`, no floats.

pub mod brauer;
pub mod characters;
pub mod coend;
pub mod combinatorics;
pub mod error;
pub mod graphs;
pub mod guard;
pub mod linalg;
pub mod partition;
pub mod poly;
pub mod presentation;
pub mod selftest;
pub mod tensor_rep;

pub use error::{Error, Result};
pub use linalg::Rational;
