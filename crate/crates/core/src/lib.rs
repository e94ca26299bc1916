//! Exact-arithmetic deformation calculus.
//!
//! Rational, trigonometric and rational-trigonometric deformations of
//! numbers, difference calculus, series, the quantum plane, and the
//! KZ/dynamical differential operators, with machine verification of the
//! defining identities over exact rational and rational-function scalars.

pub mod calculus;
pub mod diffop;
pub mod duality;
pub mod error;
pub mod glrep;
pub mod kzdd;
pub mod matrix;
pub mod numbers;
pub mod plane;
pub mod poly;
pub mod rational;
pub mod ratfunc;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use poly::{Monomial, SparsePoly};
pub use rational::Rational;
pub use ratfunc::RatFunc;
