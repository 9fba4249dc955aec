//! Rational time stepping for linear, non-homogeneous evolution equations.

pub mod error;
pub mod linalg;
pub mod operator;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod tableau;

pub use error::{Error, Result};
pub use operator::{FactorizationCache, LinearOperator};
pub use rational::{partial_fractions, PartialFractionForm, PoleGroup, RationalFunction};
pub use scalar::Real;
pub use tableau::ButcherTableau;

/// Primary concrete instantiations.
pub type RationalFunction64 = rational::RationalFunction<f64>;
pub type PartialFractionForm64 = rational::PartialFractionForm<f64>;
pub type ButcherTableau64 = tableau::ButcherTableau<f64>;
pub type LinearOperator64 = operator::LinearOperator<f64>;
