//! Exact decision procedures for separatrix existence on decorated
//! resolution dual graphs of foliated surface singularities.
//!
//! The arithmetic layer ([`exactfield`], [`linalg`]) is generic over an
//! exact [`Scalar`]; the aliases below fix it to arbitrary-precision
//! rationals, which is what the CLI and the fixtures use.

pub mod cli;
pub mod dualgraph;
pub mod error;
pub mod holonomy;
pub mod exactfield;
pub mod intersection;
pub mod linalg;
pub mod verdict;

pub use error::{Error, Result};
pub use exactfield::{Integral, Scalar};

pub type Rational = num_rational::BigRational;
pub type NumberField = exactfield::NumberField<Rational>;
pub type FieldElement = exactfield::FieldElement<Rational>;
pub type DualGraph = dualgraph::DualGraph<Rational>;
