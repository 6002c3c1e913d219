//! Explicit solutions of `x^d + (x+1)^d = b` over GF(2^{4n}) for the exponent
//! `d = 2^{3n} + 2^{2n} + 2^n - 1`, together with whole-field spectrum
//! analysis used to cross-check the closed-form classification.

pub mod error;
pub mod field;
pub mod poly;
pub mod solver;
pub mod spectrum;
pub mod subgroups;

pub use error::{Error, Result};
pub use field::{Element, Field, Subfield, MAX_N};
pub use solver::{classify, solve, verify_solution, Case, Classification, SolutionSet};
pub use spectrum::{SpectrumHistogram, SweepConfig, VerificationReport};
