//! Exact statistical distance from uniform, and Walsh/Fourier upper bounds on
//! it, for the output `Y = G X` of a linear code's generator matrix `G` applied
//! to independent symbols `X` over a prime field.
//!
//! The crate is organized bottom-up:
//!
//! - [`field_vec`]: prime-field arithmetic and the index <-> digit codec. All
//!   dense vectors over `(F_p)^k` are ordered least-significant-digit first.
//! - [`pmf`]: dense probability mass functions, convolution and tensor
//!   products.
//! - [`transforms`]: fast Walsh-Hadamard and Kronecker-factorized Fourier
//!   transforms producing [`Spectrum`] values.
//! - [`codes`]: generator matrices, codeword enumeration and weight
//!   enumerators.
//! - [`analysis`]: output distributions of `Y = G X`, exact distances and
//!   every spectral bound, gathered into a [`BoundReport`].

pub mod analysis;
pub mod codes;
mod error;
pub mod field_vec;
pub mod pmf;
pub mod transforms;

pub use analysis::{analyze, AnalyzeOptions, BoundEntry, BoundReport, SourceModel, Tightness};
pub use codes::{CompleteWeightEnumerator, LinearCode, WeightDistribution};
pub use error::{Error, Result};
pub use field_vec::{DigitVector, FieldMatrix, PrimeModulus};
pub use pmf::{Bias, Pmf};
pub use transforms::Spectrum;
