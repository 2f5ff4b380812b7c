//! Cryptographic property analysis for substitution boxes.
//!
//! The crate models an S-box as a lookup table for a vectorial Boolean
//! function `F_2^n -> F_2^m` and computes the standard attack-resistance
//! metrics on it: Walsh and autocorrelation spectra, linear and differential
//! distribution tables, boomerang and differential-linear connectivity,
//! algebraic normal form and field interpolation, and the DPA-oriented
//! side-channel metrics. Every spectral metric has two independent
//! computation routes (a fast transform and a naive definitional count) so
//! results can be cross-checked, and a bounds catalogue turns raw values
//! into verdicts.

pub mod affine;
pub mod algebraic;
pub mod avalanche;
pub mod bounds;
pub mod combined;
pub mod corpus;
pub mod differential;
pub mod error;
pub mod linear;
pub mod ratio;
pub mod report;
pub mod sbox;
pub mod sca;
pub mod spectral;
pub mod table5;

pub use error::Error;
pub use ratio::Ratio;
pub use sbox::SBox;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
