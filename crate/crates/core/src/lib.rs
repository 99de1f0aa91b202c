//! Exact and numeric machinery for the quantum walk attached to F. Riesz's
//! singular continuous measure on the unit circle.
//!
//! * [`series`]: exact rationals and truncated power series with an explicit
//!   valid-order bound.
//! * [`measure`]: moments and Carathéodory series of the Riesz products.
//! * [`schur`]: the Schur algorithm, first-return amplitudes and the renewal
//!   oracle.
//! * [`ansatz`]: backbone sequence and closed forms for the nonzero
//!   Verblunsky parameters.
//! * [`cmv`]: banded CMV matrices.
//! * [`walk`]: coined and CMV walks, evolution and position laws.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod ansatz;
pub mod cmv;
pub mod measure;
pub mod schur;
pub mod series;
pub mod walk;

pub use measure::MeasureVariant;
pub use series::{Rational, TruncatedSeries};
