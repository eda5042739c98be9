//! Shift spaces over finite alphabets: presentations, Markov approximations,
//! exact density metrics, Markov measures, B-free and S-gap constructions.
//!
//! The crate is `no_std` with `alloc`. Every density and mean-cycle value is an
//! [`ExactRational`]; entropies and measure quantities are `f64`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod approx;
pub mod bfree;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod metrics;
pub mod rational;
pub mod sgap;
pub mod shift;
pub mod sofic;
pub mod word;

pub use error::{Error, Result};
pub use rational::ExactRational;
pub use shift::ShiftSpec;
pub use sofic::{GraphClassification, LabeledGraph, SftSpec};
pub use word::{Alphabet, PeriodicPoint, Symbol, Word};
