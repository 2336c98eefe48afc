//! Exact factor-occurrence statistics for the infinite-alphabet k-Bonacci words.
//!
//! For `k >= 2` the morphism `phi_k` on the alphabet of natural numbers sends
//! `ki + j` to `(ki)(ki + j + 1)` when `j <= k - 2` and to `ki + k` when
//! `j = k - 1`. Its iterates `W_n = phi_k^n(0)` are prefixes of a single
//! infinite word `W^(k)`. This crate builds those iterates, counts factor
//! occurrences in them with three independent engines, realizes the closed-form
//! generating functions of the counts, classifies every length-2 factor and
//! checks the growth behaviour of the counting sequences.
//!
//! - [`words`]: digits, words, the morphism, iterates (materialized and
//!   streamed), block decomposition, shift and projection, k-Bonacci numbers.
//! - [`counting`]: naive scan, block-decomposition engine and recurrence engine.
//! - [`gf`]: integer polynomials, rational generating functions and the closed
//!   forms for digits and length-2 factors.
//! - [`factors`]: length-2 families, occurrence types, empirical factor sets.
//! - [`analysis`]: minimal recurrence fitting, the denominator check, dominant
//!   roots and asymptotic ratio reports.
//! - [`tables`]: embedded reference tables for `k = 4` and their regeneration.
//! - [`cli`]: the command implementations behind the `kbonacci` binary.

pub mod analysis;
pub mod cli;
pub mod counting;
mod error;
pub mod factors;
pub mod gf;
pub mod tables;
pub mod words;

pub use error::{Error, Result};
pub use words::{Digit, KParam, Word};
