//! Occurrence counts `c(B; n) = |W_n|_B` computed three independent ways.
//!
//! - [`naive`] scans a materialized iterate.
//! - [`block`] recurses through the block decomposition of `W_n` with
//!   memoized prefix/suffix summaries and never materializes anything.
//! - [`recurrence`] evaluates the per-family linear recurrences for digits and
//!   length-2 factors.
//!
//! A fourth source, the closed-form generating functions of [`crate::gf`],
//! is reachable through [`count_series`] with [`Engine::ClosedForm`].

pub mod block;
pub mod naive;
pub mod recurrence;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::words::{KParam, Word};
use crate::{gf, Error, Result};

pub use block::{count_block, count_block_series, BlockCounter, BlockSummary};
pub use naive::{count_naive, count_naive_series};
pub use recurrence::{count_digit_rec, count_factor2_rec, count_shifted_pair_rec};

/// Which engine produced a [`CountSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Naive,
    Block,
    Recurrence,
    ClosedForm,
}

impl Engine {
    pub const ALL: [Engine; 4] = [
        Engine::Naive,
        Engine::Block,
        Engine::Recurrence,
        Engine::ClosedForm,
    ];
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Naive => "naive",
            Engine::Block => "block",
            Engine::Recurrence => "rec",
            Engine::ClosedForm => "ogf",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Engine::Naive),
            "block" => Ok(Engine::Block),
            "rec" | "recurrence" => Ok(Engine::Recurrence),
            "ogf" | "closed-form" => Ok(Engine::ClosedForm),
            other => Err(Error::Parse(format!("unknown engine {other:?}"))),
        }
    }
}

/// The counts `c(B; 0), c(B; 1), ...` of one factor, tagged with their source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSeries {
    pub k: KParam,
    pub factor: Word,
    pub engine: Engine,
    #[serde(with = "decimal_strings")]
    pub values: Vec<BigUint>,
}

impl CountSeries {
    /// Index of the first nonzero count, if any.
    pub fn birth(&self) -> Option<usize> {
        self.values.iter().position(|v| v != &BigUint::default())
    }

    /// One CSV row per index: `n,count`.
    pub fn to_csv(&self) -> String {
        let mut out = format!("n,{}\n", self.factor);
        for (n, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{n},{v}\n"));
        }
        out
    }
}

/// Serializes big integers as decimal strings so JSON consumers never lose precision.
pub(crate) mod decimal_strings {
    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(|v| v.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

/// Uniform entry point over the engines.
pub fn count_series(k: KParam, factor: &Word, upto: usize, engine: Engine) -> Result<CountSeries> {
    if factor.is_empty() {
        return Err(Error::EmptyFactor);
    }
    match engine {
        Engine::Naive => count_naive_series(k, factor, upto),
        Engine::Block => count_block_series(k, factor, upto),
        Engine::Recurrence => match factor.len() {
            1 => Ok(count_digit_rec(k, factor.digits()[0], upto)),
            2 => count_factor2_rec(k, factor, upto).map_err(|e| match e {
                Error::UnclassifiedFactor(_) | Error::WrongLength { .. } => inapplicable(engine, factor),
                other => other,
            }),
            _ => Err(inapplicable(engine, factor)),
        },
        Engine::ClosedForm => {
            let f = match factor.len() {
                1 => gf::ogf_digit(k, factor.digits()[0]),
                2 => gf::ogf_factor2(k, factor),
                _ => return Err(inapplicable(engine, factor)),
            }
            .map_err(|e| match e {
                Error::KTooSmall { .. } => inapplicable(engine, factor),
                other => other,
            })?;
            let values = f
                .series(upto)?
                .into_iter()
                .map(|c| c.to_biguint().expect("occurrence counts are nonnegative"))
                .collect();
            Ok(CountSeries {
                k,
                factor: factor.clone(),
                engine,
                values,
            })
        }
    }
}

fn inapplicable(engine: Engine, factor: &Word) -> Error {
    Error::EngineInapplicable {
        engine: engine.to_string(),
        factor: factor.to_string(),
    }
}
