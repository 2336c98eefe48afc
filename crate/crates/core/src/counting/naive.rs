use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{CountSeries, Engine};
use crate::words::{iterate, iterate_len, KParam, Word};
use crate::{Error, Result};

/// Number of (possibly overlapping) occurrences of `b` in `w`.
pub fn count_naive(w: &Word, b: &Word) -> Result<BigUint> {
    if b.is_empty() {
        return Err(Error::EmptyFactor);
    }
    let n = w.digits().windows(b.len()).filter(|win| *win == b.digits()).count();
    Ok(BigUint::from(n))
}

/// `c(b; n)` for `n = 0..=upto` from a single scan of `W_upto`.
///
/// Every `W_n` is a prefix of `W_upto`, so an occurrence ending at offset `e`
/// belongs to `W_n` exactly when `e <= |W_n|`.
pub fn count_naive_series(k: KParam, b: &Word, upto: usize) -> Result<CountSeries> {
    if b.is_empty() {
        return Err(Error::EmptyFactor);
    }
    let w = iterate(k, upto)?;
    let ends: Vec<usize> = w
        .digits()
        .windows(b.len())
        .enumerate()
        .filter(|(_, win)| *win == b.digits())
        .map(|(p, _)| p + b.len())
        .collect();
    let values = (0..=upto)
        .map(|n| {
            let len = iterate_len(k, n).to_usize().expect("bounded by the size guard");
            BigUint::from(ends.partition_point(|&e| e <= len))
        })
        .collect();
    Ok(CountSeries {
        k,
        factor: b.clone(),
        engine: Engine::Naive,
        values,
    })
}
