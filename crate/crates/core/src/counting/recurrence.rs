//! Occurrence counts from the per-family linear recurrences.
//!
//! Every recurrence here has the same skeleton: the counts of the `k - 1`
//! previous iterates (the included occurrences in the prefix blocks), plus a
//! contribution of the shifted terminal block, plus an Iverson term for the
//! unique occurrence created at a junction. Indices outside `0..` contribute 0.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{count_block, CountSeries, Engine};
use crate::factors::{classify2, Family};
use crate::words::{Digit, KParam, Word};
use crate::{Error, Result};

/// `c(n-1) + ... + c(max(n-k+1, 0))`.
fn window_sum(values: &[BigUint], n: usize, k: usize) -> BigUint {
    values[(n + 1).saturating_sub(k)..n].iter().sum()
}

fn iverson(p: bool) -> BigUint {
    BigUint::from(u8::from(p))
}

/// Evaluates `c(n) = window(n) + shifted(n - k) + extra(n)` for `n = 0..=upto`.
fn run(
    k: KParam,
    upto: usize,
    shifted: Option<&[BigUint]>,
    extra: impl Fn(usize) -> bool,
) -> Vec<BigUint> {
    let kk = k.as_usize();
    let mut values: Vec<BigUint> = Vec::with_capacity(upto + 1);
    for n in 0..=upto {
        let mut v = window_sum(&values, n, kk);
        if let Some(prev) = shifted {
            if n >= kk {
                v += &prev[n - kk];
            }
        }
        v += iverson(extra(n));
        values.push(v);
    }
    values
}

fn digit_values(k: KParam, d: Digit, upto: usize) -> Vec<BigUint> {
    let kk = k.as_digit();
    let mut values = run(k, upto, None, |n| n as Digit == d % kk);
    let mut digit = d % kk;
    while digit < d {
        digit += kk;
        values = run(k, upto, Some(&values), |_| false);
    }
    values
}

/// Digit counts `c(d; n)` via the unified digit recurrence.
pub fn count_digit_rec(k: KParam, d: Digit, upto: usize) -> CountSeries {
    CountSeries {
        k,
        factor: Word::from([d]),
        engine: Engine::Recurrence,
        values: digit_values(k, d, upto),
    }
}

/// `(0.b)` with `1 <= b <= k-1`: only the straddling occurrence of `W_b` is new.
fn zero_b_values(k: KParam, b: Digit, upto: usize) -> Vec<BigUint> {
    run(k, upto, None, |n| n as Digit == b)
}

/// `(a.0)`: zero through `n = a`, then `2^(n-a-1)` while `n < a+k-1`, then the
/// `(k-1)`-term recurrence.
fn a_zero_values(k: KParam, a: Digit, upto: usize) -> Vec<BigUint> {
    let (kk, a) = (k.as_usize(), a as usize);
    let mut values: Vec<BigUint> = Vec::with_capacity(upto + 1);
    for n in 0..=upto {
        let v = if n <= a {
            BigUint::zero()
        } else if n < a + kk - 1 {
            BigUint::from(1u8) << (n - a - 1)
        } else {
            values[n + 1 - kk..n].iter().sum()
        };
        values.push(v);
    }
    values
}

/// `(a.k)`: straddling occurrence at `n = a+k-1`, plus the shifted `(a-k.0)`
/// when `a > k`.
fn a_k_values(k: KParam, a: Digit, upto: usize) -> Vec<BigUint> {
    let kk = k.as_digit();
    let shifted = (a > kk).then(|| a_zero_values(k, a - kk, upto));
    run(k, upto, shifted.as_deref(), |n| n as Digit == a + kk - 1)
}

fn shifted_pair_values(k: KParam, inner: &[BigUint], upto: usize) -> Vec<BigUint> {
    run(k, upto, Some(inner), |_| false)
}

/// Length-2 counts, dispatched on the family of `b`.
///
/// `B2` members with `i = 0` use their own recurrence; for `i >= 1` every
/// occurrence of the second digit is preceded by `ki`, so the digit series is
/// reused. `B3` uses the piecewise power-of-two recurrence, `B1` with `i = 0`
/// the straddling recurrence and `B1` with `i >= 1` the shift recurrence.
pub fn count_factor2_rec(k: KParam, b: &Word, upto: usize) -> Result<CountSeries> {
    let class = classify2(k, b)?;
    let kk = k.as_digit();
    let values = match class.verdict {
        Family::B2 { i: 0, b: second } => zero_b_values(k, second, upto),
        Family::B2 { i, b: second } => digit_values(k, second + kk * i, upto),
        Family::B3 { a } => a_zero_values(k, a, upto),
        Family::B1 { i: 0, a } => a_k_values(k, a, upto),
        Family::B1 { .. } => return count_shifted_pair_rec(k, b, upto),
        Family::NotAFactor => {
            // the shift recurrence needs a certified occurrence
            let shaped = shifted_pair_shape(k, b);
            if shaped && count_block(k, b, upto)? > BigUint::zero() {
                return count_shifted_pair_rec(k, b, upto);
            }
            return Err(Error::UnclassifiedFactor(b.to_string()));
        }
    };
    Ok(CountSeries {
        k,
        factor: b.clone(),
        engine: Engine::Recurrence,
        values,
    })
}

fn shifted_pair_shape(k: KParam, b: &Word) -> bool {
    matches!(b.digits(), &[x, y] if x >= k.as_digit() && y > k.as_digit())
}

/// `(a.b)` with `a >= k`, `b > k`: every occurrence is included, so
/// `c((a.b); n) = window(n) + c((a-k . b-k); n-k)`.
pub fn count_shifted_pair_rec(k: KParam, b: &Word, upto: usize) -> Result<CountSeries> {
    if b.len() != 2 {
        return Err(Error::WrongLength {
            expected: 2,
            got: b.len(),
        });
    }
    if !shifted_pair_shape(k, b) {
        return Err(Error::UnclassifiedFactor(b.to_string()));
    }
    let inner = b.unshift(k.as_digit()).expect("both digits are at least k");
    let inner = count_factor2_rec(k, &inner, upto)?;
    Ok(CountSeries {
        k,
        factor: b.clone(),
        engine: Engine::Recurrence,
        values: shifted_pair_values(k, &inner.values, upto),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: u32) -> KParam {
        KParam::new(v).unwrap()
    }

    fn nums(values: &[u64]) -> Vec<BigUint> {
        values.iter().map(|&v| BigUint::from(v)).collect()
    }

    #[test]
    fn digit_columns() {
        assert_eq!(
            count_digit_rec(k(4), 0, 10).values,
            nums(&[1, 1, 2, 4, 7, 13, 24, 44, 81, 149, 274])
        );
        let nine = count_digit_rec(k(4), 9, 11).values;
        assert!(nine[..9].iter().all(Zero::is_zero));
        assert_eq!(nine[9..], nums(&[1, 3, 9])[..]);
        assert_eq!(count_digit_rec(k(3), 0, 4).values, nums(&[1, 1, 2, 3, 5]));
    }

    #[test]
    fn pair_columns() {
        let s = |x, y, upto| count_factor2_rec(k(4), &Word::from([x, y]), upto).unwrap().values;
        assert_eq!(s(1, 0, 8), nums(&[0, 0, 1, 2, 3, 6, 11, 20, 37]));
        let fourteen = s(1, 4, 8);
        assert_eq!(fourteen[4], BigUint::from(1u8));
        assert!(fourteen[..4].iter().all(Zero::is_zero));
        assert_eq!(fourteen[8], BigUint::from(7u8));
        assert_eq!(s(5, 4, 12)[12], BigUint::from(181u32));
        assert_eq!(s(9, 8, 16)[16], BigUint::from(538u32));
    }

    #[test]
    fn zero_zero_is_not_a_factor() {
        assert_eq!(
            count_factor2_rec(k(4), &Word::from([0, 0]), 10),
            Err(Error::UnclassifiedFactor("00".into()))
        );
        // shaped like the shift recurrence but absent
        assert!(count_factor2_rec(k(4), &Word::from([5, 6]), 12).is_err());
    }

    #[test]
    fn middle_case_powers_of_two() {
        for kk in 3..8u32 {
            for a in 1..6u64 {
                let v = count_factor2_rec(k(kk), &Word::from([a, 0]), 30).unwrap().values;
                for t in 1..=(kk as usize - 2) {
                    assert_eq!(v[a as usize + t], BigUint::from(1u8) << (t - 1));
                }
            }
        }
    }

    #[test]
    fn b2_own_recurrence_matches_digit_reduction() {
        for kk in 3..7u32 {
            for b in 1..kk as u64 {
                assert_eq!(zero_b_values(k(kk), b, 25), digit_values(k(kk), b, 25));
            }
        }
    }

    #[test]
    fn shifted_pair_requires_shape() {
        assert!(count_shifted_pair_rec(k(4), &Word::from([1, 4]), 5).is_err());
        assert!(count_shifted_pair_rec(k(4), &Word::from([1]), 5).is_err());
        let via_b2 = count_shifted_pair_rec(k(4), &Word::from([4, 5]), 20).unwrap();
        assert_eq!(via_b2.values, count_digit_rec(k(4), 5, 20).values);
    }
}
