//! Numerical check of `c(d; n) ~ gamma * n^(s-1) * alpha^n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::root::dominant_root;
use crate::counting::count_digit_rec;
use crate::words::{Digit, KParam};
use crate::{Error, Result};

pub const DEFAULT_WINDOW: (usize, usize) = (40, 60);
pub const DEFAULT_TOLERANCE: f64 = 0.01;
const ROOT_PRECISION: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioSample {
    pub n: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub k: KParam,
    pub d: Digit,
    pub s: u32,
    pub alpha: String,
    pub window: (usize, usize),
    pub ratio_samples: Vec<RatioSample>,
    pub gamma_estimate: f64,
    /// Largest relative change between consecutive ratios in the window.
    pub max_relative_fluctuation: f64,
    /// `(max - min) / min` over the whole window.
    pub window_spread: f64,
    /// `(max - min) / min` over the top quartile of the window.
    pub tail_spread: f64,
    /// `c(n_hi) / c(n_hi - 1)`, to compare against `alpha`.
    pub growth_rate: f64,
    pub tolerance: f64,
    pub converging: bool,
}

fn spread(samples: &[RatioSample]) -> f64 {
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r.ratio), hi.max(r.ratio)));
    (hi - lo) / lo
}

/// Ratio samples over `[n_lo, n_hi]` with the default tolerance.
pub fn asymptotic_check(k: KParam, d: Digit, n_lo: usize, n_hi: usize) -> Result<AsymptoticReport> {
    asymptotic_check_with(k, d, n_lo, n_hi, DEFAULT_TOLERANCE)
}

pub fn asymptotic_check_with(
    k: KParam,
    d: Digit,
    n_lo: usize,
    n_hi: usize,
    tolerance: f64,
) -> Result<AsymptoticReport> {
    k.require_at_least(3)?;
    if n_lo < 1 || n_hi <= n_lo || (n_lo as Digit) < d {
        return Err(Error::Parse(format!(
            "window {n_lo}..{n_hi} must satisfy max(1, d) <= lo < hi"
        )));
    }
    let s = (d / k.as_digit() + 1) as u32;
    let root = dominant_root(k, ROOT_PRECISION)?;
    let counts = count_digit_rec(k, d, n_hi).values;
    let alpha = &root.exact;
    let ratio_at = |n: usize| -> f64 {
        let c = BigRational::from_integer(BigInt::from(counts[n].clone()));
        let scale = BigRational::from_integer(BigInt::from(n).pow(s - 1)) * alpha.pow(n as i32);
        (c / scale).to_f64().expect("finite ratio")
    };
    let ratio_samples: Vec<RatioSample> = (n_lo..=n_hi).map(|n| RatioSample { n, ratio: ratio_at(n) }).collect();
    let max_relative_fluctuation = ratio_samples
        .windows(2)
        .map(|w| (w[1].ratio - w[0].ratio).abs() / w[0].ratio)
        .fold(0.0, f64::max);
    let quartile = (ratio_samples.len() / 4).max(2);
    let tail_spread = spread(&ratio_samples[ratio_samples.len() - quartile..]);
    let last = ratio_samples[ratio_samples.len() - 1];
    let prev = ratio_samples[ratio_samples.len() - 2];
    // r_n = gamma + beta / n + O(1/n^2) when s >= 2
    let gamma_estimate = if s == 1 {
        last.ratio
    } else {
        last.n as f64 * last.ratio - prev.n as f64 * prev.ratio
    };
    let growth_rate = BigRational::new(
        BigInt::from(counts[n_hi].clone()),
        BigInt::from(counts[n_hi - 1].clone()),
    )
    .to_f64()
    .expect("finite growth rate");
    Ok(AsymptoticReport {
        k,
        d,
        s,
        alpha: root.alpha,
        window: (n_lo, n_hi),
        window_spread: spread(&ratio_samples),
        ratio_samples,
        gamma_estimate,
        max_relative_fluctuation,
        tail_spread,
        growth_rate,
        tolerance,
        converging: max_relative_fluctuation < tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: u32) -> KParam {
        KParam::new(v).unwrap()
    }

    #[test]
    fn powers_and_convergence() {
        for (kk, d, s) in [(3, 0, 1), (4, 0, 1), (4, 5, 2), (4, 8, 3)] {
            let r = asymptotic_check(k(kk), d, 40, 60).unwrap();
            assert_eq!(r.s, s);
            assert!(r.converging, "k={kk} d={d}: {}", r.max_relative_fluctuation);
            assert!(r.ratio_samples.iter().all(|x| x.ratio > 0.0));
        }
    }

    #[test]
    fn fibonacci_constant() {
        // c(0; n) for k = 3 is F_{n+1} ~ alpha^{n+1} / sqrt(5)
        let r = asymptotic_check(k(3), 0, 40, 60).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r.gamma_estimate - phi / 5f64.sqrt()).abs() < 1e-9);
        assert!(r.alpha.starts_with("1.6180339887"));
    }

    #[test]
    fn growth_rate_independent_of_digit() {
        let alpha = dominant_root(k(5), 20).unwrap().to_f64();
        for d in [0, 3, 7, 11] {
            let r = asymptotic_check(k(5), d, 60, 90).unwrap();
            assert!((r.growth_rate - alpha).abs() < 0.05, "d={d}");
        }
    }

    #[test]
    fn rejects_bad_windows() {
        assert!(asymptotic_check(k(4), 0, 10, 10).is_err());
        assert!(asymptotic_check(k(4), 0, 0, 10).is_err());
        assert!(asymptotic_check(k(2), 0, 10, 20).is_err());
    }
}
