//! The dominant root of `x^{k-1} - x^{k-2} - ... - x - 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::conjecture::bonacci_characteristic;
use crate::gf::IntPoly;
use crate::words::KParam;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominantRoot {
    pub k: KParam,
    /// Decimal expansion truncated to `precision` places.
    pub alpha: String,
    pub precision: usize,
    /// `|p(alpha)|` at the exact dyadic approximation.
    pub residual: f64,
    #[serde(skip)]
    pub exact: BigRational,
}

impl DominantRoot {
    pub fn to_f64(&self) -> f64 {
        self.exact.to_f64().expect("alpha lies in (1, 2)")
    }
}

/// Sign of `p(a / 2^bits)`, evaluated without rounding.
fn sign_at(p: &IntPoly, a: &BigInt, bits: usize) -> i8 {
    let deg = p.degree().unwrap_or(0);
    let scaled: BigInt = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (c * a.pow(i as u32)) << (bits * (deg - i)))
        .sum();
    match scaled.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn eval_rational(p: &IntPoly, x: &BigRational) -> BigRational {
    p.coeffs()
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Bisection on `[1, 2]` with exact sign tests, to `precision` decimal places.
pub fn dominant_root(k: KParam, precision: usize) -> Result<DominantRoot> {
    k.require_at_least(3)?;
    let p = bonacci_characteristic(k);
    let bits = precision * 10 / 3 + 16;
    let unit = BigInt::one() << bits;
    let (mut lo, mut hi) = (unit.clone(), &unit * 2);
    debug_assert!(sign_at(&p, &lo, bits) < 0 && sign_at(&p, &hi, bits) > 0);
    for _ in 0..bits {
        let mid: BigInt = (&lo + &hi) >> 1;
        match sign_at(&p, &mid, bits) {
            s if s < 0 => lo = mid,
            s if s > 0 => hi = mid,
            _ => {
                lo = mid.clone();
                hi = mid;
            }
        }
    }
    let exact = BigRational::new(lo.clone(), unit);
    let digits: BigInt = (&lo * BigInt::from(10u32).pow(precision as u32)) >> bits;
    let text = digits.to_string();
    let alpha = format!("{}.{}", &text[..1], &text[1..]);
    let residual = eval_rational(&p, &exact).abs().to_f64().unwrap_or(f64::INFINITY);
    Ok(DominantRoot {
        k,
        alpha,
        precision,
        residual,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: u32) -> KParam {
        KParam::new(v).unwrap()
    }

    #[test]
    fn golden_ratio() {
        let r = dominant_root(k(3), 50).unwrap();
        assert_eq!(r.alpha, "1.61803398874989484820458683436563811772030917980576");
        assert!(r.residual < 1e-45);
    }

    #[test]
    fn tribonacci_constant() {
        let r = dominant_root(k(4), 50).unwrap();
        assert!(r.alpha.starts_with("1.8392867552141611325518525646532866004241787460975"));
        assert!(r.residual < 1e-45);
    }

    #[test]
    fn roots_increase_towards_two() {
        let mut prev = 1.0;
        for kk in 3..12 {
            let a = dominant_root(k(kk), 20).unwrap().to_f64();
            assert!(a > prev && a < 2.0);
            prev = a;
        }
        assert!(dominant_root(k(7), 20).unwrap().to_f64() > 1.98);
    }

    #[test]
    fn needs_k_three() {
        assert!(dominant_root(k(2), 10).is_err());
    }
}
