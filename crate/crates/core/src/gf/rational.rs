use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntPoly;
use crate::{Error, Result};

/// A rational function `num / den` with a power-series expansion at zero.
///
/// Always stored reduced: the polynomial gcd is divided out, the common
/// integer content removed and the denominator's constant term is positive.
/// Two equal rational functions therefore have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalGF {
    num: IntPoly,
    den: IntPoly,
}

impl RationalGF {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NonExpandable);
        }
        if num.is_zero() {
            return Ok(RationalGF {
                num,
                den: IntPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_exact(&g)?, den.div_exact(&g)?);
        let c = num.content().gcd(&den.content());
        let sign = den.coeff(0).signum();
        if sign.is_zero() {
            return Err(Error::NonExpandable);
        }
        let c = c * sign;
        num = IntPoly::new(num.coeffs().iter().map(|x| x / &c).collect());
        den = IntPoly::new(den.coeffs().iter().map(|x| x / &c).collect());
        Ok(RationalGF { num, den })
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RationalGF::new(p, IntPoly::one()).expect("denominator 1")
    }

    /// `y^e`.
    pub fn y_pow(e: usize) -> Self {
        Self::from_poly(IntPoly::monomial(BigInt::from(1), e))
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn add(&self, other: &RationalGF) -> RationalGF {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RationalGF::new(num, &self.den * &other.den).expect("product of expandable denominators")
    }

    pub fn sub(&self, other: &RationalGF) -> RationalGF {
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        RationalGF::new(num, &self.den * &other.den).expect("product of expandable denominators")
    }

    pub fn mul(&self, other: &RationalGF) -> RationalGF {
        RationalGF::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of expandable denominators")
    }

    pub fn pow(&self, e: u32) -> RationalGF {
        (0..e).fold(RationalGF::one(), |acc, _| acc.mul(self))
    }

    /// Maclaurin coefficients `[y^0 .. y^order]` by long division.
    pub fn series(&self, order: usize) -> Result<Vec<BigInt>> {
        let q0 = self.den.coeff(0);
        if q0.is_zero() {
            return Err(Error::NonExpandable);
        }
        let q = self.den.coeffs();
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for (j, qj) in q.iter().enumerate().skip(1).take(n) {
                acc -= qj * &out[n - j];
            }
            let (c, r) = acc.div_rem(&q0);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            out.push(c);
        }
        Ok(out)
    }

    /// Identity test by cross-multiplication.
    pub fn gf_equal(&self, other: &RationalGF) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// True when the denominator is `(1 - y - ... - y^k)^s` for some `s >= 0`.
    pub fn denominator_power_of(&self, k: usize) -> Option<u32> {
        let base = IntPoly::bonacci_denominator(k);
        let mut rest = self.den.clone();
        let mut s = 0;
        while rest != IntPoly::one() {
            if rest.degree().unwrap_or(0) == 0 {
                return None;
            }
            rest = rest.div_exact(&base).ok()?;
            s += 1;
        }
        Some(s)
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == IntPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Free-function form of [`RationalGF::series`].
pub fn series(f: &RationalGF, order: usize) -> Result<Vec<BigInt>> {
    f.series(order)
}

/// Free-function form of [`RationalGF::gf_equal`].
pub fn gf_equal(f: &RationalGF, g: &RationalGF) -> bool {
    f.gf_equal(g)
}
