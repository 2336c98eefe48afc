//! Minimal linear recurrences over the rationals (Berlekamp–Massey).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::counting::CountSeries;
use crate::gf::IntPoly;
use crate::{Error, Result};

/// Terms kept back from the fit and used only to validate it.
pub const HOLDOUT: usize = 8;

/// `c_n = a_1 c_{n-1} + ... + a_r c_{n-r}` for `n >= offset + r`.
///
/// Leading zeros of the input are skipped before fitting; `offset` records
/// how many. The characteristic polynomial is `x^r - a_1 x^{r-1} - ... - a_r`
/// scaled to a primitive integer polynomial with positive leading
/// coefficient, stored lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceFit {
    pub order: usize,
    #[serde(serialize_with = "rationals")]
    pub coefficients: Vec<BigRational>,
    pub characteristic_polynomial: IntPoly,
    pub offset: usize,
    pub fitted_from: usize,
    pub validated_through: usize,
    pub validated: bool,
}

fn rationals<S: Serializer>(values: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

impl RecurrenceFit {
    /// Predicts the next term from the `order` preceding ones.
    pub fn predict(&self, history: &[BigInt]) -> BigRational {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, a)| a * BigRational::from_integer(history[history.len() - 1 - j].clone()))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    /// The characteristic polynomial with all roots at zero divided out.
    pub fn nonzero_part(&self) -> IntPoly {
        self.characteristic_polynomial.strip_low_powers()
    }
}

/// Incremental Berlekamp–Massey state.
struct Lfsr {
    c: Vec<BigRational>,
    b: Vec<BigRational>,
    len: usize,
    gap: usize,
    last: BigRational,
}

impl Lfsr {
    fn new() -> Self {
        Lfsr {
            c: vec![BigRational::one()],
            b: vec![BigRational::one()],
            len: 0,
            gap: 1,
            last: BigRational::one(),
        }
    }

    fn push(&mut self, s: &[BigRational]) {
        let n = s.len() - 1;
        let mut d = s[n].clone();
        for i in 1..=self.len {
            if let Some(ci) = self.c.get(i) {
                d += ci * &s[n - i];
            }
        }
        if d.is_zero() {
            self.gap += 1;
            return;
        }
        let factor = &d / &self.last;
        let mut next = self.c.clone();
        if next.len() < self.b.len() + self.gap {
            next.resize(self.b.len() + self.gap, BigRational::zero());
        }
        for (i, bi) in self.b.iter().enumerate() {
            next[i + self.gap] -= &factor * bi;
        }
        if 2 * self.len <= n {
            self.b = std::mem::replace(&mut self.c, next);
            self.len = n + 1 - self.len;
            self.last = d;
            self.gap = 1;
        } else {
            self.c = next;
            self.gap += 1;
        }
    }

    fn coefficients(&self) -> Vec<BigRational> {
        (1..=self.len)
            .map(|i| -self.c.get(i).cloned().unwrap_or_else(BigRational::zero))
            .collect()
    }
}

fn characteristic(coefficients: &[BigRational]) -> IntPoly {
    let r = coefficients.len();
    let lcm = coefficients
        .iter()
        .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    // x^r - a_1 x^{r-1} - ... - a_r, lowest degree first
    let mut coeffs = vec![BigInt::zero(); r + 1];
    coeffs[r] = lcm.clone();
    for (j, a) in coefficients.iter().enumerate() {
        coeffs[r - 1 - j] = -(a * BigRational::from_integer(lcm.clone())).to_integer();
    }
    IntPoly::new(coeffs).primitive_part()
}

/// Fits the shortest recurrence to `values`, refusing orders above `order_cap`.
///
/// The last [`HOLDOUT`] terms are used for validation: the fit is
/// `validated` when the recurrence found on the remaining terms already
/// predicts them and those terms determine it uniquely.
pub fn fit_values(values: &[BigInt], order_cap: usize) -> Result<RecurrenceFit> {
    let offset = values.iter().position(|v| !v.is_zero()).unwrap_or(values.len());
    let body: Vec<BigRational> = values[offset..]
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    let needed = offset + HOLDOUT + 2;
    if values.len() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            got: values.len(),
        });
    }
    let fit_len = body.len() - HOLDOUT;
    let mut lfsr = Lfsr::new();
    let mut at_fit = None;
    for n in 0..body.len() {
        lfsr.push(&body[..=n]);
        if n + 1 == fit_len {
            at_fit = Some((lfsr.len, lfsr.coefficients()));
        }
    }
    let order = lfsr.len;
    if order > order_cap || 2 * order > body.len() {
        return Err(Error::NoRecurrenceFound {
            order_cap: order_cap.min(body.len() / 2),
        });
    }
    let coefficients = lfsr.coefficients();
    let validated = at_fit.is_some_and(|(len, c)| len == order && c == coefficients) && 2 * order <= fit_len;
    Ok(RecurrenceFit {
        order,
        characteristic_polynomial: characteristic(&coefficients),
        coefficients,
        offset,
        fitted_from: offset + fit_len,
        validated_through: values.len() - 1,
        validated,
    })
}

/// Fits the shortest recurrence consistent with every term of the series.
pub fn fit_recurrence(series: &CountSeries) -> Result<RecurrenceFit> {
    let values = to_ints(&series.values);
    fit_values(&values, values.len())
}

pub(crate) fn to_ints(values: &[BigUint]) -> Vec<BigInt> {
    values.iter().map(|v| BigInt::from(v.clone())).collect()
}
