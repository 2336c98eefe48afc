//! Closed-form generating functions of occurrence counts.
//!
//! All of them are built from `y`, `H_j(y) = 1/(1 - y - ... - y^j)` and
//! `G_j(y) = (1 - y^j) H_j(y) - 1` with `j = k - 1`. [`GfExpr`] keeps the
//! factored shape for display; [`GfExpr::eval`] turns it into a reduced
//! [`RationalGF`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{IntPoly, RationalGF};
use crate::factors::{classify2, Family};
use crate::words::{Digit, KParam, Word};
use crate::{Error, Result};

/// A generating function in factored form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfExpr {
    /// `y^e`.
    YPow(u64),
    /// `H_j(y)`.
    H(u32),
    /// `G_j(y)`.
    G(u32),
    Pow(Box<GfExpr>, u32),
    Mul(Vec<GfExpr>),
    Add(Vec<GfExpr>),
}

impl GfExpr {
    pub fn eval(&self) -> RationalGF {
        match self {
            GfExpr::YPow(e) => RationalGF::y_pow(*e as usize),
            GfExpr::H(j) => h(*j),
            GfExpr::G(j) => g(*j),
            GfExpr::Pow(base, e) => base.eval().pow(*e),
            GfExpr::Mul(fs) => fs.iter().fold(RationalGF::one(), |acc, f| acc.mul(&f.eval())),
            GfExpr::Add(ts) => ts
                .iter()
                .fold(RationalGF::from_poly(IntPoly::zero()), |acc, t| acc.add(&t.eval())),
        }
    }

    /// Flattens nested products, merges powers of `y` and drops one-term sums.
    pub fn simplify(self) -> GfExpr {
        match self {
            GfExpr::Add(ts) => {
                let mut ts: Vec<GfExpr> = ts.into_iter().map(GfExpr::simplify).collect();
                if ts.len() == 1 {
                    ts.pop().expect("one term")
                } else {
                    GfExpr::Add(ts)
                }
            }
            GfExpr::Mul(fs) => {
                let mut y = 0;
                let mut rest = Vec::new();
                let mut stack: Vec<GfExpr> = fs.into_iter().map(GfExpr::simplify).collect();
                stack.reverse();
                while let Some(f) = stack.pop() {
                    match f {
                        GfExpr::YPow(e) => y += e,
                        GfExpr::Mul(inner) => stack.extend(inner.into_iter().rev()),
                        GfExpr::Pow(_, 0) => {}
                        other => rest.push(other),
                    }
                }
                let mut out = Vec::new();
                if y > 0 || rest.is_empty() {
                    out.push(GfExpr::YPow(y));
                }
                out.extend(rest);
                if out.len() == 1 {
                    out.pop().expect("one factor")
                } else {
                    GfExpr::Mul(out)
                }
            }
            GfExpr::Pow(base, 1) => base.simplify(),
            GfExpr::Pow(base, e) => GfExpr::Pow(Box::new(base.simplify()), e),
            other => other,
        }
    }
}

impl fmt::Display for GfExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfExpr::YPow(0) => f.write_str("1"),
            GfExpr::YPow(1) => f.write_str("y"),
            GfExpr::YPow(e) => write!(f, "y^{e}"),
            GfExpr::H(j) => write!(f, "H{j}(y)"),
            GfExpr::G(j) => write!(f, "G{j}(y)"),
            GfExpr::Pow(base, e) => match **base {
                GfExpr::Add(_) | GfExpr::Mul(_) => write!(f, "({base})^{e}"),
                _ => write!(f, "{base}^{e}"),
            },
            GfExpr::Mul(fs) => {
                for (i, factor) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    match factor {
                        GfExpr::Add(_) => write!(f, "({factor})")?,
                        _ => write!(f, "{factor}")?,
                    }
                }
                Ok(())
            }
            GfExpr::Add(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        }
    }
}

/// `H_j(y) = 1 / (1 - y - ... - y^j)`.
pub fn h(j: u32) -> RationalGF {
    RationalGF::new(IntPoly::one(), IntPoly::bonacci_denominator(j as usize))
        .expect("constant term 1")
}

/// `G_j(y) = (1 - y^j) H_j(y) - 1`.
pub fn g(j: u32) -> RationalGF {
    let one_minus = &IntPoly::one() - &IntPoly::monomial(BigInt::one(), j as usize);
    RationalGF::from_poly(one_minus)
        .mul(&h(j))
        .sub(&RationalGF::one())
}

fn require_k3(k: KParam) -> Result<u32> {
    Ok(k.require_at_least(3)?.get())
}

/// Digit counts: `y^d * H_{k-1}^(floor(d/k) + 1)`.
pub fn ogf_digit_expr(k: KParam, d: Digit) -> Result<GfExpr> {
    let kk = require_k3(k)?;
    let s = (d / Digit::from(kk) + 1) as u32;
    Ok(GfExpr::Mul(vec![GfExpr::YPow(d), GfExpr::Pow(Box::new(GfExpr::H(kk - 1)), s)]).simplify())
}

pub fn ogf_digit(k: KParam, d: Digit) -> Result<RationalGF> {
    Ok(ogf_digit_expr(k, d)?.eval())
}

/// Multiplies a generating function by `y^k H_{k-1}`, the effect of shifting
/// a factor by `k` when all its occurrences are included.
pub fn ogf_shift(k: KParam, base: &RationalGF) -> Result<RationalGF> {
    let kk = require_k3(k)?;
    Ok(RationalGF::y_pow(kk as usize).mul(&h(kk - 1)).mul(base))
}

/// Length-2 factors, one closed form per family.
pub fn ogf_factor2_expr(k: KParam, b: &Word) -> Result<GfExpr> {
    let kk = require_k3(k)?;
    let class = classify2(k, b)?;
    let j = kk - 1;
    let kd = Digit::from(kk);
    let h_pow = |i: u64| GfExpr::Pow(Box::new(GfExpr::H(j)), i as u32 + 1);
    let expr = match class.verdict {
        Family::B2 { i, b } => GfExpr::Mul(vec![GfExpr::YPow(b + kd * i), h_pow(i)]),
        Family::B3 { a } => GfExpr::Mul(vec![GfExpr::YPow(a), GfExpr::G(j)]),
        Family::B1 { i, a } => {
            let mut tail = vec![GfExpr::YPow(kd - 1)];
            if a > kd {
                tail.push(GfExpr::G(j));
            }
            GfExpr::Mul(vec![GfExpr::YPow(a + kd * i), h_pow(i), GfExpr::Add(tail)])
        }
        Family::NotAFactor => return Err(Error::NotAFactor(b.to_string())),
    };
    Ok(expr.simplify())
}

pub fn ogf_factor2(k: KParam, b: &Word) -> Result<RationalGF> {
    Ok(ogf_factor2_expr(k, b)?.eval())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: u32) -> KParam {
        KParam::new(v).unwrap()
    }

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn h_series() {
        assert_eq!(h(3).series(9).unwrap(), ints(&[1, 1, 2, 4, 7, 13, 24, 44, 81, 149]));
        assert_eq!(h(1).series(5).unwrap(), ints(&[1; 6]));
        assert_eq!(h(2).series(7).unwrap(), ints(&[1, 1, 2, 3, 5, 8, 13, 21]));
    }

    #[test]
    fn g_series() {
        assert_eq!(g(3).series(10).unwrap(), ints(&[0, 1, 2, 3, 6, 11, 20, 37, 68, 125, 230]));
        assert_eq!(g(4).series(5).unwrap(), ints(&[0, 1, 2, 4, 7, 14]));
        for j in 1..9 {
            assert_eq!(g(j).series(0).unwrap(), ints(&[0]));
        }
    }

    #[test]
    fn digit_forms() {
        let five = ogf_digit(k(4), 5).unwrap().series(17).unwrap();
        assert_eq!(
            five[5..],
            ints(&[1, 2, 5, 12, 26, 56, 118, 244, 499, 1010, 2027, 4040, 8004])[..]
        );
        assert_eq!(ogf_digit(k(4), 0).unwrap(), h(3));
        let eight = ogf_digit(k(4), 8).unwrap().series(15).unwrap();
        assert_eq!(eight[8..], ints(&[1, 3, 9, 25, 63, 153, 359, 819])[..]);
        assert_eq!(ogf_digit(k(2), 0), Err(Error::KTooSmall { k: 2, min: 3 }));
        assert_eq!(ogf_digit_expr(k(4), 5).unwrap().to_string(), "y^5 * H3(y)^2");
        assert_eq!(ogf_digit_expr(k(4), 0).unwrap().to_string(), "H3(y)");
    }

    #[test]
    fn shift_moves_digit_by_k() {
        let shifted = ogf_shift(k(4), &ogf_digit(k(4), 1).unwrap()).unwrap();
        assert_eq!(shifted, ogf_digit(k(4), 5).unwrap());
        let mut f = ogf_digit(k(5), 2).unwrap();
        for i in 1..4 {
            f = ogf_shift(k(5), &f).unwrap();
            assert!(f.gf_equal(&ogf_digit(k(5), 2 + 5 * i).unwrap()));
        }
    }

    #[test]
    fn pair_forms() {
        let pair = |x, y| Word::from([x, y]);
        let e = ogf_factor2_expr(k(4), &pair(5, 4)).unwrap();
        assert_eq!(e.to_string(), "y^5 * H3(y) * (y^3 + G3(y))");
        let s = e.eval().series(16).unwrap();
        assert_eq!(s[6..], ints(&[1, 3, 8, 18, 40, 86, 181, 375, 767, 1553, 3118])[..]);

        let e = ogf_factor2_expr(k(4), &pair(3, 0)).unwrap();
        assert_eq!(e.to_string(), "y^3 * G3(y)");
        assert_eq!(e.eval().series(10).unwrap(), ints(&[0, 0, 0, 0, 1, 2, 3, 6, 11, 20, 37]));

        let e = ogf_factor2_expr(k(4), &pair(3, 4)).unwrap();
        assert_eq!(e.to_string(), "y^6 * H3(y)");
        assert_eq!(e.eval().series(13).unwrap()[6..], ints(&[1, 1, 2, 4, 7, 13, 24, 44])[..]);

        assert_eq!(ogf_factor2_expr(k(4), &pair(1, 0)).unwrap().to_string(), "y * G3(y)");
        assert!(ogf_factor2(k(4), &pair(0, 1)).unwrap().gf_equal(&ogf_digit(k(4), 1).unwrap()));
        assert_eq!(ogf_factor2(k(4), &pair(0, 0)), Err(Error::NotAFactor("00".into())));
    }

    #[test]
    fn h_and_g_match_aux_sequences() {
        for j in 2..=8u32 {
            let aux = crate::words::aux_sequences(k(j), 30);
            let as_int = |v: &[num_bigint::BigUint]| v.iter().map(|x| BigInt::from(x.clone())).collect::<Vec<_>>();
            assert_eq!(h(j).series(30).unwrap(), as_int(&aux.h));
            assert_eq!(g(j).series(30).unwrap(), as_int(&aux.g));
            assert_eq!(g(j).denominator_power_of(j as usize), Some(1));
        }
    }
}
