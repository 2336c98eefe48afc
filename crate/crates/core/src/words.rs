//! Digits, words and the iterates of the k-Bonacci morphism.
//!
//! Digits are letters of an infinite alphabet and are unbounded in principle.
//! They are stored as `u64`: the largest digit in `W_n` is `n`, so any iterate
//! that can be counted at desk scale stays far below the cap. Shifts use
//! checked arithmetic. Lengths and counts are arbitrary-precision.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A letter of the alphabet of natural numbers.
pub type Digit = u64;

/// Default bound on the number of digits [`iterate`] will materialize.
pub const DEFAULT_SIZE_GUARD: u64 = 100_000_000;

/// The parameter `k >= 2` of the morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct KParam(u32);

impl KParam {
    pub fn new(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::KTooSmall { k, min: 2 });
        }
        Ok(KParam(k))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_digit(self) -> Digit {
        Digit::from(self.0)
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// Guard for results that only hold for `k >= 3`.
    pub fn require_at_least(self, min: u32) -> Result<Self> {
        if self.0 < min {
            return Err(Error::KTooSmall { k: self.0, min });
        }
        Ok(self)
    }
}

impl TryFrom<u32> for KParam {
    type Error = Error;

    fn try_from(k: u32) -> Result<Self> {
        KParam::new(k)
    }
}

impl From<KParam> for u32 {
    fn from(k: KParam) -> u32 {
        k.0
    }
}

impl fmt::Display for KParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite word over the natural numbers.
///
/// Serializes as a JSON array of integers. `Display` writes the digits
/// back to back, or separated by `·` as soon as one digit exceeds 9.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Digit>);

impl Word {
    pub fn new(digits: Vec<Digit>) -> Self {
        Word(digits)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_digit(&self) -> Option<Digit> {
        self.0.iter().copied().max()
    }

    pub fn min_digit(&self) -> Option<Digit> {
        self.0.iter().copied().min()
    }

    /// `n ⊕ w`: adds `n` to every digit.
    pub fn shift(&self, n: Digit) -> Result<Word> {
        self.0
            .iter()
            .map(|&d| d.checked_add(n).ok_or(Error::DigitOverflow { digit: d, by: n }))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Inverse of [`Word::shift`]; `None` when some digit is below `n`.
    pub fn unshift(&self, n: Digit) -> Option<Word> {
        self.0
            .iter()
            .map(|&d| d.checked_sub(n))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    /// Letterwise reduction modulo `k`.
    pub fn project(&self, k: KParam) -> Word {
        let k = k.as_digit();
        Word(self.0.iter().map(|&d| d % k).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut digits = Vec::with_capacity(self.len() + other.len());
        digits.extend_from_slice(&self.0);
        digits.extend_from_slice(&other.0);
        Word(digits)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<Vec<Digit>> for Word {
    fn from(digits: Vec<Digit>) -> Self {
        Word(digits)
    }
}

impl From<&[Digit]> for Word {
    fn from(digits: &[Digit]) -> Self {
        Word(digits.to_vec())
    }
}

impl<const N: usize> From<[Digit; N]> for Word {
    fn from(digits: [Digit; N]) -> Self {
        Word(digits.to_vec())
    }
}

impl FromIterator<Digit> for Word {
    fn from_iter<I: IntoIterator<Item = Digit>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let separated = self.0.iter().any(|&d| d > 9);
        for (i, d) in self.0.iter().enumerate() {
            if separated && i > 0 {
                f.write_str("·")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Parses `9,8`, `9.8`, `9·8`, `9 8`, or a run of single characters such as
/// `0102013` or `9c`, where letters stand for 10, 11, ...
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let is_sep = |c: char| c == ',' || c == '.' || c == '·' || c.is_whitespace();
        if s.contains(is_sep) {
            s.split(is_sep)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<Digit>()
                        .map_err(|e| Error::Parse(format!("bad digit {t:?}: {e}")))
                })
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(36)
                        .map(Digit::from)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
                })
                .collect()
        }
    }
}

/// Image of a single digit under `phi_k`.
pub fn phi(k: KParam, d: Digit) -> Word {
    let kk = k.as_digit();
    let (i, j) = (d / kk, d % kk);
    if j + 2 <= kk {
        Word(vec![kk * i, kk * i + j + 1])
    } else {
        Word(vec![kk * i + kk])
    }
}

/// The k-Bonacci numbers `f_0, ..., f_upto`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BonacciNumbers {
    pub k: KParam,
    pub values: Vec<BigUint>,
}

impl BonacciNumbers {
    pub fn get(&self, m: usize) -> &BigUint {
        &self.values[m]
    }
}

/// Values of a k-term additive recurrence seeded with `initial`.
fn k_term_sequence(k: usize, initial: &[BigUint], upto: usize) -> Vec<BigUint> {
    let mut values: Vec<BigUint> = Vec::with_capacity(upto + 1);
    for m in 0..=upto {
        let v = if m < initial.len() {
            initial[m].clone()
        } else {
            values[m - k..m].iter().sum()
        };
        values.push(v);
    }
    values
}

pub fn bonacci(k: KParam, upto: usize) -> BonacciNumbers {
    let kk = k.as_usize();
    let mut initial = vec![BigUint::zero(); kk];
    initial[kk - 1] = BigUint::one();
    BonacciNumbers {
        k,
        values: k_term_sequence(kk, &initial, upto),
    }
}

/// `|W_n^(k)| = f_{n+k}^(k)`.
pub fn iterate_len(k: KParam, n: usize) -> BigUint {
    let m = n + k.as_usize();
    bonacci(k, m).values.swap_remove(m)
}

/// The auxiliary sequences `h` and `g`, both obeying the k-term recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxSequences {
    pub k: KParam,
    pub h: Vec<BigUint>,
    pub g: Vec<BigUint>,
}

pub fn aux_sequences(k: KParam, upto: usize) -> AuxSequences {
    let kk = k.as_usize();
    let powers: Vec<BigUint> = (1..kk).map(|n| BigUint::one() << (n - 1)).collect();
    let mut h_init = vec![BigUint::one()];
    h_init.extend(powers.iter().cloned());
    let mut g_init = vec![BigUint::zero()];
    g_init.extend(powers);
    AuxSequences {
        k,
        h: k_term_sequence(kk, &h_init, upto),
        g: k_term_sequence(kk, &g_init, upto),
    }
}

/// `W_n^(k)`, refusing words longer than [`DEFAULT_SIZE_GUARD`].
pub fn iterate(k: KParam, n: usize) -> Result<Word> {
    iterate_with_guard(k, n, DEFAULT_SIZE_GUARD)
}

pub fn iterate_with_guard(k: KParam, n: usize, guard: u64) -> Result<Word> {
    let len = iterate_len(k, n);
    let len_u64 = len.to_u64().filter(|&l| l <= guard);
    let Some(len) = len_u64 else {
        return Err(Error::SizeGuardExceeded {
            n,
            len: len.to_string(),
            guard,
        });
    };
    let mut digits = Vec::with_capacity(len as usize);
    digits.extend(iterate_stream(k, n));
    Ok(Word(digits))
}

/// Lazy left-to-right expansion of `phi_k^n(0)`.
///
/// Holds at most one pending image per level, so memory is `O(n)` no matter
/// how long the iterate is.
#[derive(Debug, Clone)]
pub struct IterateStream {
    k: KParam,
    // (digit, levels of phi still to apply), top of stack is next
    stack: Vec<(Digit, usize)>,
}

pub fn iterate_stream(k: KParam, n: usize) -> IterateStream {
    IterateStream {
        k,
        stack: vec![(0, n)],
    }
}

impl Iterator for IterateStream {
    type Item = Digit;

    fn next(&mut self) -> Option<Digit> {
        loop {
            let (d, levels) = self.stack.pop()?;
            if levels == 0 {
                return Some(d);
            }
            let image = phi(self.k, d);
            for &e in image.digits().iter().rev() {
                self.stack.push((e, levels - 1));
            }
        }
    }
}

/// One block of the top-level decomposition of `W_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    /// `shift ⊕ W_index`.
    Iterate { index: usize, shift: Digit },
    /// The single letter closing `W_n` when `n < k`.
    Letter(Digit),
}

impl Block {
    pub fn materialize(&self, k: KParam) -> Result<Word> {
        match *self {
            Block::Iterate { index, shift } => iterate(k, index)?.shift(shift),
            Block::Letter(d) => Ok(Word(vec![d])),
        }
    }

    pub fn len(&self, k: KParam) -> BigUint {
        match *self {
            Block::Iterate { index, .. } => iterate_len(k, index),
            Block::Letter(_) => BigUint::one(),
        }
    }
}

/// Splits `W_n` (`n >= 1`) into its blocks:
/// `W_{n-1} ... W_0 n` when `n < k`, otherwise
/// `W_{n-1} ... W_{n-k+1} (k ⊕ W_{n-k})`.
pub fn decompose(k: KParam, n: usize) -> Vec<Block> {
    assert!(n >= 1, "W_0 has no decomposition");
    let kk = k.as_usize();
    if n < kk {
        let mut blocks: Vec<Block> = (0..n)
            .rev()
            .map(|index| Block::Iterate { index, shift: 0 })
            .collect();
        blocks.push(Block::Letter(n as Digit));
        blocks
    } else {
        let mut blocks: Vec<Block> = (n - kk + 1..n)
            .rev()
            .map(|index| Block::Iterate { index, shift: 0 })
            .collect();
        blocks.push(Block::Iterate {
            index: n - kk,
            shift: k.as_digit(),
        });
        blocks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: u32) -> KParam {
        KParam::new(v).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn u(values: &[u64]) -> Vec<BigUint> {
        values.iter().map(|&v| BigUint::from(v)).collect()
    }

    #[test]
    fn k_below_two_is_rejected() {
        assert_eq!(KParam::new(1), Err(Error::KTooSmall { k: 1, min: 2 }));
    }

    #[test]
    fn phi_cases() {
        assert_eq!(phi(k(2), 0), w("01"));
        assert_eq!(phi(k(3), 2), w("3"));
        assert_eq!(phi(k(4), 6), Word::from([4, 7]));
        assert_eq!(phi(k(2), 1), w("2"));
        assert_eq!(phi(k(2), 3), w("4"));
        assert_eq!(phi(k(2), 2), w("23"));
    }

    #[test]
    fn small_iterates() {
        assert_eq!(iterate(k(3), 3).unwrap(), w("0102013"));
        assert_eq!(iterate(k(3), 4).unwrap(), w("0102013010234"));
        for kk in 2..8 {
            assert_eq!(iterate(k(kk), 0).unwrap(), w("0"));
        }
        // printed prefix of W^(2)
        let w2 = iterate(k(2), 7).unwrap();
        let printed = Word::from([0, 1, 2, 2, 3, 2, 3, 4, 2, 3, 4, 4, 5, 2, 3, 4, 4, 5, 4, 5, 6]);
        assert!(printed.is_prefix_of(&w2));
    }

    #[test]
    fn stream_matches_materialized() {
        assert_eq!(
            iterate_stream(k(3), 4).collect::<Word>(),
            iterate(k(3), 4).unwrap()
        );
        for n in 1..10 {
            assert_eq!(iterate_stream(k(5), n).next(), Some(0));
        }
    }

    #[test]
    fn stream_yield_count() {
        let count = iterate_stream(k(4), 15).count();
        assert_eq!(BigUint::from(count), bonacci(k(4), 19).values[19]);
    }

    #[test]
    fn size_guard() {
        let err = iterate_with_guard(k(3), 10, 100).unwrap_err();
        assert!(matches!(err, Error::SizeGuardExceeded { n: 10, .. }));
        assert!(iterate_with_guard(k(3), 3, 7).is_ok());
    }

    #[test]
    fn decompose_examples() {
        use Block::*;
        assert_eq!(
            decompose(k(3), 4),
            vec![
                Iterate { index: 3, shift: 0 },
                Iterate { index: 2, shift: 0 },
                Iterate { index: 1, shift: 3 }
            ]
        );
        assert_eq!(decompose(k(3), 1), vec![Iterate { index: 0, shift: 0 }, Letter(1)]);
        assert_eq!(
            decompose(k(5), 2),
            vec![Iterate { index: 1, shift: 0 }, Iterate { index: 0, shift: 0 }, Letter(2)]
        );
        let parts: Vec<String> = decompose(k(3), 4)
            .iter()
            .map(|b| b.materialize(k(3)).unwrap().to_string())
            .collect();
        assert_eq!(parts, ["0102013", "0102", "34"]);
    }

    #[test]
    fn shift_and_project() {
        assert_eq!(w("0102013").shift(2).unwrap(), w("2324235"));
        assert_eq!(w("01").shift(3).unwrap(), w("34"));
        assert_eq!(w("0102013").shift(0).unwrap(), w("0102013"));
        assert_eq!(w("0102013").project(k(3)), w("0102010"));
        assert_eq!(w("0122323").project(k(2)), w("0100101"));
        assert_eq!(Word::empty().project(k(5)), Word::empty());
        assert!(Word::from([u64::MAX]).shift(1).is_err());
        assert_eq!(w("2324235").unshift(2), Some(w("0102013")));
        assert_eq!(w("12").unshift(2), None);
    }

    #[test]
    fn bonacci_values() {
        assert_eq!(bonacci(k(2), 7).values, u(&[0, 1, 1, 2, 3, 5, 8, 13]));
        assert_eq!(bonacci(k(4), 7).values, u(&[0, 0, 0, 1, 1, 2, 4, 8]));
        assert_eq!(
            BigUint::from(iterate(k(4), 15).unwrap().len()),
            bonacci(k(4), 19).values[19]
        );
    }

    #[test]
    fn aux_values() {
        let a4 = aux_sequences(k(4), 6);
        assert_eq!(a4.h, u(&[1, 1, 2, 4, 8, 15, 29]));
        assert_eq!(a4.g[..6], u(&[0, 1, 2, 4, 7, 14])[..]);
        let a3 = aux_sequences(k(3), 10);
        assert_eq!(a3.g, u(&[0, 1, 2, 3, 6, 11, 20, 37, 68, 125, 230]));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(w("0102013").to_string(), "0102013");
        assert_eq!(Word::from([9, 12]).to_string(), "9·12");
        assert_eq!(w("9,8"), Word::from([9, 8]));
        assert_eq!(w("13·8"), Word::from([13, 8]));
        assert_eq!(w("9c"), Word::from([9, 12]));
        assert_eq!(w("d8"), Word::from([13, 8]));
        assert!("0-1".parse::<Word>().is_err());
        assert!("9,x".parse::<Word>().is_err());
        assert_eq!(serde_json::to_string(&Word::from([4, 7])).unwrap(), "[4,7]");
    }
}
