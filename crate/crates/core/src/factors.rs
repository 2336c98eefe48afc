//! Length-2 factor families, occurrence types and empirical factor sets.
//!
//! For `k >= 3` the length-2 factors of `W^(k)` are exactly
//!
//! - `B1 = { (ki) ⊕ (a.k) : i >= 0, a >= 1 }`
//! - `B2 = { (ki) ⊕ (0.b) : i >= 0, 1 <= b <= k-1 }`
//! - `B3 = { (a.0) : a >= 1 }`
//!
//! and for `k = 2` the family `B3` is empty because `0` occurs only once.
//! The three templates are told apart by the residue of the second digit:
//! nonzero mod `k` for `B2`, a positive multiple of `k` for `B1`, zero for `B3`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::words::{decompose, Block, iterate_len, iterate_stream, Digit, KParam, Word, DEFAULT_SIZE_GUARD};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    B1 { i: u64, a: u64 },
    B2 { i: u64, b: u64 },
    B3 { a: u64 },
    NotAFactor,
}

impl Family {
    /// Rebuilds the length-2 word from the family parameters.
    pub fn word(&self, k: KParam) -> Option<Word> {
        let kk = k.as_digit();
        match *self {
            Family::B1 { i, a } => Some(Word::from([kk * i + a, kk * i + kk])),
            Family::B2 { i, b } => Some(Word::from([kk * i, kk * i + b])),
            Family::B3 { a } => Some(Word::from([a, 0])),
            Family::NotAFactor => None,
        }
    }

    /// The iterate in which the characterization exhibits the factor.
    pub fn witness(&self, k: KParam) -> Option<usize> {
        let kk = k.as_digit();
        let n = match *self {
            Family::B1 { i, a } => a + kk - 1 + i * kk,
            Family::B2 { i, b } => b + i * kk,
            Family::B3 { a } => a + 1,
            Family::NotAFactor => return None,
        };
        Some(n as usize)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::B1 { i, a } => write!(f, "B1(i={i}, a={a})"),
            Family::B2 { i, b } => write!(f, "B2(i={i}, b={b})"),
            Family::B3 { a } => write!(f, "B3(a={a})"),
            Family::NotAFactor => f.write_str("NotAFactor"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor2Class {
    pub verdict: Family,
    pub witness: Option<usize>,
}

impl Factor2Class {
    pub fn is_factor(&self) -> bool {
        self.verdict != Family::NotAFactor
    }
}

/// Matches `b` against the three family templates.
pub fn classify2(k: KParam, b: &Word) -> Result<Factor2Class> {
    let &[x, y] = b.digits() else {
        return Err(Error::WrongLength {
            expected: 2,
            got: b.len(),
        });
    };
    let kk = k.as_digit();
    let verdict = if y % kk != 0 {
        let i = y / kk;
        if x == kk * i {
            Family::B2 { i, b: y - x }
        } else {
            Family::NotAFactor
        }
    } else if y > 0 {
        let i = y / kk - 1;
        if x > kk * i {
            Family::B1 { i, a: x - kk * i }
        } else {
            Family::NotAFactor
        }
    } else if x >= 1 && k.get() >= 3 {
        Family::B3 { a: x }
    } else {
        Family::NotAFactor
    };
    Ok(Factor2Class {
        verdict,
        witness: verdict.witness(k),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor2Entry {
    pub word: Word,
    pub class: Family,
    pub witness: usize,
}

/// All family members whose digits are at most `digit_bound`, sorted by word.
pub fn enumerate_fac2(k: KParam, digit_bound: Digit) -> Vec<Factor2Entry> {
    let kk = k.as_digit();
    let mut families = Vec::new();
    for i in 0..=digit_bound / kk {
        for a in 1..=kk {
            families.push(Family::B1 { i, a });
        }
        // a > k members of B1 at this level
        for a in kk + 1..=digit_bound.saturating_sub(kk * i) {
            families.push(Family::B1 { i, a });
        }
        for b in 1..kk {
            families.push(Family::B2 { i, b });
        }
    }
    if k.get() >= 3 {
        families.extend((1..=digit_bound).map(|a| Family::B3 { a }));
    }
    let mut out: Vec<Factor2Entry> = families
        .into_iter()
        .filter_map(|f| {
            let word = f.word(k)?;
            (word.max_digit()? <= digit_bound).then(|| Factor2Entry {
                witness: f.witness(k).expect("family members have witnesses"),
                word,
                class: f,
            })
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The unique length-2 factor crossing the terminal junction of `W_n`.
pub fn straddling_factor(k: KParam, n: usize) -> Word {
    assert!(n >= 1, "W_0 has no junction");
    let (nn, kk) = (n as Digit, k.as_digit());
    if n < k.as_usize() {
        Word::from([0, nn])
    } else {
        Word::from([nn - kk + 1, kk])
    }
}

/// Where an occurrence sits relative to the top-level blocks of `W_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum OccurrenceType {
    Included,
    /// Crosses the junction right after the block `W_j`.
    Bordering { j: usize },
    Straddling,
}

/// Classifies the window `[position, position + len)` of `W_n`.
///
/// Only the top-level decomposition is consulted: a window inside one block
/// is included, a window reaching into the terminal block from an earlier one
/// is straddling, and anything else crosses an internal junction after the
/// block it starts in.
pub fn classify_occurrence(k: KParam, n: usize, position: u64, len: usize) -> Result<OccurrenceType> {
    let total = iterate_len(k, n);
    let end = BigUint::from(position) + BigUint::from(len);
    if len == 0 || end > total {
        return Err(Error::OutOfRange {
            position,
            len,
            word_len: total.to_string(),
        });
    }
    if n == 0 {
        return Ok(OccurrenceType::Included);
    }
    let blocks = decompose(k, n);
    let last = blocks.len() - 1;
    let mut start = BigUint::zero();
    let pos = BigUint::from(position);
    for block in &blocks {
        let stop = &start + block.len(k);
        if pos < stop {
            if end <= stop {
                return Ok(OccurrenceType::Included);
            }
            let terminal_start = &total - blocks[last].len(k);
            if end > terminal_start {
                return Ok(OccurrenceType::Straddling);
            }
            return match block {
                Block::Iterate { index, .. } => Ok(OccurrenceType::Bordering { j: *index }),
                Block::Letter(_) => unreachable!("the letter block is terminal"),
            };
        }
        start = stop;
    }
    unreachable!("position checked against the total length")
}

/// `Fac_m(W_n)` from a sliding window over the streamed iterate.
pub fn fac_m_empirical(k: KParam, m: usize, n: usize) -> Result<BTreeSet<Word>> {
    fac_m_empirical_with_guard(k, m, n, DEFAULT_SIZE_GUARD)
}

pub fn fac_m_empirical_with_guard(k: KParam, m: usize, n: usize, guard: u64) -> Result<BTreeSet<Word>> {
    if m == 0 {
        return Err(Error::EmptyFactor);
    }
    let len = iterate_len(k, n);
    if len.to_u64().is_none_or(|l| l > guard) {
        return Err(Error::SizeGuardExceeded {
            n,
            len: len.to_string(),
            guard,
        });
    }
    let mut window: std::collections::VecDeque<Digit> = std::collections::VecDeque::with_capacity(m);
    let mut out = BTreeSet::new();
    for d in iterate_stream(k, n) {
        if window.len() == m {
            window.pop_front();
        }
        window.push_back(d);
        if window.len() == m {
            out.insert(window.iter().copied().collect());
        }
    }
    Ok(out)
}
