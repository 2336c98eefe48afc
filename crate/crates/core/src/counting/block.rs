//! Counting through the block decomposition of `W_n`, without materializing it.
//!
//! For a factor of length `m`, every block keeps its first and last `m - 1`
//! digits. Occurrences inside a block come from the memo (a block
//! `s ⊕ W_j` holds `B` exactly as often as `W_j` holds `B - s`), and
//! occurrences crossing a junction are found by scanning the suffix of the
//! left part concatenated with the prefix of the right part. Folding the
//! blocks left to right handles factors longer than a short block.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;

use super::{CountSeries, Engine};
use crate::words::{decompose, Block, Digit, KParam, Word};
use crate::{Error, Result};

/// First and last `window` digits of a (virtual) word and its length.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Affix {
    prefix: Vec<Digit>,
    suffix: Vec<Digit>,
    // saturating; only compared against the window
    len: u64,
}

impl Affix {
    fn letter(d: Digit) -> Self {
        Affix {
            prefix: vec![d],
            suffix: vec![d],
            len: 1,
        }
    }

    fn shifted(&self, by: Digit) -> Self {
        let add = |v: &Vec<Digit>| v.iter().map(|&d| d + by).collect();
        Affix {
            prefix: add(&self.prefix),
            suffix: add(&self.suffix),
            len: self.len,
        }
    }

    fn append(&self, right: &Affix, window: usize) -> Affix {
        let prefix = if (self.len as usize) < window {
            let mut p = self.prefix.clone();
            p.extend(right.prefix.iter().take(window - p.len()));
            p
        } else {
            self.prefix.clone()
        };
        let suffix = if (right.len as usize) < window {
            let mut s: Vec<Digit> = self.suffix.clone();
            s.extend_from_slice(&right.suffix);
            s.split_off(s.len().saturating_sub(window))
        } else {
            right.suffix.clone()
        };
        Affix {
            prefix,
            suffix,
            len: self.len.saturating_add(right.len),
        }
    }
}

/// Occurrences of `factor` that start in `left` and end in `right`.
fn crossing(left: &[Digit], right: &[Digit], factor: &[Digit]) -> usize {
    let m = factor.len();
    let joined: Vec<Digit> = left.iter().chain(right).copied().collect();
    let boundary = left.len();
    (boundary.saturating_sub(m - 1)..boundary)
        .filter(|&p| p + m <= joined.len() && joined[p..p + m] == *factor)
        .count()
}

/// Summary of one block for a set of factors of a common length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSummary {
    pub index: usize,
    pub shift: Digit,
    /// First `min(m - 1, |block|)` digits.
    pub prefix: Word,
    /// Last `min(m - 1, |block|)` digits.
    pub suffix: Word,
    pub counts: BTreeMap<Word, BigUint>,
}

/// Memoized block-decomposition counter for factors of one fixed length.
#[derive(Debug, Clone)]
pub struct BlockCounter {
    k: KParam,
    factor_len: usize,
    affixes: Vec<Affix>,
    memo: HashMap<(usize, Word), BigUint>,
}

impl BlockCounter {
    pub fn new(k: KParam, factor_len: usize) -> Result<Self> {
        if factor_len == 0 {
            return Err(Error::EmptyFactor);
        }
        Ok(BlockCounter {
            k,
            factor_len,
            affixes: Vec::new(),
            memo: HashMap::new(),
        })
    }

    pub fn k(&self) -> KParam {
        self.k
    }

    pub fn factor_len(&self) -> usize {
        self.factor_len
    }

    fn window(&self) -> usize {
        self.factor_len - 1
    }

    fn trim(&self, mut a: Affix) -> Affix {
        let w = self.window();
        a.prefix.truncate(w);
        let cut = a.suffix.len().saturating_sub(w);
        a.suffix.drain(..cut);
        a
    }

    fn block_affix(&mut self, block: Block) -> Affix {
        match block {
            Block::Iterate { index, shift } => self.affix(index).shifted(shift),
            Block::Letter(d) => self.trim(Affix::letter(d)),
        }
    }

    fn affix(&mut self, j: usize) -> Affix {
        while self.affixes.len() <= j {
            let n = self.affixes.len();
            if n == 0 {
                let a = self.trim(Affix::letter(0));
                self.affixes.push(a);
                continue;
            }
            let mut acc: Option<Affix> = None;
            for block in decompose(self.k, n) {
                let next = self.block_affix(block);
                acc = Some(match acc {
                    None => next,
                    Some(a) => a.append(&next, self.window()),
                });
            }
            let a = self.trim(acc.expect("decomposition is never empty"));
            self.affixes.push(a);
        }
        self.affixes[j].clone()
    }

    fn block_count(&mut self, block: Block, factor: &Word) -> BigUint {
        match block {
            Block::Iterate { index, shift } => match factor.unshift(shift) {
                Some(inner) => self.count(index, &inner),
                None => BigUint::zero(),
            },
            Block::Letter(d) => {
                BigUint::from(u8::from(factor.len() == 1 && factor.digits()[0] == d))
            }
        }
    }

    /// `|W_n|_factor`.
    pub fn count(&mut self, n: usize, factor: &Word) -> BigUint {
        assert_eq!(factor.len(), self.factor_len, "factor length is fixed per counter");
        // the largest digit of W_n is n
        if factor.max_digit().is_some_and(|d| d > n as Digit) {
            return BigUint::zero();
        }
        if n == 0 {
            return BigUint::from(u8::from(factor.digits() == [0]));
        }
        if let Some(v) = self.memo.get(&(n, factor.clone())) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        let mut acc: Option<Affix> = None;
        for block in decompose(self.k, n) {
            total += self.block_count(block, factor);
            let next = self.block_affix(block);
            acc = Some(match acc {
                None => next,
                Some(left) => {
                    if self.factor_len > 1 {
                        total += crossing(&left.suffix, &next.prefix, factor.digits());
                    }
                    left.append(&next, self.window())
                }
            });
        }
        self.memo.insert((n, factor.clone()), total.clone());
        total
    }

    /// Summary record of the block `shift ⊕ W_index` for the given factors.
    pub fn summary(&mut self, index: usize, shift: Digit, factors: &[Word]) -> BlockSummary {
        let a = self.affix(index).shifted(shift);
        let counts = factors
            .iter()
            .map(|f| {
                let c = self.block_count(Block::Iterate { index, shift }, f);
                (f.clone(), c)
            })
            .collect();
        let w = self.window();
        BlockSummary {
            index,
            shift,
            prefix: a.prefix.iter().take(w).copied().collect(),
            suffix: a.suffix[a.suffix.len().saturating_sub(w)..].iter().copied().collect(),
            counts,
        }
    }

    pub fn series(&mut self, factor: &Word, upto: usize) -> Vec<BigUint> {
        (0..=upto).map(|n| self.count(n, factor)).collect()
    }
}

pub fn count_block(k: KParam, factor: &Word, n: usize) -> Result<BigUint> {
    Ok(BlockCounter::new(k, factor.len())?.count(n, factor))
}

pub fn count_block_series(k: KParam, factor: &Word, upto: usize) -> Result<CountSeries> {
    let mut counter = BlockCounter::new(k, factor.len())?;
    Ok(CountSeries {
        k,
        factor: factor.clone(),
        engine: Engine::Block,
        values: counter.series(factor, upto),
    })
}
