#![allow(dead_code)]

use kbonacci::counting::count_naive;
use kbonacci::words::{bonacci, decompose, iterate, Block};
use kbonacci::{KParam, Word};
use num_bigint::BigUint;

pub fn k(v: u32) -> KParam {
    KParam::new(v).unwrap()
}

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Concatenating the materialized blocks gives back `W_n`.
pub fn decomposition_concatenates(kk: u32, n: usize) -> Check {
    if n == 0 {
        return Ok(());
    }
    let joined = decompose(k(kk), n)
        .iter()
        .map(|b| b.materialize(k(kk)).unwrap())
        .fold(Word::empty(), |acc, w| acc.concat(&w));
    ensure(joined == iterate(k(kk), n).unwrap(), || format!("k={kk} n={n}: blocks do not concatenate to W_n"))
}

pub fn length_is_bonacci(kk: u32, n: usize) -> Check {
    let len = BigUint::from(iterate(k(kk), n).unwrap().len());
    let f = bonacci(k(kk), n + kk as usize).get(n + kk as usize).clone();
    ensure(len == f, || format!("k={kk} n={n}: |W_n| = {len}, f = {f}"))
}

/// `n` is the largest digit of `W_n` and appears once, at the end.
pub fn largest_digit_unique(kk: u32, n: usize) -> Check {
    if n == 0 {
        return Ok(());
    }
    let w = iterate(k(kk), n).unwrap();
    let d = w.digits();
    let top = n as u64;
    ensure(
        w.max_digit() == Some(top) && d.last() == Some(&top) && d.iter().filter(|&&x| x == top).count() == 1,
        || format!("k={kk} n={n}: largest digit is not unique and final"),
    )
}

pub fn prefix_chain(kk: u32, n: usize) -> Check {
    let a = iterate(k(kk), n).unwrap();
    let b = iterate(k(kk), n + 1).unwrap();
    ensure(a.is_prefix_of(&b), || format!("k={kk} n={n}: W_n is not a prefix of W_(n+1)"))
}

/// `W_{n+k}` ends with `k ⊕ W_n`, and shifting preserves the count of every
/// factor of `W_n` taken from position `pos` with length `len`.
pub fn shift_preserves_counts(kk: u32, n: usize, pos: usize, len: usize) -> Check {
    let kd = kk as u64;
    let w = iterate(k(kk), n).unwrap();
    let shifted = w.shift(kd).unwrap();
    let long = iterate(k(kk), n + kk as usize).unwrap();
    let tail = &long.digits()[long.len() - w.len()..];
    ensure(tail == shifted.digits(), || format!("k={kk} n={n}: W_(n+k) does not end with k+W_n"))?;
    let pos = pos % w.len();
    let len = 1 + len % (w.len() - pos).min(4);
    let b = Word::from(&w.digits()[pos..pos + len]);
    let before = count_naive(&w, &b).unwrap();
    let after = count_naive(&shifted, &b.shift(kd).unwrap()).unwrap();
    let in_tail = count_naive(&Word::from(tail), &b.shift(kd).unwrap()).unwrap();
    ensure(before == after && after == in_tail, || {
        format!("k={kk} n={n} B={b}: counts {before} / {after} / {in_tail}")
    })
}

/// Independent Fibonacci morphism `0 -> 01, 1 -> 0`.
pub fn fibonacci_word(n: usize) -> Vec<u64> {
    let mut w = vec![0u64];
    for _ in 0..n {
        w = w
            .iter()
            .flat_map(|&d| if d == 0 { vec![0, 1] } else { vec![0] })
            .collect();
    }
    w
}

pub fn projection_is_fibonacci(n: usize) -> Check {
    let projected = iterate(k(2), n).unwrap().project(k(2));
    ensure(projected.digits() == fibonacci_word(n).as_slice(), || {
        format!("n={n}: projection of W_n^(2) differs from the Fibonacci iterate")
    })
}

/// Top-level blocks are `W_{n-1} ... W_{n-k+1}` followed by the shifted block
/// or the letter `n`.
pub fn decomposition_shape(kk: u32, n: usize) -> Check {
    if n == 0 {
        return Ok(());
    }
    let blocks = decompose(k(kk), n);
    let last = blocks.last().cloned();
    let ok = match last {
        Some(Block::Letter(d)) => (n as u32) < kk && d == n as u64,
        Some(Block::Iterate { index, shift }) => index + kk as usize == n && shift == kk as u64,
        None => false,
    };
    ensure(ok, || format!("k={kk} n={n}: unexpected final block {last:?}"))
}
