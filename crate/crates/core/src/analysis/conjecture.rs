//! Does the minimal recurrence of a count series have a characteristic
//! polynomial dividing a power of `x^{k-1} - x^{k-2} - ... - 1`?

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::fit::{fit_values, to_ints, RecurrenceFit, HOLDOUT};
use crate::counting::{BlockCounter, count_block_series};
use crate::factors::classify2;
use crate::gf::IntPoly;
use crate::words::{KParam, Word};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Holds { s: u32 },
    /// `witness` is the part of the characteristic polynomial that divides
    /// no power of the Bonacci polynomial.
    Fails { witness: IntPoly },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds { s } => write!(f, "holds(s={s})"),
            Verdict::Fails { witness } => write!(f, "fails({})", witness.display_in("x")),
            Verdict::Inconclusive { reason } => write!(f, "inconclusive({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub k: KParam,
    pub factor: Word,
    pub terms: usize,
    pub order_cap: usize,
    pub fit: Option<RecurrenceFit>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl ConjectureReport {
    pub fn summary_row(&self) -> String {
        let order = self.fit.as_ref().map_or("-".to_string(), |f| f.order.to_string());
        let s = match self.verdict {
            Verdict::Holds { s } => s.to_string(),
            _ => "-".to_string(),
        };
        format!("{}\t{order}\t{s}\t{}", self.factor, self.verdict)
    }
}

/// `x^{k-1} - x^{k-2} - ... - x - 1`, lowest degree first.
pub fn bonacci_characteristic(k: KParam) -> IntPoly {
    IntPoly::bonacci_denominator(k.as_usize() - 1).reversed()
}

/// `(k-1) * (floor(max digit / k) + 3)`: room for the largest power the
/// closed forms predict plus two spare blocks.
pub fn default_order_cap(k: KParam, b: &Word) -> usize {
    let m = b.max_digit().unwrap_or(0) / k.as_digit();
    (k.as_usize() - 1) * (m as usize + 3)
}

/// Enough terms past the first occurrence for a validated fit of order `order_cap`.
pub fn default_terms(k: KParam, b: &Word, order_cap: usize) -> usize {
    let birth = first_occurrence(k, b).unwrap_or(b.max_digit().unwrap_or(0) as usize + 2 * k.as_usize());
    birth + 4 * order_cap + HOLDOUT + 1
}

/// Smallest `n` with an occurrence in `W_n`, searched over a bounded range.
pub fn first_occurrence(k: KParam, b: &Word) -> Option<usize> {
    let mut counter = BlockCounter::new(k, b.len()).ok()?;
    let limit = b.max_digit().unwrap_or(0) as usize + 4 * k.as_usize() + 4 * b.len();
    (0..=limit).find(|&n| !counter.count(n, b).is_zero())
}

/// Classifies the characteristic polynomial of a fitted recurrence.
pub fn verdict_for(k: KParam, fit: &RecurrenceFit, order_cap: usize) -> Verdict {
    if !fit.validated {
        return Verdict::Inconclusive {
            reason: "fit not confirmed by held-out terms".into(),
        };
    }
    let q = fit.nonzero_part();
    let deg = q.degree().unwrap_or(0);
    if deg == 0 {
        return Verdict::Holds { s: 0 };
    }
    let p = bonacci_characteristic(k);
    let step = k.as_usize() - 1;
    let start = deg.div_ceil(step);
    let stop = start.max(order_cap / step).max(deg);
    for s in start..=stop {
        if p.pow(s as u32).divisible_over_q(&q) {
            return Verdict::Holds { s: s as u32 };
        }
    }
    let common = q.gcd(&p.pow(deg as u32));
    let witness = q.div_exact(&common).unwrap_or(q).primitive_part();
    Verdict::Fails { witness }
}

/// Runs the check on an arbitrary integer series (for synthetic inputs).
pub fn check_series(k: KParam, values: &[BigInt], order_cap: usize) -> Result<(RecurrenceFit, Verdict)> {
    k.require_at_least(3)?;
    let fit = fit_values(values, order_cap)?;
    let verdict = verdict_for(k, &fit, order_cap);
    Ok((fit, verdict))
}

/// Block-engine counts of `b` through index `terms - 1`, then [`check_series`].
pub fn check_conjecture(k: KParam, b: &Word, terms: usize, order_cap: usize) -> Result<ConjectureReport> {
    k.require_at_least(3)?;
    if b.is_empty() {
        return Err(Error::EmptyFactor);
    }
    let upto = terms.saturating_sub(1);
    let certified = match b.len() {
        2 => classify2(k, b)?.is_factor(),
        _ => false,
    };
    let series = count_block_series(k, b, upto)?;
    let report = |fit, verdict| ConjectureReport {
        k,
        factor: b.clone(),
        terms,
        order_cap,
        fit,
        verdict,
    };
    if !certified && series.birth().is_none() {
        return Ok(report(
            None,
            Verdict::Inconclusive {
                reason: format!("no occurrence through n={upto}"),
            },
        ));
    }
    let (fit, verdict) = check_series(k, &to_ints(&series.values), order_cap)?;
    Ok(report(Some(fit), verdict))
}

/// [`check_conjecture`] with the default term budget and order cap.
pub fn check_conjecture_default(k: KParam, b: &Word) -> Result<ConjectureReport> {
    let cap = default_order_cap(k, b);
    check_conjecture(k, b, default_terms(k, b, cap), cap)
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchReport {
    pub k: KParam,
    pub factors: usize,
    pub holds: usize,
    pub fails: usize,
    pub inconclusive: usize,
    pub reports: Vec<ConjectureReport>,
}

impl BatchReport {
    pub fn all_hold(&self) -> bool {
        self.holds == self.factors
    }

    /// Tab-separated `factor, order, s, verdict` table.
    pub fn summary_table(&self) -> String {
        let mut out = String::from("factor\torder\ts\tverdict\n");
        for r in &self.reports {
            out.push_str(&r.summary_row());
            out.push('\n');
        }
        out
    }
}

/// Checks many factors in parallel; `terms` and `order_cap` override the
/// per-factor defaults.
pub fn check_batch(
    k: KParam,
    factors: &[Word],
    terms: Option<usize>,
    order_cap: Option<usize>,
) -> Result<BatchReport> {
    let reports: Vec<ConjectureReport> = factors
        .par_iter()
        .map(|b| {
            let cap = order_cap.unwrap_or_else(|| default_order_cap(k, b));
            let terms = terms.unwrap_or_else(|| default_terms(k, b, cap));
            check_conjecture(k, b, terms, cap)
        })
        .collect::<Result<_>>()?;
    let holds = reports.iter().filter(|r| r.verdict.holds()).count();
    let fails = reports.iter().filter(|r| r.verdict.fails()).count();
    Ok(BatchReport {
        k,
        factors: reports.len(),
        holds,
        fails,
        inconclusive: reports.len() - holds - fails,
        reports,
    })
}

/// The negative control: `1, 2, 4, 8, ...` has characteristic polynomial `x - 2`.
pub fn geometric_control(k: KParam) -> Result<(RecurrenceFit, Verdict)> {
    let values: Vec<BigInt> = (0..24u32).map(|e| BigInt::from(BigUint::from(1u8) << e)).collect();
    check_series(k, &values, 4)
}
