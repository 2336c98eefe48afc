//! Recurrence fitting, the Bonacci-power test for characteristic
//! polynomials, and growth asymptotics of digit counts.

mod asymptotic;
mod conjecture;
mod fit;
mod root;

pub use asymptotic::{
    asymptotic_check, asymptotic_check_with, AsymptoticReport, RatioSample, DEFAULT_TOLERANCE, DEFAULT_WINDOW,
};
pub use conjecture::{
    bonacci_characteristic, check_batch, check_conjecture, check_conjecture_default, check_series,
    default_order_cap, default_terms, first_occurrence, geometric_control, verdict_for, BatchReport,
    ConjectureReport, Verdict,
};
pub use fit::{fit_recurrence, fit_values, RecurrenceFit, HOLDOUT};
pub use root::{dominant_root, DominantRoot};
