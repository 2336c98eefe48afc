//! Exact polynomial and rational-function arithmetic over the integers, and
//! the closed-form generating functions of occurrence counts.

mod closed;
mod poly;
mod rational;

pub use closed::{g, h, ogf_digit, ogf_digit_expr, ogf_factor2, ogf_factor2_expr, ogf_shift, GfExpr};
pub use poly::{InVar, IntPoly};
pub use rational::{gf_equal, series, RationalGF};
