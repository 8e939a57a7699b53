//! Multiple-precision reals and truncated Taylor arithmetic.

mod jet;
mod precision;

pub use jet::{binomial_series, factorial, Jet};
pub use precision::{PrecisionContext, DEFAULT_DIGITS, GUARD_DIGITS, MIN_DIGITS};

/// Working-precision real number.
pub type Real = rug::Float;
