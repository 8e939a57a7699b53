//! Exact and asymptotic eigenvalues of the banded Toeplitz matrices generated
//! by `g_m(x) = (2 sin(x/2))^(2m)`, with emphasis on the pentadiagonal case
//! `m = 2`.

pub mod error;
pub mod exact;
pub mod expansion;
pub mod firsteig;
pub mod numerics;
pub mod par;
pub mod symbol;

pub use error::{Error, Result};
pub use numerics::{Jet, PrecisionContext, Real};
pub use par::Execution;
pub use symbol::Shift;
