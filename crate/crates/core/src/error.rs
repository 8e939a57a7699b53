use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{what}: argument {value} outside domain {domain}")]
    Domain {
        what: &'static str,
        value: String,
        domain: &'static str,
    },

    #[error("derivative order {requested} unsupported by {what} (max {max}); use jets instead")]
    UnsupportedOrder {
        what: &'static str,
        requested: usize,
        max: usize,
    },

    #[error("root solver failed for (n={n}, j={j}): {reason} [F(lo)={f_lo}, F(hi)={f_hi}]")]
    Solver {
        n: usize,
        j: usize,
        reason: String,
        f_lo: String,
        f_hi: String,
    },

    #[error("eigensolver did not converge after {iterations} iterations (n={n})")]
    NoConvergence { n: usize, iterations: usize },

    #[error("matrix size {n} beyond dense oracle scale (max {max})")]
    OracleScale { n: usize, max: usize },
}
