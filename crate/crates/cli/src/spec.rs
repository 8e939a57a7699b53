use std::fmt;

use anyhow::{bail, Result};
use clap::ValueEnum;
use serde::Serialize;
use spectra_core::numerics::MIN_DIGITS;

/// Default sizes for the n-indexed tables.
pub const DEFAULT_SIZES: [usize; 4] = [64, 256, 1024, 4096];
/// Extra size added by `--with-16384`.
pub const LARGE_SIZE: usize = 16384;
/// Precision needed before the 16384 column is meaningful.
pub const LARGE_SIZE_MIN_DIGITS: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[value(rename_all = "UPPER")]
#[serde(rename_all = "UPPERCASE")]
pub enum TableId {
    /// Max error of the p-term expansion away from the left end.
    E4,
    /// Max error of the p-term expansion over all j.
    Delta,
    /// First-eigenvalue asymptotics (alpha_j / (n+2))^4.
    Eps,
    /// Scaled residuals Omega_{p,n,j} against d_p(u_{n,j}).
    Omega,
    /// Roots alpha_j of tanh(a/2) = (-1)^j tan(a/2).
    Alpha,
    /// Inverse norm and condition number.
    Cond,
    /// Dense-oracle probe for g_m with m >= 3.
    Conjecture,
    /// Report showing that no regular fifth-order expansion exists.
    Counterexample,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

impl TableId {
    pub fn default_p(self) -> usize {
        match self {
            TableId::E4 | TableId::Omega => 4,
            TableId::Delta => 3,
            _ => 0,
        }
    }

    /// Whether rows are indexed by the matrix size.
    pub fn uses_sizes(self) -> bool {
        !matches!(self, TableId::Alpha | TableId::Counterexample)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Inclusive index filter `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndexRange {
    pub lo: usize,
    pub hi: usize,
}

impl IndexRange {
    pub fn parse(s: &str) -> Result<Self> {
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (a.trim().parse()?, b.trim_start_matches('=').trim().parse()?),
            None => {
                let v = s.trim().parse()?;
                (v, v)
            }
        };
        if lo == 0 || hi < lo {
            bail!("index range must satisfy 1 <= lo <= hi, got {s:?}");
        }
        Ok(Self { lo, hi })
    }

    /// Intersection with `1..=n`.
    pub fn clamp(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi.min(n)
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableSpec {
    pub table_id: TableId,
    pub n_list: Vec<usize>,
    pub p: usize,
    pub j_range: Option<IndexRange>,
    /// Symbol power for the conjecture probe.
    pub m: u32,
    pub precision_digits: u32,
    pub output_format: OutputFormat,
}

impl TableSpec {
    pub fn new(table_id: TableId) -> Self {
        Self {
            table_id,
            n_list: DEFAULT_SIZES.to_vec(),
            p: table_id.default_p(),
            j_range: None,
            m: 3,
            precision_digits: spectra_core::numerics::DEFAULT_DIGITS,
            output_format: OutputFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.contains(&0) {
            bail!("sizes in --n must be at least 1");
        }
        if self.precision_digits < MIN_DIGITS {
            bail!("--digits must be at least {MIN_DIGITS}");
        }
        if self.n_list.contains(&LARGE_SIZE) && self.precision_digits < LARGE_SIZE_MIN_DIGITS {
            bail!("n = {LARGE_SIZE} needs --digits >= {LARGE_SIZE_MIN_DIGITS}");
        }
        match self.table_id {
            TableId::Omega if !(1..=spectra_core::expansion::CLOSED_FORM_MAX_ORDER).contains(&self.p) => {
                bail!("OMEGA needs 1 <= p <= {}", spectra_core::expansion::CLOSED_FORM_MAX_ORDER)
            }
            TableId::Conjecture if self.m == 0 => bail!("--m must be positive"),
            _ => Ok(()),
        }
    }

    /// `# table=<id> n=<list> p=<p> digits=<d>`, plus `j=` and `m=` when
    /// they affect the output.
    pub fn header_line(&self) -> String {
        let sizes: Vec<String> = self.n_list.iter().map(|n| n.to_string()).collect();
        let mut line = format!(
            "# table={} n={} p={} digits={}",
            self.table_id,
            sizes.join(","),
            self.p,
            self.precision_digits
        );
        if let Some(r) = self.j_range {
            line.push_str(&format!(" j={r}"));
        }
        if self.table_id == TableId::Conjecture {
            line.push_str(&format!(" m={}", self.m));
        }
        line
    }
}
