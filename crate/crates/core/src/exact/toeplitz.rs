use crate::error::Result;
use crate::symbol::fourier_coefficients;

/// Symmetric banded Toeplitz matrix `T_n(g_m) = (ghat_{j-k})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandedToeplitz {
    pub n: usize,
    /// Half-bandwidth, equal to the symbol power `m`.
    pub m: usize,
    /// `[ghat_{-m}, ..., ghat_m]`.
    pub band: Vec<i64>,
}

impl BandedToeplitz {
    /// Entry at (`row`, `col`), zero outside the band.
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        let offset = col as isize - row as isize;
        if offset.unsigned_abs() > self.m {
            0
        } else {
            self.band[(offset + self.m as isize) as usize]
        }
    }

    /// Dense row-major copy; only for small `n`.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.entry(r, c)).collect())
            .collect()
    }

    pub fn trace(&self) -> i64 {
        self.band[self.m] * self.n as i64
    }
}

pub fn build_toeplitz(m: u32, n: usize) -> Result<BandedToeplitz> {
    if n == 0 {
        return Err(crate::Error::Argument("matrix size must be positive".into()));
    }
    Ok(BandedToeplitz {
        n,
        m: m as usize,
        band: fourier_coefficients(m)?,
    })
}
