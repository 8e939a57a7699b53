use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float};

use crate::error::{Error, Result};

/// Working precision used when callers do not choose one.
pub const DEFAULT_DIGITS: u32 = 50;

/// Smallest supported working precision in decimal digits.
pub const MIN_DIGITS: u32 = 30;

/// Extra decimal digits carried internally beyond the requested precision.
pub const GUARD_DIGITS: u32 = 10;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Decimal working precision plus the absolute tolerance used for root
/// residuals.
///
/// Every real number produced under a context carries `bits()` bits of
/// mantissa, which is `digits + GUARD_DIGITS` decimal digits. The root
/// tolerance may not be tighter than `10^(10 - digits)`.
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    digits: u32,
    bits: u32,
    root_tol: Float,
}

impl PrecisionContext {
    /// Context with `digits` decimal digits and root tolerance `10^(10 - digits)`.
    pub fn new(digits: u32) -> Result<Self> {
        let bits = Self::bits_for(digits)?;
        let root_tol = Float::with_val(bits, 10).pow(10 - digits as i32);
        Ok(Self {
            digits,
            bits,
            root_tol,
        })
    }

    pub fn with_root_tol(digits: u32, root_tol: &Float) -> Result<Self> {
        let mut ctx = Self::new(digits)?;
        if root_tol.is_nan() || *root_tol < ctx.root_tol {
            return Err(Error::Argument(format!(
                "root tolerance {} tighter than 1e{} allowed at {} digits",
                root_tol.to_f64(),
                10 - digits as i32,
                digits
            )));
        }
        ctx.root_tol.assign(root_tol);
        Ok(ctx)
    }

    fn bits_for(digits: u32) -> Result<u32> {
        if digits < MIN_DIGITS {
            return Err(Error::Argument(format!(
                "precision of {digits} digits below minimum {MIN_DIGITS}"
            )));
        }
        Ok(((digits + GUARD_DIGITS) as f64 * LOG2_10).ceil() as u32)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa bits of every real created under this context.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn root_tol(&self) -> &Float {
        &self.root_tol
    }

    /// Converts any assignable value into a real at working precision.
    pub fn real<T>(&self, value: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits, value)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi)
    }

    /// `10^exp` at working precision.
    pub fn pow10(&self, exp: i32) -> Float {
        Float::with_val(self.bits, 10).pow(exp)
    }

    /// Unit roundoff `2^(1 - bits)`.
    pub fn epsilon(&self) -> Float {
        Float::with_val(self.bits, 1) >> (self.bits as i32 - 1)
    }

    /// Parses a decimal literal such as `"4.73004"` at working precision.
    pub fn parse(&self, literal: &str) -> Result<Float> {
        Float::parse(literal)
            .map(|p| Float::with_val(self.bits, p))
            .map_err(|e| Error::Argument(format!("bad real literal {literal:?}: {e}")))
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(DEFAULT_DIGITS).expect("default precision is valid")
    }
}
