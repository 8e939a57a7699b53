//! Asymptotics of the first eigenvalues of `T_n(g_2)`.
//!
//! For fixed `j`, `lambda_{n,j} = (alpha_j / (n+2))^4 + O(1/(n+2)^6)` where
//! `alpha_j` solves `tanh(alpha/2) = (-1)^j tan(alpha/2)` in
//! `(j pi, (j+1) pi)`. Because `alpha_1 != 3 pi / 2`, no regular expansion in
//! powers of `1/(n+2)` with continuous coefficients reaches fifth order.

use rug::{Assign, Float};

use crate::error::{Error, Result};
use crate::exact::solve_phi;
use crate::expansion::{eigen_approx, scale_by_power};
use crate::numerics::PrecisionContext;
use crate::symbol::Shift;

const MAX_NEWTON_STEPS: usize = 100;

/// Sizes at which the counter-example report samples `(n+2)^4 lambda_{n,1}`.
pub const COUNTEREXAMPLE_SIZES: [usize; 3] = [256, 1024, 4096];

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaRoot {
    pub j: usize,
    pub alpha: Float,
    /// `|tanh(alpha/2) - (-1)^j tan(alpha/2)|` at the returned root.
    pub residual: Float,
}

fn alpha_equation(j: usize, a: &Float) -> Float {
    let half = Float::with_val(a.prec(), a / 2u32);
    let th = Float::with_val(a.prec(), half.tanh_ref());
    let t = half.tan();
    if j.is_multiple_of(2) {
        th - t
    } else {
        th + t
    }
}

fn alpha_equation_slope(j: usize, a: &Float) -> Float {
    let half = Float::with_val(a.prec(), a / 2u32);
    let sech2 = Float::with_val(a.prec(), half.cosh_ref()).square().recip();
    let sec2 = half.cos().square().recip();
    let v = if j.is_multiple_of(2) { sech2 - sec2 } else { sech2 + sec2 };
    v / 2u32
}

/// Root `alpha_j` of `tanh(alpha/2) = (-1)^j tan(alpha/2)`.
///
/// `tan(alpha/2)` has a pole at whichever end of `(j pi, (j+1) pi)` is an
/// odd multiple of `pi`, so the search runs on the half-interval away from
/// that end, split at `(2j+1) pi / 2`.
pub fn solve_alpha(j: usize, ctx: &PrecisionContext) -> Result<AlphaRoot> {
    if j == 0 {
        return Err(Error::Argument("alpha index must be positive".into()));
    }
    let prec = ctx.bits();
    let pi = ctx.pi();
    let mid = Float::with_val(prec, &pi * (2 * j + 1) as u64) / 2u32;
    let (mut lo, mut hi) = if j % 2 == 1 {
        (mid, Float::with_val(prec, &pi * (j + 1) as u64))
    } else {
        (Float::with_val(prec, &pi * j as u64), mid)
    };
    let f_lo = alpha_equation(j, &lo);
    let f_hi = alpha_equation(j, &hi);
    if f_lo.is_sign_positive() == f_hi.is_sign_positive() {
        return Err(Error::Solver {
            n: 0,
            j,
            reason: "alpha equation has no sign change on half-interval".into(),
            f_lo: format!("{:e}", f_lo.to_f64()),
            f_hi: format!("{:e}", f_hi.to_f64()),
        });
    }
    let rising = f_lo.is_sign_negative();

    let mut x = Float::with_val(prec, &lo + &hi) / 2u32;
    let tiny = ctx.epsilon() * 4u32;
    for _ in 0..MAX_NEWTON_STEPS {
        let fx = alpha_equation(j, &x);
        if fx.is_zero() {
            break;
        }
        if fx.is_sign_negative() == rising {
            lo.assign(&x);
        } else {
            hi.assign(&x);
        }
        let step = fx / alpha_equation_slope(j, &x);
        let mut next = Float::with_val(prec, &x - &step);
        if step.is_finite() && step.clone().abs() <= Float::with_val(prec, &x * &tiny) {
            x = next;
            break;
        }
        if !step.is_finite() || next <= lo || next >= hi {
            next = Float::with_val(prec, &lo + &hi) / 2u32;
        }
        x = next;
        if Float::with_val(prec, &hi - &lo) <= Float::with_val(prec, &x * &tiny) {
            break;
        }
    }
    let residual = alpha_equation(j, &x).abs();
    Ok(AlphaRoot {
        j,
        alpha: x,
        residual,
    })
}

/// `(alpha_j / (n+2))^4`.
pub fn first_eig_asymptotic(n: usize, j: usize, ctx: &PrecisionContext) -> Result<Float> {
    let alpha = solve_alpha(j, ctx)?.alpha;
    Ok(Float::with_val(ctx.bits(), alpha / (n + 2) as u64).square().square())
}

/// `epsilon_{n,j} = |lambda_{n,j} - (alpha_j/(n+2))^4|` against the exact
/// eigenvalue.
pub fn first_eig_error(n: usize, j: usize, ctx: &PrecisionContext) -> Result<Float> {
    let exact = solve_phi(n, j, ctx)?.lambda;
    let approx = first_eig_asymptotic(n, j, ctx)?;
    Ok((exact - approx).abs())
}

fn rel_numerator(j: usize, alpha_j: &Float, ctx: &PrecisionContext) -> Float {
    let eta0 = ctx.pi() / 2u32;
    let shifted = Float::with_val(ctx.bits(), ctx.pi() * j as u64 + &eta0);
    let a4 = Float::with_val(ctx.bits(), alpha_j.square_ref()).square();
    a4 + eta0.square().square() - shifted.square().square()
}

/// Limits of `omega_{n,j} / lambda_{n,j}` and `omega_{n,j} /
/// (lambda_{n,j+1} - lambda_{n,j})` as `n -> infinity`, where `omega_{n,j}`
/// is the error of the four-term expansion with denominator `n + 2`.
pub fn rel_limits(j: usize, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let aj = solve_alpha(j, ctx)?.alpha;
    let ak = solve_alpha(j + 1, ctx)?.alpha;
    let num = rel_numerator(j, &aj, ctx);
    let aj4 = Float::with_val(ctx.bits(), aj.square_ref()).square();
    let ak4 = ak.square().square();
    let gap = Float::with_val(ctx.bits(), &ak4 - &aj4);
    let first = Float::with_val(ctx.bits(), &num / &aj4);
    Ok((first, num / gap))
}

/// The two quotients of [`rel_limits`] evaluated at finite `n` with exact
/// eigenvalues.
pub fn empirical_rel(n: usize, j: usize, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    if j + 1 > n {
        return Err(Error::Argument(format!(
            "empirical_rel needs j < n, got n={n}, j={j}"
        )));
    }
    let lj = solve_phi(n, j, ctx)?.lambda;
    let lk = solve_phi(n, j + 1, ctx)?.lambda;
    let approx = eigen_approx(n, j, 3, Shift::NPlusTwo, ctx)?;
    let omega = Float::with_val(ctx.bits(), &lj - &approx);
    let spacing = Float::with_val(ctx.bits(), &lk - &lj);
    let first = Float::with_val(ctx.bits(), &omega / &lj);
    Ok((first, omega / spacing))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleReport {
    pub alpha1: Float,
    pub three_pi_half: Float,
    /// `alpha_1^4 - (3 pi / 2)^4`.
    pub gap: Float,
    /// `(n, (n+2)^4 lambda_{n,1})`.
    pub scaled_first: Vec<(usize, Float)>,
    pub alpha2_minus_alpha1: Float,
    pub pi: Float,
}

impl CounterexampleReport {
    /// `(3 pi / 2)^4`, the limit a regular expansion would force.
    pub fn regular_limit(&self) -> Float {
        Float::with_val(self.pi.prec(), self.three_pi_half.square_ref()).square()
    }
}

/// Counter-example data at [`COUNTEREXAMPLE_SIZES`].
pub fn counterexample_gap(ctx: &PrecisionContext) -> Result<CounterexampleReport> {
    counterexample_gap_at(&COUNTEREXAMPLE_SIZES, ctx)
}

pub fn counterexample_gap_at(sizes: &[usize], ctx: &PrecisionContext) -> Result<CounterexampleReport> {
    let prec = ctx.bits();
    let alpha1 = solve_alpha(1, ctx)?.alpha;
    let alpha2 = solve_alpha(2, ctx)?.alpha;
    let three_pi_half = ctx.pi() * 3u32 / 2u32;
    let gap = Float::with_val(prec, alpha1.square_ref()).square()
        - Float::with_val(prec, three_pi_half.square_ref()).square();
    let scaled_first = sizes
        .iter()
        .map(|&n| Ok((n, scale_by_power(solve_phi(n, 1, ctx)?.lambda, n + 2, 4))))
        .collect::<Result<Vec<_>>>()?;
    Ok(CounterexampleReport {
        alpha2_minus_alpha1: Float::with_val(prec, &alpha2 - &alpha1),
        alpha1,
        three_pi_half,
        gap,
        scaled_first,
        pi: ctx.pi(),
    })
}
