//! Exact eigenvalues of `T_n(g_2)` and a dense oracle for general `T_n(g_m)`.
//!
//! The eigenvalues of the pentadiagonal matrix are `g(phi_{n,j})` where
//! `phi_{n,j}` is the unique root of `(n+2) x - eta_{n,j}(x) - j pi` inside
//! `[j pi / (n+2), (j+1) pi / (n+2)]`.

mod eigensolver;
mod toeplitz;

use rug::Float;

pub use eigensolver::{dense_eigenvalues, MAX_ORACLE_SIZE};
pub use toeplitz::{build_toeplitz, BandedToeplitz};

use crate::error::{Error, Result};
use crate::numerics::PrecisionContext;
use crate::par::{try_map_range, Execution};
use crate::symbol::{eta_nj_unchecked, mesh_value, symbol_value};

/// Bisection runs until the bracket is this narrow before Newton takes over.
const BISECTION_WIDTH: f64 = 1e-8;
const MAX_NEWTON_STEPS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenRecord {
    pub n: usize,
    pub j: usize,
    pub phi: Float,
    pub lambda: Float,
    /// `|F(phi)|` achieved by the solver.
    pub residual: Float,
}

struct Secular {
    n: usize,
    odd: bool,
    jpi: Float,
}

impl Secular {
    fn eval(&self, x: &Float) -> Float {
        let mut v = Float::with_val(x.prec(), x * (self.n + 2) as u64);
        v -= eta_nj_unchecked(self.n, self.odd, x);
        v - &self.jpi
    }
}

fn solver_error(n: usize, j: usize, reason: &str, f_lo: &Float, f_hi: &Float) -> Error {
    Error::Solver {
        n,
        j,
        reason: reason.into(),
        f_lo: format!("{:e}", f_lo.to_f64()),
        f_hi: format!("{:e}", f_hi.to_f64()),
    }
}

/// Solves for `phi_{n,j}`: bisection to a narrow bracket, then Newton with a
/// central-difference derivative, falling back to bisection whenever a step
/// leaves the bracket.
pub fn solve_phi(n: usize, j: usize, ctx: &PrecisionContext) -> Result<EigenRecord> {
    if n == 0 || j == 0 || j > n {
        return Err(Error::Argument(format!(
            "eigenvalue index out of range: n={n}, j={j}"
        )));
    }
    let prec = ctx.bits();
    let f = Secular {
        n,
        odd: j % 2 == 1,
        jpi: ctx.pi() * j as u64,
    };
    let mut lo = mesh_value(n, j, 2, prec);
    let mut hi = mesh_value(n, j + 1, 2, prec);
    let f_lo = f.eval(&lo);
    let f_hi = f.eval(&hi);
    if !(f_lo.is_sign_negative() && f_hi.is_sign_positive()) || f_lo.is_zero() {
        return Err(solver_error(n, j, "no sign change on bracket", &f_lo, &f_hi));
    }

    let mut x;
    loop {
        x = Float::with_val(prec, &lo + &hi) / 2u32;
        if Float::with_val(prec, &hi - &lo) <= BISECTION_WIDTH {
            break;
        }
        if f.eval(&x).is_sign_negative() {
            lo.clone_from(&x);
        } else {
            hi.clone_from(&x);
        }
    }

    let h = ctx.pow10(-(ctx.digits() as i32) / 3);
    let tiny = ctx.epsilon() * 4u32;
    let mut fx = f.eval(&x);
    let mut converged = false;
    for _ in 0..MAX_NEWTON_STEPS {
        if fx.is_zero() {
            converged = true;
            break;
        }
        if fx.is_sign_negative() {
            lo.clone_from(&x);
        } else {
            hi.clone_from(&x);
        }
        let xp = Float::with_val(prec, &x + &h);
        let xm = Float::with_val(prec, &x - &h);
        let slope = (f.eval(&xp) - f.eval(&xm)) / Float::with_val(prec, &h * 2u32);
        let step = Float::with_val(prec, &fx / &slope);
        let mut next = Float::with_val(prec, &x - &step);
        // A step below roundoff may land on a bracket end, so test it first.
        if slope.is_normal() && step.clone().abs() <= Float::with_val(prec, x.abs_ref()) * &tiny {
            let f_next = f.eval(&next);
            if f_next.clone().abs() < fx.clone().abs() {
                x = next;
                fx = f_next;
            }
            converged = true;
            break;
        }
        if !slope.is_normal() || next <= lo || next >= hi {
            next = Float::with_val(prec, &lo + &hi) / 2u32;
        }
        x = next;
        fx = f.eval(&x);
        if Float::with_val(prec, &hi - &lo) <= Float::with_val(prec, x.abs_ref()) * &tiny {
            converged = true;
            break;
        }
    }
    let residual = fx.abs();
    if !converged || residual > *ctx.root_tol() {
        return Err(solver_error(n, j, "root not resolved to tolerance", &f_lo, &f_hi));
    }
    let lambda = symbol_value(2, &x);
    Ok(EigenRecord {
        n,
        j,
        phi: x,
        lambda,
        residual,
    })
}

/// All `n` eigenvalues of `T_n(g_2)` in ascending order.
pub fn solve_spectrum(n: usize, ctx: &PrecisionContext) -> Result<Vec<EigenRecord>> {
    solve_spectrum_with(n, ctx, Execution::default())
}

pub fn solve_spectrum_with(
    n: usize,
    ctx: &PrecisionContext,
    exec: Execution,
) -> Result<Vec<EigenRecord>> {
    try_map_range(1..n + 1, exec, |j| solve_phi(n, j, ctx))
}

/// `(||T_n^{-1}||_2, kappa_2(T_n))` for the pentadiagonal matrix.
pub fn inverse_norm_and_condition(n: usize, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let first = solve_phi(n, 1, ctx)?;
    let last = solve_phi(n, n, ctx)?;
    let norm = Float::with_val(ctx.bits(), 1u32 / &first.lambda);
    let cond = last.lambda / &first.lambda;
    Ok((norm, cond))
}
