//! The symbol family `g_m(x) = (2 sin(x/2))^(2m) = (2 - 2 cos x)^m` and the
//! auxiliary functions that enter the exact eigenvalue equation for `m = 2`.
//!
//! All evaluators return reals at the precision of their argument.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{Jet, PrecisionContext};

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

fn check_domain(what: &'static str, x: &Float) -> Result<()> {
    if x.is_nan() || *x < 0 || *x > pi(x.prec()) {
        return Err(Error::Domain {
            what,
            value: format!("{:.20e}", x.to_f64()),
            domain: "[0, pi]",
        });
    }
    Ok(())
}

/// Denominator shift `s` in `u = j pi / (n + s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shift {
    NPlusOne,
    NPlusTwo,
}

impl Shift {
    pub fn value(self) -> usize {
        match self {
            Shift::NPlusOne => 1,
            Shift::NPlusTwo => 2,
        }
    }

    pub fn from_value(s: usize) -> Result<Self> {
        match s {
            1 => Ok(Shift::NPlusOne),
            2 => Ok(Shift::NPlusTwo),
            _ => Err(Error::Argument(format!("shift must be 1 or 2, got {s}"))),
        }
    }
}

/// A point `j pi / (n + s)` of the uniform mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct MeshPoint {
    pub n: usize,
    pub j: usize,
    pub shift: Shift,
    pub value: Float,
}

impl MeshPoint {
    pub fn new(n: usize, j: usize, shift: Shift, ctx: &PrecisionContext) -> Result<Self> {
        if n == 0 || j == 0 || j > n {
            return Err(Error::Argument(format!(
                "mesh index out of range: n={n}, j={j}"
            )));
        }
        Ok(Self {
            n,
            j,
            shift,
            value: mesh_value(n, j, shift.value(), ctx.bits()),
        })
    }

    /// `n + s`.
    pub fn denominator(&self) -> usize {
        self.n + self.shift.value()
    }
}

/// `j pi / (n + s)` without range checks; `j = n + 1` gives the right end of
/// the last bracket.
pub fn mesh_value(n: usize, j: usize, s: usize, prec: u32) -> Float {
    pi(prec) * j as u64 / (n + s) as u64
}

/// `g_m(x) = (2 - 2 cos x)^m` for any real `x` (the periodic even extension).
pub fn symbol_value(m: u32, x: &Float) -> Float {
    let prec = x.prec();
    let base = (Float::with_val(prec, x / 2u32).sin() * 2u32).square();
    Float::with_val(prec, base.pow(m))
}

pub fn eval_g(m: u32, x: &Float) -> Result<Float> {
    if m == 0 {
        return Err(Error::Argument("symbol power m must be positive".into()));
    }
    check_domain("eval_g", x)?;
    Ok(symbol_value(m, x))
}

/// Maximum order supported by the closed-form derivatives of `g_2`.
pub const G_CLOSED_FORM_MAX_ORDER: usize = 5;

/// `[g(x), g'(x), ..., g^(up_to)(x)]` for `g = g_2`, from closed forms.
pub fn eval_g_derivatives(x: &Float, up_to: usize) -> Result<Vec<Float>> {
    if up_to > G_CLOSED_FORM_MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            what: "eval_g_derivatives",
            requested: up_to,
            max: G_CLOSED_FORM_MAX_ORDER,
        });
    }
    check_domain("eval_g_derivatives", x)?;
    let prec = x.prec();
    let half = Float::with_val(prec, x / 2u32);
    let (s, c) = (Float::with_val(prec, half.sin_ref()), Float::with_val(prec, half.cos_ref()));
    let sin1 = Float::with_val(prec, x.sin_ref());
    let cos1 = Float::with_val(prec, x.cos_ref());
    let two_x = Float::with_val(prec, x * 2u32);
    let sin2 = Float::with_val(prec, two_x.sin_ref());
    let cos2 = Float::with_val(prec, two_x.cos_ref());
    let s2 = Float::with_val(prec, s.square_ref());

    let mut out = Vec::with_capacity(up_to + 1);
    for k in 0..=up_to {
        let v = match k {
            0 => Float::with_val(prec, s2.square_ref()) * 16u32,
            1 => Float::with_val(prec, &s2 * &s) * &c * 32u32,
            2 => (Float::with_val(prec, &cos1 * 2u32) + 1u32) * &s2 * 16u32,
            3 => Float::with_val(prec, &sin2 * 16u32) - Float::with_val(prec, &sin1 * 8u32),
            4 => Float::with_val(prec, &cos2 * 32u32) - Float::with_val(prec, &cos1 * 8u32),
            _ => Float::with_val(prec, &sin1 * 8u32) - Float::with_val(prec, &sin2 * 64u32),
        };
        out.push(v);
    }
    Ok(out)
}

/// Jet of `g_m` at `x` of the given order, valid for every `m`.
pub fn g_jet(m: u32, x: &Float, order: usize) -> Jet {
    let prec = x.prec();
    let cos = Jet::variable(x, order).cos();
    let two = Float::with_val(prec, 2);
    cos.scale(&Float::with_val(prec, -2)).add_scalar(&two).powi(m)
}

/// `beta(x) = 2 asinh(sin(x/2))`.
pub fn eval_beta(x: &Float) -> Result<Float> {
    check_domain("eval_beta", x)?;
    Ok(beta_unchecked(x))
}

fn beta_unchecked(x: &Float) -> Float {
    let prec = x.prec();
    Float::with_val(prec, x / 2u32).sin().asinh() * 2u32
}

/// `f(x) = beta'(x) = cos(x/2) / sqrt(1 + sin^2(x/2))`.
pub fn eval_f(x: &Float) -> Result<Float> {
    check_domain("eval_f", x)?;
    Ok(f_unchecked(x))
}

fn f_unchecked(x: &Float) -> Float {
    let prec = x.prec();
    let half = Float::with_val(prec, x / 2u32);
    let s = Float::with_val(prec, half.sin_ref());
    let c = half.cos();
    c / (s.square() + 1u32).sqrt()
}

/// `eta(x) = 2 arctan(1 / f(x))`, evaluated as `pi - 2 arctan(f(x))` so that
/// `x = pi` (where `f` vanishes) needs no limit.
pub fn eval_eta(x: &Float) -> Result<Float> {
    check_domain("eval_eta", x)?;
    Ok(eta_unchecked(x))
}

fn eta_unchecked(x: &Float) -> Float {
    let prec = x.prec();
    pi(prec) - f_unchecked(x).atan() * 2u32
}

/// Maximum order supported by the closed-form derivatives of `eta`.
pub const ETA_CLOSED_FORM_MAX_ORDER: usize = 4;

/// `[eta(x), eta'(x), ..., eta^(up_to)(x)]` from closed forms.
pub fn eval_eta_derivatives(x: &Float, up_to: usize) -> Result<Vec<Float>> {
    if up_to > ETA_CLOSED_FORM_MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            what: "eval_eta_derivatives",
            requested: up_to,
            max: ETA_CLOSED_FORM_MAX_ORDER,
        });
    }
    check_domain("eval_eta_derivatives", x)?;
    let prec = x.prec();
    let half = Float::with_val(prec, x / 2u32);
    let s1 = Float::with_val(prec, half.sin_ref());
    let c1 = Float::with_val(prec, half.cos_ref());
    let three_half = Float::with_val(prec, &half * 3u32);
    let five_half = Float::with_val(prec, &half * 5u32);
    // 3 - cos x
    let q = 3u32 - Float::with_val(prec, x.cos_ref());
    let sqrt2 = Float::with_val(prec, 2).sqrt();

    let mut out = Vec::with_capacity(up_to + 1);
    for k in 0..=up_to {
        let v = match k {
            0 => eta_unchecked(x),
            1 => Float::with_val(prec, &s1 / (Float::with_val(prec, s1.square_ref()) + 1u32).sqrt()),
            2 => {
                let den = Float::with_val(prec, half_power(&q, 3));
                Float::with_val(prec, &sqrt2 * &c1) / den
            }
            3 => {
                let num = Float::with_val(prec, &s1 * 5u32) + three_half.clone().sin();
                let den = Float::with_val(prec, &sqrt2 * half_power(&q, 5));
                -(num / den)
            }
            _ => {
                // Overall sign is negative relative to the commonly printed form;
                // the jet and finite-difference checks both confirm it.
                let num = Float::with_val(prec, &c1 * 4u32)
                    - Float::with_val(prec, three_half.cos_ref()) * 19u32
                    - Float::with_val(prec, five_half.cos_ref());
                let den = Float::with_val(prec, &sqrt2 * half_power(&q, 7)) * 2u32;
                num / den
            }
        };
        out.push(v);
    }
    Ok(out)
}

/// `q^(k/2)` for positive `q`.
fn half_power(q: &Float, k: u32) -> Float {
    let root = Float::with_val(q.prec(), q.sqrt_ref());
    Float::with_val(q.prec(), root.pow(k))
}

/// Jet of `eta` at `x`, of any order.
pub fn eta_jet(x: &Float, order: usize) -> Jet {
    let prec = x.prec();
    let half = Jet::variable(x, order).scale(&Float::with_val(prec, 0.5));
    let (s, c) = half.sin_cos();
    let one = Float::with_val(prec, 1);
    let root = s
        .powi(2)
        .add_scalar(&one)
        .sqrt()
        .expect("1 + sin^2 is positive");
    let f = c.div(&root).expect("denominator is positive");
    f.atan()
        .scale(&Float::with_val(prec, -2))
        .add_scalar(&pi(prec))
}

/// Jet of `beta` at `x`.
pub fn beta_jet(x: &Float, order: usize) -> Jet {
    let prec = x.prec();
    let half = Jet::variable(x, order).scale(&Float::with_val(prec, 0.5));
    half.sin().asinh().scale(&Float::with_val(prec, 2))
}

/// Value of `eta_{n,j}(x)` together with whether it is a one-sided limit.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaValue {
    pub value: Float,
    /// Set when `x = 0` and `j` is odd: `coth` blows up and the continuous
    /// limit `pi` is returned.
    pub limit: bool,
}

/// `eta_n^odd(x)` for odd `j` (coth variant), `eta_n^even(x)` for even `j`
/// (tanh variant).
pub fn eval_eta_nj(n: usize, j: usize, x: &Float) -> Result<EtaValue> {
    if n == 0 || j == 0 || j > n {
        return Err(Error::Argument(format!(
            "eta_nj index out of range: n={n}, j={j}"
        )));
    }
    check_domain("eval_eta_nj", x)?;
    if x.is_zero() && j % 2 == 1 {
        return Ok(EtaValue {
            value: pi(x.prec()),
            limit: true,
        });
    }
    Ok(EtaValue {
        value: eta_nj_unchecked(n, j % 2 == 1, x),
        limit: false,
    })
}

/// Hot-path evaluation for the root solver. With `t = tanh((n+2) beta / 2)`,
/// `2 arctan(coth / f) = pi - 2 arctan(f t)` and `2 arctan(tanh / f) =
/// pi - 2 arctan(f / t)`.
pub(crate) fn eta_nj_unchecked(n: usize, odd: bool, x: &Float) -> Float {
    let prec = x.prec();
    let half = Float::with_val(prec, x / 2u32);
    let s = Float::with_val(prec, half.sin_ref());
    let c = half.cos();
    let beta = Float::with_val(prec, s.asinh_ref()) * 2u32;
    let f = c / (s.square() + 1u32).sqrt();
    let t = (beta * (n + 2) as u64 / 2u32).tanh();
    let z = if odd { f * t } else { f / t };
    pi(prec) - z.atan() * 2u32
}

/// `rho_{n,j}(x) = (eta_{n,j}(x) - eta(x)) / (n + 2)`.
pub fn eval_rho(n: usize, j: usize, x: &Float) -> Result<Float> {
    let eta_nj = eval_eta_nj(n, j, x)?;
    let eta = eval_eta(x)?;
    Ok((eta_nj.value - eta) / (n + 2) as u64)
}

/// Largest `m` whose Fourier coefficients fit in `i64`.
pub const MAX_FOURIER_POWER: u32 = 32;

/// Fourier coefficients `[ghat_{-m}, ..., ghat_m]` of `(2 - 2 cos x)^m`,
/// `ghat_k = (-1)^k C(2m, m - k)`, in exact integer arithmetic.
pub fn fourier_coefficients(m: u32) -> Result<Vec<i64>> {
    if m == 0 || m > MAX_FOURIER_POWER {
        return Err(Error::Argument(format!(
            "fourier_coefficients: m must be in 1..={MAX_FOURIER_POWER}, got {m}"
        )));
    }
    let m = m as i64;
    Ok((-m..=m)
        .map(|k| {
            let magnitude = binomial(2 * m as u64, (m - k) as u64) as i64;
            if k.rem_euclid(2) == 0 {
                magnitude
            } else {
                -magnitude
            }
        })
        .collect())
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50).unwrap()
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs() <= tol
    }

    #[test]
    fn g_special_values() {
        let c = ctx();
        assert!(eval_g(2, &c.zero()).unwrap().is_zero());
        assert!(close(&eval_g(2, &c.pi()).unwrap(), &c.real(16), 1e-55));
        let half_pi = c.pi() / 2u32;
        assert!(close(&eval_g(2, &half_pi).unwrap(), &c.real(4), 1e-55));
    }

    #[test]
    fn g_domain_errors() {
        let c = ctx();
        assert!(matches!(eval_g(2, &c.real(-0.1)), Err(Error::Domain { .. })));
        let beyond = c.pi() + 1e-30;
        assert!(matches!(eval_g(2, &beyond), Err(Error::Domain { .. })));
        assert!(matches!(eval_g(0, &c.real(1)), Err(Error::Argument(_))));
    }

    #[test]
    fn g_derivatives_at_endpoints() {
        let c = ctx();
        let at0 = eval_g_derivatives(&c.zero(), 5).unwrap();
        let expect = [0, 0, 0, 0, 24, 0];
        for (v, e) in at0.iter().zip(expect) {
            assert!(close(v, &c.real(e), 1e-55), "{v} vs {e}");
        }
        let at_pi = eval_g_derivatives(&c.pi(), 1).unwrap();
        assert!(close(&at_pi[1], &c.zero(), 1e-55));
        assert!(matches!(
            eval_g_derivatives(&c.zero(), 6),
            Err(Error::UnsupportedOrder { .. })
        ));
    }

    #[test]
    fn g_jet_matches_closed_forms() {
        let c = ctx();
        for x in [0.0, 0.3, 1.0, 2.2, std::f64::consts::PI] {
            let x = if x == std::f64::consts::PI { c.pi() } else { c.real(x) };
            let closed = eval_g_derivatives(&x, 5).unwrap();
            let jet = g_jet(2, &x, 5);
            for (k, value) in closed.iter().enumerate() {
                assert!(close(&jet.derivative(k), value, 1e-50), "k={k}");
            }
        }
    }

    #[test]
    fn beta_values() {
        let c = ctx();
        assert!(eval_beta(&c.zero()).unwrap().is_zero());
        let expect = (Float::with_val(c.bits(), 2).sqrt() + 1u32).ln() * 2u32;
        assert!(close(&eval_beta(&c.pi()).unwrap(), &expect, 1e-55));
    }

    #[test]
    fn f_values() {
        let c = ctx();
        assert!(close(&eval_f(&c.zero()).unwrap(), &c.real(1), 1e-55));
        assert!(close(&eval_f(&c.pi()).unwrap(), &c.zero(), 1e-55));
    }

    #[test]
    fn eta_values() {
        let c = ctx();
        let half_pi = c.pi() / 2u32;
        assert!(close(&eval_eta(&c.zero()).unwrap(), &half_pi, 1e-55));
        assert!(close(&eval_eta(&c.pi()).unwrap(), &c.pi(), 1e-55));
        let d = eval_eta_derivatives(&c.pi(), 1).unwrap();
        let inv_sqrt2 = Float::with_val(c.bits(), 2).sqrt().recip();
        assert!(close(&d[1], &inv_sqrt2, 1e-55));
        assert!(matches!(
            eval_eta_derivatives(&c.zero(), 5),
            Err(Error::UnsupportedOrder { .. })
        ));
    }

    #[test]
    fn eta_jet_matches_closed_forms() {
        let c = ctx();
        for x in [0.0, 0.1, 1.3, 2.9] {
            let x = c.real(x);
            let closed = eval_eta_derivatives(&x, 4).unwrap();
            let jet = eta_jet(&x, 4);
            for (k, value) in closed.iter().enumerate() {
                assert!(close(&jet.derivative(k), value, 1e-50), "x={x} k={k}");
            }
        }
        let closed = eval_eta_derivatives(&c.pi(), 4).unwrap();
        let jet = eta_jet(&c.pi(), 4);
        for (k, value) in closed.iter().enumerate() {
            assert!(close(&jet.derivative(k), value, 1e-50), "pi k={k}");
        }
    }

    #[test]
    fn eta_nj_limit_and_range() {
        let c = ctx();
        let at0 = eval_eta_nj(10, 3, &c.zero()).unwrap();
        assert!(at0.limit);
        assert_eq!(at0.value, c.pi());
        let even0 = eval_eta_nj(10, 2, &c.zero()).unwrap();
        assert!(!even0.limit);
        assert!(even0.value.is_zero());
        assert!(eval_eta_nj(10, 11, &c.real(1)).is_err());
    }

    #[test]
    fn eta_nj_parities_agree_away_from_zero() {
        let c = ctx();
        let x = c.pi() / 2u32;
        let odd = eval_eta_nj(64, 1, &x).unwrap().value;
        let even = eval_eta_nj(64, 2, &x).unwrap().value;
        assert!(close(&odd, &even, 1e-20));
    }

    #[test]
    fn rho_deep_inside_is_negligible() {
        let c = ctx();
        let u = mesh_value(64, 40, 2, c.bits());
        let rho = eval_rho(64, 40, &u).unwrap();
        assert!(rho.abs() < 1e-40);
    }

    #[test]
    fn fourier_small_powers() {
        assert_eq!(fourier_coefficients(1).unwrap(), vec![-1, 2, -1]);
        assert_eq!(fourier_coefficients(2).unwrap(), vec![1, -4, 6, -4, 1]);
        assert_eq!(
            fourier_coefficients(3).unwrap(),
            vec![-1, 6, -15, 20, -15, 6, -1]
        );
        assert!(fourier_coefficients(0).is_err());
        assert!(fourier_coefficients(MAX_FOURIER_POWER).is_ok());
    }

    #[test]
    fn mesh_point_bounds() {
        let c = ctx();
        let p = MeshPoint::new(6, 6, Shift::NPlusTwo, &c).unwrap();
        assert_eq!(p.denominator(), 8);
        assert!(p.value > 0 && p.value < c.pi());
        assert!(MeshPoint::new(6, 7, Shift::NPlusTwo, &c).is_err());
        assert!(MeshPoint::new(6, 0, Shift::NPlusOne, &c).is_err());
    }
}
