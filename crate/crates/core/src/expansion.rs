//! Regular asymptotic expansions of the eigenvalue phases and eigenvalues.
//!
//! If `x = u + eta(x) / (n + s)` has the root `phi`, self-substitution in
//! powers of `h = 1/(n+s)` gives
//!
//! ```text
//! phi    = sum_k c_k(u) h^k,
//! lambda = g(phi) = sum_k d_k(u) h^k.
//! ```
//!
//! The coefficients are computed pointwise from jets of `eta` and `g` at `u`,
//! for any order. The printed closed forms up to order five are kept alongside
//! as an independent check.

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{binomial_series, Jet, PrecisionContext};
use crate::symbol::{self, mesh_value, Shift};

/// Highest order with closed forms for `c_k` and `d_k`.
pub const CLOSED_FORM_MAX_ORDER: usize = 5;

/// Coefficients `c_0..c_p` and `d_0..d_p` at one mesh point.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionCoefficients {
    pub order: usize,
    pub base_point: Float,
    pub shift: Shift,
    pub c_values: Vec<Float>,
    pub d_values: Vec<Float>,
}

impl ExpansionCoefficients {
    /// Coefficients for the pentadiagonal symbol `g_2` at `u` (shift `n + 2`).
    pub fn pentadiagonal(u: &Float, order: usize) -> Result<Self> {
        let eta = symbol::eta_jet(u, order);
        let g = symbol::g_jet(2, u, order);
        Self::from_jets(&eta, &g, order, Shift::NPlusTwo)
    }

    pub fn from_jets(eta_jet: &Jet, g_jet: &Jet, order: usize, shift: Shift) -> Result<Self> {
        let c_values = munchhausen_c(eta_jet, order)?;
        let d_values = munchhausen_d(g_jet, &c_values, order)?;
        Ok(Self {
            order,
            base_point: eta_jet.base_point().clone(),
            shift,
            c_values,
            d_values,
        })
    }

    /// `sum_k d_k h^k` at `h = 1/denominator`.
    pub fn eigenvalue_sum(&self, denominator: usize) -> Float {
        horner_in_reciprocal(&self.d_values, denominator)
    }

    /// `sum_k c_k h^k` at `h = 1/denominator`.
    pub fn phase_sum(&self, denominator: usize) -> Float {
        horner_in_reciprocal(&self.c_values, denominator)
    }
}

fn horner_in_reciprocal(coeffs: &[Float], denominator: usize) -> Float {
    let prec = coeffs[0].prec();
    let mut acc = Float::new(prec);
    for c in coeffs.iter().rev() {
        acc /= denominator as u64;
        acc += c;
    }
    acc
}

/// Phase coefficients `[c_0(u), ..., c_p(u)]` from the jet of `eta` at `u`.
///
/// Runs exactly `p` rounds of `phi <- u + h * eta(phi)` on series in `h`;
/// round `r` fixes the coefficient of `h^r`. Only `eta, eta', ...,
/// eta^(p-1)` are read, so the jet may be of order `p - 1`.
pub fn munchhausen_c(eta_jet: &Jet, p: usize) -> Result<Vec<Float>> {
    if p > 0 && eta_jet.order() + 1 < p {
        return Err(Error::Argument(format!(
            "munchhausen_c: order {p} needs an eta jet of order {}, got {}",
            p - 1,
            eta_jet.order()
        )));
    }
    let u = eta_jet.base_point().clone();
    let prec = eta_jet.prec();
    let eta = eta_jet.with_order(p);
    let h_origin = Float::new(prec);
    let mut increment = Jet::zero(&h_origin, p);
    for _ in 0..p {
        increment = eta.compose(&increment)?.mul_by_h();
    }
    let mut c = increment.into_coeffs();
    c[0] = u;
    Ok(c)
}

/// Eigenvalue coefficients `[d_0(u), ..., d_p(u)]`: the series of
/// `g(u + sum_{k>=1} c_k h^k)` truncated at `h^p`.
pub fn munchhausen_d(g_jet: &Jet, c: &[Float], p: usize) -> Result<Vec<Float>> {
    if c.len() < p + 1 {
        return Err(Error::Argument(format!(
            "munchhausen_d: need {} phase coefficients, got {}",
            p + 1,
            c.len()
        )));
    }
    if g_jet.order() < p {
        return Err(Error::Argument(format!(
            "munchhausen_d: order {p} needs a g jet of order {p}, got {}",
            g_jet.order()
        )));
    }
    let prec = g_jet.prec();
    let mut inc = Vec::with_capacity(p + 1);
    inc.push(Float::new(prec));
    inc.extend(c[1..=p].iter().cloned());
    let increment = Jet::new(Float::new(prec), inc)?;
    Ok(g_jet.with_order(p).compose(&increment)?.into_coeffs())
}

/// `c_k(u)` from the printed closed forms, `k <= 5`, for the pentadiagonal
/// symbol.
pub fn closed_form_c(u: &Float, k: usize) -> Result<Float> {
    Ok(closed_form_c_all(u, k)?.swap_remove(k))
}

/// `d_k(u)` from the printed closed forms, `k <= 5`, for the pentadiagonal
/// symbol.
pub fn closed_form_d(u: &Float, k: usize) -> Result<Float> {
    Ok(closed_form_d_all(u, k)?.swap_remove(k))
}

fn check_closed_order(k: usize) -> Result<()> {
    if k > CLOSED_FORM_MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            what: "closed-form expansion coefficients",
            requested: k,
            max: CLOSED_FORM_MAX_ORDER,
        });
    }
    Ok(())
}

/// `[c_0(u), ..., c_p(u)]` from the closed forms.
pub fn closed_form_c_all(u: &Float, p: usize) -> Result<Vec<Float>> {
    check_closed_order(p)?;
    let prec = u.prec();
    let e = symbol::eval_eta_derivatives(u, p.saturating_sub(1).clamp(1, 4))?;
    let eta = &e[0];
    let e1 = &e[1];
    let mut c = vec![u.clone(), eta.clone()];
    if p >= 2 {
        c.push(Float::with_val(prec, eta * e1));
    }
    if p >= 3 {
        let e2 = &e[2];
        let eta2 = Float::with_val(prec, eta.square_ref());
        // eta eta'^2 + eta^2 eta'' / 2
        let t1 = Float::with_val(prec, e1.square_ref()) * eta;
        let t2 = Float::with_val(prec, &eta2 * e2) / 2u32;
        c.push(t1 + t2);
    }
    if p >= 4 {
        let (e2, e3) = (&e[2], &e[3]);
        let eta2 = Float::with_val(prec, eta.square_ref());
        let eta3 = Float::with_val(prec, &eta2 * eta);
        // eta eta'^3 + 3/2 eta^2 eta' eta'' + eta^3 eta''' / 6
        let t1 = Float::with_val(prec, e1.square_ref()) * e1 * eta;
        let t2 = Float::with_val(prec, &eta2 * e1) * e2 * 3u32 / 2u32;
        let t3 = Float::with_val(prec, &eta3 * e3) / 6u32;
        c.push(t1 + t2 + t3);
    }
    if p >= 5 {
        let (e2, e3, e4) = (&e[2], &e[3], &e[4]);
        let eta2 = Float::with_val(prec, eta.square_ref());
        let eta3 = Float::with_val(prec, &eta2 * eta);
        let eta4 = Float::with_val(prec, eta2.square_ref());
        let e1sq = Float::with_val(prec, e1.square_ref());
        // eta eta'^4 + 3 eta^2 eta'^2 eta'' + eta^3 eta''^2 / 2
        //   + 2/3 eta^3 eta' eta''' + eta^4 eta'''' / 24
        let t1 = Float::with_val(prec, e1sq.square_ref()) * eta;
        let t2 = Float::with_val(prec, &eta2 * &e1sq) * e2 * 3u32;
        let t3 = Float::with_val(prec, e2.square_ref()) * &eta3 / 2u32;
        let t4 = Float::with_val(prec, &eta3 * e1) * e3 * 2u32 / 3u32;
        let t5 = Float::with_val(prec, &eta4 * e4) / 24u32;
        c.push(t1 + t2 + t3 + t4 + t5);
    }
    c.truncate(p + 1);
    Ok(c)
}

/// `[d_0(u), ..., d_p(u)]` from the closed forms.
pub fn closed_form_d_all(u: &Float, p: usize) -> Result<Vec<Float>> {
    check_closed_order(p)?;
    let prec = u.prec();
    let g = symbol::eval_g_derivatives(u, p)?;
    let c = closed_form_c_all(u, p)?;
    let mul = |a: &Float, b: &Float| Float::with_val(prec, a * b);
    let mut d = vec![g[0].clone()];
    if p >= 1 {
        d.push(mul(&g[1], &c[1]));
    }
    if p >= 2 {
        let c1sq = mul(&c[1], &c[1]);
        d.push(mul(&g[1], &c[2]) + mul(&g[2], &c1sq) / 2u32);
    }
    if p >= 3 {
        let c1sq = mul(&c[1], &c[1]);
        let c1cube = mul(&c1sq, &c[1]);
        d.push(
            mul(&g[1], &c[3]) + mul(&g[2], &mul(&c[1], &c[2])) + mul(&g[3], &c1cube) / 6u32,
        );
    }
    if p >= 4 {
        let c1sq = mul(&c[1], &c[1]);
        let c1_4 = mul(&c1sq, &c1sq);
        let inner = mul(&c[1], &c[3]) + mul(&c[2], &c[2]) / 2u32;
        d.push(
            mul(&g[1], &c[4])
                + mul(&g[2], &inner)
                + mul(&g[3], &mul(&c1sq, &c[2])) / 2u32
                + mul(&g[4], &c1_4) / 24u32,
        );
    }
    if p >= 5 {
        let c1sq = mul(&c[1], &c[1]);
        let c1cube = mul(&c1sq, &c[1]);
        let c1_5 = mul(&c1cube, &c1sq);
        let g2_term = mul(&c[2], &c[3]) + mul(&c[1], &c[4]);
        let g3_term = mul(&c1sq, &c[3]) + mul(&c[1], &mul(&c[2], &c[2]));
        d.push(
            mul(&g[1], &c[5])
                + mul(&g[2], &g2_term)
                + mul(&g[3], &g3_term) / 2u32
                + mul(&g[4], &mul(&c1cube, &c[2])) / 6u32
                + mul(&g[5], &c1_5) / 120u32,
        );
    }
    Ok(d)
}

/// Truncated expansion of `lambda_{n,j}` for the pentadiagonal symbol.
///
/// With `Shift::NPlusTwo` this is `sum_{k<=p} d_k(j pi/(n+2)) / (n+2)^k`. With
/// `Shift::NPlusOne` it is the re-expanded `sum_{k<=p} f_k(j pi/(n+1)) /
/// (n+1)^k` from [`shift_denominator`].
pub fn eigen_approx(
    n: usize,
    j: usize,
    p: usize,
    shift: Shift,
    ctx: &PrecisionContext,
) -> Result<Float> {
    if n == 0 || j == 0 || j > n {
        return Err(Error::Argument(format!(
            "eigen_approx index out of range: n={n}, j={j}"
        )));
    }
    let denominator = n + shift.value();
    let u = mesh_value(n, j, shift.value(), ctx.bits());
    let coeffs = match shift {
        Shift::NPlusTwo => ExpansionCoefficients::pentadiagonal(&u, p)?.d_values,
        Shift::NPlusOne => shift_denominator(&u, p)?,
    };
    Ok(horner_in_reciprocal(&coeffs, denominator))
}

/// Coefficients `[f_0(v), ..., f_p(v)]` of the expansion in powers of
/// `1/(n+1)` at `v = j pi/(n+1)`, obtained by re-expanding the `n + 2`
/// expansion of the pentadiagonal symbol.
///
/// Writing `H = 1/(n+1)`, one has `j pi/(n+2) = v/(1+H)` and `1/(n+2) =
/// H/(1+H)`. The Taylor coefficients of every `d_k` around `v` come from a
/// bivariate series in `(t, h)`, after which `t = v/(1+H) - v` and
/// `h = H/(1+H)` are substituted. In particular `f_0 = d_0` and
/// `f_1 = d_1 - v d_0'`.
pub fn shift_denominator(v: &Float, p: usize) -> Result<Vec<Float>> {
    shift_denominator_with(&symbol::eta_jet(v, p), &symbol::g_jet(2, v, p), p)
}

/// [`shift_denominator`] for arbitrary `eta` and `g` jets at `v`.
pub fn shift_denominator_with(eta_jet: &Jet, g_jet: &Jet, p: usize) -> Result<Vec<Float>> {
    if eta_jet.order() < p || g_jet.order() < p {
        return Err(Error::Argument(format!(
            "shift_denominator: order {p} needs jets of order {p}, got eta {} and g {}",
            eta_jet.order(),
            g_jet.order()
        )));
    }
    if eta_jet.base_point() != g_jet.base_point() {
        return Err(Error::Argument(
            "shift_denominator: eta and g jets at different points".into(),
        ));
    }
    let v = eta_jet.base_point().clone();
    let prec = eta_jet.prec();

    // phi - v = t + h eta(phi), iterated p times in (t, h).
    let t = BiSeries::t(prec, p);
    let mut inc = BiSeries::zero(prec, p);
    for _ in 0..p {
        inc = t.add(&inc.compose_into(eta_jet).mul_by_h());
    }
    // d_k(v + t) = sum_i taylor[i][k] t^i
    let taylor = inc.compose_into(g_jet);

    let origin = Float::new(prec);
    let h_of_big_h = binomial_series(&Float::with_val(prec, -1), &origin, p)
        .mul_by_h(); // H/(1+H)
    let t_of_big_h = {
        let mut s = binomial_series(&Float::with_val(prec, -1), &origin, p).scale(&v);
        s = s.add_scalar(&Float::with_val(prec, -&v)); // v/(1+H) - v
        s
    };

    let mut f = Jet::zero(&origin, p);
    let mut t_pow = Jet::constant(&Float::with_val(prec, 1), &origin, p);
    for i in 0..=p {
        let mut h_pow = t_pow.clone();
        for k in 0..=(p - i) {
            f = f.add(&h_pow.scale(&taylor.coeffs[i][k]))?;
            h_pow = h_pow.mul(&h_of_big_h)?;
        }
        t_pow = t_pow.mul(&t_of_big_h)?;
    }
    Ok(f.into_coeffs())
}

/// `Omega_{p,n,j} = (n+2)^p (lambda_{n,j} - sum_{k<p} d_k(u)/(n+2)^k)`, the
/// scaled residual that should track `d_p(u)`; `p >= 1`.
pub fn omega(p: usize, n: usize, j: usize, lambda: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if p == 0 {
        return Err(Error::Argument("omega: p must be at least 1".into()));
    }
    let approx = eigen_approx(n, j, p - 1, Shift::NPlusTwo, ctx)?;
    let residual = Float::with_val(ctx.bits(), lambda - &approx);
    Ok(scale_by_power(residual, n + 2, p))
}

pub(crate) fn scale_by_power(mut x: Float, base: usize, exp: usize) -> Float {
    for _ in 0..exp {
        x *= base as u64;
    }
    x
}

/// Truncated bivariate series `sum c[i][k] t^i h^k` with `i + k <= order`.
#[derive(Clone, Debug)]
struct BiSeries {
    order: usize,
    prec: u32,
    coeffs: Vec<Vec<Float>>,
}

impl BiSeries {
    fn zero(prec: u32, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|i| vec![Float::new(prec); order + 1 - i])
            .collect();
        Self {
            order,
            prec,
            coeffs,
        }
    }

    fn t(prec: u32, order: usize) -> Self {
        let mut s = Self::zero(prec, order);
        if order >= 1 {
            s.coeffs[1][0] = Float::with_val(prec, 1);
        }
        s
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (row, orow) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (a, b) in row.iter_mut().zip(orow) {
                *a += b;
            }
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.prec, self.order);
        for i1 in 0..=self.order {
            for k1 in 0..=(self.order - i1) {
                let a = &self.coeffs[i1][k1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=(self.order - i1 - k1) {
                    for k2 in 0..=(self.order - i1 - k1 - i2) {
                        let b = &other.coeffs[i2][k2];
                        if b.is_zero() {
                            continue;
                        }
                        out.coeffs[i1 + i2][k1 + k2] += Float::with_val(self.prec, a * b);
                    }
                }
            }
        }
        out
    }

    fn mul_by_h(&self) -> Self {
        let mut out = Self::zero(self.prec, self.order);
        for i in 0..=self.order {
            for k in 0..(self.order - i) {
                out.coeffs[i][k + 1] = self.coeffs[i][k].clone();
            }
        }
        out
    }

    /// `outer(x0 + self)` where `self` vanishes at the origin.
    fn compose_into(&self, outer: &Jet) -> Self {
        let mut acc = Self::zero(self.prec, self.order);
        for c in outer.coeffs()[..=self.order].iter().rev() {
            acc = acc.mul(self);
            acc.coeffs[0][0] += c;
        }
        acc
    }
}
