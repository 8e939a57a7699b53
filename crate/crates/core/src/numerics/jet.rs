//! Truncated Taylor expansions ("jets") with multiple-precision coefficients.
//!
//! Convention: `coeffs[k] = F^(k)(x0) / k!`. A jet of order `p` stores
//! `p + 1` coefficients and represents `F(x0 + h) mod h^(p+1)`.
//!
//! Binary operations require matching order and base point. Composition is
//! the exception: the outer jet lives at some `x0` while the increment is a
//! series in a fresh variable `h` whose base point is carried through to the
//! result.

use rug::{Assign, Float};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    base_point: Float,
    coeffs: Vec<Float>,
}

impl Jet {
    pub fn new(base_point: Float, coeffs: Vec<Float>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Argument("jet needs at least one coefficient".into()));
        }
        Ok(Self { base_point, coeffs })
    }

    pub fn zero(base_point: &Float, order: usize) -> Self {
        let prec = base_point.prec();
        Self {
            base_point: base_point.clone(),
            coeffs: vec![Float::new(prec); order + 1],
        }
    }

    pub fn constant(value: &Float, base_point: &Float, order: usize) -> Self {
        let mut jet = Self::zero(base_point, order);
        jet.coeffs[0].assign(value);
        jet
    }

    /// The jet of the identity map `x ↦ x` at `base_point`.
    pub fn variable(base_point: &Float, order: usize) -> Self {
        let mut jet = Self::constant(base_point, base_point, order);
        if order >= 1 {
            jet.coeffs[1].assign(1);
        }
        jet
    }

    /// Packs raw derivative values `[F(x0), F'(x0), F''(x0), ...]` into
    /// Taylor coefficients.
    pub fn from_derivatives(values: &[Float], base_point: &Float) -> Result<Self> {
        let mut factorial = Float::with_val(base_point.prec(), 1);
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if k > 1 {
                    factorial *= k as u32;
                }
                Float::with_val(base_point.prec(), v / &factorial)
            })
            .collect();
        Self::new(base_point.clone(), coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn base_point(&self) -> &Float {
        &self.base_point
    }

    pub fn coeffs(&self) -> &[Float] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Float {
        &self.coeffs[k]
    }

    pub fn value(&self) -> &Float {
        &self.coeffs[0]
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0].prec().max(self.base_point.prec())
    }

    pub fn into_coeffs(self) -> Vec<Float> {
        self.coeffs
    }

    /// `F^(k)(x0)`, i.e. the k-th coefficient times `k!`.
    pub fn derivative(&self, k: usize) -> Float {
        let mut d = self.coeffs[k].clone();
        for i in 2..=k {
            d *= i as u32;
        }
        d
    }

    /// Drops or zero-pads coefficients so that the order becomes `order`.
    pub fn with_order(&self, order: usize) -> Self {
        let prec = self.prec();
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Float::new(prec));
        Self {
            base_point: self.base_point.clone(),
            coeffs,
        }
    }

    /// Evaluates the truncated polynomial at increment `h`.
    pub fn eval(&self, h: &Float) -> Float {
        let mut acc = Float::new(self.prec());
        for c in self.coeffs.iter().rev() {
            acc *= h;
            acc += c;
        }
        acc
    }

    fn check_compatible(&self, other: &Jet, op: &str) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Argument(format!(
                "jet {op}: order mismatch ({} vs {})",
                self.order(),
                other.order()
            )));
        }
        if self.base_point != other.base_point {
            return Err(Error::Argument(format!(
                "jet {op}: base point mismatch ({} vs {})",
                self.base_point.to_f64(),
                other.base_point.to_f64()
            )));
        }
        Ok(())
    }

    fn map_coeffs(&self, coeffs: Vec<Float>) -> Self {
        Self {
            base_point: self.base_point.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other, "add")?;
        let prec = self.prec();
        Ok(self.map_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| Float::with_val(prec, a + b))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other, "sub")?;
        let prec = self.prec();
        Ok(self.map_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| Float::with_val(prec, a - b))
                .collect(),
        ))
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other, "mul")?;
        Ok(self.map_coeffs(cauchy(&self.coeffs, &other.coeffs, self.prec())))
    }

    pub fn div(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other, "div")?;
        let b = &other.coeffs;
        if b[0].is_zero() {
            return Err(Error::Argument("jet division by a jet vanishing at h = 0".into()));
        }
        let prec = self.prec();
        let mut c: Vec<Float> = Vec::with_capacity(b.len());
        for k in 0..b.len() {
            let mut sum = self.coeffs[k].clone();
            for j in 1..=k {
                sum -= Float::with_val(prec, &b[j] * &c[k - j]);
            }
            sum /= &b[0];
            c.push(sum);
        }
        Ok(self.map_coeffs(c))
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(&Float::with_val(self.prec(), 1), &self.base_point, self.order()).div(self)
    }

    pub fn neg(&self) -> Jet {
        self.map_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &Float) -> Jet {
        let prec = self.prec();
        self.map_coeffs(
            self.coeffs
                .iter()
                .map(|c| Float::with_val(prec, c * s))
                .collect(),
        )
    }

    pub fn add_scalar(&self, s: &Float) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += s;
        out
    }

    /// Multiplies by the expansion variable `h`, dropping the top coefficient.
    pub fn mul_by_h(&self) -> Jet {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Float::new(self.prec()));
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        self.map_coeffs(coeffs)
    }

    pub fn powi(&self, exp: u32) -> Jet {
        let prec = self.prec();
        let mut result = Jet::constant(&Float::with_val(prec, 1), &self.base_point, self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.map_coeffs(cauchy(&result.coeffs, &base.coeffs, prec));
            }
            e >>= 1;
            if e > 0 {
                base = base.map_coeffs(cauchy(&base.coeffs, &base.coeffs, prec));
            }
        }
        result
    }

    /// Taylor coefficients of `outer(base + increment(h))` in `h`.
    ///
    /// The increment must vanish at `h = 0` and have the same order as
    /// `outer`. The result carries the increment's base point.
    pub fn compose(&self, increment: &Jet) -> Result<Jet> {
        if self.order() != increment.order() {
            return Err(Error::Argument(format!(
                "jet compose: order mismatch ({} vs {})",
                self.order(),
                increment.order()
            )));
        }
        if !increment.coeffs[0].is_zero() {
            return Err(Error::Argument(
                "jet compose: increment must vanish at h = 0".into(),
            ));
        }
        let prec = self.prec().max(increment.prec());
        // Horner in the increment; each product gains one leading zero.
        let mut acc = vec![Float::new(prec); self.coeffs.len()];
        acc[0].assign(&self.coeffs[self.order()]);
        for c in self.coeffs.iter().rev().skip(1) {
            acc = cauchy(&acc, &increment.coeffs, prec);
            acc[0] += c;
        }
        Ok(Jet {
            base_point: increment.base_point.clone(),
            coeffs: acc,
        })
    }

    pub fn exp(&self) -> Jet {
        let prec = self.prec();
        let a = &self.coeffs;
        let mut b = vec![Float::with_val(prec, a[0].exp_ref())];
        for k in 1..a.len() {
            let mut sum = Float::new(prec);
            for i in 1..=k {
                sum += Float::with_val(prec, &a[i] * &b[k - i]) * i as u32;
            }
            b.push(sum / k as u32);
        }
        self.map_coeffs(b)
    }

    pub fn ln(&self) -> Result<Jet> {
        let a = &self.coeffs;
        if a[0] <= 0 {
            return Err(Error::Argument("jet ln: non-positive value".into()));
        }
        let prec = self.prec();
        let mut b = vec![Float::with_val(prec, a[0].ln_ref())];
        for k in 1..a.len() {
            let mut sum = Float::new(prec);
            for i in 1..k {
                sum += Float::with_val(prec, &b[i] * &a[k - i]) * i as u32;
            }
            let bk = (Float::with_val(prec, &a[k]) - sum / k as u32) / &a[0];
            b.push(bk);
        }
        Ok(self.map_coeffs(b))
    }

    /// Sine and cosine jets, computed together.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let prec = self.prec();
        let a = &self.coeffs;
        let mut s = vec![Float::with_val(prec, a[0].sin_ref())];
        let mut c = vec![Float::with_val(prec, a[0].cos_ref())];
        for k in 1..a.len() {
            let mut ss = Float::new(prec);
            let mut cc = Float::new(prec);
            for i in 1..=k {
                let ia = Float::with_val(prec, &a[i] * i as u32);
                ss += Float::with_val(prec, &ia * &c[k - i]);
                cc -= Float::with_val(prec, &ia * &s[k - i]);
            }
            s.push(ss / k as u32);
            c.push(cc / k as u32);
        }
        (self.map_coeffs(s), self.map_coeffs(c))
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    pub fn sqrt(&self) -> Result<Jet> {
        let a = &self.coeffs;
        if a[0] <= 0 {
            return Err(Error::Argument("jet sqrt: non-positive value".into()));
        }
        let prec = self.prec();
        let mut b = vec![Float::with_val(prec, a[0].sqrt_ref())];
        let two_b0 = Float::with_val(prec, &b[0] * 2u32);
        for k in 1..a.len() {
            let mut sum = Float::with_val(prec, &a[k]);
            for i in 1..k {
                sum -= Float::with_val(prec, &b[i] * &b[k - i]);
            }
            b.push(sum / &two_b0);
        }
        Ok(self.map_coeffs(b))
    }

    /// Integrates `b' = a' * q` given the jet `q`, with `b(0) = b0`.
    fn integrate_with(&self, b0: Float, q: &[Float]) -> Jet {
        let prec = self.prec();
        let a = &self.coeffs;
        let mut b = vec![b0];
        for k in 1..a.len() {
            let mut sum = Float::new(prec);
            for i in 1..=k {
                sum += Float::with_val(prec, &a[i] * &q[k - i]) * i as u32;
            }
            b.push(sum / k as u32);
        }
        self.map_coeffs(b)
    }

    pub fn atan(&self) -> Jet {
        let prec = self.prec();
        let one = Float::with_val(prec, 1);
        let denom = self.powi(2).add_scalar(&one);
        let q = denom.recip().expect("1 + a^2 is positive");
        self.integrate_with(Float::with_val(prec, self.coeffs[0].atan_ref()), &q.coeffs)
    }

    pub fn asinh(&self) -> Jet {
        let prec = self.prec();
        let one = Float::with_val(prec, 1);
        let root = self
            .powi(2)
            .add_scalar(&one)
            .sqrt()
            .expect("1 + a^2 is positive");
        let q = root.recip().expect("sqrt(1 + a^2) is positive");
        self.integrate_with(Float::with_val(prec, self.coeffs[0].asinh_ref()), &q.coeffs)
    }

    pub fn tanh(&self) -> Jet {
        // b' = a' (1 - b^2); the k-th coefficient of 1 - b^2 only needs b_0..b_k.
        let prec = self.prec();
        let a = &self.coeffs;
        let mut b = vec![Float::with_val(prec, a[0].tanh_ref())];
        let mut w = vec![Float::with_val(prec, 1) - Float::with_val(prec, b[0].square_ref())];
        for k in 1..a.len() {
            let mut sum = Float::new(prec);
            for i in 1..=k {
                sum += Float::with_val(prec, &a[i] * &w[k - i]) * i as u32;
            }
            b.push(sum / k as u32);
            let mut bsq = Float::new(prec);
            for i in 0..=k {
                bsq += Float::with_val(prec, &b[i] * &b[k - i]);
            }
            w.push(-bsq);
        }
        self.map_coeffs(b)
    }

    /// Raises a positive jet to a real power via `exp(s ln a)`.
    pub fn powf(&self, s: &Float) -> Result<Jet> {
        Ok(self.ln()?.scale(s).exp())
    }

    /// Same jet with coefficients rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Jet {
        Jet {
            base_point: Float::with_val(prec, &self.base_point),
            coeffs: self.coeffs.iter().map(|c| Float::with_val(prec, c)).collect(),
        }
    }
}

fn cauchy(a: &[Float], b: &[Float], prec: u32) -> Vec<Float> {
    let n = a.len().min(b.len());
    let mut prod = Float::new(prec);
    (0..n)
        .map(|k| {
            let mut sum = Float::new(prec);
            for j in 0..=k {
                if a[j].is_zero() || b[k - j].is_zero() {
                    continue;
                }
                prod.assign(&a[j] * &b[k - j]);
                sum += &prod;
            }
            sum
        })
        .collect()
}

/// `k!` as a real of the given precision.
pub fn factorial(k: usize, prec: u32) -> Float {
    let mut f = Float::with_val(prec, 1);
    for i in 2..=k {
        f *= i as u32;
    }
    f
}

/// Binomial series coefficients of `(1 + h)^s` up to order `order`.
pub fn binomial_series(s: &Float, base_point: &Float, order: usize) -> Jet {
    let prec = base_point.prec();
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Float::with_val(prec, 1);
    for k in 0..=order {
        coeffs.push(c.clone());
        c *= Float::with_val(prec, s - k as u32);
        c /= (k + 1) as u32;
    }
    Jet {
        base_point: base_point.clone(),
        coeffs,
    }
}
