//! Multiple-precision symmetric band eigenvalue solver.
//!
//! Band-to-tridiagonal reduction by Givens rotations with bulge chasing
//! (one diagonal at a time), then implicit QL with Wilkinson shifts on the
//! tridiagonal matrix. Storage and work stay proportional to `n * m`.

use rug::{Assign, Float};

use super::toeplitz::BandedToeplitz;
use crate::error::{Error, Result};
use crate::numerics::PrecisionContext;

/// Largest matrix the dense oracle accepts.
pub const MAX_ORACLE_SIZE: usize = 4096;

const MAX_QL_SWEEPS: usize = 60;

/// Lower triangle of a symmetric band matrix: `diag[d][i] = A(i + d, i)`.
struct SymBand {
    n: usize,
    width: usize,
    diag: Vec<Vec<Float>>,
}

impl SymBand {
    fn from_toeplitz(t: &BandedToeplitz, prec: u32) -> Self {
        // One extra diagonal holds the bulge created while chasing.
        let width = t.m + 1;
        let diag = (0..=width)
            .map(|d| {
                let v = if d <= t.m { t.band[t.m + d] } else { 0 };
                vec![Float::with_val(prec, v); t.n.saturating_sub(d)]
            })
            .collect();
        Self {
            n: t.n,
            width,
            diag,
        }
    }

    fn get(&self, r: usize, c: usize) -> &Float {
        let (hi, lo) = if r >= c { (r, c) } else { (c, r) };
        &self.diag[hi - lo][lo]
    }

    fn get_mut(&mut self, r: usize, c: usize) -> &mut Float {
        let (hi, lo) = if r >= c { (r, c) } else { (c, r) };
        &mut self.diag[hi - lo][lo]
    }

    /// Similarity transform with the rotation acting on rows/columns `p` and
    /// `q = p + 1`: `row_p <- c row_p + s row_q`, `row_q <- -s row_p + c row_q`.
    fn rotate(&mut self, p: usize, c: &Float, s: &Float, tmp: &mut Scratch) {
        let q = p + 1;
        let lo = q.saturating_sub(self.width);
        let hi = (p + self.width).min(self.n - 1);
        for k in lo..=hi {
            if k == p || k == q {
                continue;
            }
            let x = self.get(p, k);
            let y = self.get(q, k);
            if x.is_zero() && y.is_zero() {
                continue;
            }
            tmp.a.assign(c * x);
            tmp.b.assign(s * y);
            tmp.a += &tmp.b; // new A(p, k)
            tmp.b.assign(c * y);
            tmp.c.assign(s * x);
            tmp.b -= &tmp.c; // new A(q, k)
            self.get_mut(p, k).assign(&tmp.a);
            self.get_mut(q, k).assign(&tmp.b);
        }
        // 2x2 block
        let app = self.get(p, p).clone();
        let aqq = self.get(q, q).clone();
        let apq = self.get(q, p).clone();
        let prec = app.prec();
        let cc = Float::with_val(prec, c.square_ref());
        let ss = Float::with_val(prec, s.square_ref());
        let cs = Float::with_val(prec, c * s);
        let cross = Float::with_val(prec, &cs * &apq) * 2u32;
        let new_pp = Float::with_val(prec, &cc * &app) + Float::with_val(prec, &ss * &aqq) + &cross;
        let new_qq = Float::with_val(prec, &ss * &app) + Float::with_val(prec, &cc * &aqq) - &cross;
        let new_pq = Float::with_val(prec, &aqq - &app) * &cs + Float::with_val(prec, &cc - &ss) * &apq;
        self.get_mut(p, p).assign(new_pp);
        self.get_mut(q, q).assign(new_qq);
        self.get_mut(q, p).assign(new_pq);
    }

    /// Zeroes `A(q, col)` with a rotation in the plane `(q - 1, q)`.
    fn annihilate(&mut self, q: usize, col: usize, tmp: &mut Scratch) {
        let y = self.get(q, col);
        if y.is_zero() {
            return;
        }
        let x = self.get(q - 1, col);
        let r = Float::with_val(x.prec(), x.hypot_ref(y));
        let c = Float::with_val(r.prec(), x / &r);
        let s = Float::with_val(r.prec(), y / &r);
        self.rotate(q - 1, &c, &s, tmp);
        self.get_mut(q, col).assign(0);
    }

    /// Reduces the half-bandwidth from `m` to 1 in place.
    fn tridiagonalize(&mut self, m: usize) {
        let mut tmp = Scratch::new(self.diag[0][0].prec());
        for b in (2..=m).rev() {
            if self.n <= b {
                continue;
            }
            for i in 0..(self.n - b) {
                self.annihilate(i + b, i, &mut tmp);
                // Chase the bulge at (k + b, k - 1) down the band.
                let mut k = i + b;
                while k + b < self.n {
                    self.annihilate(k + b, k - 1, &mut tmp);
                    k += b;
                }
            }
        }
    }
}

struct Scratch {
    a: Float,
    b: Float,
    c: Float,
}

impl Scratch {
    fn new(prec: u32) -> Self {
        Self {
            a: Float::new(prec),
            b: Float::new(prec),
            c: Float::new(prec),
        }
    }
}

/// All eigenvalues of `t`, ascending, in working precision.
pub fn dense_eigenvalues(t: &BandedToeplitz, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    if t.n > MAX_ORACLE_SIZE {
        return Err(Error::OracleScale {
            n: t.n,
            max: MAX_ORACLE_SIZE,
        });
    }
    let prec = ctx.bits();
    let mut band = SymBand::from_toeplitz(t, prec);
    band.tridiagonalize(t.m);
    let mut d: Vec<Float> = band.diag[0].clone();
    let mut e: Vec<Float> = if t.n > 1 && t.m >= 1 {
        band.diag[1].clone()
    } else {
        Vec::new()
    };
    e.push(Float::new(prec));
    tridiagonal_ql(&mut d, &mut e, ctx)?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    Ok(d)
}

/// Implicit QL with shifts on the symmetric tridiagonal matrix with diagonal
/// `d` and subdiagonal `e` (`e[i]` couples `i` and `i + 1`; last entry
/// unused). Eigenvalues overwrite `d`.
pub(crate) fn tridiagonal_ql(d: &mut [Float], e: &mut [Float], ctx: &PrecisionContext) -> Result<()> {
    let n = d.len();
    let prec = ctx.bits();
    let eps = ctx.epsilon();
    let mut g = Float::new(prec);
    let mut r = Float::new(prec);
    let mut s = Float::new(prec);
    let mut c = Float::new(prec);
    let mut p = Float::new(prec);
    let mut f = Float::new(prec);
    let mut b = Float::new(prec);
    let mut t = Float::new(prec);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                t.assign(d[m].abs_ref());
                f.assign(d[m + 1].abs_ref());
                t += &f;
                t *= &eps;
                f.assign(e[m].abs_ref());
                if f <= t {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::NoConvergence {
                    n,
                    iterations: sweeps,
                });
            }
            // Wilkinson-style shift from the leading 2x2 block.
            g.assign(&d[l + 1] - &d[l]);
            t.assign(&e[l] * 2u32);
            g /= &t;
            r.assign(g.hypot_ref(&Float::with_val(prec, 1)));
            if g.is_sign_negative() {
                t.assign(&g - &r);
            } else {
                t.assign(&g + &r);
            }
            g.assign(&e[l] / &t);
            g += &d[m];
            g -= &d[l];

            s.assign(1);
            c.assign(1);
            p.assign(0);
            let mut underflow = false;
            for i in (l..m).rev() {
                f.assign(&s * &e[i]);
                b.assign(&c * &e[i]);
                r.assign(f.hypot_ref(&g));
                e[i + 1].assign(&r);
                if r.is_zero() {
                    d[i + 1] -= &p;
                    e[m].assign(0);
                    underflow = true;
                    break;
                }
                s.assign(&f / &r);
                c.assign(&g / &r);
                g.assign(&d[i + 1] - &p);
                r.assign(&d[i] - &g);
                r *= &s;
                t.assign(&c * &b);
                t *= 2u32;
                r += &t;
                p.assign(&s * &r);
                d[i + 1].assign(&g + &p);
                g.assign(&c * &r);
                g -= &b;
            }
            if underflow {
                continue;
            }
            d[l] -= &p;
            e[l].assign(&g);
            e[m].assign(0);
        }
    }
    Ok(())
}
