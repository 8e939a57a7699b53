use proptest::prelude::*;
use rug::Float;
use rug::ops::Pow;
use spectra_core::numerics::Jet;
use spectra_core::symbol::{beta_jet, eta_jet, eval_beta, eval_eta, g_jet, symbol_value};
use spectra_core::PrecisionContext;

const PREC: u32 = 200;

type Scalar = Box<dyn Fn(&Float) -> Float>;

fn int_jet(coeffs: &[i32]) -> Jet {
    let origin = Float::with_val(PREC, 0.25);
    Jet::new(origin, coeffs.iter().map(|&c| Float::with_val(PREC, c)).collect()).unwrap()
}

fn coeffs_strategy(order: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(-1000i32..1000, order + 1)
}

proptest! {
    // Integer coefficients keep every product and partial sum exact, so
    // equality is bitwise.
    #[test]
    fn mul_is_commutative(
        (a, b) in (0usize..9).prop_flat_map(|p| (coeffs_strategy(p), coeffs_strategy(p)))
    ) {
        let (a, b) = (int_jet(&a), int_jet(&b));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn mul_is_associative(
        (a, b, c) in (0usize..9).prop_flat_map(|p| (coeffs_strategy(p), coeffs_strategy(p), coeffs_strategy(p)))
    ) {
        let (a, b, c) = (int_jet(&a), int_jet(&b), int_jet(&c));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn mul_distributes_over_add(
        (a, b, c) in (0usize..9).prop_flat_map(|p| (coeffs_strategy(p), coeffs_strategy(p), coeffs_strategy(p)))
    ) {
        let (a, b, c) = (int_jet(&a), int_jet(&b), int_jet(&c));
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn div_inverts_mul(
        (a, b) in (1usize..8).prop_flat_map(|p| (coeffs_strategy(p), coeffs_strategy(p))),
        lead in 1i32..50,
    ) {
        let mut b = b;
        b[0] = lead;
        let (a, b) = (int_jet(&a), int_jet(&b));
        let back = a.mul(&b).unwrap().div(&b).unwrap();
        for (x, y) in back.coeffs().iter().zip(a.coeffs()) {
            let scale = Float::with_val(PREC, y.abs_ref()).max(&Float::with_val(PREC, 1));
            prop_assert!(Float::with_val(PREC, x - y).abs() <= scale * 1e-50);
        }
    }

    #[test]
    fn exp_ln_round_trip(x0 in 0.1f64..3.0, order in 1usize..10) {
        let x = Jet::variable(&Float::with_val(PREC, x0), order);
        let back = x.exp().ln().unwrap();
        for (a, b) in back.coeffs().iter().zip(x.coeffs()) {
            prop_assert!(Float::with_val(PREC, a - b).abs() < 1e-50);
        }
    }

    #[test]
    fn pythagorean_identity(x0 in -3.0f64..3.0, order in 1usize..10) {
        let x = Jet::variable(&Float::with_val(PREC, x0), order);
        let (s, c) = x.sin_cos();
        let one = s.mul(&s).unwrap().add(&c.mul(&c).unwrap()).unwrap();
        prop_assert!(Float::with_val(PREC, one.coeff(0) - 1u32).abs() < 1e-50);
        for k in 1..=order {
            prop_assert!(one.coeff(k).clone().abs() < 1e-50);
        }
    }
}

fn central_difference(f: impl Fn(&Float) -> Float, x: &Float, h: &Float) -> Float {
    let prec = x.prec();
    let up = f(&Float::with_val(prec, x + h));
    let down = f(&Float::with_val(prec, x - h));
    (up - down) / Float::with_val(prec, h * 2u32)
}

fn assert_first_coeff_matches(name: &str, jet: &Jet, f: impl Fn(&Float) -> Float, ctx: &PrecisionContext) {
    let x = jet.base_point();
    // h^2 truncation and eps/h rounding both stay below 10^(-digits/2)
    let h = ctx.pow10(-(ctx.digits() as i32) / 3);
    let fd = central_difference(f, x, &h);
    let scale = Float::with_val(ctx.bits(), fd.abs_ref()).max(&ctx.real(1));
    let tol = ctx.pow10(-(ctx.digits() as i32) / 2);
    let err = Float::with_val(ctx.bits(), jet.coeff(1) - &fd).abs();
    assert!(err <= scale * tol, "{name} at x={}: err {}", x.to_f64(), err.to_f64());
}

#[test]
fn first_coefficients_match_finite_differences() {
    let ctx = PrecisionContext::new(50).unwrap();
    let p = ctx.bits();
    for i in 1..20 {
        let x0 = Float::with_val(p, i) * ctx.pi() / 20u32;
        let x = Jet::variable(&x0, 4);
        let cases: Vec<(&str, Jet, Scalar)> = vec![
            ("exp", x.exp(), Box::new(|v: &Float| v.clone().exp())),
            ("ln", x.ln().unwrap(), Box::new(|v: &Float| v.clone().ln())),
            ("sin", x.sin(), Box::new(|v: &Float| v.clone().sin())),
            ("cos", x.cos(), Box::new(|v: &Float| v.clone().cos())),
            ("sqrt", x.sqrt().unwrap(), Box::new(|v: &Float| v.clone().sqrt())),
            ("atan", x.atan(), Box::new(|v: &Float| v.clone().atan())),
            ("asinh", x.asinh(), Box::new(|v: &Float| v.clone().asinh())),
            ("tanh", x.tanh(), Box::new(|v: &Float| v.clone().tanh())),
            ("powf", x.powf(&Float::with_val(p, 2.5)).unwrap(), Box::new(|v: &Float| v.clone().pow(2.5f64))),
            ("g2", g_jet(2, &x0, 4), Box::new(|v: &Float| symbol_value(2, v))),
            ("g3", g_jet(3, &x0, 4), Box::new(|v: &Float| symbol_value(3, v))),
            ("beta", beta_jet(&x0, 4), Box::new(|v: &Float| eval_beta(v).unwrap())),
            ("eta", eta_jet(&x0, 4), Box::new(|v: &Float| eval_eta(v).unwrap())),
        ];
        for (name, jet, f) in cases {
            assert_first_coeff_matches(name, &jet, f, &ctx);
        }
    }
}

/// `outer(x0 + delta(h))` from the composed jet has error `O(h^(p+1))`.
#[test]
fn composition_error_shrinks_with_order() {
    let prec = 256;
    for p in 1..=6usize {
        let x0 = Float::with_val(prec, 0.7);
        let outer = Jet::variable(&x0, p).sin().mul(&Jet::variable(&x0, p).exp()).unwrap();
        let delta_coeffs: Vec<Float> = (0..=p)
            .map(|k| if k == 0 { Float::new(prec) } else { Float::with_val(prec, 1) / (k as u32) })
            .collect();
        let delta = Jet::new(Float::new(prec), delta_coeffs).unwrap();
        let composed = outer.compose(&delta).unwrap();
        let error_at = |h: f64| {
            let h = Float::with_val(prec, h);
            let arg = Float::with_val(prec, &x0 + delta.eval(&h));
            let exact = Float::with_val(prec, arg.sin_ref()) * arg.exp();
            (composed.eval(&h) - exact).abs().to_f64()
        };
        let ratio = error_at(1e-2) / error_at(1e-3);
        assert!(ratio >= 10f64.powi(p as i32), "p={p} ratio={ratio:e}");
    }
}
