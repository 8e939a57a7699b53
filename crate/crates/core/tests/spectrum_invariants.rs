use proptest::prelude::*;
use rug::Float;
use spectra_core::exact::{
    build_toeplitz, dense_eigenvalues, inverse_norm_and_condition, solve_phi, solve_spectrum,
    solve_spectrum_with,
};
use spectra_core::firsteig::solve_alpha;
use spectra_core::symbol::mesh_value;
use spectra_core::{Execution, PrecisionContext};

fn ctx() -> PrecisionContext {
    PrecisionContext::new(50).unwrap()
}

fn abs_diff(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec(), a - b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phases_are_ordered_and_bracketed(n in 1usize..80) {
        let ctx = ctx();
        let spectrum = solve_spectrum(n, &ctx).unwrap();
        prop_assert_eq!(spectrum.len(), n);
        for (idx, record) in spectrum.iter().enumerate() {
            let j = idx + 1;
            prop_assert_eq!(record.j, j);
            prop_assert!(record.phi > mesh_value(n, j, 2, ctx.bits()));
            prop_assert!(record.phi < mesh_value(n, j + 1, 2, ctx.bits()));
            prop_assert!(record.residual <= *ctx.root_tol());
        }
        for pair in spectrum.windows(2) {
            prop_assert!(pair[0].phi < pair[1].phi);
            prop_assert!(pair[0].lambda < pair[1].lambda);
        }
        prop_assert!(spectrum[0].lambda > 0);
        prop_assert!(spectrum[n - 1].lambda < 16);
    }

    #[test]
    fn eigenvalues_sum_to_the_trace(n in 1usize..80) {
        let ctx = ctx();
        let mut sum = ctx.zero();
        for record in solve_spectrum(n, &ctx).unwrap() {
            sum += &record.lambda;
        }
        prop_assert!(abs_diff(&sum, &ctx.real(6 * n as u64)) < ctx.pow10(-45));
    }

    /// `T_n` is a principal submatrix of `T_{n+1}`, so the spectra interlace.
    #[test]
    fn consecutive_sizes_interlace(n in 1usize..60) {
        let ctx = ctx();
        let small = solve_spectrum(n, &ctx).unwrap();
        let large = solve_spectrum(n + 1, &ctx).unwrap();
        for j in 0..n {
            prop_assert!(large[j].lambda <= small[j].lambda);
            prop_assert!(small[j].lambda <= large[j + 1].lambda);
        }
    }
}

#[test]
fn one_by_one_phase() {
    let ctx = ctx();
    let record = solve_phi(1, 1, &ctx).unwrap();
    let expected = (ctx.real(6).sqrt().sqrt() / 2u32).asin() * 2u32;
    assert!(abs_diff(&record.phi, &expected) < ctx.pow10(-45));
    assert!((record.phi.to_f64() - 1.79748).abs() < 1e-5);
    assert!(abs_diff(&record.lambda, &ctx.real(6)) < ctx.pow10(-45));
}

#[test]
fn exact_spectrum_matches_dense_oracle() {
    let ctx = ctx();
    let tol = ctx.pow10(-(ctx.digits() as i32) / 2);
    for n in [6usize, 32, 128] {
        let dense = dense_eigenvalues(&build_toeplitz(2, n).unwrap(), &ctx).unwrap();
        let exact = solve_spectrum(n, &ctx).unwrap();
        for (record, oracle) in exact.iter().zip(&dense) {
            assert!(abs_diff(&record.lambda, oracle) <= tol, "n={n}, j={}", record.j);
        }
    }
}

#[test]
fn oracle_reproduces_the_tridiagonal_formula() {
    let ctx = ctx();
    let n = 16;
    let dense = dense_eigenvalues(&build_toeplitz(1, n).unwrap(), &ctx).unwrap();
    for (idx, value) in dense.iter().enumerate() {
        let x = mesh_value(n, idx + 1, 1, ctx.bits());
        let expected = 2u32 - x.cos() * 2u32;
        assert!(abs_diff(value, &expected) < ctx.pow10(-45), "j={}", idx + 1);
    }
}

#[test]
fn toeplitz_bands() {
    assert_eq!(build_toeplitz(3, 5).unwrap().band, vec![-1, 6, -15, 20, -15, 6, -1]);
    assert_eq!(build_toeplitz(1, 4).unwrap().band, vec![-1, 2, -1]);
    let t = build_toeplitz(2, 6).unwrap();
    assert_eq!(t.band, vec![1, -4, 6, -4, 1]);
    assert!(build_toeplitz(2, 0).is_err());
}

#[test]
fn execution_modes_agree() {
    let ctx = ctx();
    let parallel = solve_spectrum_with(40, &ctx, Execution::Parallel).unwrap();
    let sequential = solve_spectrum_with(40, &ctx, Execution::Sequential).unwrap();
    assert_eq!(parallel, sequential);
}

#[test]
fn condition_number_of_two_by_two() {
    let ctx = ctx();
    let (norm, cond) = inverse_norm_and_condition(2, &ctx).unwrap();
    assert!(abs_diff(&norm, &ctx.real(0.5)) < ctx.pow10(-45));
    assert!(abs_diff(&cond, &ctx.real(5)) < ctx.pow10(-45));
}

#[test]
fn inverse_norm_and_condition_scale_with_alpha() {
    let ctx = ctx();
    let n = 1024;
    let alpha = solve_alpha(1, &ctx).unwrap().alpha;
    let scale = Float::with_val(ctx.bits(), alpha / (n + 2) as u64).square().square();
    let (norm, cond) = inverse_norm_and_condition(n, &ctx).unwrap();
    let norm_ratio = (norm * &scale).to_f64();
    let cond_ratio = (cond * &scale / 16u32).to_f64();
    assert!((norm_ratio - 1.0).abs() < 0.01, "norm ratio {norm_ratio}");
    assert!((cond_ratio - 1.0).abs() < 0.01, "cond ratio {cond_ratio}");
}

#[test]
fn bad_indices_are_rejected() {
    let ctx = ctx();
    assert!(solve_phi(0, 1, &ctx).is_err());
    assert!(solve_phi(5, 0, &ctx).is_err());
    assert!(solve_phi(5, 6, &ctx).is_err());
}
