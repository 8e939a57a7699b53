//! Row computations for every table the CLI can emit.
//!
//! Each public `*_row` function is usable on its own; [`plan`] and
//! [`run_task`] tie them to a [`TableSpec`].

use anyhow::{bail, Context, Result};
use rug::Float;
use spectra_core::exact::{build_toeplitz, dense_eigenvalues, inverse_norm_and_condition, solve_phi, solve_spectrum_with};
use spectra_core::expansion::{closed_form_d, eigen_approx, omega, ExpansionCoefficients};
use spectra_core::firsteig::{counterexample_gap, first_eig_asymptotic, solve_alpha};
use spectra_core::par::{map_range, Execution};
use spectra_core::symbol::{mesh_value, symbol_value, Shift};
use spectra_core::PrecisionContext;

use crate::spec::{TableId, TableSpec};

/// One output field.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(Float),
    Text(String),
}

impl Cell {
    /// Scientific notation with `digits` significant digits for reals.
    pub fn render(&self, digits: u32) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // rug counts the precision in significant digits
            Cell::Real(v) => format!("{:.*e}", digits.max(1) as usize, v),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn as_real(&self) -> Option<&Float> {
        match self {
            Cell::Real(v) => Some(v),
            _ => None,
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<Float> for Cell {
    fn from(v: Float) -> Self {
        Cell::Real(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

pub type Row = Vec<Cell>;

pub fn columns(id: TableId) -> &'static [&'static str] {
    match id {
        TableId::E4 | TableId::Delta => &["n", "j_min", "argmax_j", "max_error", "scaled_error"],
        TableId::Eps => &["n", "j", "lambda", "asymptotic", "eps", "scaled_eps"],
        TableId::Omega => &["n", "j", "u", "omega", "d_p"],
        TableId::Alpha => &["j", "alpha", "offset_from_half_odd_pi", "residual"],
        TableId::Cond => &["n", "inverse_norm", "cond", "scaled_inverse_norm", "scaled_cond"],
        TableId::Conjecture => &[
            "n",
            "m",
            "max_residual_p0",
            "scaled_residual_p0",
            "scaled_first",
            "scaled_first_shift_m",
        ],
        TableId::Counterexample => &["quantity", "n", "value"],
    }
}

fn pow_usize(base: usize, exp: usize, prec: u32) -> Float {
    let mut v = Float::with_val(prec, 1);
    for _ in 0..exp {
        v *= base as u64;
    }
    v
}

/// Smallest `j` with `j >= 2 ln(n+2)`.
pub fn inner_index_floor(n: usize) -> usize {
    (2.0 * ((n + 2) as f64).ln()).ceil().max(1.0) as usize
}

/// Largest `|lambda_{n,j} - sum_{k<=p} d_k(u_{n,j}) / (n+2)^k|` over `j_min <= j <= n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionError {
    pub n: usize,
    pub p: usize,
    pub j_min: usize,
    pub argmax_j: usize,
    pub max_error: Float,
    /// `(n+2)^(p+1) * max_error`.
    pub scaled: Float,
}

impl ExpansionError {
    pub fn cells(&self) -> Row {
        vec![
            self.n.into(),
            self.j_min.into(),
            self.argmax_j.into(),
            self.max_error.clone().into(),
            self.scaled.clone().into(),
        ]
    }
}

pub fn expansion_error(
    n: usize,
    p: usize,
    j_min: usize,
    ctx: &PrecisionContext,
    exec: Execution,
) -> Result<ExpansionError> {
    if j_min > n {
        bail!("no index j with {j_min} <= j <= {n}");
    }
    let spectrum = solve_spectrum_with(n, ctx, exec)?;
    let errors = map_range(j_min..n + 1, exec, |j| -> spectra_core::Result<Float> {
        let approx = eigen_approx(n, j, p, Shift::NPlusTwo, ctx)?;
        Ok(Float::with_val(ctx.bits(), &spectrum[j - 1].lambda - &approx).abs())
    });
    let mut best: Option<(usize, Float)> = None;
    for (offset, e) in errors.into_iter().enumerate() {
        let e = e?;
        if best.as_ref().is_none_or(|(_, b)| e > *b) {
            best = Some((j_min + offset, e));
        }
    }
    let (argmax_j, max_error) = best.expect("range is non-empty");
    let scaled = Float::with_val(ctx.bits(), &max_error * &pow_usize(n + 2, p + 1, ctx.bits()));
    Ok(ExpansionError {
        n,
        p,
        j_min,
        argmax_j,
        max_error,
        scaled,
    })
}

/// `E_{n,p}`: restricted to `j >= 2 ln(n+2)`.
pub fn e4_row(n: usize, p: usize, ctx: &PrecisionContext, exec: Execution) -> Result<ExpansionError> {
    expansion_error(n, p, inner_index_floor(n).min(n), ctx, exec)
}

/// `Delta_n`: all `j`.
pub fn delta_row(n: usize, p: usize, ctx: &PrecisionContext, exec: Execution) -> Result<ExpansionError> {
    expansion_error(n, p, 1, ctx, exec)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpsRow {
    pub n: usize,
    pub j: usize,
    pub lambda: Float,
    pub asymptotic: Float,
    pub eps: Float,
    /// `(n+2)^6 eps`.
    pub scaled: Float,
}

pub fn eps_row(n: usize, j: usize, ctx: &PrecisionContext) -> Result<EpsRow> {
    let lambda = solve_phi(n, j, ctx)?.lambda;
    let asymptotic = first_eig_asymptotic(n, j, ctx)?;
    let eps = Float::with_val(ctx.bits(), &lambda - &asymptotic).abs();
    let scaled = Float::with_val(ctx.bits(), &eps * &pow_usize(n + 2, 6, ctx.bits()));
    Ok(EpsRow {
        n,
        j,
        lambda,
        asymptotic,
        eps,
        scaled,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OmegaRow {
    pub n: usize,
    pub j: usize,
    pub u: Float,
    pub omega: Float,
    pub d_p: Float,
}

pub fn omega_row(n: usize, j: usize, p: usize, ctx: &PrecisionContext) -> Result<OmegaRow> {
    let lambda = solve_phi(n, j, ctx)?.lambda;
    let u = mesh_value(n, j, 2, ctx.bits());
    let omega = omega(p, n, j, &lambda, ctx)?;
    let d_p = closed_form_d(&u, p)
        .or_else(|_| ExpansionCoefficients::pentadiagonal(&u, p).map(|c| c.d_values[p].clone()))?;
    Ok(OmegaRow { n, j, u, omega, d_p })
}

pub fn alpha_row(j: usize, ctx: &PrecisionContext) -> Result<Row> {
    let root = solve_alpha(j, ctx)?;
    let offset = Float::with_val(ctx.bits(), &root.alpha - ctx.pi() * (2 * j + 1) as u64 / 2u32);
    Ok(vec![j.into(), root.alpha.into(), offset.into(), root.residual.into()])
}

#[derive(Clone, Debug, PartialEq)]
pub struct CondRow {
    pub n: usize,
    pub inverse_norm: Float,
    pub cond: Float,
    /// `||T_n^{-1}|| (alpha_1 / (n+2))^4`, tends to 1.
    pub scaled_inverse_norm: Float,
    /// `cond (alpha_1 / (n+2))^4 / 16`, tends to 1.
    pub scaled_cond: Float,
}

pub fn cond_row(n: usize, ctx: &PrecisionContext) -> Result<CondRow> {
    let (inverse_norm, cond) = inverse_norm_and_condition(n, ctx)?;
    let first = first_eig_asymptotic(n, 1, ctx)?;
    let scaled_inverse_norm = Float::with_val(ctx.bits(), &inverse_norm * &first);
    let scaled_cond = Float::with_val(ctx.bits(), &cond * &first) / 16u32;
    Ok(CondRow {
        n,
        inverse_norm,
        cond,
        scaled_inverse_norm,
        scaled_cond,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureRow {
    pub n: usize,
    pub m: u32,
    /// `max_j |lambda_{n,j} - g_m(u_{n,j})|` over the selected `j`.
    pub max_residual: Float,
    /// `(n+2) * max_residual`.
    pub scaled_residual: Float,
    /// `(n+2)^(2m) lambda_{n,1}`.
    pub scaled_first: Float,
    /// `(n+m)^(2m) lambda_{n,1}`; the denominator `n + m` removes the
    /// `O(1/n)` drift that `n + 2` leaves for `m != 2`.
    pub scaled_first_shift_m: Float,
}

/// Dense-oracle probe for `T_n(g_m)`. Only the zeroth-order residual and the
/// first-eigenvalue scaling are available, since no `eta` is known for
/// `m >= 3`.
pub fn conjecture_row(
    m: u32,
    n: usize,
    j_filter: Option<crate::spec::IndexRange>,
    ctx: &PrecisionContext,
) -> Result<ConjectureRow> {
    let t = build_toeplitz(m, n)?;
    let eigen = dense_eigenvalues(&t, ctx).with_context(|| format!("dense oracle at n={n}"))?;
    let js: Vec<usize> = match j_filter {
        Some(r) => r.clamp(n).collect(),
        None => (1..=n).collect(),
    };
    if js.is_empty() {
        bail!("j filter selects no index for n={n}");
    }
    let mut max_residual = Float::new(ctx.bits());
    for j in js {
        let u = mesh_value(n, j, 2, ctx.bits());
        let r = Float::with_val(ctx.bits(), &eigen[j - 1] - symbol_value(m, &u)).abs();
        if r > max_residual {
            max_residual = r;
        }
    }
    let scaled_residual = Float::with_val(ctx.bits(), &max_residual * (n + 2) as u64);
    let scaled_first = Float::with_val(ctx.bits(), &eigen[0] * &pow_usize(n + 2, 2 * m as usize, ctx.bits()));
    let scaled_first_shift_m =
        Float::with_val(ctx.bits(), &eigen[0] * &pow_usize(n + m as usize, 2 * m as usize, ctx.bits()));
    Ok(ConjectureRow {
        n,
        m,
        max_residual,
        scaled_residual,
        scaled_first,
        scaled_first_shift_m,
    })
}

pub fn counterexample_rows(ctx: &PrecisionContext) -> Result<Vec<Row>> {
    let r = counterexample_gap(ctx)?;
    let none = || Cell::from("");
    let mut rows = vec![
        vec!["alpha1".into(), none(), r.alpha1.clone().into()],
        vec!["three_pi_half".into(), none(), r.three_pi_half.clone().into()],
        vec!["gap".into(), none(), r.gap.clone().into()],
        vec!["regular_limit".into(), none(), r.regular_limit().into()],
    ];
    for (n, v) in &r.scaled_first {
        rows.push(vec!["scaled_first".into(), (*n).into(), v.clone().into()]);
    }
    rows.push(vec!["alpha2_minus_alpha1".into(), none(), r.alpha2_minus_alpha1.clone().into()]);
    rows.push(vec!["pi".into(), none(), r.pi.clone().into()]);
    Ok(rows)
}

/// Unit of work; each yields one or more rows, in output order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Size(usize),
    SizeIndex(usize, usize),
    Index(usize),
    Report,
}

/// Tasks in `(n, j)` order.
pub fn plan(spec: &TableSpec) -> Vec<Task> {
    let j_in = |n: usize, default: std::ops::RangeInclusive<usize>| -> Vec<usize> {
        match spec.j_range {
            Some(r) => r.clamp(n).collect(),
            None => default.filter(|&j| j <= n).collect(),
        }
    };
    match spec.table_id {
        TableId::E4 | TableId::Delta | TableId::Cond | TableId::Conjecture => {
            spec.n_list.iter().map(|&n| Task::Size(n)).collect()
        }
        TableId::Eps => spec
            .n_list
            .iter()
            .flat_map(|&n| j_in(n, 1..=2).into_iter().map(move |j| Task::SizeIndex(n, j)))
            .collect(),
        TableId::Omega => spec
            .n_list
            .iter()
            .flat_map(|&n| j_in(n, 1..=n).into_iter().map(move |j| Task::SizeIndex(n, j)))
            .collect(),
        TableId::Alpha => {
            let r = spec.j_range.map_or(1..=3, |r| r.lo..=r.hi);
            r.map(Task::Index).collect()
        }
        TableId::Counterexample => vec![Task::Report],
    }
}

/// Computes the rows of one task. `exec` governs parallelism inside the task.
pub fn run_task(spec: &TableSpec, task: Task, ctx: &PrecisionContext, exec: Execution) -> Result<Vec<Row>> {
    let row = match (spec.table_id, task) {
        (TableId::E4, Task::Size(n)) => e4_row(n, spec.p, ctx, exec)?.cells(),
        (TableId::Delta, Task::Size(n)) => delta_row(n, spec.p, ctx, exec)?.cells(),
        (TableId::Eps, Task::SizeIndex(n, j)) => {
            let r = eps_row(n, j, ctx)?;
            vec![n.into(), j.into(), r.lambda.into(), r.asymptotic.into(), r.eps.into(), r.scaled.into()]
        }
        (TableId::Omega, Task::SizeIndex(n, j)) => {
            let r = omega_row(n, j, spec.p, ctx)?;
            vec![n.into(), j.into(), r.u.into(), r.omega.into(), r.d_p.into()]
        }
        (TableId::Alpha, Task::Index(j)) => alpha_row(j, ctx)?,
        (TableId::Cond, Task::Size(n)) => {
            let r = cond_row(n, ctx)?;
            vec![
                n.into(),
                r.inverse_norm.into(),
                r.cond.into(),
                r.scaled_inverse_norm.into(),
                r.scaled_cond.into(),
            ]
        }
        (TableId::Conjecture, Task::Size(n)) => {
            let r = conjecture_row(spec.m, n, spec.j_range, ctx)?;
            vec![
                n.into(),
                r.m.into(),
                r.max_residual.into(),
                r.scaled_residual.into(),
                r.scaled_first.into(),
                r.scaled_first_shift_m.into(),
            ]
        }
        (TableId::Counterexample, Task::Report) => return counterexample_rows(ctx),
        (id, t) => bail!("task {t:?} does not belong to table {id}"),
    };
    Ok(vec![row])
}

/// Human-readable key for error messages.
pub fn describe(task: Task) -> String {
    match task {
        Task::Size(n) => format!("n={n}"),
        Task::SizeIndex(n, j) => format!("n={n} j={j}"),
        Task::Index(j) => format!("j={j}"),
        Task::Report => "report".into(),
    }
}
