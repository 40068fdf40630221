//! The reduced Volterra integral equation and its fixed-point solvers.
//!
//! Writing the dominant derivative as the unknown density b turns the
//! problem into b + sum_i a_i(x) (K_i b)(x) = Z, where K_i integrates b over
//! the axes the index i leaves free, with the kernel powers the remaining
//! orders dictate. The operator is causal with respect to the origin: values
//! of (Nb)(x) depend only on b on the sub-box below x, which makes plain
//! successive approximation converge unconditionally in the continuum and
//! enables an accelerated slab-marching sweep discretely.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::Axis;
use crate::multi_index::{MultiIndex, MAX_ORDERS};
use crate::norms::{lp_norm, lp_norm_of_diff, NormConfig};
use crate::pde::CoefficientSet;
use crate::quad::{cumulative_integral, QuadRule};
use crate::representation::{
    boundary_derivative, causal_integral, synthesize_boundary, Solution,
};
use crate::trace_vector::TraceVector;

/// How the fixed-point iteration walks the grid.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum IterationMode {
    /// Whole-grid updates b <- Z - (N - I) b.
    #[default]
    Picard,
    /// Causal block sweep along the first axis: slabs are updated in
    /// increasing x1 order, each seeing the already-updated slabs below it.
    Sweep,
}

impl IterationMode {
    pub fn parse(s: &str) -> Result<IterationMode> {
        match s {
            "picard" => Ok(IterationMode::Picard),
            "sweep" => Ok(IterationMode::Sweep),
            other => Err(Error::invalid(format!(
                "unknown iteration mode {other:?} (expected picard or sweep)"
            ))),
        }
    }
}

/// Solver settings shared by the fixed-point iterations.
#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    /// Norm used for the convergence test and the reported residual.
    pub norm: NormConfig,
    /// Relative update tolerance: stop once ||b_{n+1}-b_n|| <= tol*(1+||Z||).
    pub tol: f64,
    pub max_iter: usize,
    pub rule: QuadRule,
    pub mode: IterationMode,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            norm: NormConfig::Inf,
            tol: 1e-10,
            max_iter: 200,
            rule: QuadRule::Trapezoid,
            mode: IterationMode::Picard,
        }
    }
}

/// Iteration log and convergence outcome. Non-convergence is reported, not
/// raised.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub iterations: usize,
    pub update_norms: Vec<f64>,
    pub residual: f64,
    pub converged: bool,
}

/// (N - I) b: the 35 coefficient-weighted causal integrals of b.
pub fn apply_volterra_tail(b: &Field, a: &CoefficientSet, rule: QuadRule) -> Result<Field> {
    if b.grid() != a.grid() {
        return Err(Error::mismatch(
            "apply_volterra_tail: density and coefficients on different grids".into(),
        ));
    }
    let mut out = Field::zeros(*b.grid(), b.axes());
    for (mi, coeff) in a.iter_present() {
        let k = causal_integral(b, mi, rule)?;
        out.add_assign_mul(coeff, &k)?;
    }
    Ok(out)
}

/// (N b)(x) = b(x) + sum_i a_i(x) (K_i b)(x). Identity when no coefficients
/// are present.
pub fn apply_volterra(b: &Field, a: &CoefficientSet, rule: QuadRule) -> Result<Field> {
    let tail = apply_volterra_tail(b, a, rule)?;
    b.add(&tail)
}

/// Right-hand side of the reduced equation: the dominant data component
/// minus the operator applied to the boundary part (whose dominant
/// derivative vanishes, so only the 35 coefficient terms contribute).
pub fn reduced_rhs(phi: &TraceVector, a: &CoefficientSet, rule: QuadRule) -> Result<Field> {
    if phi.grid() != a.grid() {
        return Err(Error::mismatch(
            "reduced_rhs: data and coefficients on different grids".into(),
        ));
    }
    let mut zhat = phi.dominant().clone();
    for (mi, coeff) in a.iter_present() {
        let dg0 = boundary_derivative(phi, mi, rule)?;
        if dg0.is_zero() {
            continue;
        }
        zhat.sub_assign_mul(coeff, &dg0)?;
    }
    Ok(zhat)
}

/// ||N b - Z|| in the configured norm; zero iff b solves the discrete
/// equation exactly.
pub fn residual_norm(
    b: &Field,
    a: &CoefficientSet,
    zhat: &Field,
    cfg: NormConfig,
    rule: QuadRule,
) -> Result<f64> {
    let nb = apply_volterra(b, a, rule)?;
    lp_norm_of_diff(&nb, zhat, cfg)
}

/// Solves (N b) = Z by successive approximation, starting from b = Z.
/// Returns the density and the iteration report; exceeding `max_iter`
/// yields `converged = false` rather than an error.
pub fn solve_fixed_point(
    a: &CoefficientSet,
    zhat: &Field,
    opts: &SolverOptions,
) -> Result<(Field, SolveReport)> {
    if !(opts.tol > 0.0) {
        return Err(Error::invalid("solver tolerance must be positive".into()));
    }
    if opts.max_iter < 1 {
        return Err(Error::invalid("max_iter must be at least 1".into()));
    }
    let zhat_norm = lp_norm(zhat, opts.norm);
    let threshold = opts.tol * (1.0 + zhat_norm);

    let mut b = zhat.clone();
    let mut update_norms = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        let b_next = match opts.mode {
            IterationMode::Picard => {
                let tail = apply_volterra_tail(&b, a, opts.rule)?;
                zhat.sub(&tail)?
            }
            IterationMode::Sweep => sweep_once(&b, a, zhat, opts.rule)?,
        };
        let d = lp_norm_of_diff(&b_next, &b, opts.norm)?;
        b = b_next;
        update_norms.push(d);
        if d <= threshold {
            converged = true;
            break;
        }
    }
    let residual = residual_norm(&b, a, zhat, opts.norm, opts.rule)?;
    Ok((
        b,
        SolveReport {
            iterations,
            update_norms,
            residual,
            converged,
        },
    ))
}

/// Cumulative integration of a slab over the axes x2..x4 that the term's
/// index leaves free.
fn slab_kernel(slab: &Field, mi: MultiIndex, rule: QuadRule) -> Result<Field> {
    let mut work = slab.clone();
    for axis in [Axis::X2, Axis::X3, Axis::X4] {
        let jk = mi.order(axis);
        let mk = MAX_ORDERS[axis.index()];
        if jk < mk {
            work = cumulative_integral(&work, axis, mk - 1 - jk, rule)?;
        }
    }
    Ok(work)
}

/// One causal block sweep along x1. Slabs below the current one contribute
/// with their values from this sweep; the current slab contributes its
/// previous-iterate values, so each sweep is a block Gauss-Seidel update.
fn sweep_once(
    b_old: &Field,
    a: &CoefficientSet,
    zhat: &Field,
    rule: QuadRule,
) -> Result<Field> {
    let grid = *b_old.grid();
    let n1 = grid.count(Axis::X1);
    let h1 = grid.spacing(Axis::X1);
    let (w_prev, w_cur) = match rule {
        QuadRule::Trapezoid => (0.5 * h1, 0.5 * h1),
        QuadRule::LeftRectangle => (h1, 0.0),
    };

    struct TermState {
        mi: MultiIndex,
        integrates_x1: bool,
        /// Running axis-1 prefix over fully updated slabs.
        prefix: Field,
        /// Slab kernel of the previous (already updated) slab.
        prev_new: Option<Field>,
    }

    let slab_axes = crate::grid::Axes::ALL.without(Axis::X1);
    let mut terms: Vec<TermState> = a
        .iter_present()
        .map(|(mi, _)| TermState {
            mi,
            integrates_x1: mi.order(Axis::X1) < MAX_ORDERS[0],
            prefix: Field::zeros(grid, slab_axes),
            prev_new: None,
        })
        .collect();

    let mut b_new = b_old.clone();
    for t in 0..n1 {
        let old_slab = b_old.hyperplane(Axis::X1, t)?;
        let mut tail = Field::zeros(grid, slab_axes);
        for term in terms.iter_mut() {
            let coeff_slab = a.get(term.mi).unwrap().hyperplane(Axis::X1, t)?;
            if term.integrates_x1 {
                let f_old = slab_kernel(&old_slab, term.mi, rule)?;
                let mut k_val = term.prefix.clone();
                if let Some(prev) = &term.prev_new {
                    k_val.add_assign_scaled(prev, w_prev)?;
                }
                k_val.add_assign_scaled(&f_old, w_cur)?;
                tail.add_assign_mul(&coeff_slab, &k_val)?;
            } else {
                let f_old = slab_kernel(&old_slab, term.mi, rule)?;
                tail.add_assign_mul(&coeff_slab, &f_old)?;
            }
        }
        let new_slab = zhat.hyperplane(Axis::X1, t)?.sub(&tail)?;
        b_new.set_hyperplane(Axis::X1, t, &new_slab)?;

        for term in terms.iter_mut() {
            if !term.integrates_x1 {
                continue;
            }
            let f_new = slab_kernel(&new_slab, term.mi, rule)?;
            if let Some(prev) = term.prev_new.take() {
                term.prefix.add_assign_scaled(&prev, w_prev)?;
            }
            term.prefix.add_assign_scaled(&f_new, w_cur)?;
            term.prev_new = Some(f_new);
        }
    }
    Ok(b_new)
}

/// End-to-end solve from trace data: build the reduced right-hand side,
/// iterate for the density, then assemble u from the boundary part and the
/// causal integral of the density.
pub fn solve_goursat(
    a: &CoefficientSet,
    phi: &TraceVector,
    opts: &SolverOptions,
) -> Result<(Solution, SolveReport)> {
    let zhat = reduced_rhs(phi, a, opts.rule)?;
    let (b, report) = solve_fixed_point(a, &zhat, opts)?;
    let g0 = synthesize_boundary(phi, opts.rule)?;
    let zero_j = MultiIndex::new([0, 0, 0, 0]).unwrap();
    let u = g0.add(&causal_integral(&b, zero_j, opts.rule)?)?;
    Ok((
        Solution {
            u,
            b,
            data: phi.clone(),
        },
        report,
    ))
}
