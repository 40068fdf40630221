//! Manufactured solutions with closed-form derivative bundles, the problem
//! data they induce, error metrics, and grid-refinement studies.
//!
//! Every built-in case is separable, u = f1(x1) f2(x2) f3(x3) f4(x4), so all
//! 36 mixed derivatives come from per-axis factor derivatives. Cases are
//! defined on the unit box; the jump case places its coefficient step at
//! x1 = 1/2 so refinements keep the interface on a grid plane.

use crate::boundary::ClassicalData;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::{Axes, Axis, Grid4};
use crate::multi_index::MultiIndex;
use crate::norms::{lp_norm_of_diff, NormConfig};
use crate::pde::{CoefficientSet, DerivativeBundle};
use crate::representation::Solution;
use crate::solver::{solve_goursat, SolveReport, SolverOptions};
use crate::trace_vector::TraceVector;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum CaseKind {
    Zero,
    PolySep,
    PolyConstCoef,
    Trig,
    JumpCoef,
}

/// Where the jump-coefficient case places its interface.
pub const JUMP_AT: f64 = 0.5;
const JUMP_LOW: f64 = 1.0;
const JUMP_HIGH: f64 = 3.0;

/// A named problem with known solution, coefficients, and data.
#[derive(Clone, Copy, Debug)]
pub struct ManufacturedCase {
    pub name: &'static str,
    kind: CaseKind,
}

impl ManufacturedCase {
    pub const NAMES: [&'static str; 5] = [
        "zero",
        "poly-sep",
        "poly-const-coef",
        "trig",
        "jump-coef",
    ];

    pub fn by_name(name: &str) -> Result<ManufacturedCase> {
        let kind = match name {
            "zero" => CaseKind::Zero,
            "poly-sep" => CaseKind::PolySep,
            "poly-const-coef" => CaseKind::PolyConstCoef,
            "trig" => CaseKind::Trig,
            "jump-coef" => CaseKind::JumpCoef,
            other => {
                return Err(Error::invalid(format!(
                    "unknown case {other:?}; built-in cases: {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        Ok(ManufacturedCase {
            name: Self::NAMES
                .iter()
                .find(|n| **n == name)
                .copied()
                .unwrap(),
            kind,
        })
    }

    /// d^order/dx^order of the axis factor of u.
    fn factor_derivative(&self, axis: Axis, order: u8, x: f64) -> f64 {
        match self.kind {
            CaseKind::Zero => 0.0,
            CaseKind::PolySep | CaseKind::PolyConstCoef => match (axis, order) {
                (Axis::X1 | Axis::X2, 0) => x,
                (Axis::X1 | Axis::X2, 1) => 1.0,
                (_, 0) => 0.5 * x * x,
                (_, 1) => x,
                (_, 2) => 1.0,
                _ => 0.0,
            },
            CaseKind::Trig => match order % 4 {
                0 => x.sin(),
                1 => x.cos(),
                2 => -x.sin(),
                _ => -x.cos(),
            },
            CaseKind::JumpCoef => match (axis, order) {
                (Axis::X1, 0) => x - JUMP_AT,
                (Axis::X1, 1) => 1.0,
                (Axis::X2, 0) => x,
                (Axis::X2, 1) => 1.0,
                (_, 0) => x * x * x / 6.0,
                (_, 1) => 0.5 * x * x,
                (_, 2) => x,
                _ => 0.0,
            },
        }
    }

    /// The exact solution u(x).
    pub fn solution(&self, x: [f64; 4]) -> f64 {
        self.derivative(MultiIndex::new([0; 4]).unwrap(), x)
    }

    /// Closed-form mixed derivative D^i u(x).
    pub fn derivative(&self, mi: MultiIndex, x: [f64; 4]) -> f64 {
        if self.kind == CaseKind::Zero {
            return 0.0;
        }
        let mut v = 1.0;
        for a in Axis::ALL {
            v *= self.factor_derivative(a, mi.order(a), x[a.index()]);
        }
        v
    }

    /// Coefficient value a_i(x); None when the case leaves a_i zero.
    pub fn coefficient_value(&self, mi: MultiIndex, x: [f64; 4]) -> Option<f64> {
        if mi.is_dominant() {
            return None;
        }
        match self.kind {
            CaseKind::Zero | CaseKind::PolySep => None,
            CaseKind::PolyConstCoef | CaseKind::Trig => Some(1.0),
            CaseKind::JumpCoef => {
                if mi == MultiIndex::new([0, 0, 1, 1]).unwrap() {
                    // one-sided sampling: the interface node takes the
                    // right-hand value
                    Some(if x[0] < JUMP_AT { JUMP_LOW } else { JUMP_HIGH })
                } else {
                    None
                }
            }
        }
    }

    pub fn coefficients(&self, grid: Grid4) -> CoefficientSet {
        let mut set = CoefficientSet::empty(grid);
        for mi in MultiIndex::non_dominant() {
            // probe at an interior-ish point to see whether the slot is used
            if self.coefficient_value(mi, [0.25; 4]).is_some() {
                set.set_fn(mi, |x| self.coefficient_value(mi, x).unwrap())
                    .unwrap();
            }
        }
        set
    }

    /// The dominant equation datum: the operator applied to u, symbolically.
    pub fn rhs(&self, x: [f64; 4]) -> f64 {
        let mut v = self.derivative(MultiIndex::DOMINANT, x);
        for mi in MultiIndex::non_dominant() {
            if let Some(a) = self.coefficient_value(mi, x) {
                v += a * self.derivative(mi, x);
            }
        }
        v
    }

    /// The full trace-vector data: boundary traces of u plus the dominant
    /// slot holding the equation right-hand side.
    pub fn trace_data(&self, grid: Grid4) -> TraceVector {
        TraceVector::from_fn(grid, |mi, x| {
            if mi.is_dominant() {
                self.rhs(x)
            } else {
                self.derivative(mi, x)
            }
        })
    }

    /// Classical face data of u.
    pub fn classical_data(&self, grid: Grid4) -> ClassicalData {
        ClassicalData::from_fns(
            grid,
            |x| self.solution(x),
            |x| self.derivative(MultiIndex::new([0, 0, 1, 0]).unwrap(), x),
            |x| self.derivative(MultiIndex::new([0, 0, 0, 1]).unwrap(), x),
        )
    }

    pub fn exact_u(&self, grid: Grid4) -> Field {
        Field::from_fn(grid, Axes::ALL, |x| self.solution(x))
    }

    pub fn exact_density(&self, grid: Grid4) -> Field {
        Field::from_fn(grid, Axes::ALL, |x| {
            self.derivative(MultiIndex::DOMINANT, x)
        })
    }

    /// All 36 derivatives sampled from the closed forms.
    pub fn analytic_bundle(&self, grid: Grid4) -> DerivativeBundle {
        DerivativeBundle::from_fn(grid, |mi, x| self.derivative(mi, x))
    }
}

/// Norm errors of a solve against the manufactured truth.
#[derive(Clone, Copy, Debug)]
pub struct ErrorMetrics {
    /// ||u - u_exact|| in the chosen norm.
    pub u_error: f64,
    /// ||b - b_exact|| in the chosen norm.
    pub b_error: f64,
    /// Max-norm error of u.
    pub max_error: f64,
}

pub fn error_metrics(
    solution: &Solution,
    case: &ManufacturedCase,
    cfg: NormConfig,
) -> Result<ErrorMetrics> {
    let grid = *solution.u.grid();
    let exact_u = case.exact_u(grid);
    let exact_b = case.exact_density(grid);
    Ok(ErrorMetrics {
        u_error: lp_norm_of_diff(&solution.u, &exact_u, cfg)?,
        b_error: lp_norm_of_diff(&solution.b, &exact_b, cfg)?,
        max_error: solution.u.max_abs_diff(&exact_u)?,
    })
}

/// One refinement level of a convergence study.
#[derive(Clone, Copy, Debug)]
pub struct StudyRow {
    /// Nodes per axis.
    pub n: usize,
    /// Max-norm error of u against the manufactured truth.
    pub error: f64,
    /// Observed order against the previous row; None on the first row or
    /// when errors sit at round-off.
    pub order: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Errors at round-off level, below which observed orders are meaningless.
const ROUNDOFF_FLOOR: f64 = 1e-13;

/// Solves the case on unit-box grids of the given per-axis counts and
/// reports errors and observed orders between consecutive levels.
pub fn convergence_study(
    case: &ManufacturedCase,
    counts: &[usize],
    opts: &SolverOptions,
) -> Result<Vec<StudyRow>> {
    if counts.len() < 2 {
        return Err(Error::invalid(
            "convergence_study: need at least two grids".into(),
        ));
    }
    let mut rows: Vec<StudyRow> = Vec::with_capacity(counts.len());
    for &n in counts {
        let grid = Grid4::unit(n)?;
        let (solution, report) = solve_case(case, grid, opts)?;
        let metrics = error_metrics(&solution, case, NormConfig::Inf)?;
        let order = rows.last().and_then(|prev: &StudyRow| {
            if prev.error <= ROUNDOFF_FLOOR || metrics.max_error <= ROUNDOFF_FLOOR {
                None
            } else {
                let h_prev = 1.0 / (prev.n - 1) as f64;
                let h_cur = 1.0 / (n - 1) as f64;
                Some((prev.error / metrics.max_error).ln() / (h_prev / h_cur).ln())
            }
        });
        rows.push(StudyRow {
            n,
            error: metrics.max_error,
            order,
            iterations: report.iterations,
            converged: report.converged,
        });
    }
    Ok(rows)
}

/// Convenience: build data and coefficients for the case and solve.
pub fn solve_case(
    case: &ManufacturedCase,
    grid: Grid4,
    opts: &SolverOptions,
) -> Result<(Solution, SolveReport)> {
    let a = case.coefficients(grid);
    let phi = case.trace_data(grid);
    solve_goursat(&a, &phi, opts)
}
