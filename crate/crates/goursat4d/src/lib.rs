//! Solver for the four-dimensional Goursat problem of the sixth-order
//! hyperbolic equation with dominant mixed derivative D1 D2 D3^2 D4^2 u and
//! rough (merely p-integrable) lower-order coefficients.
//!
//! The problem is posed through 36 traces: the equation right-hand side
//! plus 35 boundary values of mixed derivatives on the faces through the
//! origin. An integral representation identifies a function with its trace
//! vector; substituting it into the equation leaves a Volterra integral
//! equation for the dominant derivative, which successive approximation
//! solves unconditionally. The crate implements
//!
//! - 4D tensor grids, sub-grid fields, and prefix-sum cumulative quadrature
//!   ([`grid`], [`field`], [`quad`]),
//! - the representation operator, its termwise derivatives, and trace
//!   extraction ([`representation`]),
//! - classical Goursat face data, the twelve matching conditions, and the
//!   conversions between classical and trace form ([`boundary`]),
//! - the differential operator and finite-difference bundles ([`pde`]),
//! - the reduced integral equation and fixed-point solvers ([`solver`]),
//! - L_p, graph, and trace norms with an empirical norm-equivalence scan
//!   ([`norms`]),
//! - manufactured solutions and convergence studies ([`mms`]),
//! - field files and problem documents ([`io`]).

pub mod boundary;
pub mod diff;
pub mod error;
pub mod field;
pub mod grid;
pub mod io;
pub mod mms;
pub mod multi_index;
pub mod norms;
pub mod pde;
pub mod quad;
pub mod representation;
pub mod solver;
pub mod trace_vector;

pub use boundary::{
    check_compatibility, classical_to_nonclassical, nonclassical_to_classical, ClassicalData,
    CompatReport, TraceConversion,
};
pub use error::{Error, Result};
pub use field::{FaceSide, Field};
pub use grid::{make_grid, Axes, Axis, Grid4};
pub use mms::{convergence_study, error_metrics, solve_case, ManufacturedCase};
pub use multi_index::MultiIndex;
pub use norms::{
    lp_norm, norm_ratio, norm_ratio_scan, sample_trace_vector, sobolev_norm, trace_norm,
    NormConfig, TraceSampler,
};
pub use pde::{apply_pde_operator, finite_diff_bundle, CoefficientSet, DerivativeBundle};
pub use quad::{cumulative_integral, QuadRule};
pub use representation::{
    boundary_derivative, causal_integral, causal_kernel, extract_traces, synthesize,
    synthesize_boundary, Solution,
};
pub use solver::{
    apply_volterra, apply_volterra_tail, reduced_rhs, residual_norm, solve_fixed_point,
    solve_goursat, IterationMode, SolveReport, SolverOptions,
};
pub use trace_vector::TraceVector;
