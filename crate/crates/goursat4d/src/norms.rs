//! Discrete L_p norms on sub-grids, the anisotropic graph norm over all 36
//! derivatives, the trace-vector norm, and the empirical equivalence scan
//! between the two sides of the representation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::{Axis, Grid4};
use crate::multi_index::MultiIndex;
use crate::pde::{finite_diff_bundle, DerivativeBundle};
use crate::quad::QuadRule;
use crate::representation::synthesize;
use crate::trace_vector::TraceVector;

/// Norm exponent p in [1, inf]; infinity is the grid max.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum NormConfig {
    P(f64),
    Inf,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig::Inf
    }
}

impl NormConfig {
    pub fn new(p: f64) -> Result<NormConfig> {
        if p.is_infinite() && p > 0.0 {
            return Ok(NormConfig::Inf);
        }
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::invalid(format!("norm exponent must be >= 1, got {p}")));
        }
        Ok(NormConfig::P(p))
    }

    pub fn parse(s: &str) -> Result<NormConfig> {
        match s {
            "inf" | "Inf" | "INF" | "max" => Ok(NormConfig::Inf),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad norm exponent {other:?}")))?;
                NormConfig::new(p)
            }
        }
    }
}

impl std::fmt::Display for NormConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormConfig::P(p) => write!(f, "{p}"),
            NormConfig::Inf => write!(f, "inf"),
        }
    }
}

/// Tensor-product trapezoid weight of one node of the field's sub-grid.
fn node_weight(grid: &Grid4, axes: crate::grid::Axes, idx: [usize; 4]) -> f64 {
    let mut w = 1.0;
    for a in axes.iter() {
        let n = grid.count(a);
        let h = grid.spacing(a);
        let i = idx[a.index()];
        w *= if i == 0 || i == n - 1 { 0.5 * h } else { h };
    }
    w
}

/// Discrete L_p norm of a field over its own sub-grid, with trapezoid
/// weights; a scalar field reduces to the absolute value. The reduction is
/// sequential so results do not depend on thread count.
pub fn lp_norm(f: &Field, cfg: NormConfig) -> f64 {
    match cfg {
        NormConfig::Inf => f.max_abs(),
        NormConfig::P(p) => {
            let grid = f.grid();
            let axes = f.axes();
            let strides = f.strides4();
            let mut sum = 0.0;
            for (lin, v) in f.values().iter().enumerate() {
                let idx = crate::field::decode(lin, &strides, grid, axes);
                sum += node_weight(grid, axes, idx) * v.abs().powf(p);
            }
            sum.powf(1.0 / p)
        }
    }
}

/// ‖a - b‖ without materializing the difference.
pub fn lp_norm_of_diff(a: &Field, b: &Field, cfg: NormConfig) -> Result<f64> {
    match cfg {
        NormConfig::Inf => a.max_abs_diff(b),
        NormConfig::P(_) => Ok(lp_norm(&a.sub(b)?, cfg)),
    }
}

/// The anisotropic norm: sum of the L_p norms of all 36 mixed derivatives.
pub fn sobolev_norm(bundle: &DerivativeBundle, cfg: NormConfig) -> f64 {
    bundle.iter().map(|(_, f)| lp_norm(f, cfg)).sum()
}

/// The trace-vector norm: sum of the component norms over their own face
/// measures (scalars contribute their absolute value).
pub fn trace_norm(v: &TraceVector, cfg: NormConfig) -> f64 {
    v.iter().map(|(_, f)| lp_norm(f, cfg)).sum()
}

/// How random trace vectors are drawn for the equivalence scan.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TraceSampler {
    /// Node values i.i.d. uniform in [-1,1] per component.
    #[default]
    RoughUniform,
    /// Random multilinear polynomial per component (degree <= 1 per axis),
    /// coefficients uniform in [-1,1]. Smooth data that keeps the
    /// finite-difference bundle in its exactness regime.
    SmoothPoly,
}

impl TraceSampler {
    pub fn parse(s: &str) -> Result<TraceSampler> {
        match s {
            "rough" => Ok(TraceSampler::RoughUniform),
            "poly" | "smooth" => Ok(TraceSampler::SmoothPoly),
            other => Err(Error::invalid(format!(
                "unknown sampler {other:?} (expected rough or poly)"
            ))),
        }
    }
}

/// Draws a random trace vector; deterministic in the seed.
pub fn sample_trace_vector(grid: Grid4, seed: u64, sampler: TraceSampler) -> TraceVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = TraceVector::zeros(grid);
    for mi in MultiIndex::all() {
        let axes = mi.varying_axes();
        let field = match sampler {
            TraceSampler::RoughUniform => {
                let mut f = Field::zeros(grid, axes);
                for val in f.values_mut() {
                    *val = rng.gen_range(-1.0..=1.0);
                }
                f
            }
            TraceSampler::SmoothPoly => {
                // coefficients for all subsets of the component's axes
                let axis_list: Vec<Axis> = axes.iter().collect();
                let n_terms = 1usize << axis_list.len();
                let coeffs: Vec<f64> =
                    (0..n_terms).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                Field::from_fn(grid, axes, |x| {
                    let mut total = 0.0;
                    for (t, c) in coeffs.iter().enumerate() {
                        let mut term = *c;
                        for (bit, a) in axis_list.iter().enumerate() {
                            if t & (1 << bit) != 0 {
                                term *= x[a.index()];
                            }
                        }
                        total += term;
                    }
                    total
                })
            }
        };
        v.set_component(mi, field).unwrap();
    }
    v
}

/// Result of the norm-equivalence scan.
#[derive(Clone, Debug)]
pub struct RatioScan {
    pub ratios: Vec<f64>,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

/// The ratio ‖synthesize(b)‖ (graph norm via finite differences) over the
/// trace norm of b, for one sample.
pub fn norm_ratio(b: &TraceVector, cfg: NormConfig, rule: QuadRule) -> Result<f64> {
    let u = synthesize(b, rule)?;
    let bundle = finite_diff_bundle(&u)?;
    let denom = trace_norm(b, cfg);
    if denom == 0.0 {
        return Err(Error::invalid("norm_ratio: zero trace vector".into()));
    }
    Ok(sobolev_norm(&bundle, cfg) / denom)
}

fn sub_seed(seed: u64, sample: u64) -> u64 {
    // splitmix64 step keyed by the sample number
    let mut z = seed ^ sample.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws `samples` random trace vectors and reports the extreme ratios of
/// the two norms. Deterministic per-sample sub-seeds; samples run in
/// parallel.
pub fn norm_ratio_scan(
    grid: Grid4,
    cfg: NormConfig,
    samples: usize,
    seed: u64,
    sampler: TraceSampler,
) -> Result<RatioScan> {
    if samples < 1 {
        return Err(Error::invalid("norm_ratio_scan: need at least one sample".into()));
    }
    let ratios: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let b = sample_trace_vector(grid, sub_seed(seed, s), sampler);
            norm_ratio(&b, cfg, QuadRule::Trapezoid)
        })
        .collect::<Result<_>>()?;
    let min_ratio = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_ratio = ratios.iter().cloned().fold(0.0f64, f64::max);
    Ok(RatioScan {
        ratios,
        min_ratio,
        max_ratio,
    })
}
