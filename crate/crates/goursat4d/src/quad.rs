//! Cumulative (Volterra-style) quadrature along one axis.
//!
//! `cumulative_integral` computes F(x) = ∫_0^{x_k} (x_k - t)^p / p! · f(..,t,..) dt
//! at every node by a single prefix sweep per axis, so repeated application
//! over several axes costs O(total nodes), not O(nodes^2).
//!
//! The kernel power p is 0 or 1. For p = 1 the rule integrates the kernel
//! against the interpolant of f exactly (product integration): piecewise
//! linear for the trapezoid rule, piecewise constant (left value) for the
//! rectangle rule. This keeps p = 1 sweeps exact whenever f is piecewise
//! linear along the axis, matching the exactness of the p = 0 sweep.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::Axis;

/// Quadrature rule for the cumulative integrals.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum QuadRule {
    #[default]
    Trapezoid,
    LeftRectangle,
}

impl QuadRule {
    pub fn parse(s: &str) -> Result<QuadRule> {
        match s {
            "trap" | "trapezoid" => Ok(QuadRule::Trapezoid),
            "rect" | "left-rectangle" => Ok(QuadRule::LeftRectangle),
            other => Err(Error::invalid(format!(
                "unknown quadrature rule {other:?} (expected trap or rect)"
            ))),
        }
    }
}

impl std::fmt::Display for QuadRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuadRule::Trapezoid => write!(f, "trap"),
            QuadRule::LeftRectangle => write!(f, "rect"),
        }
    }
}

const PAR_THRESHOLD: usize = 1 << 16;

/// Cumulative integral along `axis` with kernel power `kernel_power` in {0,1}.
///
/// If the field does not vary over `axis` it is broadcast first, so the
/// result always gains the axis. The output vanishes identically on the
/// x_k = 0 face, and the sweep is linear in `f`.
pub fn cumulative_integral(
    f: &Field,
    axis: Axis,
    kernel_power: u8,
    rule: QuadRule,
) -> Result<Field> {
    if kernel_power > 1 {
        return Err(Error::invalid(format!(
            "kernel power must be 0 or 1, got {kernel_power}"
        )));
    }
    let f = if f.axes().contains(axis) {
        f.clone()
    } else {
        f.insert_axis(axis)
    };
    let grid = *f.grid();
    let n = grid.count(axis);
    let h = grid.spacing(axis);
    let nodes = grid.nodes(axis);

    let strides = f.strides4();
    let stride = strides[axis.index()];
    // Lanes after the axis are contiguous blocks of `inner` values.
    let inner = stride;
    let block = n * inner;

    let mut out = f.clone();
    let src = f.values();
    let dst = out.values_mut();

    let sweep = |dst_block: &mut [f64], src_block: &[f64], scratch: &mut Vec<f64>| {
        sweep_block(
            dst_block,
            src_block,
            inner,
            n,
            h,
            &nodes,
            kernel_power,
            rule,
            scratch,
        )
    };

    if src.len() >= PAR_THRESHOLD && src.len() / block > 1 {
        dst.par_chunks_mut(block)
            .zip(src.par_chunks(block))
            .for_each_init(Vec::new, |scratch, (d, s)| sweep(d, s, scratch));
    } else {
        let mut scratch = Vec::new();
        for (d, s) in dst.chunks_mut(block).zip(src.chunks(block)) {
            sweep(d, s, &mut scratch);
        }
    }
    Ok(out)
}

/// One (outer) block: planes j = 0..n of `inner` contiguous values each.
#[allow(clippy::too_many_arguments)]
fn sweep_block(
    dst: &mut [f64],
    src: &[f64],
    inner: usize,
    n: usize,
    h: f64,
    nodes: &[f64],
    kernel_power: u8,
    rule: QuadRule,
    scratch: &mut Vec<f64>,
) {
    // acc_a = prefix of ∫ f, acc_b = prefix of ∫ t·f (moment against the
    // interpolant); F_j = x_j·acc_a − acc_b for p = 1.
    let two_acc = kernel_power == 1;
    scratch.clear();
    scratch.resize(if two_acc { 2 * inner } else { inner }, 0.0);
    let (acc_a, acc_b) = scratch.split_at_mut(if two_acc { inner } else { scratch.len() });

    dst[..inner].fill(0.0);
    for j in 1..n {
        let prev = &src[(j - 1) * inner..j * inner];
        let cur = &src[j * inner..(j + 1) * inner];
        let t_prev = nodes[j - 1];
        let x_j = nodes[j];
        let out_plane = j * inner;
        match (rule, kernel_power) {
            (QuadRule::Trapezoid, 0) => {
                for i in 0..inner {
                    acc_a[i] += 0.5 * h * (prev[i] + cur[i]);
                    dst[out_plane + i] = acc_a[i];
                }
            }
            (QuadRule::LeftRectangle, 0) => {
                for i in 0..inner {
                    acc_a[i] += h * prev[i];
                    dst[out_plane + i] = acc_a[i];
                }
            }
            (QuadRule::Trapezoid, 1) => {
                // Exact moments of the linear interpolant on [t_{j-1}, t_j]:
                // ∫ f = h(f_l+f_r)/2, ∫ t f = t_l·h(f_l+f_r)/2 + h²(f_l/6 + f_r/3).
                let hh = h * h;
                for i in 0..inner {
                    let fl = prev[i];
                    let fr = cur[i];
                    let seg = 0.5 * h * (fl + fr);
                    acc_a[i] += seg;
                    acc_b[i] += t_prev * seg + hh * (fl / 6.0 + fr / 3.0);
                    dst[out_plane + i] = x_j * acc_a[i] - acc_b[i];
                }
            }
            (QuadRule::LeftRectangle, 1) => {
                // Left value against the exact kernel moment on the segment.
                let mid = t_prev + 0.5 * h;
                for i in 0..inner {
                    let fl = prev[i];
                    acc_a[i] += h * fl;
                    acc_b[i] += h * fl * mid;
                    dst[out_plane + i] = x_j * acc_a[i] - acc_b[i];
                }
            }
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Axes, Grid4};

    fn grid3() -> Grid4 {
        Grid4::new([1.0; 4], [3, 3, 3, 3]).unwrap()
    }

    #[test]
    fn constant_power_zero_gives_x() {
        let g = grid3();
        let one = Field::constant(g, Axes::NONE, 1.0);
        let f = cumulative_integral(&one, Axis::X1, 0, QuadRule::Trapezoid).unwrap();
        let expect = Field::from_fn(g, Axes::from_slice(&[Axis::X1]), |x| x[0]);
        assert!(f.max_abs_diff(&expect).unwrap() < 1e-15);
    }

    #[test]
    fn constant_power_one_gives_half_x_squared() {
        let g = grid3();
        let one = Field::constant(g, Axes::NONE, 1.0);
        let f = cumulative_integral(&one, Axis::X3, 1, QuadRule::Trapezoid).unwrap();
        let expect = Field::from_fn(g, Axes::from_slice(&[Axis::X3]), |x| x[2] * x[2] / 2.0);
        assert!(f.max_abs_diff(&expect).unwrap() < 1e-15);
    }

    #[test]
    fn linear_power_zero_trapezoid_exact() {
        // hand sum on 3 nodes {0, 1/2, 1}: F = [0, 1/8, 1/2] = x^2/2
        let g = grid3();
        let f = Field::from_fn(g, Axes::from_slice(&[Axis::X1]), |x| x[0]);
        let ci = cumulative_integral(&f, Axis::X1, 0, QuadRule::Trapezoid).unwrap();
        assert!((ci.at([0, 0, 0, 0]) - 0.0).abs() < 1e-15);
        assert!((ci.at([1, 0, 0, 0]) - 0.125).abs() < 1e-15);
        assert!((ci.at([2, 0, 0, 0]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn linear_power_one_trapezoid_exact() {
        // product rule on 3 nodes: ∫ (x-t) t dt = x^3/6 -> [0, 1/48, 1/6]
        let g = grid3();
        let f = Field::from_fn(g, Axes::from_slice(&[Axis::X4]), |x| x[3]);
        let ci = cumulative_integral(&f, Axis::X4, 1, QuadRule::Trapezoid).unwrap();
        assert!((ci.at([0, 0, 0, 1]) - 1.0 / 48.0).abs() < 1e-15);
        assert!((ci.at([0, 0, 0, 2]) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn rect_rule_constant() {
        let g = grid3();
        let one = Field::constant(g, Axes::NONE, 1.0);
        let p0 = cumulative_integral(&one, Axis::X2, 0, QuadRule::LeftRectangle).unwrap();
        let expect = Field::from_fn(g, Axes::from_slice(&[Axis::X2]), |x| x[1]);
        assert!(p0.max_abs_diff(&expect).unwrap() < 1e-15);
        let p1 = cumulative_integral(&one, Axis::X2, 1, QuadRule::LeftRectangle).unwrap();
        let expect = Field::from_fn(g, Axes::from_slice(&[Axis::X2]), |x| x[1] * x[1] / 2.0);
        assert!(p1.max_abs_diff(&expect).unwrap() < 1e-15);
    }

    #[test]
    fn rect_rule_is_first_order_on_linear() {
        let g = grid3();
        let f = Field::from_fn(g, Axes::from_slice(&[Axis::X1]), |x| x[0]);
        let ci = cumulative_integral(&f, Axis::X1, 0, QuadRule::LeftRectangle).unwrap();
        // sum h*f_l for l < j at x=1: 0.5*(0 + 0.5) = 0.25 vs exact 0.5
        assert!((ci.at([2, 0, 0, 0]) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn output_vanishes_on_zero_face() {
        let g = Grid4::new([1.0, 2.0, 1.0, 1.0], [4, 5, 3, 4]).unwrap();
        let f = Field::from_fn(g, Axes::ALL, |x| (x[0] + x[1] * x[2]).cos() + x[3]);
        for axis in Axis::ALL {
            for power in [0, 1] {
                let ci = cumulative_integral(&f, axis, power, QuadRule::Trapezoid).unwrap();
                let face = ci
                    .face_restrict(&[(axis, crate::field::FaceSide::Zero)])
                    .unwrap();
                assert_eq!(face.max_abs(), 0.0);
            }
        }
    }

    #[test]
    fn linearity_and_axis_commutativity() {
        let g = Grid4::new([1.0, 1.5, 1.0, 0.5], [4, 3, 5, 4]).unwrap();
        let f = Field::from_fn(g, Axes::ALL, |x| (3.0 * x[0]).sin() + x[1] * x[3]);
        let w = Field::from_fn(g, Axes::ALL, |x| x[2] - 0.3 * x[0]);
        let lin_lhs = cumulative_integral(
            &f.scale(2.0).add(&w.scale(-0.5)).unwrap(),
            Axis::X2,
            0,
            QuadRule::Trapezoid,
        )
        .unwrap();
        let lin_rhs = cumulative_integral(&f, Axis::X2, 0, QuadRule::Trapezoid)
            .unwrap()
            .scale(2.0)
            .add(
                &cumulative_integral(&w, Axis::X2, 0, QuadRule::Trapezoid)
                    .unwrap()
                    .scale(-0.5),
            )
            .unwrap();
        assert!(lin_lhs.max_abs_diff(&lin_rhs).unwrap() < 1e-13);

        let ab = cumulative_integral(
            &cumulative_integral(&f, Axis::X1, 0, QuadRule::Trapezoid).unwrap(),
            Axis::X3,
            1,
            QuadRule::Trapezoid,
        )
        .unwrap();
        let ba = cumulative_integral(
            &cumulative_integral(&f, Axis::X3, 1, QuadRule::Trapezoid).unwrap(),
            Axis::X1,
            0,
            QuadRule::Trapezoid,
        )
        .unwrap();
        assert!(ab.max_abs_diff(&ba).unwrap() < 1e-13);
    }

    #[test]
    fn invalid_kernel_power_rejected() {
        let g = grid3();
        let one = Field::constant(g, Axes::NONE, 1.0);
        assert!(cumulative_integral(&one, Axis::X1, 2, QuadRule::Trapezoid).is_err());
    }
}
