//! Finite-difference derivatives along grid axes.
//!
//! First derivatives use the centered stencil inside and one-sided stencils
//! at the two boundary nodes; second derivatives use the centered 3-point
//! stencil inside and 4-point one-sided stencils at the boundaries. On
//! grids with at least 4 nodes per axis every stencil is exact for cubics,
//! which keeps trace extraction exact for the polynomial data produced by
//! the p = 1 product quadrature. Three-node axes fall back to stencils
//! exact for quadratics.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::Axis;

const PAR_THRESHOLD: usize = 1 << 16;

/// d/dx_k by second-order (boundary: third-order one-sided) differences.
pub fn first_derivative(f: &Field, axis: Axis) -> Result<Field> {
    if !f.axes().contains(axis) {
        return Err(Error::invalid(format!(
            "first_derivative: field over {} does not vary along {axis}",
            f.axes()
        )));
    }
    apply_stencils(f, axis, 1)
}

/// d²/dx_k² by the centered stencil inside, 4-point one-sided at boundaries.
pub fn second_derivative(f: &Field, axis: Axis) -> Result<Field> {
    if !f.axes().contains(axis) {
        return Err(Error::invalid(format!(
            "second_derivative: field over {} does not vary along {axis}",
            f.axes()
        )));
    }
    apply_stencils(f, axis, 2)
}

/// Mixed derivative D1^{o1} D2^{o2} D3^{o3} D4^{o4} f, one axis at a time.
///
/// Orders must be 0 on axes the field does not vary over.
pub fn mixed_derivative(f: &Field, orders: [u8; 4]) -> Result<Field> {
    let mut out = f.clone();
    for (k, &order) in orders.iter().enumerate() {
        let axis = Axis::from_index(k)?;
        match order {
            0 => {}
            1 => out = first_derivative(&out, axis)?,
            2 => out = second_derivative(&out, axis)?,
            _ => {
                return Err(Error::invalid(format!(
                    "derivative order {order} on {axis} not supported"
                )))
            }
        }
    }
    Ok(out)
}

/// Rows of (node offset, coefficient) pairs for every output node.
fn stencil_rows(n: usize, h: f64, order: u8) -> Vec<Vec<(usize, f64)>> {
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let row: Vec<(usize, f64)> = match order {
            1 => {
                if j > 0 && j + 1 < n {
                    vec![(j - 1, -0.5 / h), (j + 1, 0.5 / h)]
                } else if j == 0 {
                    if n >= 4 {
                        vec![
                            (0, -11.0 / (6.0 * h)),
                            (1, 3.0 / h),
                            (2, -1.5 / h),
                            (3, 1.0 / (3.0 * h)),
                        ]
                    } else {
                        vec![(0, -1.5 / h), (1, 2.0 / h), (2, -0.5 / h)]
                    }
                } else if n >= 4 {
                    vec![
                        (n - 1, 11.0 / (6.0 * h)),
                        (n - 2, -3.0 / h),
                        (n - 3, 1.5 / h),
                        (n - 4, -1.0 / (3.0 * h)),
                    ]
                } else {
                    vec![(n - 1, 1.5 / h), (n - 2, -2.0 / h), (n - 3, 0.5 / h)]
                }
            }
            2 => {
                let hh = h * h;
                if j > 0 && j + 1 < n {
                    vec![(j - 1, 1.0 / hh), (j, -2.0 / hh), (j + 1, 1.0 / hh)]
                } else if n == 3 {
                    vec![(0, 1.0 / hh), (1, -2.0 / hh), (2, 1.0 / hh)]
                } else if j == 0 {
                    vec![
                        (0, 2.0 / hh),
                        (1, -5.0 / hh),
                        (2, 4.0 / hh),
                        (3, -1.0 / hh),
                    ]
                } else {
                    vec![
                        (n - 1, 2.0 / hh),
                        (n - 2, -5.0 / hh),
                        (n - 3, 4.0 / hh),
                        (n - 4, -1.0 / hh),
                    ]
                }
            }
            _ => unreachable!(),
        };
        rows.push(row);
    }
    rows
}

fn apply_stencils(f: &Field, axis: Axis, order: u8) -> Result<Field> {
    let grid = *f.grid();
    let n = grid.count(axis);
    let h = grid.spacing(axis);
    let rows = stencil_rows(n, h, order);

    let inner = f.strides4()[axis.index()];
    let block = n * inner;
    let mut out = Field::zeros(grid, f.axes());
    let src = f.values();
    let dst = out.values_mut();

    let run = |dst_block: &mut [f64], src_block: &[f64]| {
        for (j, row) in rows.iter().enumerate() {
            let plane = &mut dst_block[j * inner..(j + 1) * inner];
            for &(l, c) in row {
                let src_plane = &src_block[l * inner..(l + 1) * inner];
                for (v, s) in plane.iter_mut().zip(src_plane) {
                    *v += c * s;
                }
            }
        }
    };

    if src.len() >= PAR_THRESHOLD && src.len() / block > 1 {
        dst.par_chunks_mut(block)
            .zip(src.par_chunks(block))
            .for_each(|(d, s)| run(d, s));
    } else {
        for (d, s) in dst.chunks_mut(block).zip(src.chunks(block)) {
            run(d, s);
        }
    }
    Ok(out)
}
