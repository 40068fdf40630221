//! Sampled real-valued functions on sub-grids of a `Grid4`.
//!
//! A `Field` varies over a subset of the four axes and stores one value per
//! node of the corresponding tensor sub-grid, row-major with the last
//! (highest-numbered) axis fastest. A field over no axes is a scalar.

use crate::error::{Error, Result};
use crate::grid::{Axes, Axis, Grid4};

/// Which face of an axis to fix during restriction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FaceSide {
    /// The x_k = 0 face.
    Zero,
    /// The x_k = h_k face.
    Far,
}

/// A sampled function on the sub-grid spanned by `axes`.
#[derive(Clone, PartialEq, Debug)]
pub struct Field {
    grid: Grid4,
    axes: Axes,
    values: Vec<f64>,
}

fn sub_grid_len(grid: &Grid4, axes: Axes) -> usize {
    axes.iter().map(|a| grid.count(a)).product()
}

impl Field {
    pub fn zeros(grid: Grid4, axes: Axes) -> Field {
        let len = sub_grid_len(&grid, axes);
        Field {
            grid,
            axes,
            values: vec![0.0; len],
        }
    }

    pub fn constant(grid: Grid4, axes: Axes, value: f64) -> Field {
        let len = sub_grid_len(&grid, axes);
        Field {
            grid,
            axes,
            values: vec![value; len],
        }
    }

    /// Scalar field (no axes) holding a single value.
    pub fn scalar(grid: Grid4, value: f64) -> Field {
        Field {
            grid,
            axes: Axes::NONE,
            values: vec![value],
        }
    }

    /// Samples `f` at every node of the sub-grid. Coordinates of absent axes
    /// are passed as 0, so trace data on a face can be sampled directly.
    pub fn from_fn(grid: Grid4, axes: Axes, f: impl Fn([f64; 4]) -> f64) -> Field {
        let mut out = Field::zeros(grid, axes);
        let strides = out.strides4();
        for lin in 0..out.values.len() {
            let idx = decode(lin, &strides, &grid, axes);
            let mut x = [0.0; 4];
            for a in axes.iter() {
                x[a.index()] = grid.node(a, idx[a.index()]);
            }
            out.values[lin] = f(x);
        }
        out
    }

    /// Wraps raw values, checking length and finiteness.
    pub fn from_values(grid: Grid4, axes: Axes, values: Vec<f64>) -> Result<Field> {
        let len = sub_grid_len(&grid, axes);
        if values.len() != len {
            return Err(Error::invalid(format!(
                "field over {axes} needs {len} values, got {}",
                values.len()
            )));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite(format!("field over {axes}")));
        }
        Ok(Field { grid, axes, values })
    }

    pub fn grid(&self) -> &Grid4 {
        &self.grid
    }

    pub fn axes(&self) -> Axes {
        self.axes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True if every stored value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Per-global-axis strides into `values`; 0 for absent axes.
    pub fn strides4(&self) -> [usize; 4] {
        let mut strides = [0usize; 4];
        let mut stride = 1;
        for a in Axis::ALL.into_iter().rev() {
            if self.axes.contains(a) {
                strides[a.index()] = stride;
                stride *= self.grid.count(a);
            }
        }
        strides
    }

    /// Value at a full 4D node index; indices of absent axes are ignored.
    pub fn at(&self, idx: [usize; 4]) -> f64 {
        let strides = self.strides4();
        let mut off = 0;
        for k in 0..4 {
            off += idx[k] * strides[k];
        }
        self.values[off]
    }

    /// Checks that `other` lives on the same grid.
    pub fn check_same_grid(&self, other: &Field, what: &str) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::mismatch(format!("{what}: grids differ")));
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Field, what: &str) -> Result<()> {
        self.check_same_grid(other, what)?;
        if self.axes != other.axes {
            return Err(Error::mismatch(format!(
                "{what}: axes differ ({} vs {})",
                self.axes, other.axes
            )));
        }
        Ok(())
    }

    pub fn scale(&self, s: f64) -> Field {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= s;
        }
        out
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.check_compatible(other, "add")?;
        let mut out = self.clone();
        for (v, w) in out.values.iter_mut().zip(&other.values) {
            *v += w;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.check_compatible(other, "sub")?;
        let mut out = self.clone();
        for (v, w) in out.values.iter_mut().zip(&other.values) {
            *v -= w;
        }
        Ok(out)
    }

    /// self += s * other
    pub fn add_assign_scaled(&mut self, other: &Field, s: f64) -> Result<()> {
        self.check_compatible(other, "add_assign_scaled")?;
        for (v, w) in self.values.iter_mut().zip(&other.values) {
            *v += s * w;
        }
        Ok(())
    }

    /// self += factor .* other, pointwise.
    pub fn add_assign_mul(&mut self, factor: &Field, other: &Field) -> Result<()> {
        self.check_compatible(factor, "add_assign_mul")?;
        self.check_compatible(other, "add_assign_mul")?;
        for ((v, f), w) in self.values.iter_mut().zip(&factor.values).zip(&other.values) {
            *v += f * w;
        }
        Ok(())
    }

    /// self -= factor .* other, pointwise.
    pub fn sub_assign_mul(&mut self, factor: &Field, other: &Field) -> Result<()> {
        self.check_compatible(factor, "sub_assign_mul")?;
        self.check_compatible(other, "sub_assign_mul")?;
        for ((v, f), w) in self.values.iter_mut().zip(&factor.values).zip(&other.values) {
            *v -= f * w;
        }
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Field) -> Result<f64> {
        self.check_compatible(other, "max_abs_diff")?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
    }

    /// Restricts the field to a hyperplane at node index `idx` of `axis`.
    pub fn hyperplane(&self, axis: Axis, idx: usize) -> Result<Field> {
        if !self.axes.contains(axis) {
            return Err(Error::invalid(format!(
                "hyperplane: field over {} has no {axis}",
                self.axes
            )));
        }
        if idx >= self.grid.count(axis) {
            return Err(Error::invalid(format!(
                "hyperplane: index {idx} out of range on {axis}"
            )));
        }
        let out_axes = self.axes.without(axis);
        let mut out = Field::zeros(self.grid, out_axes);
        let src_strides = self.strides4();
        let out_strides = out.strides4();
        let base = idx * src_strides[axis.index()];
        for lin in 0..out.values.len() {
            let idx4 = decode(lin, &out_strides, &self.grid, out_axes);
            let mut off = base;
            for k in 0..4 {
                off += idx4[k] * src_strides[k];
            }
            out.values[lin] = self.values[off];
        }
        Ok(out)
    }

    /// Writes `plane` into the hyperplane at node index `idx` of `axis`.
    pub fn set_hyperplane(&mut self, axis: Axis, idx: usize, plane: &Field) -> Result<()> {
        if plane.axes != self.axes.without(axis) {
            return Err(Error::mismatch(
                "set_hyperplane: plane axes do not match".into(),
            ));
        }
        let src_strides = self.strides4();
        let plane_strides = plane.strides4();
        let base = idx * src_strides[axis.index()];
        for lin in 0..plane.values.len() {
            let idx4 = decode(lin, &plane_strides, &self.grid, plane.axes);
            let mut off = base;
            for k in 0..4 {
                off += idx4[k] * src_strides[k];
            }
            self.values[off] = plane.values[lin];
        }
        Ok(())
    }

    /// Restricts to the stated faces; fixed axes must be present and are
    /// dropped from the result.
    pub fn face_restrict(&self, fixed: &[(Axis, FaceSide)]) -> Result<Field> {
        let mut out = self.clone();
        for &(axis, side) in fixed {
            let idx = match side {
                FaceSide::Zero => 0,
                FaceSide::Far => out.grid.count(axis) - 1,
            };
            out = out.hyperplane(axis, idx)?;
        }
        Ok(out)
    }

    /// Adds `axis`, replicating values along it.
    pub fn insert_axis(&self, axis: Axis) -> Field {
        if self.axes.contains(axis) {
            return self.clone();
        }
        let out_axes = self.axes.with(axis);
        let mut out = Field::zeros(self.grid, out_axes);
        let out_strides = out.strides4();
        let src_strides = self.strides4();
        for lin in 0..out.values.len() {
            let idx4 = decode(lin, &out_strides, &self.grid, out_axes);
            let mut off = 0;
            for k in 0..4 {
                off += idx4[k] * src_strides[k];
            }
            out.values[lin] = self.values[off];
        }
        out
    }
}

/// Decodes a linear offset into per-global-axis indices (absent axes -> 0).
pub(crate) fn decode(lin: usize, strides: &[usize; 4], grid: &Grid4, axes: Axes) -> [usize; 4] {
    let mut idx = [0usize; 4];
    for a in axes.iter() {
        let k = a.index();
        idx[k] = (lin / strides[k]) % grid.count(a);
    }
    idx
}

/// acc += scale * term[...] * prod_k factor_k(x_k), where `acc` spans all
/// four axes, `term` spans a subset, and `factor_k` are optional per-node
/// tables (used for the monomial slots of the representation terms).
pub(crate) fn accumulate_expanded(
    acc: &mut Field,
    term: &Field,
    factors: [Option<&[f64]>; 4],
    scale: f64,
) {
    debug_assert_eq!(acc.axes, Axes::ALL);
    debug_assert_eq!(acc.grid, term.grid);
    let [n1, n2, n3, n4] = acc.grid.counts();
    let ts = term.strides4();
    let values = &mut acc.values;
    let term_vals = &term.values;
    let mut out_off = 0;
    for i1 in 0..n1 {
        let f1 = factors[0].map_or(1.0, |t| t[i1]);
        let t1 = i1 * ts[0];
        for i2 in 0..n2 {
            let f12 = f1 * factors[1].map_or(1.0, |t| t[i2]);
            let t2 = t1 + i2 * ts[1];
            for i3 in 0..n3 {
                let f123 = scale * f12 * factors[2].map_or(1.0, |t| t[i3]);
                let t3 = t2 + i3 * ts[2];
                let row = &mut values[out_off..out_off + n4];
                match factors[3] {
                    Some(t4) => {
                        for (i4, v) in row.iter_mut().enumerate() {
                            *v += f123 * t4[i4] * term_vals[t3 + i4 * ts[3]];
                        }
                    }
                    None => {
                        for (i4, v) in row.iter_mut().enumerate() {
                            *v += f123 * term_vals[t3 + i4 * ts[3]];
                        }
                    }
                }
                out_off += n4;
            }
        }
    }
}
