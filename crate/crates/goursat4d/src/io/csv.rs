//! CSV export/import of fields: one row per node with its coordinates,
//! 17 significant digits, row-major with the last axis fastest. Plot-ready
//! and lossless for f64.

use std::io::Write as _;
use std::path::Path;

use super::gf4::FieldData;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::{Axes, Axis};

pub fn write_csv(path: &Path, f: &Field) -> Result<()> {
    let grid = f.grid();
    let axes: Vec<Axis> = f.axes().iter().collect();
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let header: Vec<String> = axes
        .iter()
        .map(|a| format!("x{}", a.number()))
        .chain(std::iter::once("value".to_string()))
        .collect();
    writeln!(out, "{}", header.join(","))?;

    let strides = f.strides4();
    for (lin, v) in f.values().iter().enumerate() {
        let idx = crate::field::decode(lin, &strides, grid, f.axes());
        let mut row = String::new();
        for a in &axes {
            row.push_str(&format!("{:.16e},", grid.node(*a, idx[a.index()])));
        }
        row.push_str(&format!("{v:.16e}"));
        writeln!(out, "{row}")?;
    }
    Ok(())
}

fn parse_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        message: message.into(),
    }
}

/// Reads a CSV written by `write_csv`, recovering axes from the header and
/// per-axis geometry from the coordinate columns.
pub fn read_csv(path: &Path) -> Result<FieldData> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| parse_err(path, "empty file"))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.last() != Some(&"value") {
        return Err(parse_err(path, "last column must be \"value\""));
    }
    let mut axes = Axes::NONE;
    let mut axis_list = Vec::new();
    for c in &cols[..cols.len() - 1] {
        let axis = match *c {
            "x1" => Axis::X1,
            "x2" => Axis::X2,
            "x3" => Axis::X3,
            "x4" => Axis::X4,
            other => return Err(parse_err(path, format!("unknown column {other:?}"))),
        };
        if axes.contains(axis) {
            return Err(parse_err(path, format!("column {c} repeated")));
        }
        axes = axes.with(axis);
        axis_list.push(axis);
    }
    if axis_list != axes.iter().collect::<Vec<_>>() {
        return Err(parse_err(path, "coordinate columns must be ascending"));
    }

    let n_axes = axis_list.len();
    let mut row_coords: Vec<f64> = Vec::new();
    let mut values = Vec::new();
    for (row_no, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != n_axes + 1 {
            return Err(parse_err(
                path,
                format!("row {}: expected {} fields", row_no + 2, n_axes + 1),
            ));
        }
        for (k, part) in parts.iter().enumerate() {
            let x: f64 = part
                .parse()
                .map_err(|_| parse_err(path, format!("row {}: bad number {part:?}", row_no + 2)))?;
            if k < n_axes {
                row_coords.push(x);
            } else {
                values.push(x);
            }
        }
    }

    let mut coords: Vec<Vec<f64>> = vec![Vec::new(); n_axes];
    for (i, &x) in row_coords.iter().enumerate() {
        let list = &mut coords[i % n_axes];
        if !list.iter().any(|v| v.to_bits() == x.to_bits()) {
            list.push(x);
        }
    }
    for list in &mut coords {
        list.sort_by(f64::total_cmp);
    }
    let counts: Vec<usize> = coords.iter().map(|c| c.len()).collect();
    let expected: usize = counts.iter().product();
    if values.len() != expected {
        return Err(Error::SizeMismatch {
            path: path.display().to_string(),
            expected,
            found: values.len(),
        });
    }
    if !values.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite(path.display().to_string()));
    }
    // rows must come row-major, last axis fastest
    for lin in 0..expected {
        let mut rem = lin;
        for k in (0..n_axes).rev() {
            let idx = rem % counts[k];
            rem /= counts[k];
            let want = coords[k][idx];
            let got = row_coords[lin * n_axes + k];
            if want.to_bits() != got.to_bits() {
                return Err(parse_err(
                    path,
                    format!("row {} is out of row-major order", lin + 2),
                ));
            }
        }
    }
    let lengths: Vec<f64> = coords
        .iter()
        .map(|c| c.last().copied().unwrap_or(1.0))
        .collect();
    Ok(FieldData {
        axes,
        counts,
        lengths,
        values,
    })
}
