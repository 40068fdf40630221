//! The GF4/1 field file format: a short text header followed by the raw
//! little-endian f64 payload, row-major with the last listed axis fastest.
//!
//! ```text
//! GF4 1
//! axes 3 4
//! counts 9 9
//! lengths 1 1
//!
//! <binary payload>
//! ```

use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::{Axes, Axis, Grid4};

const MAGIC: &str = "GF4 1";

/// A field as stored on disk: geometry of its own axes plus values. Binding
/// to a `Grid4` validates counts and lengths per axis.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldData {
    pub axes: Axes,
    pub counts: Vec<usize>,
    pub lengths: Vec<f64>,
    pub values: Vec<f64>,
}

impl FieldData {
    pub fn from_field(f: &Field) -> FieldData {
        let grid = f.grid();
        let axes = f.axes();
        FieldData {
            axes,
            counts: axes.iter().map(|a| grid.count(a)).collect(),
            lengths: axes.iter().map(|a| grid.length(a)).collect(),
            values: f.values().to_vec(),
        }
    }

    /// Binds the data to a grid, validating per-axis geometry.
    pub fn into_field(self, grid: &Grid4) -> Result<Field> {
        for (k, axis) in self.axes.iter().enumerate() {
            if self.counts[k] != grid.count(axis) {
                return Err(Error::mismatch(format!(
                    "field count {} on {axis} does not match grid count {}",
                    self.counts[k],
                    grid.count(axis)
                )));
            }
            if self.lengths[k] != grid.length(axis) {
                return Err(Error::mismatch(format!(
                    "field length {} on {axis} does not match grid length {}",
                    self.lengths[k],
                    grid.length(axis)
                )));
            }
        }
        Field::from_values(*grid, self.axes, self.values)
    }
}

/// Writes a field in GF4/1 form; round trips are bit-exact.
pub fn write_field(path: &Path, f: &Field) -> Result<()> {
    let grid = f.grid();
    let mut header = String::new();
    header.push_str(MAGIC);
    header.push('\n');
    header.push_str("axes");
    for a in f.axes().iter() {
        header.push_str(&format!(" {}", a.number()));
    }
    header.push('\n');
    header.push_str("counts");
    for a in f.axes().iter() {
        header.push_str(&format!(" {}", grid.count(a)));
    }
    header.push('\n');
    header.push_str("lengths");
    for a in f.axes().iter() {
        header.push_str(&format!(" {}", grid.length(a)));
    }
    header.push_str("\n\n");

    let mut out = std::fs::File::create(path)?;
    out.write_all(header.as_bytes())?;
    let mut payload = Vec::with_capacity(f.len() * 8);
    for v in f.values() {
        payload.extend_from_slice(&v.to_le_bytes());
    }
    out.write_all(&payload)?;
    Ok(())
}

fn parse_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        message: message.into(),
    }
}

/// Reads a GF4/1 file. Magic, size, and finiteness problems are distinct
/// errors.
pub fn read_field(path: &Path) -> Result<FieldData> {
    let bytes = std::fs::read(path)?;
    let header_end = bytes
        .windows(2)
        .position(|w| w == b"\n\n")
        .ok_or_else(|| parse_err(path, "missing blank line after header"))?;
    let header = std::str::from_utf8(&bytes[..header_end])
        .map_err(|_| parse_err(path, "header is not utf-8"))?;
    let payload = &bytes[header_end + 2..];

    let mut lines = header.lines();
    let magic = lines.next().unwrap_or("");
    if magic != MAGIC {
        return Err(Error::BadMagic {
            path: path.display().to_string(),
            expected: MAGIC.into(),
            found: magic.into(),
        });
    }

    let mut axes_line = None;
    let mut counts_line = None;
    let mut lengths_line = None;
    for line in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("axes") => axes_line = Some(parts.map(str::to_owned).collect::<Vec<_>>()),
            Some("counts") => counts_line = Some(parts.map(str::to_owned).collect::<Vec<_>>()),
            Some("lengths") => lengths_line = Some(parts.map(str::to_owned).collect::<Vec<_>>()),
            Some(other) => return Err(parse_err(path, format!("unknown header line {other:?}"))),
            None => {}
        }
    }
    let axes_nums = axes_line.ok_or_else(|| parse_err(path, "missing axes line"))?;
    let counts_strs = counts_line.ok_or_else(|| parse_err(path, "missing counts line"))?;
    let lengths_strs = lengths_line.ok_or_else(|| parse_err(path, "missing lengths line"))?;
    if counts_strs.len() != axes_nums.len() || lengths_strs.len() != axes_nums.len() {
        return Err(parse_err(path, "axes, counts, lengths have different arity"));
    }

    let mut axes = Axes::NONE;
    let mut axis_order = Vec::new();
    for tok in &axes_nums {
        let n: usize = tok
            .parse()
            .map_err(|_| parse_err(path, format!("bad axis number {tok:?}")))?;
        if !(1..=4).contains(&n) {
            return Err(parse_err(path, format!("axis number {n} out of range 1..4")));
        }
        let axis = Axis::from_index(n - 1).unwrap();
        if axes.contains(axis) {
            return Err(parse_err(path, format!("axis {n} repeated")));
        }
        axes = axes.with(axis);
        axis_order.push(axis);
    }
    // header must list axes ascending so the payload order is unambiguous
    let sorted: Vec<Axis> = axes.iter().collect();
    if axis_order != sorted {
        return Err(parse_err(path, "axes must be listed in ascending order"));
    }

    let counts: Vec<usize> = counts_strs
        .iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(path, format!("bad count {t:?}")))
        })
        .collect::<Result<_>>()?;
    let lengths: Vec<f64> = lengths_strs
        .iter()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| parse_err(path, format!("bad length {t:?}")))
        })
        .collect::<Result<_>>()?;

    let expected: usize = counts.iter().product();
    if payload.len() != expected * 8 {
        return Err(Error::SizeMismatch {
            path: path.display().to_string(),
            expected,
            found: payload.len() / 8,
        });
    }
    let values: Vec<f64> = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if !values.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite(path.display().to_string()));
    }
    Ok(FieldData {
        axes,
        counts,
        lengths,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn tmp(name: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("goursat4d-gf4-tests");
        std::fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn random_field_roundtrip_bitwise() {
        let grid = Grid4::new([1.0, 0.7, 2.0, 1.0], [3, 3, 3, 3]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut f = Field::zeros(grid, Axes::ALL);
        for v in f.values_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        let path = tmp("rt.gf4");
        write_field(&path, &f).unwrap();
        let back = read_field(&path).unwrap().into_field(&grid).unwrap();
        assert_eq!(f.values(), back.values());
        assert_eq!(f.axes(), back.axes());
    }

    #[test]
    fn scalar_field_roundtrip() {
        let grid = Grid4::unit(3).unwrap();
        let f = Field::scalar(grid, -0.125);
        let path = tmp("scalar.gf4");
        write_field(&path, &f).unwrap();
        let back = read_field(&path).unwrap().into_field(&grid).unwrap();
        assert_eq!(f.values(), back.values());
    }

    #[test]
    fn truncated_payload_is_size_mismatch() {
        let grid = Grid4::unit(3).unwrap();
        let f = Field::constant(grid, Axes::from_slice(&[Axis::X3, Axis::X4]), 1.0);
        let path = tmp("trunc.gf4");
        write_field(&path, &f).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 8]).unwrap();
        match read_field(&path) {
            Err(Error::SizeMismatch { expected, found, .. }) => {
                assert_eq!(expected, 9);
                assert_eq!(found, 8);
            }
            other => panic!("expected size mismatch, got {other:?}"),
        }
    }

    #[test]
    fn bad_magic_detected() {
        let path = tmp("magic.gf4");
        std::fs::write(&path, b"GF9 1\naxes\ncounts\nlengths\n\n").unwrap();
        assert!(matches!(read_field(&path), Err(Error::BadMagic { .. })));
    }

    #[test]
    fn non_finite_payload_detected() {
        let grid = Grid4::unit(3).unwrap();
        let f = Field::scalar(grid, 1.0);
        let path = tmp("nan.gf4");
        write_field(&path, &f).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        let n = bytes.len();
        bytes[n - 8..].copy_from_slice(&f64::NAN.to_le_bytes());
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(read_field(&path), Err(Error::NonFinite(_))));
    }

    #[test]
    fn grid_binding_validates_geometry() {
        let grid = Grid4::unit(3).unwrap();
        let f = Field::constant(grid, Axes::from_slice(&[Axis::X2]), 2.0);
        let path = tmp("bind.gf4");
        write_field(&path, &f).unwrap();
        let other = Grid4::unit(5).unwrap();
        assert!(read_field(&path).unwrap().into_field(&other).is_err());
        let stretched = Grid4::new([1.0, 2.0, 1.0, 1.0], [3; 4]).unwrap();
        assert!(read_field(&path).unwrap().into_field(&stretched).is_err());
    }
}
