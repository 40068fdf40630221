//! The 36-component vector of boundary traces plus volumetric data.
//!
//! Component (i1,i2,i3,i4) is a field over exactly the axes where the order
//! reaches its bound (1,1,2,2): 4 scalars, 12 curve fields, 13 face fields,
//! 6 cell fields, and the one volume field in the dominant slot.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::Grid4;
use crate::multi_index::MultiIndex;

/// One field per multi-index, slot-ordered.
#[derive(Clone, PartialEq, Debug)]
pub struct TraceVector {
    grid: Grid4,
    comps: Vec<Field>,
}

impl TraceVector {
    pub fn zeros(grid: Grid4) -> TraceVector {
        let comps = MultiIndex::all()
            .map(|mi| Field::zeros(grid, mi.varying_axes()))
            .collect();
        TraceVector { grid, comps }
    }

    /// Samples every component from `f(mi, x)`; coordinates of axes the
    /// component does not vary over are passed as 0 (the trace face).
    pub fn from_fn(grid: Grid4, f: impl Fn(MultiIndex, [f64; 4]) -> f64) -> TraceVector {
        let comps = MultiIndex::all()
            .map(|mi| Field::from_fn(grid, mi.varying_axes(), |x| f(mi, x)))
            .collect();
        TraceVector { grid, comps }
    }

    pub fn grid(&self) -> &Grid4 {
        &self.grid
    }

    pub fn component(&self, mi: MultiIndex) -> &Field {
        &self.comps[mi.slot()]
    }

    pub fn dominant(&self) -> &Field {
        self.component(MultiIndex::DOMINANT)
    }

    /// Replaces one component, enforcing the axes rule and grid identity.
    pub fn set_component(&mut self, mi: MultiIndex, field: Field) -> Result<()> {
        if *field.grid() != self.grid {
            return Err(Error::mismatch(format!(
                "component {mi} lives on a different grid"
            )));
        }
        if field.axes() != mi.varying_axes() {
            return Err(Error::invalid(format!(
                "component {mi} must vary over {}, got {}",
                mi.varying_axes(),
                field.axes()
            )));
        }
        self.comps[mi.slot()] = field;
        Ok(())
    }

    pub fn set_constant(&mut self, mi: MultiIndex, value: f64) {
        self.comps[mi.slot()] = Field::constant(self.grid, mi.varying_axes(), value);
    }

    /// Copy with the dominant slot zeroed: the pure boundary part.
    pub fn boundary_part(&self) -> TraceVector {
        let mut out = self.clone();
        out.comps[MultiIndex::DOMINANT.slot()] = Field::zeros(self.grid, MultiIndex::DOMINANT.varying_axes());
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, &Field)> {
        MultiIndex::all().map(move |mi| (mi, self.component(mi)))
    }

    /// Largest componentwise difference across all 36 components.
    pub fn max_abs_diff(&self, other: &TraceVector) -> Result<f64> {
        let mut worst = 0.0f64;
        for (mi, f) in self.iter() {
            worst = worst.max(f.max_abs_diff(other.component(mi))?);
        }
        Ok(worst)
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().fold(0.0f64, |m, f| m.max(f.max_abs()))
    }

    pub fn scale(&self, s: f64) -> TraceVector {
        TraceVector {
            grid: self.grid,
            comps: self.comps.iter().map(|f| f.scale(s)).collect(),
        }
    }

    pub fn add(&self, other: &TraceVector) -> Result<TraceVector> {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(TraceVector {
            grid: self.grid,
            comps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Axes, Axis};

    #[test]
    fn component_axes_follow_rule() {
        let g = Grid4::unit(3).unwrap();
        let v = TraceVector::zeros(g);
        for (mi, f) in v.iter() {
            assert_eq!(f.axes(), mi.varying_axes());
        }
        assert_eq!(v.dominant().axes(), Axes::ALL);
    }

    #[test]
    fn set_component_validates_axes() {
        let g = Grid4::unit(3).unwrap();
        let mut v = TraceVector::zeros(g);
        let mi = MultiIndex::new([1, 0, 1, 1]).unwrap();
        let good = Field::zeros(g, Axes::from_slice(&[Axis::X1]));
        assert!(v.set_component(mi, good).is_ok());
        let bad = Field::zeros(g, Axes::from_slice(&[Axis::X2]));
        assert!(v.set_component(mi, bad).is_err());
    }

    #[test]
    fn boundary_part_zeroes_dominant_only() {
        let g = Grid4::unit(3).unwrap();
        let mut v = TraceVector::zeros(g);
        v.set_constant(MultiIndex::DOMINANT, 2.0);
        v.set_constant(MultiIndex::new([0, 0, 1, 1]).unwrap(), 3.0);
        let b = v.boundary_part();
        assert!(b.dominant().is_zero());
        assert_eq!(
            b.component(MultiIndex::new([0, 0, 1, 1]).unwrap()).values()[0],
            3.0
        );
    }
}
