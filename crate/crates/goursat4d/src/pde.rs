//! The sixth-order operator with dominant derivative D1 D2 D3^2 D4^2 and
//! the finite-difference derivative bundle it acts on.

use crate::diff::mixed_derivative;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::{Axes, Axis, Grid4};
use crate::multi_index::MultiIndex;

/// The lower-order coefficients a_i, one volume field per non-dominant
/// multi-index; missing entries are identically zero.
#[derive(Clone, Debug)]
pub struct CoefficientSet {
    grid: Grid4,
    entries: Vec<Option<Field>>,
}

impl CoefficientSet {
    pub fn empty(grid: Grid4) -> CoefficientSet {
        CoefficientSet {
            grid,
            entries: (0..MultiIndex::COUNT).map(|_| None).collect(),
        }
    }

    pub fn grid(&self) -> &Grid4 {
        &self.grid
    }

    pub fn set(&mut self, mi: MultiIndex, field: Field) -> Result<()> {
        if mi.is_dominant() {
            return Err(Error::invalid(
                "the dominant index carries no coefficient".into(),
            ));
        }
        if *field.grid() != self.grid {
            return Err(Error::mismatch(format!(
                "coefficient {mi} lives on a different grid"
            )));
        }
        if field.axes() != Axes::ALL {
            return Err(Error::invalid(format!(
                "coefficient {mi} must be a volume field"
            )));
        }
        self.entries[mi.slot()] = Some(field);
        Ok(())
    }

    pub fn set_constant(&mut self, mi: MultiIndex, value: f64) -> Result<()> {
        self.set(mi, Field::constant(self.grid, Axes::ALL, value))
    }

    pub fn set_fn(&mut self, mi: MultiIndex, f: impl Fn([f64; 4]) -> f64) -> Result<()> {
        self.set(mi, Field::from_fn(self.grid, Axes::ALL, f))
    }

    /// All 35 lower-order coefficients equal to `value`.
    pub fn all_constant(grid: Grid4, value: f64) -> CoefficientSet {
        let mut set = CoefficientSet::empty(grid);
        for mi in MultiIndex::non_dominant() {
            set.set_constant(mi, value).unwrap();
        }
        set
    }

    pub fn get(&self, mi: MultiIndex) -> Option<&Field> {
        self.entries[mi.slot()].as_ref()
    }

    /// Present coefficients in slot order.
    pub fn iter_present(&self) -> impl Iterator<Item = (MultiIndex, &Field)> {
        MultiIndex::non_dominant().filter_map(move |mi| self.get(mi).map(|f| (mi, f)))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.iter().all(|e| e.is_none())
    }
}

/// All 36 mixed derivatives of a volume field.
#[derive(Clone, Debug)]
pub struct DerivativeBundle {
    grid: Grid4,
    fields: Vec<Field>,
}

impl DerivativeBundle {
    pub fn grid(&self) -> &Grid4 {
        &self.grid
    }

    pub fn derivative(&self, mi: MultiIndex) -> &Field {
        &self.fields[mi.slot()]
    }

    pub fn dominant(&self) -> &Field {
        self.derivative(MultiIndex::DOMINANT)
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, &Field)> {
        MultiIndex::all().map(move |mi| (mi, self.derivative(mi)))
    }

    /// Samples every derivative from closed-form expressions.
    pub fn from_fn(grid: Grid4, f: impl Fn(MultiIndex, [f64; 4]) -> f64) -> DerivativeBundle {
        let fields = MultiIndex::all()
            .map(|mi| Field::from_fn(grid, Axes::ALL, |x| f(mi, x)))
            .collect();
        DerivativeBundle { grid, fields }
    }
}

/// Computes the full mixed-derivative bundle of `u` by finite differences,
/// reusing lower-order derivatives one axis application at a time.
pub fn finite_diff_bundle(u: &Field) -> Result<DerivativeBundle> {
    if u.axes() != Axes::ALL {
        return Err(Error::invalid(
            "finite_diff_bundle: field must span all four axes".into(),
        ));
    }
    let grid = *u.grid();
    let mut fields: Vec<Option<Field>> = (0..MultiIndex::COUNT).map(|_| None).collect();
    fields[MultiIndex::new([0; 4]).unwrap().slot()] = Some(u.clone());
    // slot order guarantees a predecessor with one lower order already done
    for mi in MultiIndex::all() {
        if fields[mi.slot()].is_some() {
            continue;
        }
        let orders = mi.orders();
        let axis = Axis::ALL
            .into_iter()
            .rev()
            .find(|a| orders[a.index()] > 0)
            .unwrap();
        let mut parent_orders = orders;
        parent_orders[axis.index()] -= 1;
        let parent = MultiIndex::new(parent_orders).unwrap();
        let parent_field = fields[parent.slot()]
            .as_ref()
            .expect("parent derivative computed first");
        let d = crate::diff::first_derivative(parent_field, axis)?;
        fields[mi.slot()] = Some(d);
    }
    Ok(DerivativeBundle {
        grid,
        fields: fields.into_iter().map(|f| f.unwrap()).collect(),
    })
}

/// Applies the full operator pointwise: the dominant derivative plus the 35
/// coefficient-weighted lower-order derivatives. Linear in the bundle.
pub fn apply_pde_operator(bundle: &DerivativeBundle, a: &CoefficientSet) -> Result<Field> {
    if bundle.grid != *a.grid() {
        return Err(Error::mismatch(
            "apply_pde_operator: bundle and coefficients on different grids".into(),
        ));
    }
    let mut out = bundle.dominant().clone();
    for (mi, coeff) in a.iter_present() {
        out.add_assign_mul(coeff, bundle.derivative(mi))?;
    }
    Ok(out)
}
