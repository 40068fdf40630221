//! The integral representation of a function by its trace vector, the
//! boundary part and its analytic derivatives, and trace extraction.
//!
//! Every term of the representation follows one bookkeeping rule. For a
//! component with multi-index i and a derivative multi-index j, axes where
//! i reaches the bound (1,1,2,2) are integrated cumulatively with kernel
//! (x_k - t)^{m_k - 1 - j_k} / (m_k - 1 - j_k)! (or evaluated pointwise once
//! j_k hits the bound), while the remaining axes contribute monomial factors
//! x_k^{i_k - j_k}. A term survives differentiation by j exactly when
//! i >= j componentwise.

use crate::error::{Error, Result};
use crate::field::{accumulate_expanded, Field, FaceSide};
use crate::grid::{Axes, Axis, Grid4};
use crate::multi_index::{MultiIndex, MAX_ORDERS};
use crate::quad::{cumulative_integral, QuadRule};
use crate::trace_vector::TraceVector;

/// A solved field together with its dominant derivative and the data that
/// produced it.
#[derive(Clone, Debug)]
pub struct Solution {
    /// The reconstructed function on the full grid.
    pub u: Field,
    /// The dominant mixed derivative D1 D2 D3^2 D4^2 u.
    pub b: Field,
    /// The trace vector the solve started from.
    pub data: TraceVector,
}

/// The causal kernel R0(t; x) = (x3-t3)(x4-t4) prod_k theta(x_k - t_k),
/// with theta(s) = 1 for s > 0 and 0 otherwise.
pub fn causal_kernel(tau: [f64; 4], x: [f64; 4]) -> f64 {
    for k in 0..4 {
        if x[k] - tau[k] <= 0.0 {
            return 0.0;
        }
    }
    (x[2] - tau[2]) * (x[3] - tau[3])
}

/// Adds the j-th derivative of the representation term built from component
/// `comp` (multi-index `i`) into `acc`. Terms with i not dominating j vanish.
fn add_term_derivative(
    acc: &mut Field,
    comp: &Field,
    i: MultiIndex,
    j: MultiIndex,
    rule: QuadRule,
) -> Result<()> {
    if !i.dominates(j) || comp.is_zero() {
        return Ok(());
    }
    let grid = *acc.grid();
    let mut work = comp.clone();
    let mut tables: [Option<Vec<f64>>; 4] = [None, None, None, None];
    for axis in Axis::ALL {
        let k = axis.index();
        let ik = i.order(axis);
        let jk = j.order(axis);
        let mk = MAX_ORDERS[k];
        if ik == mk {
            if jk < mk {
                work = cumulative_integral(&work, axis, mk - 1 - jk, rule)?;
            }
        } else if ik - jk == 1 {
            tables[k] = Some(grid.nodes(axis));
        }
    }
    let refs = [
        tables[0].as_deref(),
        tables[1].as_deref(),
        tables[2].as_deref(),
        tables[3].as_deref(),
    ];
    accumulate_expanded(acc, &work, refs, 1.0);
    Ok(())
}

fn zero_index() -> MultiIndex {
    MultiIndex::new([0, 0, 0, 0]).unwrap()
}

/// Reconstructs the volume field from a full trace vector: the sum of all
/// 36 representation terms. Linear in `b`.
pub fn synthesize(b: &TraceVector, rule: QuadRule) -> Result<Field> {
    let mut acc = Field::zeros(*b.grid(), Axes::ALL);
    let j0 = zero_index();
    for (mi, comp) in b.iter() {
        add_term_derivative(&mut acc, comp, mi, j0, rule)?;
    }
    Ok(acc)
}

/// The boundary part of the representation: all terms except the dominant
/// one. The dominant slot of `phi` is ignored.
pub fn synthesize_boundary(phi: &TraceVector, rule: QuadRule) -> Result<Field> {
    let mut acc = Field::zeros(*phi.grid(), Axes::ALL);
    let j0 = zero_index();
    for (mi, comp) in phi.iter() {
        if mi.is_dominant() {
            continue;
        }
        add_term_derivative(&mut acc, comp, mi, j0, rule)?;
    }
    Ok(acc)
}

/// Analytic mixed derivative D^j of the boundary part, obtained termwise.
/// The dominant derivative of the boundary part vanishes identically, so
/// `j` must not be the dominant index.
pub fn boundary_derivative(phi: &TraceVector, j: MultiIndex, rule: QuadRule) -> Result<Field> {
    if j.is_dominant() {
        return Err(Error::invalid(
            "boundary_derivative: dominant derivative of the boundary part is identically zero"
                .into(),
        ));
    }
    let mut acc = Field::zeros(*phi.grid(), Axes::ALL);
    for (mi, comp) in phi.iter() {
        if mi.is_dominant() {
            continue;
        }
        add_term_derivative(&mut acc, comp, mi, j, rule)?;
    }
    Ok(acc)
}

/// D^j applied to the dominant representation term with density `b`: the
/// cumulative integral of `b` over the axes j has not exhausted, with the
/// kernel powers the derivative leaves behind. This is the integral kernel
/// every coefficient term of the reduced equation applies.
pub fn causal_integral(b: &Field, j: MultiIndex, rule: QuadRule) -> Result<Field> {
    if b.axes() != Axes::ALL {
        return Err(Error::invalid(
            "causal_integral: density must span all four axes".into(),
        ));
    }
    let mut work = b.clone();
    for axis in Axis::ALL {
        let jk = j.order(axis);
        let mk = MAX_ORDERS[axis.index()];
        if jk < mk {
            work = cumulative_integral(&work, axis, mk - 1 - jk, rule)?;
        }
    }
    Ok(work)
}

/// Extracts all 36 traces of a volume field: mixed finite differences
/// restricted to the x_k = 0 faces of the non-varying axes.
pub fn extract_traces(u: &Field) -> Result<TraceVector> {
    if u.axes() != Axes::ALL {
        return Err(Error::invalid(
            "extract_traces: field must span all four axes".into(),
        ));
    }
    let grid = *u.grid();
    let mut out = TraceVector::zeros(grid);
    for mi in MultiIndex::all() {
        let d = crate::diff::mixed_derivative(u, mi.orders())?;
        let fixed: Vec<(Axis, FaceSide)> = Axis::ALL
            .into_iter()
            .filter(|a| !mi.varying_axes().contains(*a))
            .map(|a| (a, FaceSide::Zero))
            .collect();
        let trace = d.face_restrict(&fixed)?;
        out.set_component(mi, trace)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid4;

    fn unit(n: usize) -> Grid4 {
        Grid4::unit(n).unwrap()
    }

    #[test]
    fn kernel_values() {
        assert_eq!(causal_kernel([0.0; 4], [1.0; 4]), 1.0);
        assert_eq!(causal_kernel([1.0, 0.0, 0.0, 0.0], [1.0; 4]), 0.0); // theta(0) = 0
        assert_eq!(causal_kernel([0.5; 4], [1.0; 4]), 0.25);
        assert_eq!(causal_kernel([0.0, 0.0, 0.25, 0.5], [1.0; 4]), 0.75 * 0.5);
    }

    #[test]
    fn zero_traces_synthesize_to_zero() {
        let v = TraceVector::zeros(unit(3));
        let u = synthesize(&v, QuadRule::Trapezoid).unwrap();
        assert!(u.is_zero());
    }

    #[test]
    fn scalar_slot_gives_monomial() {
        // only component (0,0,1,1) = c -> u = c*x3*x4
        let g = unit(4);
        let mut v = TraceVector::zeros(g);
        v.set_constant(MultiIndex::new([0, 0, 1, 1]).unwrap(), 2.5);
        let u = synthesize(&v, QuadRule::Trapezoid).unwrap();
        let expect = Field::from_fn(g, Axes::ALL, |x| 2.5 * x[2] * x[3]);
        assert!(u.max_abs_diff(&expect).unwrap() < 1e-14);
    }

    #[test]
    fn dominant_slot_integrates_kernel() {
        // only the dominant component = 1 -> u = x1 x2 x3^2 x4^2 / 4
        let g = unit(5);
        let mut v = TraceVector::zeros(g);
        v.set_constant(MultiIndex::DOMINANT, 1.0);
        let u = synthesize(&v, QuadRule::Trapezoid).unwrap();
        let expect = Field::from_fn(g, Axes::ALL, |x| {
            x[0] * x[1] * x[2] * x[2] * x[3] * x[3] / 4.0
        });
        assert!(u.max_abs_diff(&expect).unwrap() < 1e-13);
    }

    #[test]
    fn boundary_part_examples() {
        let g = unit(5);
        // constant scalar slot
        let mut v = TraceVector::zeros(g);
        v.set_constant(MultiIndex::new([0, 0, 0, 0]).unwrap(), 3.0);
        let g0 = synthesize_boundary(&v, QuadRule::Trapezoid).unwrap();
        assert!(g0.values().iter().all(|&x| (x - 3.0).abs() < 1e-15));

        // component (1,0,2,2) = 1 -> x1 * x3^2 x4^2 / 4; dominant slot ignored
        let mut v = TraceVector::zeros(g);
        v.set_constant(MultiIndex::new([1, 0, 2, 2]).unwrap(), 1.0);
        v.set_constant(MultiIndex::DOMINANT, 7.0);
        let g0 = synthesize_boundary(&v, QuadRule::Trapezoid).unwrap();
        let expect = Field::from_fn(g, Axes::ALL, |x| x[0] * x[2] * x[2] * x[3] * x[3] / 4.0);
        assert!(g0.max_abs_diff(&expect).unwrap() < 1e-13);
    }

    #[test]
    fn boundary_derivative_examples() {
        let g = unit(5);
        // phi_{0,0,1,1} = 1, derivative (0,0,1,1) -> 1
        let mut v = TraceVector::zeros(g);
        v.set_constant(MultiIndex::new([0, 0, 1, 1]).unwrap(), 1.0);
        let d = boundary_derivative(&v, MultiIndex::new([0, 0, 1, 1]).unwrap(), QuadRule::Trapezoid)
            .unwrap();
        assert!(d.values().iter().all(|&x| (x - 1.0).abs() < 1e-15));

        // constant scalar slot, any nonzero derivative -> 0
        let mut v = TraceVector::zeros(g);
        v.set_constant(MultiIndex::new([0, 0, 0, 0]).unwrap(), 4.0);
        for j in [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 1]] {
            let d =
                boundary_derivative(&v, MultiIndex::new(j).unwrap(), QuadRule::Trapezoid).unwrap();
            assert!(d.is_zero());
        }

        // phi_{1,0,2,2} = 1, derivative (1,0,0,0) -> x3^2 x4^2 / 4
        let mut v = TraceVector::zeros(g);
        v.set_constant(MultiIndex::new([1, 0, 2, 2]).unwrap(), 1.0);
        let d = boundary_derivative(&v, MultiIndex::new([1, 0, 0, 0]).unwrap(), QuadRule::Trapezoid)
            .unwrap();
        let expect = Field::from_fn(g, Axes::ALL, |x| x[2] * x[2] * x[3] * x[3] / 4.0);
        assert!(d.max_abs_diff(&expect).unwrap() < 1e-13);

        // dominant derivative is rejected
        assert!(boundary_derivative(&v, MultiIndex::DOMINANT, QuadRule::Trapezoid).is_err());
    }

    #[test]
    fn extract_traces_examples() {
        let g = unit(5);
        let zero = Field::zeros(g, Axes::ALL);
        assert_eq!(extract_traces(&zero).unwrap().max_abs(), 0.0);

        let u = Field::from_fn(g, Axes::ALL, |x| x[2] * x[3]);
        let tr = extract_traces(&u).unwrap();
        for (mi, f) in tr.iter() {
            if mi == MultiIndex::new([0, 0, 1, 1]).unwrap() {
                assert!((f.values()[0] - 1.0).abs() < 1e-12);
            } else {
                assert!(f.max_abs() < 1e-12, "unexpected trace in {mi}");
            }
        }

        let u = Field::from_fn(g, Axes::ALL, |x| {
            x[0] * x[1] * x[2] * x[2] * x[3] * x[3] / 4.0
        });
        let tr = extract_traces(&u).unwrap();
        for (mi, f) in tr.iter() {
            if mi.is_dominant() {
                assert!(f.values().iter().all(|&v| (v - 1.0).abs() < 1e-11));
            } else {
                assert!(f.max_abs() < 1e-11, "unexpected trace in {mi}");
            }
        }
    }

    #[test]
    fn causal_integral_matches_dominant_term() {
        let g = unit(4);
        let b = Field::from_fn(g, Axes::ALL, |x| 1.0 + x[0] - x[3]);
        let mut v = TraceVector::zeros(g);
        v.set_component(MultiIndex::DOMINANT, b.clone()).unwrap();
        let via_synthesis = synthesize(&v, QuadRule::Trapezoid).unwrap();
        let via_kernel =
            causal_integral(&b, MultiIndex::new([0, 0, 0, 0]).unwrap(), QuadRule::Trapezoid)
                .unwrap();
        assert!(via_synthesis.max_abs_diff(&via_kernel).unwrap() < 1e-15);
    }
}
