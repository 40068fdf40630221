//! Classical Goursat face data, its matching conditions, and the explicit
//! conversions between classical and trace-vector form.
//!
//! Classical data prescribes the function on the four characteristic faces
//! (plus first normal derivatives on the doubled axes):
//!   u|_{x1=0} = F(x2,x3,x4),  u|_{x2=0} = g(x1,x3,x4),
//!   u|_{x3=0} = psi,  D3 u|_{x3=0} = Phi,  u|_{x4=0} = T,  D4 u|_{x4=0} = S.
//! Such data is consistent only under twelve matching identities along the
//! shared sub-faces; trace-vector data needs no such conditions.

use crate::diff::mixed_derivative;
use crate::error::{Error, Result};
use crate::field::{FaceSide, Field};
use crate::grid::{Axes, Axis, Grid4};
use crate::multi_index::MultiIndex;
use crate::quad::QuadRule;
use crate::representation::{boundary_derivative, synthesize_boundary};
use crate::trace_vector::TraceVector;

/// The six classical face fields.
#[derive(Clone, Debug)]
pub struct ClassicalData {
    /// u on the x1 = 0 face, over (x2,x3,x4).
    pub f: Field,
    /// u on the x2 = 0 face, over (x1,x3,x4).
    pub g: Field,
    /// u on the x3 = 0 face, over (x1,x2,x4).
    pub psi: Field,
    /// D3 u on the x3 = 0 face, over (x1,x2,x4).
    pub phi: Field,
    /// u on the x4 = 0 face, over (x1,x2,x3).
    pub t: Field,
    /// D4 u on the x4 = 0 face, over (x1,x2,x3).
    pub s: Field,
}

/// Which classical component an expression differentiates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassicalComponent {
    F,
    G,
    Psi,
    Phi,
    T,
    S,
}

impl ClassicalComponent {
    pub fn name(self) -> &'static str {
        match self {
            ClassicalComponent::F => "F",
            ClassicalComponent::G => "g",
            ClassicalComponent::Psi => "psi",
            ClassicalComponent::Phi => "Phi",
            ClassicalComponent::T => "T",
            ClassicalComponent::S => "S",
        }
    }

    pub fn axes(self) -> Axes {
        use Axis::*;
        match self {
            ClassicalComponent::F => Axes::from_slice(&[X2, X3, X4]),
            ClassicalComponent::G => Axes::from_slice(&[X1, X3, X4]),
            ClassicalComponent::Psi | ClassicalComponent::Phi => Axes::from_slice(&[X1, X2, X4]),
            ClassicalComponent::T | ClassicalComponent::S => Axes::from_slice(&[X1, X2, X3]),
        }
    }
}

impl ClassicalData {
    pub const COMPONENTS: [ClassicalComponent; 6] = [
        ClassicalComponent::F,
        ClassicalComponent::G,
        ClassicalComponent::Psi,
        ClassicalComponent::Phi,
        ClassicalComponent::T,
        ClassicalComponent::S,
    ];

    /// Validates component axes and a shared grid.
    pub fn new(f: Field, g: Field, psi: Field, phi: Field, t: Field, s: Field) -> Result<Self> {
        let data = ClassicalData {
            f,
            g,
            psi,
            phi,
            t,
            s,
        };
        let grid = data.f.grid();
        for comp in Self::COMPONENTS {
            let field = data.component(comp);
            if field.grid() != grid {
                return Err(Error::mismatch(format!(
                    "classical component {} is on a different grid",
                    comp.name()
                )));
            }
            if field.axes() != comp.axes() {
                return Err(Error::invalid(format!(
                    "classical component {} must vary over {}, got {}",
                    comp.name(),
                    comp.axes(),
                    field.axes()
                )));
            }
        }
        Ok(data)
    }

    pub fn zeros(grid: Grid4) -> Self {
        let make = |c: ClassicalComponent| Field::zeros(grid, c.axes());
        ClassicalData {
            f: make(ClassicalComponent::F),
            g: make(ClassicalComponent::G),
            psi: make(ClassicalComponent::Psi),
            phi: make(ClassicalComponent::Phi),
            t: make(ClassicalComponent::T),
            s: make(ClassicalComponent::S),
        }
    }

    /// Samples the six faces from a function of the full coordinates and its
    /// two normal derivatives on the doubled axes.
    pub fn from_fns(
        grid: Grid4,
        u: impl Fn([f64; 4]) -> f64,
        d3u: impl Fn([f64; 4]) -> f64,
        d4u: impl Fn([f64; 4]) -> f64,
    ) -> Self {
        use ClassicalComponent::*;
        ClassicalData {
            f: Field::from_fn(grid, F.axes(), &u),
            g: Field::from_fn(grid, G.axes(), &u),
            psi: Field::from_fn(grid, Psi.axes(), &u),
            phi: Field::from_fn(grid, Phi.axes(), &d3u),
            t: Field::from_fn(grid, T.axes(), &u),
            s: Field::from_fn(grid, S.axes(), &d4u),
        }
    }

    pub fn component(&self, c: ClassicalComponent) -> &Field {
        match c {
            ClassicalComponent::F => &self.f,
            ClassicalComponent::G => &self.g,
            ClassicalComponent::Psi => &self.psi,
            ClassicalComponent::Phi => &self.phi,
            ClassicalComponent::T => &self.t,
            ClassicalComponent::S => &self.s,
        }
    }

    pub fn grid(&self) -> &Grid4 {
        self.f.grid()
    }

    pub fn max_abs_diff(&self, other: &ClassicalData) -> Result<f64> {
        let mut worst = 0.0f64;
        for c in Self::COMPONENTS {
            worst = worst.max(self.component(c).max_abs_diff(other.component(c))?);
        }
        Ok(worst)
    }
}

/// One matching identity with its largest pointwise violation.
#[derive(Clone, Debug)]
pub struct CompatIdentity {
    pub name: &'static str,
    pub max_violation: f64,
}

/// Violations of the twelve matching identities.
#[derive(Clone, Debug)]
pub struct CompatReport {
    pub identities: Vec<CompatIdentity>,
    pub tol: f64,
}

impl CompatReport {
    pub fn passes(&self) -> bool {
        self.identities.iter().all(|e| e.max_violation <= self.tol)
    }

    /// Identities exceeding the tolerance, worst first.
    pub fn violated(&self) -> Vec<&CompatIdentity> {
        let mut v: Vec<_> = self
            .identities
            .iter()
            .filter(|e| e.max_violation > self.tol)
            .collect();
        v.sort_by(|a, b| b.max_violation.total_cmp(&a.max_violation));
        v
    }

    pub fn max_violation(&self) -> f64 {
        self.identities
            .iter()
            .fold(0.0f64, |m, e| m.max(e.max_violation))
    }
}

/// A side of a matching identity: component, derivative orders per global
/// axis, and the axes fixed at zero (the rest stay free).
struct IdentitySide {
    comp: ClassicalComponent,
    orders: [u8; 4],
    fixed: &'static [Axis],
}

fn side_value(c: &ClassicalData, side: &IdentitySide) -> Result<Field> {
    let d = mixed_derivative(c.component(side.comp), side.orders)?;
    let fixed: Vec<(Axis, FaceSide)> = side.fixed.iter().map(|&a| (a, FaceSide::Zero)).collect();
    d.face_restrict(&fixed)
}

/// Evaluates the twelve matching identities of classical Goursat data on
/// their shared sub-grids, differentiating by second-order one-sided and
/// centered differences.
pub fn check_compatibility(c: &ClassicalData, tol: f64) -> Result<CompatReport> {
    use Axis::*;
    use ClassicalComponent::*;
    let pairs: [(&'static str, IdentitySide, IdentitySide); 12] = [
        (
            "F(0,x3,x4)=g(0,x3,x4)",
            IdentitySide { comp: F, orders: [0; 4], fixed: &[X2] },
            IdentitySide { comp: G, orders: [0; 4], fixed: &[X1] },
        ),
        (
            "F(x2,0,x4)=psi(0,x2,x4)",
            IdentitySide { comp: F, orders: [0; 4], fixed: &[X3] },
            IdentitySide { comp: Psi, orders: [0; 4], fixed: &[X1] },
        ),
        (
            "g_x4(x1,x3,0)=S(x1,0,x3)",
            IdentitySide { comp: G, orders: [0, 0, 0, 1], fixed: &[X4] },
            IdentitySide { comp: S, orders: [0; 4], fixed: &[X2] },
        ),
        (
            "F(x2,x3,0)=T(0,x2,x3)",
            IdentitySide { comp: F, orders: [0; 4], fixed: &[X4] },
            IdentitySide { comp: T, orders: [0; 4], fixed: &[X1] },
        ),
        (
            "F_x3(x2,0,x4)=Phi(0,x2,x4)",
            IdentitySide { comp: F, orders: [0, 0, 1, 0], fixed: &[X3] },
            IdentitySide { comp: Phi, orders: [0; 4], fixed: &[X1] },
        ),
        (
            "F_x4(x2,x3,0)=S(0,x2,x3)",
            IdentitySide { comp: F, orders: [0, 0, 0, 1], fixed: &[X4] },
            IdentitySide { comp: S, orders: [0; 4], fixed: &[X1] },
        ),
        (
            "g(x1,x3,0)=T(x1,0,x3)",
            IdentitySide { comp: G, orders: [0; 4], fixed: &[X4] },
            IdentitySide { comp: T, orders: [0; 4], fixed: &[X2] },
        ),
        (
            "g(x1,0,x4)=psi(x1,0,x4)",
            IdentitySide { comp: G, orders: [0; 4], fixed: &[X3] },
            IdentitySide { comp: Psi, orders: [0; 4], fixed: &[X2] },
        ),
        (
            "g_x3(x1,0,x4)=Phi(x1,0,x4)",
            IdentitySide { comp: G, orders: [0, 0, 1, 0], fixed: &[X3] },
            IdentitySide { comp: Phi, orders: [0; 4], fixed: &[X2] },
        ),
        (
            "psi(x1,x2,0)=T(x1,x2,0)",
            IdentitySide { comp: Psi, orders: [0; 4], fixed: &[X4] },
            IdentitySide { comp: T, orders: [0; 4], fixed: &[X3] },
        ),
        (
            "psi_x4(x1,x2,0)=S(x1,x2,0)",
            IdentitySide { comp: Psi, orders: [0, 0, 0, 1], fixed: &[X4] },
            IdentitySide { comp: S, orders: [0; 4], fixed: &[X3] },
        ),
        (
            "Phi_x4(x1,x2,0)=S_x3(x1,x2,0)",
            IdentitySide { comp: Phi, orders: [0, 0, 0, 1], fixed: &[X4] },
            IdentitySide { comp: S, orders: [0, 0, 1, 0], fixed: &[X3] },
        ),
    ];

    let mut identities = Vec::with_capacity(12);
    for (name, lhs, rhs) in pairs {
        let a = side_value(c, &lhs)?;
        let b = side_value(c, &rhs)?;
        identities.push(CompatIdentity {
            name,
            max_violation: a.max_abs_diff(&b)?,
        });
    }
    Ok(CompatReport { identities, tol })
}

/// One expression for a trace component in terms of classical data.
struct TraceExpression {
    comp: ClassicalComponent,
    orders: [u8; 4],
}

/// The expression lists for the 35 boundary components: the first entry is
/// canonical, the rest are the equal alternatives implied by the matching
/// conditions. An expression differentiates its classical component by the
/// stated orders and restricts the component's surplus axes to zero.
fn trace_expressions(mi: MultiIndex) -> Vec<TraceExpression> {
    use ClassicalComponent::*;
    let list: &[(ClassicalComponent, [u8; 4])] = match mi.orders() {
        [0, 0, 0, 0] => &[(F, [0, 0, 0, 0]), (G, [0, 0, 0, 0]), (Psi, [0, 0, 0, 0]), (T, [0, 0, 0, 0])],
        [0, 0, 1, 0] => &[(Phi, [0, 0, 0, 0]), (G, [0, 0, 1, 0]), (F, [0, 0, 1, 0])],
        [0, 0, 0, 1] => &[(S, [0, 0, 0, 0]), (F, [0, 0, 0, 1]), (Psi, [0, 0, 0, 1])],
        [0, 0, 1, 1] => &[(S, [0, 0, 1, 0]), (Phi, [0, 0, 0, 1])],
        [1, 0, 0, 0] => &[(G, [1, 0, 0, 0]), (Psi, [1, 0, 0, 0]), (T, [1, 0, 0, 0])],
        [1, 0, 1, 0] => &[(G, [1, 0, 1, 0]), (Phi, [1, 0, 0, 0]), (T, [1, 0, 1, 0])],
        [1, 0, 0, 1] => &[(G, [1, 0, 0, 1]), (Psi, [1, 0, 0, 1]), (S, [1, 0, 0, 0])],
        [1, 0, 1, 1] => &[(G, [1, 0, 1, 1]), (Phi, [1, 0, 0, 1])],
        [0, 1, 0, 0] => &[(F, [0, 1, 0, 0]), (Psi, [0, 1, 0, 0]), (T, [0, 1, 0, 0])],
        [0, 1, 1, 0] => &[(F, [0, 1, 1, 0]), (T, [0, 1, 1, 0]), (Phi, [0, 1, 0, 0])],
        [0, 1, 0, 1] => &[(F, [0, 1, 0, 1]), (Psi, [0, 1, 0, 1]), (S, [0, 1, 0, 0])],
        [0, 1, 1, 1] => &[(F, [0, 1, 1, 1]), (S, [0, 1, 1, 0])],
        [0, 0, 2, 0] => &[(F, [0, 0, 2, 0]), (G, [0, 0, 2, 0]), (T, [0, 0, 2, 0])],
        [0, 0, 2, 1] => &[(F, [0, 0, 2, 1]), (G, [0, 0, 2, 1]), (S, [0, 0, 2, 0])],
        [0, 0, 0, 2] => &[(F, [0, 0, 0, 2]), (G, [0, 0, 0, 2]), (Psi, [0, 0, 0, 2])],
        [0, 0, 1, 2] => &[(F, [0, 0, 1, 2]), (G, [0, 0, 1, 2]), (Phi, [0, 0, 0, 2])],
        [1, 1, 0, 0] => &[(Psi, [1, 1, 0, 0]), (T, [1, 1, 0, 0])],
        [1, 1, 1, 0] => &[(T, [1, 1, 1, 0]), (Phi, [1, 1, 0, 0])],
        [1, 1, 0, 1] => &[(Psi, [1, 1, 0, 1]), (S, [1, 1, 0, 0])],
        [1, 1, 1, 1] => &[(Phi, [1, 1, 0, 1]), (S, [1, 1, 1, 0])],
        [1, 0, 2, 0] => &[(G, [1, 0, 2, 0]), (T, [1, 0, 2, 0])],
        [1, 0, 2, 1] => &[(G, [1, 0, 2, 1]), (S, [1, 0, 2, 0])],
        [1, 0, 0, 2] => &[(G, [1, 0, 0, 2]), (Psi, [1, 0, 0, 2])],
        [1, 0, 1, 2] => &[(G, [1, 0, 1, 2]), (Phi, [1, 0, 0, 2])],
        [0, 1, 2, 0] => &[(F, [0, 1, 2, 0]), (T, [0, 1, 2, 0])],
        [0, 1, 2, 1] => &[(F, [0, 1, 2, 1]), (S, [0, 1, 2, 0])],
        [0, 1, 0, 2] => &[(F, [0, 1, 0, 2]), (Psi, [0, 1, 0, 2])],
        [0, 1, 1, 2] => &[(F, [0, 1, 1, 2]), (Phi, [0, 1, 0, 2])],
        [0, 0, 2, 2] => &[(F, [0, 0, 2, 2]), (G, [0, 0, 2, 2])],
        [1, 1, 2, 0] => &[(T, [1, 1, 2, 0])],
        [1, 1, 2, 1] => &[(S, [1, 1, 2, 0])],
        [1, 1, 0, 2] => &[(Psi, [1, 1, 0, 2])],
        [1, 1, 1, 2] => &[(Phi, [1, 1, 0, 2])],
        [0, 1, 2, 2] => &[(F, [0, 1, 2, 2])],
        [1, 0, 2, 2] => &[(G, [1, 0, 2, 2])],
        _ => &[],
    };
    list.iter()
        .map(|&(comp, orders)| TraceExpression { comp, orders })
        .collect()
}

/// Per-component spread between equal alternative expressions.
#[derive(Clone, Debug)]
pub struct ExpressionSpread {
    pub index: MultiIndex,
    pub spread: f64,
}

/// Result of converting classical data to trace form.
#[derive(Clone, Debug)]
pub struct TraceConversion {
    /// Boundary components filled; the dominant slot is left zero.
    pub boundary: TraceVector,
    /// For components with several equal expressions, the largest deviation
    /// of any alternative from the canonical (first) one. Small spreads
    /// indicate data that satisfies the matching conditions.
    pub spreads: Vec<ExpressionSpread>,
}

impl TraceConversion {
    pub fn max_spread(&self) -> f64 {
        self.spreads.iter().fold(0.0f64, |m, s| m.max(s.spread))
    }
}

fn eval_expression(c: &ClassicalData, target_axes: Axes, expr: &TraceExpression) -> Result<Field> {
    let d = mixed_derivative(c.component(expr.comp), expr.orders)?;
    let fixed: Vec<(Axis, FaceSide)> = expr
        .comp
        .axes()
        .iter()
        .filter(|a| !target_axes.contains(*a))
        .map(|a| (a, FaceSide::Zero))
        .collect();
    d.face_restrict(&fixed)
}

/// Derives the 35 boundary trace components from classical data by repeated
/// second-order differencing. The first listed expression of each component
/// is the returned value; the alternatives feed the spread diagnostics.
pub fn classical_to_nonclassical(c: &ClassicalData) -> Result<TraceConversion> {
    let grid = *c.grid();
    let mut boundary = TraceVector::zeros(grid);
    let mut spreads = Vec::new();
    for mi in MultiIndex::non_dominant() {
        let exprs = trace_expressions(mi);
        debug_assert!(!exprs.is_empty());
        let target_axes = mi.varying_axes();
        let canonical = eval_expression(c, target_axes, &exprs[0])?;
        let mut spread = 0.0f64;
        for alt in &exprs[1..] {
            let alt_val = eval_expression(c, target_axes, alt)?;
            spread = spread.max(canonical.max_abs_diff(&alt_val)?);
        }
        boundary.set_component(mi, canonical)?;
        if exprs.len() > 1 {
            spreads.push(ExpressionSpread { index: mi, spread });
        }
    }
    Ok(TraceConversion { boundary, spreads })
}

/// Rebuilds classical face data from boundary traces: the boundary part of
/// the representation restricted to the four faces, with the two normal
/// derivatives taken termwise before restriction. The dominant slot of
/// `phi` is ignored.
pub fn nonclassical_to_classical(phi: &TraceVector, rule: QuadRule) -> Result<ClassicalData> {
    use Axis::*;
    let g0 = synthesize_boundary(phi, rule)?;
    let d3 = boundary_derivative(phi, MultiIndex::new([0, 0, 1, 0]).unwrap(), rule)?;
    let d4 = boundary_derivative(phi, MultiIndex::new([0, 0, 0, 1]).unwrap(), rule)?;
    ClassicalData::new(
        g0.face_restrict(&[(X1, FaceSide::Zero)])?,
        g0.face_restrict(&[(X2, FaceSide::Zero)])?,
        g0.face_restrict(&[(X3, FaceSide::Zero)])?,
        d3.face_restrict(&[(X3, FaceSide::Zero)])?,
        g0.face_restrict(&[(X4, FaceSide::Zero)])?,
        d4.face_restrict(&[(X4, FaceSide::Zero)])?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize) -> Grid4 {
        Grid4::unit(n).unwrap()
    }

    #[test]
    fn expression_table_shape() {
        let mut n_exprs = 0;
        for mi in MultiIndex::non_dominant() {
            let exprs = trace_expressions(mi);
            assert!(!exprs.is_empty(), "no expressions for {mi}");
            for e in &exprs {
                // orders vanish on axes the component does not have
                for a in Axis::ALL {
                    if !e.comp.axes().contains(a) {
                        assert_eq!(e.orders[a.index()], 0, "{mi} via {}", e.comp.name());
                    }
                }
                // the retained axes of the target are axes of the source
                assert!(mi.varying_axes().is_subset_of(e.comp.axes()));
            }
            n_exprs += exprs.len();
        }
        assert_eq!(n_exprs, 78);
        assert!(trace_expressions(MultiIndex::DOMINANT).is_empty());
    }

    #[test]
    fn zero_data_passes_and_converts_to_zero() {
        let c = ClassicalData::zeros(unit(4));
        let report = check_compatibility(&c, 1e-8).unwrap();
        assert_eq!(report.identities.len(), 12);
        assert!(report.passes());
        assert_eq!(report.max_violation(), 0.0);

        let conv = classical_to_nonclassical(&c).unwrap();
        assert_eq!(conv.boundary.max_abs(), 0.0);
        assert_eq!(conv.max_spread(), 0.0);
    }

    #[test]
    fn product_solution_data_passes() {
        // data of u = x3*x4: F = g = x3*x4, psi = 0, Phi = x4, T = 0, S = x3
        let g = unit(4);
        let c = ClassicalData::from_fns(g, |x| x[2] * x[3], |x| x[3], |x| x[2]);
        let report = check_compatibility(&c, 1e-10).unwrap();
        assert!(report.passes(), "violations: {:?}", report.violated());

        // conversion: only the (0,0,1,1) slot survives, value 1
        let conv = classical_to_nonclassical(&c).unwrap();
        for (mi, f) in conv.boundary.iter() {
            if mi == MultiIndex::new([0, 0, 1, 1]).unwrap() {
                assert!((f.values()[0] - 1.0).abs() < 1e-11);
            } else {
                assert!(f.max_abs() < 1e-11, "unexpected component {mi}");
            }
        }
        assert!(conv.max_spread() < 1e-11);
    }

    #[test]
    fn zeroed_s_breaks_one_identity_with_known_size() {
        // same data but S = 0: g_x4(x1,x3,0) = S(x1,0,x3) fails by max x3 = h3
        let g = unit(4);
        let c = ClassicalData::from_fns(g, |x| x[2] * x[3], |x| x[3], |_| 0.0);
        let report = check_compatibility(&c, 1e-8).unwrap();
        assert!(!report.passes());
        let violated = report.violated();
        assert_eq!(violated[0].name, "g_x4(x1,x3,0)=S(x1,0,x3)");
        assert!((violated[0].max_violation - 1.0).abs() < 1e-11);
        // and on a stretched grid the violation scales with h3
        let g = Grid4::new([1.0, 1.0, 2.5, 1.0], [4, 4, 6, 4]).unwrap();
        let c = ClassicalData::from_fns(g, |x| x[2] * x[3], |x| x[3], |_| 0.0);
        let report = check_compatibility(&c, 1e-8).unwrap();
        let worst = report
            .identities
            .iter()
            .find(|e| e.name == "g_x4(x1,x3,0)=S(x1,0,x3)")
            .unwrap();
        assert!((worst.max_violation - 2.5).abs() < 1e-10);
    }

    #[test]
    fn bilinear_solution_converts_to_single_slot() {
        // u = x1*x2: psi = T = x1*x2, rest zero -> only slot (1,1,0,0) = 1
        let g = unit(4);
        let c = ClassicalData::from_fns(g, |x| x[0] * x[1], |_| 0.0, |_| 0.0);
        let conv = classical_to_nonclassical(&c).unwrap();
        for (mi, f) in conv.boundary.iter() {
            if mi == MultiIndex::new([1, 1, 0, 0]).unwrap() {
                assert!(f.values().iter().all(|v| (v - 1.0).abs() < 1e-11));
            } else {
                assert!(f.max_abs() < 1e-11, "unexpected component {mi}");
            }
        }
    }

    #[test]
    fn reconstruction_examples() {
        let g = unit(4);
        // constant scalar slot c: F = g = psi = T = c, Phi = S = 0
        let mut phi = TraceVector::zeros(g);
        phi.set_constant(MultiIndex::new([0, 0, 0, 0]).unwrap(), 2.0);
        let c = nonclassical_to_classical(&phi, QuadRule::Trapezoid).unwrap();
        assert!(c.f.values().iter().all(|v| (v - 2.0).abs() < 1e-14));
        assert!(c.g.values().iter().all(|v| (v - 2.0).abs() < 1e-14));
        assert!(c.psi.values().iter().all(|v| (v - 2.0).abs() < 1e-14));
        assert!(c.t.values().iter().all(|v| (v - 2.0).abs() < 1e-14));
        assert!(c.phi.is_zero() && c.s.is_zero());

        // slot (1,1,0,0) = 1: psi = T = x1*x2, rest zero
        let mut phi = TraceVector::zeros(g);
        phi.set_constant(MultiIndex::new([1, 1, 0, 0]).unwrap(), 1.0);
        let c = nonclassical_to_classical(&phi, QuadRule::Trapezoid).unwrap();
        let expect = Field::from_fn(g, ClassicalComponent::Psi.axes(), |x| x[0] * x[1]);
        assert!(c.psi.max_abs_diff(&expect).unwrap() < 1e-13);
        let expect = Field::from_fn(g, ClassicalComponent::T.axes(), |x| x[0] * x[1]);
        assert!(c.t.max_abs_diff(&expect).unwrap() < 1e-13);
        assert!(c.f.is_zero() && c.g.is_zero());
        assert!(c.phi.is_zero() && c.s.is_zero());

        // slot (0,0,2,0) = 2: F = g = x3^2, T = x3^2, psi = Phi = S = 0
        let mut phi = TraceVector::zeros(g);
        phi.set_constant(MultiIndex::new([0, 0, 2, 0]).unwrap(), 2.0);
        let c = nonclassical_to_classical(&phi, QuadRule::Trapezoid).unwrap();
        let expect = Field::from_fn(g, ClassicalComponent::F.axes(), |x| x[2] * x[2]);
        assert!(c.f.max_abs_diff(&expect).unwrap() < 1e-13);
        let expect = Field::from_fn(g, ClassicalComponent::G.axes(), |x| x[2] * x[2]);
        assert!(c.g.max_abs_diff(&expect).unwrap() < 1e-13);
        let expect = Field::from_fn(g, ClassicalComponent::T.axes(), |x| x[2] * x[2]);
        assert!(c.t.max_abs_diff(&expect).unwrap() < 1e-13);
        assert!(c.psi.is_zero() && c.phi.is_zero() && c.s.is_zero());
    }

    #[test]
    fn reconstructed_data_is_compatible() {
        // all 35 slots filled with distinct constants
        let g = unit(5);
        let mut phi = TraceVector::zeros(g);
        for (k, mi) in MultiIndex::non_dominant().enumerate() {
            phi.set_constant(mi, 0.1 * (k as f64 + 1.0));
        }
        let c = nonclassical_to_classical(&phi, QuadRule::Trapezoid).unwrap();
        let report = check_compatibility(&c, 1e-10).unwrap();
        assert!(report.passes(), "violations: {:?}", report.violated());
    }
}
