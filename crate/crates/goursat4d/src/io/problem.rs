//! Problem files: a TOML document describing the grid, the coefficients,
//! the boundary data (classical or trace form), and solver settings.
//!
//! Coefficient and boundary entries take either an inline constant or a
//! field file path (GF4 or CSV, resolved relative to the problem file):
//!
//! ```toml
//! [grid]
//! lengths = [1.0, 1.0, 1.0, 1.0]
//! counts = [9, 9, 9, 9]
//!
//! [coefficients]
//! "0 0 1 1" = 1.0
//! "1 0 2 2" = "a_1022.gf4"
//!
//! [boundary]
//! mode = "nonclassical"
//!
//! [boundary.traces]
//! "1 1 2 2" = 1.0
//!
//! [solver]
//! p = "inf"
//! tol = 1e-10
//! max_iter = 200
//! rule = "trap"
//! mode = "picard"
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::boundary::{ClassicalComponent, ClassicalData};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::{Axes, Grid4};
use crate::multi_index::MultiIndex;
use crate::norms::NormConfig;
use crate::pde::CoefficientSet;
use crate::quad::QuadRule;
use crate::solver::{IterationMode, SolverOptions};
use crate::trace_vector::TraceVector;

/// Boundary data in either of the two equivalent forms.
#[derive(Clone, Debug)]
pub enum BoundarySpec {
    Classical(ClassicalData),
    Nonclassical(TraceVector),
}

/// A fully resolved problem: everything a solve needs.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub grid: Grid4,
    pub coefficients: CoefficientSet,
    pub boundary: BoundarySpec,
    pub solver: SolverOptions,
}

#[derive(Deserialize)]
struct RawSpec {
    grid: RawGrid,
    #[serde(default)]
    coefficients: BTreeMap<String, toml::Value>,
    boundary: RawBoundary,
    #[serde(default)]
    solver: RawSolver,
}

#[derive(Deserialize)]
struct RawGrid {
    lengths: [f64; 4],
    counts: [usize; 4],
}

#[derive(Deserialize)]
struct RawBoundary {
    mode: String,
    #[serde(default)]
    traces: BTreeMap<String, toml::Value>,
    #[serde(default)]
    classical: BTreeMap<String, toml::Value>,
}

#[derive(Deserialize, Default)]
struct RawSolver {
    p: Option<toml::Value>,
    tol: Option<f64>,
    max_iter: Option<usize>,
    rule: Option<String>,
    mode: Option<String>,
}

fn load_field_value(
    value: &toml::Value,
    base: &Path,
    grid: &Grid4,
    axes: Axes,
    what: &str,
) -> Result<Field> {
    match value {
        toml::Value::Float(v) => Ok(Field::constant(*grid, axes, *v)),
        toml::Value::Integer(v) => Ok(Field::constant(*grid, axes, *v as f64)),
        toml::Value::String(rel) => {
            let path = base.join(rel);
            let data = if rel.ends_with(".csv") {
                super::csv::read_csv(&path)?
            } else {
                super::gf4::read_field(&path)?
            };
            let field = data.into_field(grid)?;
            if field.axes() != axes {
                return Err(Error::invalid(format!(
                    "{what}: field in {rel} varies over {}, expected {axes}",
                    field.axes()
                )));
            }
            Ok(field)
        }
        other => Err(Error::invalid(format!(
            "{what}: expected a number or a file path, got {other:?}"
        ))),
    }
}

/// Parses and resolves a problem file.
pub fn load_problem(path: &Path) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path)?;
    let raw: RawSpec = toml::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let base: PathBuf = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    resolve_problem(raw, &base)
}

fn resolve_problem(raw: RawSpec, base: &Path) -> Result<ProblemSpec> {
    let grid = Grid4::new(raw.grid.lengths, raw.grid.counts)?;

    let mut coefficients = CoefficientSet::empty(grid);
    for (key, value) in &raw.coefficients {
        let mi = MultiIndex::parse(key)?;
        if mi.is_dominant() {
            return Err(Error::invalid(
                "coefficients: the dominant index carries no coefficient".into(),
            ));
        }
        let field = load_field_value(value, base, &grid, Axes::ALL, "coefficients")?;
        coefficients.set(mi, field)?;
    }

    let boundary = match raw.boundary.mode.as_str() {
        "nonclassical" => {
            let mut phi = TraceVector::zeros(grid);
            for (key, value) in &raw.boundary.traces {
                let mi = MultiIndex::parse(key)?;
                let field =
                    load_field_value(value, base, &grid, mi.varying_axes(), "boundary.traces")?;
                phi.set_component(mi, field)?;
            }
            BoundarySpec::Nonclassical(phi)
        }
        "classical" => {
            let mut data = ClassicalData::zeros(grid);
            for (key, value) in &raw.boundary.classical {
                let comp = match key.as_str() {
                    "F" => ClassicalComponent::F,
                    "g" => ClassicalComponent::G,
                    "psi" => ClassicalComponent::Psi,
                    "Phi" => ClassicalComponent::Phi,
                    "T" => ClassicalComponent::T,
                    "S" => ClassicalComponent::S,
                    other => {
                        return Err(Error::invalid(format!(
                            "boundary.classical: unknown component {other:?} (use F,g,psi,Phi,T,S)"
                        )))
                    }
                };
                let field =
                    load_field_value(value, base, &grid, comp.axes(), "boundary.classical")?;
                match comp {
                    ClassicalComponent::F => data.f = field,
                    ClassicalComponent::G => data.g = field,
                    ClassicalComponent::Psi => data.psi = field,
                    ClassicalComponent::Phi => data.phi = field,
                    ClassicalComponent::T => data.t = field,
                    ClassicalComponent::S => data.s = field,
                }
            }
            BoundarySpec::Classical(data)
        }
        other => {
            return Err(Error::invalid(format!(
                "boundary.mode must be \"classical\" or \"nonclassical\", got {other:?}"
            )))
        }
    };

    let mut solver = SolverOptions::default();
    if let Some(p) = &raw.solver.p {
        solver.norm = match p {
            toml::Value::String(s) => NormConfig::parse(s)?,
            toml::Value::Float(v) => NormConfig::new(*v)?,
            toml::Value::Integer(v) => NormConfig::new(*v as f64)?,
            other => return Err(Error::invalid(format!("solver.p: bad value {other:?}"))),
        };
    }
    if let Some(tol) = raw.solver.tol {
        solver.tol = tol;
    }
    if let Some(mi) = raw.solver.max_iter {
        solver.max_iter = mi;
    }
    if let Some(rule) = &raw.solver.rule {
        solver.rule = QuadRule::parse(rule)?;
    }
    if let Some(mode) = &raw.solver.mode {
        solver.mode = IterationMode::parse(mode)?;
    }

    Ok(ProblemSpec {
        grid,
        coefficients,
        boundary,
        solver,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmpdir(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join("goursat4d-problem-tests").join(name);
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn minimal_nonclassical_spec() {
        let dir = tmpdir("minimal");
        let spec = r#"
[grid]
lengths = [1.0, 1.0, 1.0, 1.0]
counts = [5, 5, 5, 5]

[coefficients]
"0 0 1 1" = 1.5

[boundary]
mode = "nonclassical"

[boundary.traces]
"1 1 2 2" = 1.0
"0 0 0 0" = 2.0

[solver]
p = "inf"
tol = 1e-9
max_iter = 50
rule = "trap"
mode = "sweep"
"#;
        let path = dir.join("problem.toml");
        std::fs::write(&path, spec).unwrap();
        let problem = load_problem(&path).unwrap();
        assert_eq!(problem.grid.counts(), [5; 4]);
        assert_eq!(problem.solver.max_iter, 50);
        assert_eq!(problem.solver.mode, IterationMode::Sweep);
        match &problem.boundary {
            BoundarySpec::Nonclassical(phi) => {
                assert_eq!(phi.dominant().values()[0], 1.0);
                assert_eq!(
                    phi.component(MultiIndex::new([0, 0, 0, 0]).unwrap()).values()[0],
                    2.0
                );
            }
            _ => panic!("expected nonclassical boundary"),
        }
        let mi = MultiIndex::new([0, 0, 1, 1]).unwrap();
        assert_eq!(problem.coefficients.get(mi).unwrap().values()[0], 1.5);
    }

    #[test]
    fn classical_spec_with_field_file() {
        let dir = tmpdir("classical");
        let grid = Grid4::unit(4).unwrap();
        let f = Field::from_fn(grid, ClassicalComponent::F.axes(), |x| x[2] * x[3]);
        super::super::gf4::write_field(&dir.join("F.gf4"), &f).unwrap();
        let spec = r#"
[grid]
lengths = [1.0, 1.0, 1.0, 1.0]
counts = [4, 4, 4, 4]

[boundary]
mode = "classical"

[boundary.classical]
F = "F.gf4"
g = 0.0
"#;
        let path = dir.join("problem.toml");
        std::fs::write(&path, spec).unwrap();
        let problem = load_problem(&path).unwrap();
        match &problem.boundary {
            BoundarySpec::Classical(c) => {
                assert!((c.f.at([0, 2, 1, 3]) - f.at([0, 2, 1, 3])).abs() < 1e-15);
                assert!(c.g.is_zero());
            }
            _ => panic!("expected classical boundary"),
        }
    }

    #[test]
    fn bad_mode_rejected() {
        let dir = tmpdir("badmode");
        let spec = "[grid]\nlengths = [1.0,1.0,1.0,1.0]\ncounts = [3,3,3,3]\n[boundary]\nmode = \"other\"\n";
        let path = dir.join("problem.toml");
        std::fs::write(&path, spec).unwrap();
        assert!(load_problem(&path).is_err());
    }

    #[test]
    fn dominant_coefficient_rejected() {
        let dir = tmpdir("domcoef");
        let spec = "[grid]\nlengths = [1.0,1.0,1.0,1.0]\ncounts = [3,3,3,3]\n[coefficients]\n\"1 1 2 2\" = 1.0\n[boundary]\nmode = \"nonclassical\"\n";
        let path = dir.join("problem.toml");
        std::fs::write(&path, spec).unwrap();
        assert!(load_problem(&path).is_err());
    }
}
