//! Uniform tensor grids over the box (0,h1) x (0,h2) x (0,h3) x (0,h4).

use crate::error::{Error, Result};

/// One of the four coordinate axes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Axis {
    X1,
    X2,
    X3,
    X4,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::X1, Axis::X2, Axis::X3, Axis::X4];

    /// Zero-based position of the axis.
    pub fn index(self) -> usize {
        match self {
            Axis::X1 => 0,
            Axis::X2 => 1,
            Axis::X3 => 2,
            Axis::X4 => 3,
        }
    }

    pub fn from_index(i: usize) -> Result<Axis> {
        match i {
            0 => Ok(Axis::X1),
            1 => Ok(Axis::X2),
            2 => Ok(Axis::X3),
            3 => Ok(Axis::X4),
            _ => Err(Error::invalid(format!("axis index {i} out of range 0..4"))),
        }
    }

    /// One-based axis number as used in labels and file headers.
    pub fn number(self) -> usize {
        self.index() + 1
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x{}", self.number())
    }
}

/// A subset of the four axes, kept in ascending order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Axes(u8);

impl Axes {
    pub const NONE: Axes = Axes(0);
    pub const ALL: Axes = Axes(0b1111);

    pub fn from_slice(axes: &[Axis]) -> Axes {
        let mut set = Axes::NONE;
        for &a in axes {
            set = set.with(a);
        }
        set
    }

    pub fn with(self, axis: Axis) -> Axes {
        Axes(self.0 | (1 << axis.index()))
    }

    pub fn without(self, axis: Axis) -> Axes {
        Axes(self.0 & !(1 << axis.index()))
    }

    pub fn contains(self, axis: Axis) -> bool {
        self.0 & (1 << axis.index()) != 0
    }

    pub fn is_subset_of(self, other: Axes) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Axes in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Axis> {
        Axis::ALL.into_iter().filter(move |a| self.contains(*a))
    }
}

impl std::fmt::Display for Axes {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        write!(f, "{{")?;
        for a in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Uniform 4D tensor grid: edge lengths and node counts per axis.
///
/// Nodes on axis k are `0 = t_0 < t_1 < ... < t_{n-1} = h_k`, uniformly
/// spaced; both endpoints are included exactly.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Grid4 {
    lengths: [f64; 4],
    counts: [usize; 4],
}

impl Grid4 {
    /// Builds a grid, validating positive lengths and counts >= 3.
    pub fn new(lengths: [f64; 4], counts: [usize; 4]) -> Result<Grid4> {
        for (k, &len) in lengths.iter().enumerate() {
            if !(len > 0.0) || !len.is_finite() {
                return Err(Error::invalid(format!(
                    "length of axis x{} must be positive and finite, got {len}",
                    k + 1
                )));
            }
        }
        for (k, &n) in counts.iter().enumerate() {
            if n < 3 {
                return Err(Error::invalid(format!(
                    "axis x{} needs at least 3 nodes, got {n}",
                    k + 1
                )));
            }
        }
        Ok(Grid4 { lengths, counts })
    }

    /// Cube grid on the unit box with `n` nodes per axis.
    pub fn unit(n: usize) -> Result<Grid4> {
        Grid4::new([1.0; 4], [n; 4])
    }

    pub fn lengths(&self) -> [f64; 4] {
        self.lengths
    }

    pub fn counts(&self) -> [usize; 4] {
        self.counts
    }

    pub fn length(&self, axis: Axis) -> f64 {
        self.lengths[axis.index()]
    }

    pub fn count(&self, axis: Axis) -> usize {
        self.counts[axis.index()]
    }

    pub fn spacing(&self, axis: Axis) -> f64 {
        self.length(axis) / (self.count(axis) - 1) as f64
    }

    /// Node coordinate `i` on `axis`; endpoints are exact.
    pub fn node(&self, axis: Axis, i: usize) -> f64 {
        let n = self.count(axis);
        debug_assert!(i < n);
        if i == n - 1 {
            self.length(axis)
        } else {
            i as f64 * self.length(axis) / (n - 1) as f64
        }
    }

    pub fn nodes(&self, axis: Axis) -> Vec<f64> {
        (0..self.count(axis)).map(|i| self.node(axis, i)).collect()
    }

    /// Total number of nodes in the full 4D grid.
    pub fn total_nodes(&self) -> usize {
        self.counts.iter().product()
    }
}

/// Builds a `Grid4` from raw lengths and counts.
pub fn make_grid(lengths: [f64; 4], counts: [usize; 4]) -> Result<Grid4> {
    Grid4::new(lengths, counts)
}
