//! Derivative multi-indices bounded by the order profile (1,1,2,2).

use crate::error::{Error, Result};
use crate::grid::{Axes, Axis};

/// Maximum derivative order per axis.
pub const MAX_ORDERS: [u8; 4] = [1, 1, 2, 2];

/// A derivative multi-index (i1,i2,i3,i4) with i1,i2 in {0,1} and
/// i3,i4 in {0,1,2}. The index (1,1,2,2) is the dominant one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MultiIndex([u8; 4]);

impl MultiIndex {
    pub const DOMINANT: MultiIndex = MultiIndex(MAX_ORDERS);

    /// Number of distinct multi-indices.
    pub const COUNT: usize = 36;

    pub fn new(orders: [u8; 4]) -> Result<MultiIndex> {
        for (k, (&i, &m)) in orders.iter().zip(MAX_ORDERS.iter()).enumerate() {
            if i > m {
                return Err(Error::invalid(format!(
                    "multi-index component {i} on axis x{} exceeds bound {m}",
                    k + 1
                )));
            }
        }
        Ok(MultiIndex(orders))
    }

    pub fn orders(self) -> [u8; 4] {
        self.0
    }

    pub fn order(self, axis: Axis) -> u8 {
        self.0[axis.index()]
    }

    pub fn total_order(self) -> u8 {
        self.0.iter().sum()
    }

    pub fn is_dominant(self) -> bool {
        self == Self::DOMINANT
    }

    /// Axes on which the order reaches its bound; these are the axes the
    /// matching trace component varies over.
    pub fn varying_axes(self) -> Axes {
        let mut axes = Axes::NONE;
        for a in Axis::ALL {
            if self.0[a.index()] == MAX_ORDERS[a.index()] {
                axes = axes.with(a);
            }
        }
        axes
    }

    /// Dense storage slot in 0..36.
    pub fn slot(self) -> usize {
        let [i1, i2, i3, i4] = self.0;
        ((i1 as usize * 2) + i2 as usize) * 9 + i3 as usize * 3 + i4 as usize
    }

    pub fn from_slot(slot: usize) -> Result<MultiIndex> {
        if slot >= Self::COUNT {
            return Err(Error::invalid(format!("multi-index slot {slot} out of range")));
        }
        let i4 = (slot % 3) as u8;
        let i3 = ((slot / 3) % 3) as u8;
        let i2 = ((slot / 9) % 2) as u8;
        let i1 = (slot / 18) as u8;
        MultiIndex::new([i1, i2, i3, i4])
    }

    /// All 36 multi-indices in slot order.
    pub fn all() -> impl Iterator<Item = MultiIndex> {
        (0..Self::COUNT).map(|s| MultiIndex::from_slot(s).unwrap())
    }

    /// The 35 non-dominant multi-indices in slot order.
    pub fn non_dominant() -> impl Iterator<Item = MultiIndex> {
        Self::all().filter(|i| !i.is_dominant())
    }

    /// Componentwise i >= j.
    pub fn dominates(self, other: MultiIndex) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    /// Compact label like "1022", used in file names and report keys.
    pub fn label(self) -> String {
        let [i1, i2, i3, i4] = self.0;
        format!("{i1}{i2}{i3}{i4}")
    }

    /// Parses "1 0 2 2", "1,0,2,2" or "1022".
    pub fn parse(s: &str) -> Result<MultiIndex> {
        let digits: Vec<u8> = if s.contains(|c: char| c == ' ' || c == ',') {
            s.split(|c: char| c == ' ' || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|_| Error::invalid(format!("bad multi-index part {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::invalid(format!("bad multi-index digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        if digits.len() != 4 {
            return Err(Error::invalid(format!(
                "multi-index {s:?} must have four components"
            )));
        }
        MultiIndex::new([digits[0], digits[1], digits[2], digits[3]])
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [i1, i2, i3, i4] = self.0;
        write!(f, "({i1},{i2},{i3},{i4})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_roundtrip_and_count() {
        let all: Vec<_> = MultiIndex::all().collect();
        assert_eq!(all.len(), 36);
        for (s, mi) in all.iter().enumerate() {
            assert_eq!(mi.slot(), s);
            assert_eq!(MultiIndex::from_slot(s).unwrap(), *mi);
        }
        assert_eq!(MultiIndex::non_dominant().count(), 35);
    }

    #[test]
    fn bounds_enforced() {
        assert!(MultiIndex::new([2, 0, 0, 0]).is_err());
        assert!(MultiIndex::new([0, 0, 3, 0]).is_err());
        assert!(MultiIndex::new([1, 1, 2, 2]).unwrap().is_dominant());
        assert!(MultiIndex::all().all(|i| i.total_order() <= 6));
    }

    #[test]
    fn varying_axes_rule() {
        use crate::grid::Axis::*;
        let mi = MultiIndex::new([0, 0, 1, 1]).unwrap();
        assert!(mi.varying_axes().is_empty()); // scalar slot
        let mi = MultiIndex::new([1, 0, 1, 1]).unwrap();
        assert_eq!(mi.varying_axes(), Axes::from_slice(&[X1]));
        let mi = MultiIndex::new([1, 1, 2, 2]).unwrap();
        assert_eq!(mi.varying_axes(), Axes::ALL);
        // component dimension census: 4 scalars, 12 curves, 13 faces, 6 cells, 1 volume
        let mut census = [0usize; 5];
        for mi in MultiIndex::all() {
            census[mi.varying_axes().len()] += 1;
        }
        assert_eq!(census, [4, 12, 13, 6, 1]);
    }

    #[test]
    fn parse_forms() {
        for s in ["1 0 2 2", "1,0,2,2", "1022"] {
            assert_eq!(MultiIndex::parse(s).unwrap().orders(), [1, 0, 2, 2]);
        }
        assert!(MultiIndex::parse("9 9 9 9").is_err());
        assert!(MultiIndex::parse("102").is_err());
    }
}
