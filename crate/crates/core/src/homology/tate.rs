//! Graded vector spaces whose pieces are sums of Tate Hodge structures.
//!
//! Tate index `m` stands for `Q(m)`, pure of weight `-2m`. Homology of a
//! compact smooth variety in degree `2i` carries index `i`; cohomology in
//! degree `2i` carries `-i`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::HomologyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct TateIndex(i64);

impl TateIndex {
    pub fn new(m: i64) -> Self {
        Self(m)
    }

    /// Accepts only integral values; half-integral twists are an error.
    pub fn from_ratio(value: Ratio<i64>, degree: i64) -> Result<Self, HomologyError> {
        if !value.is_integer() {
            return Err(HomologyError::NonIntegralTate {
                degree,
                numer: *value.numer(),
                denom: *value.denom(),
            });
        }
        Ok(Self(value.to_integer()))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// Hodge weight `-2m`.
    pub fn weight(self) -> i64 {
        -2 * self.0
    }

    pub fn shifted(self, by: i64) -> Self {
        Self(self.0 + by)
    }
}

impl fmt::Display for TateIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({})", self.0)
    }
}

/// One `(degree, Tate index, dimension)` cell of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TateCell {
    pub degree: i64,
    pub tate: TateIndex,
    pub dim: u64,
}

/// Map from degree to the Tate decomposition of the group in that degree.
///
/// Absent degrees are zero; stored dimensions are positive. Most tables
/// are pure (one Tate index per degree); exterior algebras on generators of
/// different weights can mix weights within a degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedTateVector {
    entries: BTreeMap<i64, BTreeMap<TateIndex, u64>>,
}

impl GradedTateVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `dim` copies of `Q(tate)` in `degree`. Zero dimensions are ignored.
    pub fn add(&mut self, degree: i64, dim: u64, tate: TateIndex) -> Result<(), HomologyError> {
        if dim == 0 {
            return Ok(());
        }
        let slot = self
            .entries
            .entry(degree)
            .or_default()
            .entry(tate)
            .or_insert(0);
        *slot = slot
            .checked_add(dim)
            .ok_or(HomologyError::Overflow("dimension"))?;
        Ok(())
    }

    pub fn add_ratio(
        &mut self,
        degree: i64,
        dim: u64,
        tate: Ratio<i64>,
    ) -> Result<(), HomologyError> {
        self.add(degree, dim, TateIndex::from_ratio(tate, degree)?)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of nonzero degrees.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.entries.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries.keys().next_back().copied()
    }

    /// Total dimension in `degree`.
    pub fn dim(&self, degree: i64) -> u64 {
        self.entries.get(&degree).map_or(0, |w| w.values().sum())
    }

    /// The single Tate index of a pure degree.
    pub fn pure_tate(&self, degree: i64) -> Option<TateIndex> {
        let w = self.entries.get(&degree)?;
        (w.len() == 1).then(|| *w.keys().next().expect("nonempty"))
    }

    pub fn is_pure(&self) -> bool {
        self.entries.values().all(|w| w.len() == 1)
    }

    /// Cells in increasing degree, then increasing Tate index.
    pub fn cells(&self) -> impl Iterator<Item = TateCell> + '_ {
        self.entries.iter().flat_map(|(&degree, w)| {
            w.iter()
                .map(move |(&tate, &dim)| TateCell { degree, tate, dim })
        })
    }

    pub fn total_dim(&self) -> u64 {
        self.cells().map(|c| c.dim).sum()
    }

    /// Restriction to degrees in `range`.
    pub fn restrict(&self, range: impl std::ops::RangeBounds<i64>) -> Self {
        Self {
            entries: self
                .entries
                .range(range)
                .map(|(&d, w)| (d, w.clone()))
                .collect(),
        }
    }

    /// Multiset of degrees, each repeated by its dimension.
    pub fn degree_multiset(&self) -> Vec<i64> {
        self.cells()
            .flat_map(|c| std::iter::repeat_n(c.degree, c.dim as usize))
            .collect()
    }

    /// CSV rows `degree,dim,tate`, one per Tate piece.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,dim,tate\n");
        for c in self.cells() {
            out.push_str(&format!("{},{},{}\n", c.degree, c.dim, c.tate.value()));
        }
        out
    }
}

impl Serialize for GradedTateVector {
    /// `{degree: [dim, tate]}` for pure degrees, `{degree: [[dim, tate], ...]}` otherwise.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (degree, w) in &self.entries {
            let key = degree.to_string();
            if w.len() == 1 {
                let (tate, dim) = w.iter().next().expect("nonempty");
                map.serialize_entry(&key, &(dim, tate.value()))?;
            } else {
                let pieces: Vec<(u64, i64)> = w.iter().map(|(t, d)| (*d, t.value())).collect();
                map.serialize_entry(&key, &pieces)?;
            }
        }
        map.end()
    }
}

impl fmt::Display for GradedTateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>8}  {:>6}  {:>6}  {:>6}",
            "degree", "dim", "tate", "weight"
        )?;
        for c in self.cells() {
            writeln!(
                f,
                "{:>8}  {:>6}  {:>6}  {:>6}",
                c.degree,
                c.dim,
                c.tate.value(),
                c.tate.weight()
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_integral_index_is_an_error() {
        assert!(TateIndex::from_ratio(Ratio::new(3, 2), 3).is_err());
        assert_eq!(
            TateIndex::from_ratio(Ratio::new(6, 2), 6).unwrap().value(),
            3
        );
    }

    #[test]
    fn accumulates_and_serializes() {
        let mut v = GradedTateVector::new();
        v.add(0, 1, TateIndex::new(0)).unwrap();
        v.add(2, 1, TateIndex::new(1)).unwrap();
        v.add(2, 1, TateIndex::new(1)).unwrap();
        v.add(4, 0, TateIndex::new(2)).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.dim(2), 2);
        assert!(v.is_pure());
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"0":[1,0],"2":[2,1]}"#
        );
        v.add(2, 1, TateIndex::new(-1)).unwrap();
        assert!(!v.is_pure());
        assert_eq!(v.pure_tate(2), None);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"0":[1,0],"2":[[1,-1],[2,1]]}"#
        );
        assert_eq!(v.to_csv(), "degree,dim,tate\n0,1,0\n2,1,-1\n2,2,1\n");
        assert_eq!(v.degree_multiset(), vec![0, 2, 2, 2]);
        assert_eq!(v.restrict(1..).total_dim(), 3);
    }
}
