use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::interval::{IntervalUnion, Q};

/// Index of a column: an integer for the line construction, an element id for
/// Cayley-table constructions.
pub type ColumnIndex = i64;

/// A space made of pairwise separated vertical columns `{c} × U_c`, each `U_c`
/// a finite union of intervals. Every column is clopen, so continuity of a map
/// can be decided one column at a time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "SpaceRepr", into = "SpaceRepr")]
pub struct ColumnSpace {
    columns: BTreeMap<ColumnIndex, IntervalUnion>,
    window: Option<(ColumnIndex, ColumnIndex)>,
}

impl ColumnSpace {
    /// Empty columns are dropped.
    pub fn new(
        columns: impl IntoIterator<Item = (ColumnIndex, IntervalUnion)>,
        window: Option<(ColumnIndex, ColumnIndex)>,
    ) -> Self {
        ColumnSpace {
            columns: columns.into_iter().filter(|(_, u)| !u.is_empty()).collect(),
            window,
        }
    }

    pub fn column(&self, index: ColumnIndex) -> Option<&IntervalUnion> {
        self.columns.get(&index)
    }

    pub fn columns(&self) -> impl Iterator<Item = (ColumnIndex, &IntervalUnion)> {
        self.columns.iter().map(|(&i, u)| (i, u))
    }

    pub fn indices(&self) -> impl Iterator<Item = ColumnIndex> + '_ {
        self.columns.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Built range `[lo, hi]` of a truncated integer-indexed space; `None` for
    /// spaces that are complete (finite index sets).
    pub fn window(&self) -> Option<(ColumnIndex, ColumnIndex)> {
        self.window
    }

    pub fn contains(&self, column: ColumnIndex, x: Q) -> bool {
        self.column(column).is_some_and(|u| u.contains(x))
    }

    /// Every column is one or two half-open intervals `[a, b)`, i.e. the space
    /// is a disjoint union of semi-open intervals.
    pub fn is_semi_open_union(&self) -> bool {
        self.columns.values().all(|u| {
            (1..=2).contains(&u.components()) && u.parts().iter().all(|p| p.is_half_open())
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ColumnRepr {
    index: ColumnIndex,
    parts: IntervalUnion,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    columns: Vec<ColumnRepr>,
    window: Option<(ColumnIndex, ColumnIndex)>,
}

impl From<SpaceRepr> for ColumnSpace {
    fn from(r: SpaceRepr) -> Self {
        ColumnSpace::new(r.columns.into_iter().map(|c| (c.index, c.parts)), r.window)
    }
}

impl From<ColumnSpace> for SpaceRepr {
    fn from(s: ColumnSpace) -> Self {
        SpaceRepr {
            columns: s
                .columns
                .into_iter()
                .map(|(index, parts)| ColumnRepr { index, parts })
                .collect(),
            window: s.window,
        }
    }
}
