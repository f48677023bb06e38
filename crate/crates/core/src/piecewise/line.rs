//! The column-space realization of a submonoid `S` of Z.
//!
//! Column `n` is `[0, 2)` when `n ∈ S` and `[0, 1) ∪ [2, 3)` otherwise. The
//! shift `f` moves column `n` onto column `n + 1`, gluing or splitting the
//! column at height 1 according to membership of `n` and `n + 1`. The
//! iterates of `f` that are continuous are then exactly the members of `S`.

use serde::{Deserialize, Serialize};

use super::interval::{Interval, IntervalUnion};
use super::map::{is_continuous, ContinuityReport, MapError, Piece, PiecewiseMap, compose, invert};
use super::space::{ColumnIndex, ColumnSpace};
use crate::submonoid::CanonicalSubmonoid;

/// How one column is carried onto the next, by membership of source and target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferCase {
    /// Both in S: `[0, 2)` slides across unchanged.
    Glued,
    /// Neither in S: both halves slide across unchanged.
    Split,
    /// Source in S, target not: `[1, 2)` is lifted to `[2, 3)`.
    Tear,
    /// Target in S, source not: `[2, 3)` is lowered to `[1, 2)`.
    Mend,
}

impl TransferCase {
    pub fn of(source_in: bool, target_in: bool) -> Self {
        match (source_in, target_in) {
            (true, true) => TransferCase::Glued,
            (false, false) => TransferCase::Split,
            (true, false) => TransferCase::Tear,
            (false, true) => TransferCase::Mend,
        }
    }

    /// Pieces carrying a source column onto `target`.
    pub fn pieces(self, target: ColumnIndex) -> Vec<Piece> {
        match self {
            TransferCase::Glued => vec![Piece::new(Interval::half_open(0, 2), target, 0)],
            TransferCase::Split => vec![
                Piece::new(Interval::half_open(0, 1), target, 0),
                Piece::new(Interval::half_open(2, 3), target, 0),
            ],
            TransferCase::Tear => vec![
                Piece::new(Interval::half_open(0, 1), target, 0),
                Piece::new(Interval::half_open(1, 2), target, 1),
            ],
            TransferCase::Mend => vec![
                Piece::new(Interval::half_open(0, 1), target, 0),
                Piece::new(Interval::half_open(2, 3), target, -1),
            ],
        }
    }
}

/// `[0, 2)` for members, `[0, 1) ∪ [2, 3)` otherwise.
pub fn column_shape(member: bool) -> IntervalUnion {
    if member {
        IntervalUnion::single(Interval::half_open(0, 2))
    } else {
        IntervalUnion::new(vec![Interval::half_open(0, 1), Interval::half_open(2, 3)])
            .expect("disjoint parts")
    }
}

/// Columns `-w..=w` of the realization space of `s`.
pub fn build_line_space(s: &CanonicalSubmonoid, w: u64) -> ColumnSpace {
    let w = w as i64;
    ColumnSpace::new(
        (-w..=w).map(|n| (n, column_shape(s.contains(n)))),
        Some((-w, w)),
    )
}

/// Which transfer the shift uses out of column `n`.
pub fn line_case(s: &CanonicalSubmonoid, n: ColumnIndex) -> TransferCase {
    TransferCase::of(s.contains(n), s.contains(n + 1))
}

/// The shift `f` on columns `-w..w` (column `w` has no successor in the window).
pub fn build_line_map(s: &CanonicalSubmonoid, w: u64) -> PiecewiseMap {
    let w = w as i64;
    PiecewiseMap::from_pieces(
        (-w..w).flat_map(|n| line_case(s, n).pieces(n + 1).into_iter().map(move |p| (n, p))),
    )
    .expect("transfer pieces are disjoint")
}

/// Space and shift for one submonoid over a finite window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRealization {
    pub submonoid: CanonicalSubmonoid,
    pub window: u64,
    pub space: ColumnSpace,
    pub map: PiecewiseMap,
}

/// One iterate with its continuity verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Iterate {
    pub exponent: i64,
    pub map: PiecewiseMap,
    pub report: ContinuityReport,
}

impl LineRealization {
    pub fn new(submonoid: CanonicalSubmonoid, window: u64) -> Self {
        let space = build_line_space(&submonoid, window);
        let map = build_line_map(&submonoid, window);
        LineRealization {
            submonoid,
            window,
            space,
            map,
        }
    }

    /// Iterates `f^n` for `n` in `[-range, range]`, ascending, with their
    /// continuity reports. Requires `window ≥ 2·range` so that every iterate
    /// keeps enough columns to exhibit its behaviour.
    pub fn iterates(&self, range: u64) -> Result<Vec<Iterate>, MapError> {
        let required = 2 * range;
        if self.window < required.max(1) {
            return Err(MapError::WindowTooSmall {
                required: required.max(1),
                given: self.window,
            });
        }
        let judge = |exponent: i64, map: PiecewiseMap| {
            let report = is_continuous(&map, &self.space);
            Iterate {
                exponent,
                map,
                report,
            }
        };
        let inverse = invert(&self.map)?;
        let mut negative = Vec::new();
        let mut positive = Vec::new();
        let (mut fwd, mut back) = (self.map.clone(), inverse.clone());
        for k in 1..=range as i64 {
            if k > 1 {
                fwd = compose(&self.map, &fwd)?;
                back = compose(&inverse, &back)?;
            }
            positive.push(judge(k, fwd.clone()));
            negative.push(judge(-k, back.clone()));
        }
        negative.reverse();
        let identity = PiecewiseMap::identity(&self.space);
        Ok(negative
            .into_iter()
            .chain(std::iter::once(judge(0, identity)))
            .chain(positive)
            .collect())
    }

    /// Exponents in `[-range, range]` whose iterate is continuous.
    pub fn spectrum(&self, range: u64) -> Result<Vec<i64>, MapError> {
        Ok(self
            .iterates(range)?
            .into_iter()
            .filter(|it| it.report.continuous)
            .map(|it| it.exponent)
            .collect())
    }
}

/// Continuity spectrum of the realization of `s` built on `[-w, w]`, read
/// off on `[-n, n]`.
pub fn spectrum(s: &CanonicalSubmonoid, n: u64, w: u64) -> Result<Vec<i64>, MapError> {
    LineRealization::new(s.clone(), w).spectrum(n)
}
