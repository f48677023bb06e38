use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::interval::{Interval, IntervalUnion, Q};
use super::space::{ColumnIndex, ColumnSpace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("window exhausted: no column survives the composition")]
    WindowExhausted,
    #[error("window too small: need W >= {required}, got {given}")]
    WindowTooSmall { required: u64, given: u64 },
    #[error("not invertible: images overlap in column {column}")]
    NotInvertible { column: ColumnIndex },
    #[error("column {column}: piece sources overlap")]
    OverlappingPieces { column: ColumnIndex },
    #[error("column {column}: image is not covered by the outer map")]
    Uncovered { column: ColumnIndex },
}

/// Sends `(c, x)` with `x ∈ source` to `(target, x + offset)`.
///
/// A point source with a nonzero offset relocates a single endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub source: Interval,
    pub target: ColumnIndex,
    pub offset: Q,
}

impl Piece {
    pub fn new(source: Interval, target: ColumnIndex, offset: impl Into<Q>) -> Self {
        Piece {
            source,
            target,
            offset: offset.into(),
        }
    }

    pub fn image(&self) -> Interval {
        self.source.translate(self.offset)
    }
}

/// Side from which a boundary point is approached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A point where the one-sided limit of the map differs from its value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discontinuity {
    pub column: ColumnIndex,
    pub point: Q,
    pub side: Side,
    pub value: (ColumnIndex, Q),
    pub limit: (ColumnIndex, Q),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityReport {
    pub continuous: bool,
    pub witnesses: Vec<Discontinuity>,
}

impl ContinuityReport {
    /// Distinct `(column, point)` pairs where continuity fails.
    pub fn points(&self) -> Vec<(ColumnIndex, Q)> {
        let set: BTreeSet<_> = self.witnesses.iter().map(|w| (w.column, w.point)).collect();
        set.into_iter().collect()
    }
}

/// A self-map of a column space acting on each column by finitely many
/// translation pieces. Piece lists are kept normalized: sorted by left
/// endpoint, with abutting pieces of equal target and offset merged, so two
/// maps are equal iff they agree pointwise on the same domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MapRepr", into = "MapRepr")]
pub struct PiecewiseMap {
    columns: BTreeMap<ColumnIndex, Vec<Piece>>,
}

fn normalize(column: ColumnIndex, mut pieces: Vec<Piece>) -> Result<Vec<Piece>, MapError> {
    pieces.sort_by(|a, b| a.source.start_cmp(&b.source));
    let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        if let Some(last) = out.last_mut() {
            if last.source.overlaps(&p.source) {
                return Err(MapError::OverlappingPieces { column });
            }
            if last.target == p.target && last.offset == p.offset && last.source.abuts(&p.source) {
                last.source = last.source.join(&p.source);
                continue;
            }
        }
        out.push(p);
    }
    Ok(out)
}

impl PiecewiseMap {
    /// Build from `(source column, piece)` pairs. Sources in one column must
    /// be pairwise disjoint.
    pub fn from_pieces(
        pieces: impl IntoIterator<Item = (ColumnIndex, Piece)>,
    ) -> Result<Self, MapError> {
        let mut grouped: BTreeMap<ColumnIndex, Vec<Piece>> = BTreeMap::new();
        for (c, p) in pieces {
            grouped.entry(c).or_default().push(p);
        }
        let columns = grouped
            .into_iter()
            .map(|(c, ps)| normalize(c, ps).map(|ps| (c, ps)))
            .collect::<Result<_, _>>()?;
        Ok(PiecewiseMap { columns })
    }

    pub fn identity(space: &ColumnSpace) -> Self {
        let columns = space
            .columns()
            .map(|(c, u)| {
                let pieces = u.parts().iter().map(|&s| Piece::new(s, c, 0)).collect();
                (c, pieces)
            })
            .collect();
        PiecewiseMap { columns }
    }

    pub fn pieces(&self, column: ColumnIndex) -> &[Piece] {
        self.columns.get(&column).map_or(&[], Vec::as_slice)
    }

    pub fn columns(&self) -> impl Iterator<Item = (ColumnIndex, &[Piece])> {
        self.columns.iter().map(|(&c, ps)| (c, ps.as_slice()))
    }

    pub fn domain_columns(&self) -> impl Iterator<Item = ColumnIndex> + '_ {
        self.columns.keys().copied()
    }

    pub fn piece_count(&self) -> usize {
        self.columns.values().map(Vec::len).sum()
    }

    /// The space the pieces are defined on.
    pub fn domain(&self) -> ColumnSpace {
        ColumnSpace::new(
            self.columns.iter().map(|(&c, ps)| {
                let union = IntervalUnion::new(ps.iter().map(|p| p.source).collect())
                    .expect("normalized sources are disjoint");
                (c, union)
            }),
            None,
        )
    }

    pub fn eval(&self, column: ColumnIndex, x: Q) -> Option<(ColumnIndex, Q)> {
        self.pieces(column)
            .iter()
            .find(|p| p.source.contains(x))
            .map(|p| (p.target, x + p.offset))
    }

    /// Columns hit by the image of `column`.
    pub fn image_columns(&self, column: ColumnIndex) -> BTreeSet<ColumnIndex> {
        self.pieces(column).iter().map(|p| p.target).collect()
    }

    pub fn restrict(&self, keep: impl Fn(ColumnIndex) -> bool) -> PiecewiseMap {
        PiecewiseMap {
            columns: self
                .columns
                .iter()
                .filter(|(&c, _)| keep(c))
                .map(|(&c, ps)| (c, ps.clone()))
                .collect(),
        }
    }

    /// Equal on the columns both maps are defined on (and that set is nonempty).
    pub fn agrees_on_common_domain(&self, other: &PiecewiseMap) -> bool {
        let mut common = 0;
        for (c, ps) in &self.columns {
            if let Some(qs) = other.columns.get(c) {
                if ps != qs {
                    return false;
                }
                common += 1;
            }
        }
        common > 0
    }

    /// True when the map is a pure column translation `c ↦ c'` with offset 0
    /// on every column of its domain.
    pub fn is_rigid(&self) -> bool {
        self.columns.iter().all(|(_, ps)| {
            let targets: BTreeSet<_> = ps.iter().map(|p| p.target).collect();
            targets.len() == 1 && ps.iter().all(|p| p.offset == Q::zero())
        })
    }
}

/// `outer ∘ inner`. Columns of `inner` whose image leaves the domain of
/// `outer` are dropped.
pub fn compose(outer: &PiecewiseMap, inner: &PiecewiseMap) -> Result<PiecewiseMap, MapError> {
    let mut columns = BTreeMap::new();
    'col: for (&c, pieces) in &inner.columns {
        let mut out = Vec::new();
        for p in pieces {
            let Some(next) = outer.columns.get(&p.target) else {
                continue 'col;
            };
            let image = p.image();
            let mut covered = Vec::new();
            for q in next {
                if let Some(hit) = image.intersect(&q.source) {
                    covered.push(hit);
                    out.push(Piece {
                        source: hit.translate(-p.offset),
                        target: q.target,
                        offset: p.offset + q.offset,
                    });
                }
            }
            let covered = IntervalUnion::new(covered).map_err(|_| MapError::OverlappingPieces {
                column: p.target,
            })?;
            if covered != IntervalUnion::single(image) {
                return Err(MapError::Uncovered { column: p.target });
            }
        }
        columns.insert(c, normalize(c, out)?);
    }
    if columns.is_empty() {
        return Err(MapError::WindowExhausted);
    }
    Ok(PiecewiseMap { columns })
}

/// Piecewise inverse: each piece is reversed, so the inverse is defined on
/// the columns the map targets.
pub fn invert(f: &PiecewiseMap) -> Result<PiecewiseMap, MapError> {
    let mut grouped: BTreeMap<ColumnIndex, Vec<Piece>> = BTreeMap::new();
    for (&c, pieces) in &f.columns {
        for p in pieces {
            grouped.entry(p.target).or_default().push(Piece {
                source: p.image(),
                target: c,
                offset: -p.offset,
            });
        }
    }
    let columns = grouped
        .into_iter()
        .map(|(t, ps)| {
            normalize(t, ps)
                .map(|ps| (t, ps))
                .map_err(|_| MapError::NotInvertible { column: t })
        })
        .collect::<Result<_, _>>()?;
    Ok(PiecewiseMap { columns })
}

/// The `n`-th iterate; negative `n` iterates the inverse, `n = 0` is the
/// identity on the domain of `f`.
pub fn power(f: &PiecewiseMap, n: i64) -> Result<PiecewiseMap, MapError> {
    let step = match n {
        0 => return Ok(PiecewiseMap::identity(&f.domain())),
        n if n > 0 => f.clone(),
        _ => invert(f)?,
    };
    let mut acc = step.clone();
    for _ in 1..n.unsigned_abs() {
        acc = compose(&step, &acc)?;
    }
    Ok(acc)
}

/// Injective, and the images tile every column they touch. For a space with
/// no window (a complete finite space) every column must also be hit.
pub fn is_bijection(f: &PiecewiseMap, space: &ColumnSpace) -> bool {
    let mut images: BTreeMap<ColumnIndex, Vec<Interval>> = BTreeMap::new();
    for (_, pieces) in f.columns() {
        for p in pieces {
            images.entry(p.target).or_default().push(p.image());
        }
    }
    for (t, parts) in &images {
        let Some(column) = space.column(*t) else {
            return false;
        };
        for (i, a) in parts.iter().enumerate() {
            if parts[i + 1..].iter().any(|b| a.overlaps(b)) {
                return false;
            }
        }
        match IntervalUnion::new(parts.clone()) {
            Ok(u) if &u == column => {}
            _ => return false,
        }
    }
    space.window().is_some() || space.indices().all(|c| images.contains_key(&c))
}

/// Decide continuity symbolically.
///
/// Inside a piece the map is a translation. At a piece endpoint `p` that lies
/// in the space, each side from which the column accumulates at `p` must have
/// its one-sided limit (the translate of `p` by the adjacent piece) equal to
/// the value at `p`.
pub fn is_continuous(f: &PiecewiseMap, space: &ColumnSpace) -> ContinuityReport {
    let mut witnesses = Vec::new();
    for (c, pieces) in f.columns() {
        let Some(column) = space.column(c) else {
            continue;
        };
        let points: BTreeSet<Q> = pieces
            .iter()
            .flat_map(|p| [p.source.lo, p.source.hi])
            .filter(|&x| column.contains(x))
            .collect();
        for p in points {
            let Some(value) = f.eval(c, p) else {
                continue;
            };
            for side in [Side::Left, Side::Right] {
                let approaches = match side {
                    Side::Left => column.approaches_from_left(p),
                    Side::Right => column.approaches_from_right(p),
                };
                if !approaches {
                    continue;
                }
                let adjacent = pieces.iter().find(|q| match side {
                    Side::Left => q.source.approaches_from_left(p),
                    Side::Right => q.source.approaches_from_right(p),
                });
                let Some(q) = adjacent else {
                    continue;
                };
                let limit = (q.target, p + q.offset);
                if limit != value {
                    witnesses.push(Discontinuity {
                        column: c,
                        point: p,
                        side,
                        value,
                        limit,
                    });
                }
            }
        }
    }
    ContinuityReport {
        continuous: witnesses.is_empty(),
        witnesses,
    }
}

#[derive(Serialize, Deserialize)]
struct MapColumnRepr {
    index: ColumnIndex,
    pieces: Vec<Piece>,
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    columns: Vec<MapColumnRepr>,
}

impl TryFrom<MapRepr> for PiecewiseMap {
    type Error = MapError;
    fn try_from(r: MapRepr) -> Result<Self, Self::Error> {
        PiecewiseMap::from_pieces(
            r.columns
                .into_iter()
                .flat_map(|c| c.pieces.into_iter().map(move |p| (c.index, p))),
        )
    }
}

impl From<PiecewiseMap> for MapRepr {
    fn from(m: PiecewiseMap) -> Self {
        MapRepr {
            columns: m
                .columns
                .into_iter()
                .map(|(index, pieces)| MapColumnRepr { index, pieces })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piecewise::line::{build_line_map, build_line_space};
    use crate::submonoid::CanonicalSubmonoid;

    fn example() -> (ColumnSpace, PiecewiseMap) {
        let s = CanonicalSubmonoid::from_generators([3, 4, 5]);
        (build_line_space(&s, 8), build_line_map(&s, 8))
    }

    #[test]
    fn identity_is_neutral() {
        let (x, f) = example();
        let id = PiecewiseMap::identity(&x);
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert!(compose(&f, &id).unwrap().agrees_on_common_domain(&f));
        assert!(is_continuous(&id, &x).continuous);
        assert_eq!(invert(&id).unwrap(), id);
    }

    #[test]
    fn square_matches_power() {
        let (_, f) = example();
        assert_eq!(compose(&f, &f).unwrap(), power(&f, 2).unwrap());
        assert_eq!(power(&f, 1).unwrap(), f);
        assert_eq!(power(&f, 0).unwrap(), PiecewiseMap::identity(&f.domain()));
    }

    #[test]
    fn inverse_round_trips() {
        let (x, f) = example();
        let g = invert(&f).unwrap();
        assert_eq!(invert(&g).unwrap(), f);
        let id = PiecewiseMap::identity(&x);
        let back = compose(&g, &f).unwrap();
        assert!(back.agrees_on_common_domain(&id));
        assert_eq!(back.domain_columns().count(), 16);
    }

    #[test]
    fn inverse_of_full_shift() {
        let z = CanonicalSubmonoid::integers();
        let g = invert(&build_line_map(&z, 3)).unwrap();
        for (c, pieces) in g.columns() {
            assert_eq!(pieces, &[Piece::new(Interval::half_open(0, 2), c - 1, 0)]);
        }
        assert_eq!(g.domain_columns().collect::<Vec<_>>(), vec![-2, -1, 0, 1, 2, 3]);
    }

    #[test]
    fn folding_map_is_not_invertible() {
        let fold = PiecewiseMap::from_pieces([
            (0, Piece::new(Interval::half_open(0, 1), 1, 0)),
            (0, Piece::new(Interval::half_open(1, 2), 1, -1)),
        ])
        .unwrap();
        assert_eq!(invert(&fold), Err(MapError::NotInvertible { column: 1 }));
    }

    #[test]
    fn overlapping_sources_rejected() {
        let r = PiecewiseMap::from_pieces([
            (0, Piece::new(Interval::half_open(0, 2), 1, 0)),
            (0, Piece::new(Interval::half_open(1, 3), 1, 0)),
        ]);
        assert_eq!(r, Err(MapError::OverlappingPieces { column: 0 }));
    }

    #[test]
    fn abutting_pieces_merge() {
        let m = PiecewiseMap::from_pieces([
            (0, Piece::new(Interval::open(0, 1), 2, 0)),
            (0, Piece::new(Interval::point(Q::int(0)), 2, 0)),
            (0, Piece::new(Interval::point(Q::int(1)), 2, 0)),
        ])
        .unwrap();
        assert_eq!(m.pieces(0), &[Piece::new(Interval::closed(0, 1), 2, 0)]);
    }

    #[test]
    fn exhausted_window() {
        let (_, f) = example();
        assert_eq!(power(&f, 17), Err(MapError::WindowExhausted));
        assert!(power(&f, 16).is_ok());
    }

    #[test]
    fn endpoint_flip_is_discontinuous() {
        let x = ColumnSpace::new(
            [0, 1].map(|c| (c, IntervalUnion::single(Interval::closed(0, 1)))),
            None,
        );
        let flip = PiecewiseMap::from_pieces([
            (0, Piece::new(Interval::point(Q::int(0)), 1, 1)),
            (0, Piece::new(Interval::open(0, 1), 1, 0)),
            (0, Piece::new(Interval::point(Q::int(1)), 1, -1)),
            (1, Piece::new(Interval::closed(0, 1), 0, 0)),
        ])
        .unwrap();
        let r = is_continuous(&flip, &x);
        assert!(!r.continuous);
        assert_eq!(r.points(), vec![(0, Q::int(0)), (0, Q::int(1))]);
        let w = &r.witnesses[0];
        assert_eq!((w.side, w.value, w.limit), (Side::Right, (1, Q::int(1)), (1, Q::int(0))));
        assert!(is_bijection(&flip, &x));
    }

    #[test]
    fn json_uses_integer_pairs() {
        let m = PiecewiseMap::from_pieces([(3, Piece::new(Interval::half_open(1, 2), 4, 1))]).unwrap();
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"columns": [{"index": 3, "pieces": [{
                "source": {"lo": [1, 1], "hi": [2, 1], "lo_closed": true, "hi_closed": false},
                "target": 4, "offset": [1, 1]}]}]})
        );
        let back: PiecewiseMap = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);
    }
}
