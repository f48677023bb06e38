//! Realizing a pair (monoid, submonoid) by maps on a column space indexed by
//! the elements of a finite Cayley table.
//!
//! The open construction gives column `m` the shape `[0, 2)` when `m ∈ S` and
//! `[0, 1) ∪ [2, 3)` otherwise, and lets `f_n` carry column `m` onto column
//! `mn` by the same four transfer cases as the line construction. The compact
//! construction uses closed columns `[0, 1]` plus an isolated point `∞`, and
//! `f_n` swaps the two endpoints whenever membership of `m` and `mn` in `H`
//! differs.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::piecewise::line::{column_shape, TransferCase};
use crate::piecewise::{
    compose, invert, is_bijection, is_continuous, ColumnIndex, ColumnSpace, Interval,
    IntervalUnion, Piece, PiecewiseMap, Q,
};

/// Element of a Cayley table: its row/column index.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("identity law fails at x = {x}")]
    Identity { x: Element },
    #[error("associativity fails at ({a}, {b}, {c})")]
    Associativity { a: Element, b: Element, c: Element },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizationError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("table is a monoid but not a group")]
    NotAGroup,
    #[error("subset is not a submonoid: {0}")]
    NotSubmonoid(String),
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Structure {
    Monoid,
    Group,
}

/// Multiplication table of a finite monoid with a designated identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTable {
    pub size: usize,
    pub identity: Element,
    pub op: Vec<Vec<Element>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl CayleyTable {
    pub fn new(identity: Element, op: Vec<Vec<Element>>) -> Self {
        CayleyTable {
            size: op.len(),
            identity,
            op,
            names: None,
        }
    }

    pub fn with_names(mut self, names: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.names = Some(names.into_iter().map(Into::into).collect());
        self
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.op[a][b]
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    pub fn name(&self, x: Element) -> String {
        self.names
            .as_ref()
            .and_then(|n| n.get(x).cloned())
            .unwrap_or_else(|| x.to_string())
    }

    /// Look an element up by name, falling back to a numeric id.
    pub fn element(&self, name: &str) -> Option<Element> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == name) {
                return Some(i);
            }
        }
        name.parse().ok().filter(|&i| i < self.size)
    }

    pub fn inverse(&self, a: Element) -> Option<Element> {
        self.elements()
            .find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    /// Exhaustive law check.
    pub fn validate(&self) -> Result<Structure, TableError> {
        let n = self.size;
        if n == 0 || self.op.len() != n || self.op.iter().any(|row| row.len() != n) {
            return Err(TableError::Shape(format!("op must be {n}×{n} with size ≥ 1")));
        }
        if self.identity >= n || self.op.iter().flatten().any(|&x| x >= n) {
            return Err(TableError::Shape("element id out of range".into()));
        }
        if let Some(names) = &self.names {
            if names.len() != n || names.iter().duplicates().next().is_some() {
                return Err(TableError::Shape("names must be {size} distinct strings".into()));
            }
        }
        let e = self.identity;
        if let Some(x) = self.elements().find(|&x| self.mul(e, x) != x || self.mul(x, e) != x) {
            return Err(TableError::Identity { x });
        }
        for (a, b, c) in itertools::iproduct!(0..n, 0..n, 0..n) {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(TableError::Associativity { a, b, c });
            }
        }
        if self.elements().all(|a| self.inverse(a).is_some()) {
            Ok(Structure::Group)
        } else {
            Ok(Structure::Monoid)
        }
    }

    /// Additive group Z/n, elements named by residue.
    pub fn cyclic(n: usize) -> Self {
        let op = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        CayleyTable::new(0, op).with_names((0..n).map(|i| i.to_string()))
    }

    /// Closure table of a list of permutations (first entry the identity),
    /// with `a·b` meaning "apply `a`, then `b`".
    pub fn from_permutations(names: &[&str], perms: &[Vec<usize>]) -> Self {
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed set");
        let op = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&a.iter().map(|&x| b[x]).collect()))
                    .collect()
            })
            .collect();
        CayleyTable::new(0, op).with_names(names.iter().copied())
    }

    /// Symmetric group on three letters: identity, two rotations, three
    /// transpositions.
    pub fn symmetric3() -> Self {
        CayleyTable::from_permutations(
            &["e", "r1", "r2", "s1", "s2", "s3"],
            &[
                vec![0, 1, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![0, 2, 1],
                vec![2, 1, 0],
                vec![1, 0, 2],
            ],
        )
    }

    /// Symmetries of a square (order 8) acting on its corners.
    pub fn dihedral4() -> Self {
        let rot = |k: usize| (0..4).map(|i| (i + k) % 4).collect::<Vec<_>>();
        let refl = |k: usize| (0..4).map(|i| (k + 4 - i) % 4).collect::<Vec<_>>();
        let perms: Vec<Vec<usize>> = (0..4).map(rot).chain((0..4).map(refl)).collect();
        CayleyTable::from_permutations(
            &["e", "r1", "r2", "r3", "s0", "s1", "s2", "s3"],
            &perms,
        )
    }

    /// `{e, z}` with `z·z = z`.
    pub fn absorbing_pair() -> Self {
        CayleyTable::new(0, vec![vec![0, 1], vec![1, 1]]).with_names(["e", "z"])
    }

    /// `{0, 1}` under multiplication; identity `1`.
    pub fn multiplicative_pair() -> Self {
        CayleyTable::new(1, vec![vec![0, 0], vec![0, 1]]).with_names(["0", "1"])
    }

    /// Built-in tables: `z1`..`z8`, `s3`, `d4`, `m2` (absorbing pair),
    /// `mul2` (multiplicative pair).
    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "s3" => Some(Self::symmetric3()),
            "d4" => Some(Self::dihedral4()),
            "m2" => Some(Self::absorbing_pair()),
            "mul2" => Some(Self::multiplicative_pair()),
            other => {
                let n: usize = other.strip_prefix('z')?.parse().ok()?;
                (1..=8).contains(&n).then(|| Self::cyclic(n))
            }
        }
    }
}

/// A subset of the elements of a table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    members: Vec<bool>,
}

impl Subset {
    pub fn from_elements(size: usize, elements: impl IntoIterator<Item = Element>) -> Self {
        let mut members = vec![false; size];
        for x in elements {
            members[x] = true;
        }
        Subset { members }
    }

    pub fn full(size: usize) -> Self {
        Subset {
            members: vec![true; size],
        }
    }

    /// Parse a comma-separated list of element names or ids.
    pub fn parse(table: &CayleyTable, list: &str) -> Result<Self, RealizationError> {
        let ids = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| table.element(s).ok_or_else(|| RealizationError::UnknownElement(s.into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subset::from_elements(table.size, ids))
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members[x]
    }

    pub fn elements(&self) -> Vec<Element> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self, table: &CayleyTable) -> Vec<String> {
        self.elements().into_iter().map(|x| table.name(x)).collect()
    }

    /// Contains the identity and is closed under the operation.
    pub fn check_submonoid(&self, table: &CayleyTable) -> Result<(), RealizationError> {
        if self.members.len() != table.size {
            return Err(RealizationError::NotSubmonoid("size mismatch".into()));
        }
        if !self.contains(table.identity) {
            return Err(RealizationError::NotSubmonoid("identity missing".into()));
        }
        let els = self.elements();
        for (&a, &b) in els.iter().cartesian_product(&els) {
            if !self.contains(table.mul(a, b)) {
                return Err(RealizationError::NotSubmonoid(format!(
                    "{}·{} = {} is outside",
                    table.name(a),
                    table.name(b),
                    table.name(table.mul(a, b))
                )));
            }
        }
        Ok(())
    }

    pub fn is_submonoid(&self, table: &CayleyTable) -> bool {
        self.check_submonoid(table).is_ok()
    }

    pub fn is_inverse_closed(&self, table: &CayleyTable) -> bool {
        self.elements()
            .into_iter()
            .all(|a| table.inverse(a).is_some_and(|b| self.contains(b)))
    }

    pub fn check_subgroup(&self, table: &CayleyTable) -> Result<(), RealizationError> {
        self.check_submonoid(table)
            .map_err(|e| RealizationError::NotSubgroup(e.to_string()))?;
        if !self.is_inverse_closed(table) {
            return Err(RealizationError::NotSubgroup("not closed under inverses".into()));
        }
        Ok(())
    }
}

/// Every submonoid of `table`, by exhaustive subset search.
pub fn submonoids(table: &CayleyTable) -> Vec<Subset> {
    (0u64..1 << table.size)
        .map(|mask| Subset::from_elements(table.size, (0..table.size).filter(|i| mask >> i & 1 == 1)))
        .filter(|s| s.is_submonoid(table))
        .collect()
}

/// `f_n` for each element `n`, indexed by element id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFamily {
    pub maps: Vec<PiecewiseMap>,
}

impl MapFamily {
    pub fn get(&self, n: Element) -> &PiecewiseMap {
        &self.maps[n]
    }

    /// `n ↦ f_n` is injective.
    pub fn is_injective(&self) -> bool {
        self.maps.iter().tuple_combinations().all(|(a, b)| a != b)
    }

    /// Multiplication table of the maps themselves, `φ·ψ = ψ ∘ φ`, when the
    /// family is closed under composition.
    pub fn realized_table(&self, identity: Element) -> Option<CayleyTable> {
        let op = self
            .maps
            .iter()
            .map(|phi| {
                self.maps
                    .iter()
                    .map(|psi| {
                        let prod = compose(psi, phi).ok()?;
                        self.maps.iter().position(|m| *m == prod)
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(CayleyTable::new(identity, op))
    }
}

/// A built realization: the space and one map per element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub space: ColumnSpace,
    pub family: MapFamily,
}

impl Realization {
    /// Elements whose map is continuous.
    pub fn spectrum(&self) -> Subset {
        spectrum_of_family(&self.family, &self.space)
    }

    /// Elements whose map is a bijection of the space.
    pub fn bijective(&self) -> Subset {
        Subset::from_elements(
            self.family.maps.len(),
            (0..self.family.maps.len()).filter(|&n| is_bijection(&self.family.maps[n], &self.space)),
        )
    }
}

fn element_column(x: Element) -> ColumnIndex {
    x as ColumnIndex
}

fn open_construction(table: &CayleyTable, s: &Subset) -> Realization {
    let space = ColumnSpace::new(
        table
            .elements()
            .map(|m| (element_column(m), column_shape(s.contains(m)))),
        None,
    );
    let maps = table
        .elements()
        .map(|n| {
            PiecewiseMap::from_pieces(table.elements().flat_map(|m| {
                let mn = table.mul(m, n);
                TransferCase::of(s.contains(m), s.contains(mn))
                    .pieces(element_column(mn))
                    .into_iter()
                    .map(move |p| (element_column(m), p))
            }))
            .expect("transfer pieces are disjoint")
        })
        .collect();
    Realization {
        space,
        family: MapFamily { maps },
    }
}

/// Realize a submonoid `s` of a finite group by bijections.
pub fn build_group_realization(
    group: &CayleyTable,
    s: &Subset,
) -> Result<Realization, RealizationError> {
    if group.validate()? != Structure::Group {
        return Err(RealizationError::NotAGroup);
    }
    s.check_submonoid(group)?;
    Ok(open_construction(group, s))
}

/// Same construction over a monoid; the maps need not be bijective.
pub fn build_monoid_realization(
    monoid: &CayleyTable,
    s: &Subset,
) -> Result<Realization, RealizationError> {
    monoid.validate()?;
    s.check_submonoid(monoid)?;
    Ok(open_construction(monoid, s))
}

/// Column holding the point at infinity in a compact realization.
pub fn infinity_column(group: &CayleyTable) -> ColumnIndex {
    group.size as ColumnIndex
}

/// Realize a subgroup `h` on the one-point compactification of `G × [0, 1]`.
/// With `G` finite the added point is isolated.
pub fn build_compact_realization(
    group: &CayleyTable,
    h: &Subset,
) -> Result<Realization, RealizationError> {
    if group.validate()? != Structure::Group {
        return Err(RealizationError::NotAGroup);
    }
    h.check_subgroup(group)?;
    let inf = infinity_column(group);
    let zero = Q::zero();
    let space = ColumnSpace::new(
        group
            .elements()
            .map(|m| (element_column(m), IntervalUnion::single(Interval::closed(0, 1))))
            .chain([(inf, IntervalUnion::single(Interval::point(zero)))]),
        None,
    );
    let maps = group
        .elements()
        .map(|n| {
            let columns = group.elements().flat_map(|m| {
                let mn = group.mul(m, n);
                let flip = h.contains(m) != h.contains(mn);
                let (lo_shift, hi_shift) = if flip { (1, -1) } else { (0, 0) };
                let (src, dst) = (element_column(m), element_column(mn));
                [
                    (src, Piece::new(Interval::point(Q::int(0)), dst, lo_shift)),
                    (src, Piece::new(Interval::open(0, 1), dst, 0)),
                    (src, Piece::new(Interval::point(Q::int(1)), dst, hi_shift)),
                ]
            });
            PiecewiseMap::from_pieces(
                columns.chain([(inf, Piece::new(Interval::point(zero), inf, 0))]),
            )
            .expect("endpoint pieces are disjoint")
        })
        .collect();
    Ok(Realization {
        space,
        family: MapFamily { maps },
    })
}

/// `f_n ∘ f_m = f_{mn}` for every pair.
pub fn verify_composition_law(family: &MapFamily, table: &CayleyTable) -> bool {
    itertools::iproduct!(table.elements(), table.elements()).all(|(m, n)| {
        compose(family.get(n), family.get(m)).is_ok_and(|c| &c == family.get(table.mul(m, n)))
    })
}

/// Elements whose map is continuous on `space`.
pub fn spectrum_of_family(family: &MapFamily, space: &ColumnSpace) -> Subset {
    Subset::from_elements(
        family.maps.len(),
        family
            .maps
            .iter()
            .enumerate()
            .filter(|(_, f)| is_continuous(f, space).continuous)
            .map(|(n, _)| n),
    )
}

/// Continuous maps of a compact realization have continuous inverses, and
/// the inverse of `f_n` is `f_{n⁻¹}`.
pub fn inverses_are_continuous(realization: &Realization, group: &CayleyTable) -> bool {
    let spectrum = realization.spectrum();
    spectrum.elements().into_iter().all(|n| {
        let Some(inv) = group.inverse(n) else {
            return false;
        };
        let f_inv = realization.family.get(inv);
        invert(realization.family.get(n)).is_ok_and(|g| &g == f_inv)
            && is_continuous(f_inv, &realization.space).continuous
    })
}

/// Search for an isomorphism of pairs `(G, S) → (H, T)`: a bijection of
/// elements respecting the operation, the identity and the subsets.
pub fn pair_isomorphism(
    g: &CayleyTable,
    s: &Subset,
    h: &CayleyTable,
    t: &Subset,
) -> Option<Vec<Element>> {
    if g.size != h.size || s.len() != t.len() {
        return None;
    }
    fn extend(
        g: &CayleyTable,
        s: &Subset,
        h: &CayleyTable,
        t: &Subset,
        phi: &mut Vec<Element>,
        used: &mut Vec<bool>,
    ) -> bool {
        let a = phi.len();
        if a == g.size {
            return itertools::iproduct!(g.elements(), g.elements())
                .all(|(x, y)| phi[g.mul(x, y)] == h.mul(phi[x], phi[y]));
        }
        for b in h.elements() {
            if used[b] || s.contains(a) != t.contains(b) {
                continue;
            }
            if (a == g.identity) != (b == h.identity) {
                continue;
            }
            // partial homomorphism check on already-assigned elements
            let consistent = (0..=a).all(|x| {
                (0..=a).all(|y| {
                    let img = |z: Element| if z == a { b } else { phi[z] };
                    let prod = g.mul(x, y);
                    prod > a || img(prod) == h.mul(img(x), img(y))
                })
            });
            if !consistent {
                continue;
            }
            phi.push(b);
            used[b] = true;
            if extend(g, s, h, t, phi, used) {
                return true;
            }
            phi.pop();
            used[b] = false;
        }
        false
    }
    let mut phi = Vec::with_capacity(g.size);
    let mut used = vec![false; h.size];
    extend(g, s, h, t, &mut phi, &mut used).then_some(phi)
}
