//! Topologies on small finite sets.
//!
//! Points are `0..n`; a subset is a bit mask with bit `i` set for point `i`.
//! Enumeration is exhaustive over all families of subsets, so it is capped at
//! four points.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// Largest point count for exhaustive enumeration (`2^14` candidate families).
pub const MAX_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("n = {n} exceeds exhaustive cap of {MAX_POINTS} points")]
    TooManyPoints { n: usize },
    #[error("need at least one point")]
    NoPoints,
    #[error("family is not a topology on {n} points")]
    NotATopology { n: usize },
}

fn full(n: usize) -> u32 {
    (1u32 << n) - 1
}

/// Axioms for a topology on `{0..n}`: contains `∅` and the whole set, every
/// member is a subset of it, closed under pairwise union and intersection.
pub fn is_topology(family: &[u32], n: usize) -> bool {
    let all = full(n);
    if !family.contains(&0) || !family.contains(&all) {
        return false;
    }
    if family.iter().any(|&u| u & !all != 0) {
        return false;
    }
    family.iter().tuple_combinations().all(|(&a, &b)| {
        family.contains(&(a | b)) && family.contains(&(a & b))
    })
}

/// A topology, stored as its sorted list of open sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<u32>,
}

impl FiniteTopology {
    pub fn new(n: usize, mut opens: Vec<u32>) -> Result<Self, TopologyError> {
        opens.sort_unstable();
        opens.dedup();
        if !is_topology(&opens, n) {
            return Err(TopologyError::NotATopology { n });
        }
        Ok(FiniteTopology { n, opens })
    }

    pub fn discrete(n: usize) -> Self {
        FiniteTopology {
            n,
            opens: (0..=full(n)).collect(),
        }
    }

    pub fn indiscrete(n: usize) -> Self {
        FiniteTopology {
            n,
            opens: vec![0, full(n)],
        }
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &[u32] {
        &self.opens
    }

    pub fn is_open(&self, set: u32) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    /// Open sets as sorted point lists.
    pub fn open_lists(&self) -> Vec<Vec<usize>> {
        self.opens
            .iter()
            .map(|&u| (0..self.n).filter(|i| u >> i & 1 == 1).collect())
            .collect()
    }

    /// Image of the topology under the relabeling `i ↦ perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteTopology {
        let mut opens: Vec<u32> = self.opens.iter().map(|&u| relabel_set(u, perm)).collect();
        opens.sort_unstable();
        FiniteTopology { n: self.n, opens }
    }
}

impl fmt::Display for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |u: u32| -> String {
            if u == 0 {
                return "∅".into();
            }
            let pts: String = (0..self.n)
                .filter(|i| u >> i & 1 == 1)
                .map(|i| (b'a' + i as u8) as char)
                .join(",");
            format!("{{{pts}}}")
        };
        write!(f, "{{{}}}", self.opens.iter().map(|&u| names(u)).join(", "))
    }
}

fn relabel_set(set: u32, perm: &[usize]) -> u32 {
    perm.iter()
        .enumerate()
        .filter(|(i, _)| set >> i & 1 == 1)
        .fold(0, |acc, (_, &j)| acc | 1 << j)
}

fn check_points(n: usize) -> Result<(), TopologyError> {
    match n {
        0 => Err(TopologyError::NoPoints),
        n if n > MAX_POINTS => Err(TopologyError::TooManyPoints { n }),
        _ => Ok(()),
    }
}

/// Every topology on `n` labeled points.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FiniteTopology>, TopologyError> {
    check_points(n)?;
    let all = full(n);
    let proper: Vec<u32> = (1..all).collect();
    let mut out = Vec::new();
    for choice in 0u32..(1 << proper.len()) {
        let mut family = vec![0, all];
        family.extend(
            proper
                .iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, &u)| u),
        );
        if is_topology(&family, n) {
            family.sort_unstable();
            out.push(FiniteTopology { n, opens: family });
        }
    }
    Ok(out)
}

/// Lexicographically least relabeling; equal iff homeomorphic.
pub fn canonicalize_topology(t: &FiniteTopology) -> FiniteTopology {
    (0..t.n)
        .permutations(t.n)
        .map(|perm| t.relabel(&perm))
        .min_by(|a, b| a.opens.cmp(&b.opens))
        .expect("at least the identity relabeling")
}

/// A self-map of `{0..n}` as a lookup table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PointMap {
    pub table: Vec<usize>,
}

impl PointMap {
    pub fn new(table: Vec<usize>) -> Self {
        PointMap { table }
    }

    pub fn identity(n: usize) -> Self {
        PointMap {
            table: (0..n).collect(),
        }
    }

    /// Swap two points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut table: Vec<usize> = (0..n).collect();
        table.swap(a, b);
        PointMap { table }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ other`
    pub fn after(&self, other: &PointMap) -> PointMap {
        PointMap {
            table: other.table.iter().map(|&x| self.table[x]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        for &x in &self.table {
            if x >= seen.len() || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        true
    }

    pub fn preimage(&self, set: u32) -> u32 {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &y)| set >> y & 1 == 1)
            .fold(0, |acc, (x, _)| acc | 1 << x)
    }

    /// Order in the symmetric group; `None` for non-bijections.
    pub fn order(&self) -> Option<usize> {
        if !self.is_bijective() {
            return None;
        }
        let id = PointMap::identity(self.table.len());
        let mut k = 1;
        let mut p = self.clone();
        while p != id {
            p = self.after(&p);
            k += 1;
        }
        Some(k)
    }
}

/// All `n!` bijections of `{0..n}`.
pub fn all_bijections(n: usize) -> Vec<PointMap> {
    (0..n).permutations(n).map(PointMap::new).collect()
}

/// Preimage of every open set is open.
pub fn is_continuous_map(m: &PointMap, t: &FiniteTopology) -> bool {
    t.opens.iter().all(|&u| t.is_open(m.preimage(u)))
}

/// The group of continuous bijections of `t`.
pub fn continuous_bijection_monoid(t: &FiniteTopology) -> Vec<PointMap> {
    all_bijections(t.n)
        .into_iter()
        .filter(|m| is_continuous_map(m, t))
        .collect()
}

/// Isomorphism type of a group of order at most 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupType {
    #[serde(rename = "1")]
    Trivial,
    C2,
    C3,
    C4,
    #[serde(rename = "C2xC2")]
    KleinFour,
    C5,
    C6,
    S3,
}

impl GroupType {
    /// Classify from the multiset of element orders. Groups of order ≤ 6 are
    /// determined by it.
    pub fn from_element_orders(orders: &[usize]) -> Option<GroupType> {
        let max = orders.iter().copied().max()?;
        Some(match (orders.len(), max) {
            (1, 1) => GroupType::Trivial,
            (2, 2) => GroupType::C2,
            (3, 3) => GroupType::C3,
            (4, 4) => GroupType::C4,
            (4, 2) => GroupType::KleinFour,
            (5, 5) => GroupType::C5,
            (6, 6) => GroupType::C6,
            (6, 3) => GroupType::S3,
            _ => return None,
        })
    }

    pub fn of_permutations(group: &[PointMap]) -> Option<GroupType> {
        let orders: Option<Vec<usize>> = group.iter().map(PointMap::order).collect();
        GroupType::from_element_orders(&orders?)
    }

    pub fn order(self) -> usize {
        match self {
            GroupType::Trivial => 1,
            GroupType::C2 => 2,
            GroupType::C3 => 3,
            GroupType::C4 | GroupType::KleinFour => 4,
            GroupType::C5 => 5,
            GroupType::C6 | GroupType::S3 => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupType::Trivial => "1",
            GroupType::C2 => "C2",
            GroupType::C3 => "C3",
            GroupType::C4 => "C4",
            GroupType::KleinFour => "C2xC2",
            GroupType::C5 => "C5",
            GroupType::C6 => "C6",
            GroupType::S3 => "S3",
        }
    }
}

impl std::str::FromStr for GroupType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "1" | "TRIVIAL" | "C1" => GroupType::Trivial,
            "C2" => GroupType::C2,
            "C3" => GroupType::C3,
            "C4" => GroupType::C4,
            "C2XC2" | "V4" | "KLEIN" => GroupType::KleinFour,
            "C5" => GroupType::C5,
            "C6" => GroupType::C6,
            "S3" => GroupType::S3,
            other => return Err(format!("unknown group type {other:?}")),
        })
    }
}

/// One homeomorphism class of topologies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologyClass {
    pub class_id: usize,
    #[serde(skip)]
    pub topology: FiniteTopology,
    pub opens: Vec<Vec<usize>>,
    /// Number of labeled topologies in the class.
    pub orbit_size: usize,
    pub group_order: usize,
    /// `None` when the group is too large to classify by element orders.
    pub group_type: Option<GroupType>,
}

/// Homeomorphism classes on `n` points with their groups of continuous
/// bijections, ordered by number of open sets then canonical form.
pub fn classify_topologies(n: usize) -> Result<Vec<TopologyClass>, TopologyError> {
    let mut orbits: BTreeMap<(usize, Vec<u32>), (FiniteTopology, usize)> = BTreeMap::new();
    for t in enumerate_topologies(n)? {
        let c = canonicalize_topology(&t);
        orbits
            .entry((c.opens.len(), c.opens.clone()))
            .or_insert((c, 0))
            .1 += 1;
    }
    Ok(orbits
        .into_values()
        .enumerate()
        .map(|(i, (topology, orbit_size))| {
            let group = continuous_bijection_monoid(&topology);
            TopologyClass {
                class_id: i + 1,
                opens: topology.open_lists(),
                orbit_size,
                group_order: group.len(),
                group_type: GroupType::of_permutations(&group),
                topology,
            }
        })
        .collect())
}

/// The three-point classification table.
pub fn remark2_table() -> Vec<TopologyClass> {
    classify_topologies(3).expect("3 is within the cap")
}

/// First class (in table order) whose continuous-bijection group has the
/// requested type.
pub fn search_symmetric_realization(
    n: usize,
    target: GroupType,
) -> Result<Option<FiniteTopology>, TopologyError> {
    Ok(classify_topologies(n)?
        .into_iter()
        .find(|c| c.group_type == Some(target))
        .map(|c| c.topology))
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: u32 = 1;
    const B: u32 = 2;
    const C: u32 = 4;
    const X: u32 = 7;

    fn top(opens: &[u32]) -> FiniteTopology {
        FiniteTopology::new(3, opens.to_vec()).unwrap()
    }

    #[test]
    fn axioms() {
        assert!(is_topology(&[0, X], 3));
        assert!(!is_topology(&[0, A, B, X], 3));
        assert!(is_topology(&(0..=X).collect::<Vec<_>>(), 3));
        assert!(!is_topology(&[A, X], 3));
        assert!(!is_topology(&[0, 8, X], 3));
    }

    #[test]
    fn labeled_counts() {
        assert_eq!(enumerate_topologies(1).unwrap().len(), 1);
        assert_eq!(enumerate_topologies(2).unwrap().len(), 4);
        assert_eq!(enumerate_topologies(3).unwrap().len(), 29);
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(enumerate_topologies(5), Err(TopologyError::TooManyPoints { n: 5 }));
        assert_eq!(enumerate_topologies(0), Err(TopologyError::NoPoints));
    }

    #[test]
    fn relabeled_topologies_share_canonical_form() {
        assert_eq!(
            canonicalize_topology(&top(&[0, B, X])),
            canonicalize_topology(&top(&[0, A, X]))
        );
        assert_ne!(
            canonicalize_topology(&top(&[0, A, X])),
            canonicalize_topology(&top(&[0, A | B, X]))
        );
    }

    #[test]
    fn point_map_continuity() {
        let d2 = top(&[0, A, X]);
        assert!(is_continuous_map(&PointMap::identity(3), &d2));
        assert!(is_continuous_map(&PointMap::transposition(3, 1, 2), &d2));
        assert!(!is_continuous_map(&PointMap::transposition(3, 0, 1), &d2));
    }

    #[test]
    fn groups_of_named_topologies() {
        assert_eq!(continuous_bijection_monoid(&FiniteTopology::indiscrete(3)).len(), 6);
        assert_eq!(continuous_bijection_monoid(&top(&[0, A, A | B, X])).len(), 1);
        let d5 = continuous_bijection_monoid(&top(&[0, A, B | C, X]));
        assert_eq!(GroupType::of_permutations(&d5), Some(GroupType::C2));
    }

    #[test]
    fn table_orders() {
        let table = remark2_table();
        assert_eq!(table.len(), 9);
        let mut orders: Vec<usize> = table.iter().map(|c| c.group_order).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 1, 2, 2, 2, 2, 2, 6, 6]);
        assert!(table.iter().all(|c| c.group_type != Some(GroupType::C3)));
        assert_eq!(table.iter().map(|c| c.orbit_size).sum::<usize>(), 29);
        let discrete = table.iter().find(|c| c.opens.len() == 8).unwrap();
        let group = continuous_bijection_monoid(&discrete.topology);
        assert!(group.iter().any(|m| m.order() == Some(3)));
    }

    #[test]
    fn searches() {
        assert_eq!(search_symmetric_realization(3, GroupType::C3).unwrap(), None);
        let trivial = search_symmetric_realization(3, GroupType::Trivial).unwrap().unwrap();
        assert_eq!(trivial.opens().len(), 4);
        assert_eq!(
            canonicalize_topology(&trivial),
            canonicalize_topology(&top(&[0, A, A | B, X]))
        );
        let full = search_symmetric_realization(3, GroupType::S3).unwrap().unwrap();
        assert_eq!(full, FiniteTopology::indiscrete(3));
    }

    #[test]
    fn element_order_classification() {
        assert_eq!(GroupType::from_element_orders(&[1, 2, 2, 2]), Some(GroupType::KleinFour));
        assert_eq!(GroupType::from_element_orders(&[1, 2, 4, 4]), Some(GroupType::C4));
        assert_eq!(GroupType::from_element_orders(&[1, 2, 2, 2, 3, 3]), Some(GroupType::S3));
        assert_eq!(GroupType::of_permutations(&all_bijections(4)), None);
    }

    #[test]
    fn display_uses_letters() {
        assert_eq!(top(&[0, A, B | C, X]).to_string(), "{∅, {a}, {b,c}, {a,b,c}}");
    }
}
