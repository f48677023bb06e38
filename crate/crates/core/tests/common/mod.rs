//! Oracles shared by the integration tests. They use only point evaluation
//! and raw enumeration, never the symbolic routines they check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use contspec_core::piecewise::{ColumnIndex, ColumnSpace, PiecewiseMap, Q};

const DEPTH: u32 = 20;

/// Probe `f` at `p ± 2^-k`, `k = 1..=20`, and decide whether the values
/// converge to `f(p)` from every side the column reaches `p` from.
pub fn sequential_limit_continuous_at(
    f: &PiecewiseMap,
    space: &ColumnSpace,
    column: ColumnIndex,
    p: Q,
) -> bool {
    let Some(value) = f.eval(column, p) else {
        return true;
    };
    for sign in [-1i64, 1] {
        let probes: Vec<(u32, Q)> = (1..=DEPTH)
            .map(|k| (k, p + Q::new(sign, 1 << k)))
            .filter(|&(_, x)| space.contains(column, x))
            .collect();
        // side not approachable unless the deepest probe stays in the column
        if probes.last().map(|&(k, _)| k) != Some(DEPTH) {
            continue;
        }
        for &(k, x) in probes.iter().filter(|(k, _)| *k > DEPTH - 6) {
            let Some((c, y)) = f.eval(column, x) else {
                return false;
            };
            if c != value.0 || (y - value.1).abs() > Q::new(1, 1 << (k - 1)) {
                return false;
            }
        }
    }
    true
}

/// Every piece endpoint lying in the space.
pub fn boundary_points(f: &PiecewiseMap, space: &ColumnSpace) -> Vec<(ColumnIndex, Q)> {
    let mut out = BTreeSet::new();
    for (c, pieces) in f.columns() {
        for piece in pieces {
            for x in [piece.source.lo, piece.source.hi] {
                if space.contains(c, x) {
                    out.insert((c, x));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Points where the oracle and the symbolic decision disagree.
pub fn oracle_disagreements(f: &PiecewiseMap, space: &ColumnSpace) -> Vec<(ColumnIndex, Q)> {
    let symbolic: BTreeSet<(ColumnIndex, Q)> = contspec_core::piecewise::is_continuous(f, space)
        .points()
        .into_iter()
        .collect();
    boundary_points(f, space)
        .into_iter()
        .filter(|&(c, p)| sequential_limit_continuous_at(f, space, c, p) == symbolic.contains(&(c, p)))
        .collect()
}

/// Number of labeled topologies on `n` points, counted through the
/// correspondence with preorders (reflexive transitive relations).
pub fn preorder_count(n: usize) -> usize {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut count = 0;
    for mask in (0u64..1 << off.len()).rev() {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (b, &(i, j)) in off.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel[i][j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !rel[i][j] || (0..n).all(|k| !rel[j][k] || rel[i][k]))
        });
        if transitive {
            count += 1;
        }
    }
    count
}

/// Topologies counted by scanning candidate families from the largest mask
/// down, with the axioms checked directly on bit masks.
pub fn descending_topology_count(n: usize) -> usize {
    let all = (1u32 << n) - 1;
    let slots = (1usize << n) - 2;
    let mut count = 0;
    for choice in (0u64..1 << slots).rev() {
        let mut family: u64 = 1 | 1 << all;
        for s in 0..slots {
            if choice >> s & 1 == 1 {
                family |= 1 << (s + 1);
            }
        }
        let has = |u: u32| family >> u & 1 == 1;
        let ok = (0..=all).filter(|&u| has(u)).all(|a| {
            (0..=all).filter(|&v| has(v)).all(|b| has(a | b) && has(a & b))
        });
        if ok {
            count += 1;
        }
    }
    count
}
