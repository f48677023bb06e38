//! Finitely generated submonoids of the integers.
//!
//! A generator set is classified into one of four shapes:
//!
//! * `Zero`, the trivial submonoid `{0}`;
//! * `Group(d)`, the subgroup `dZ`, whenever generators of both signs occur;
//! * `Positive(d, gaps, conductor)`, a scaled numerical semigroup
//!   `{0} ∪ {d·k : k ≥ 1, k ∉ gaps}`;
//! * `Negative(...)`, the mirror image of `Positive`.
//!
//! Gaps and the conductor are stored in quotient units (multiples of `d`).

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// An unordered, finite list of generators. Zeros and duplicates are allowed
/// and carry no meaning.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<i64>,
}

impl GeneratorSet {
    pub fn new(generators: impl IntoIterator<Item = i64>) -> Self {
        Self {
            generators: generators.into_iter().collect(),
        }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.generators
    }

    /// Nonzero generators, sorted and deduplicated.
    pub fn nonzero(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.generators.iter().copied().filter(|&g| g != 0).collect();
        set.into_iter().collect()
    }
}

impl FromIterator<i64> for GeneratorSet {
    fn from_iter<T: IntoIterator<Item = i64>>(iter: T) -> Self {
        Self::new(iter)
    }
}

impl From<&[i64]> for GeneratorSet {
    fn from(value: &[i64]) -> Self {
        Self::new(value.iter().copied())
    }
}

/// Canonical form of a finitely generated submonoid of Z.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum CanonicalSubmonoid {
    Zero,
    Group {
        d: u64,
    },
    Positive {
        d: u64,
        gaps: Vec<u64>,
        conductor: u64,
    },
    Negative {
        d: u64,
        gaps: Vec<u64>,
        conductor: u64,
    },
}

/// Brute-force closure of `gens` under addition, restricted to `[-bound, bound]`.
///
/// Saturates breadth-first from `{0}` inside the working range
/// `[-(bound + G), bound + G]`, `G = Σ|g|`. That range is enough: any member
/// `x` is a sum of generators, and ordering the summands so that a positive one
/// is added whenever the partial sum is `≤ x` (a negative one otherwise) keeps
/// every partial sum within `[min(0, x) - G, max(0, x) + G]`.
pub fn closure_oracle(gens: &GeneratorSet, bound: u64) -> Vec<i64> {
    let bound = bound as i64;
    let steps = gens.nonzero();
    let reach = bound + steps.iter().map(|g| g.abs()).sum::<i64>();
    let width = (2 * reach + 1) as usize;
    let slot = |v: i64| (v + reach) as usize;

    let mut seen = vec![false; width];
    let mut queue = std::collections::VecDeque::from([0i64]);
    seen[slot(0)] = true;
    while let Some(v) = queue.pop_front() {
        for &g in &steps {
            let w = v + g;
            if w.abs() <= reach && !seen[slot(w)] {
                seen[slot(w)] = true;
                queue.push_back(w);
            }
        }
    }
    (-bound..=bound).filter(|&v| seen[slot(v)]).collect()
}

/// Gap set and conductor of the numerical semigroup generated by `reduced`
/// (positive, overall gcd 1).
///
/// The Frobenius number is below `min · max` of the generators, so a table of
/// that length decides every gap.
fn numerical_semigroup(reduced: &[u64]) -> (Vec<u64>, u64) {
    let lo = *reduced.iter().min().expect("nonempty generators");
    let hi = *reduced.iter().max().expect("nonempty generators");
    let limit = (lo * hi) as usize + 1;
    let mut member = vec![false; limit + 1];
    member[0] = true;
    for k in 1..=limit {
        member[k] = reduced
            .iter()
            .any(|&g| (g as usize) <= k && member[k - g as usize]);
    }
    let gaps: Vec<u64> = (1..=limit as u64).filter(|&k| !member[k as usize]).collect();
    let conductor = gaps.last().map_or(1, |&f| f + 1);
    (gaps, conductor)
}

/// Classify the submonoid generated by `gens`.
pub fn canonicalize(gens: &GeneratorSet) -> CanonicalSubmonoid {
    let nonzero = gens.nonzero();
    if nonzero.is_empty() {
        return CanonicalSubmonoid::Zero;
    }
    let d = nonzero
        .iter()
        .fold(0u64, |acc, &g| acc.gcd(&g.unsigned_abs()));
    let has_pos = nonzero.iter().any(|&g| g > 0);
    let has_neg = nonzero.iter().any(|&g| g < 0);
    if has_pos && has_neg {
        return CanonicalSubmonoid::Group { d };
    }
    let reduced: Vec<u64> = nonzero.iter().map(|g| g.unsigned_abs() / d).collect();
    let (gaps, conductor) = numerical_semigroup(&reduced);
    if has_pos {
        CanonicalSubmonoid::Positive { d, gaps, conductor }
    } else {
        CanonicalSubmonoid::Negative { d, gaps, conductor }
    }
}

impl CanonicalSubmonoid {
    pub fn from_generators(gens: impl IntoIterator<Item = i64>) -> Self {
        canonicalize(&GeneratorSet::new(gens))
    }

    /// All of Z.
    pub fn integers() -> Self {
        CanonicalSubmonoid::Group { d: 1 }
    }

    pub fn contains(&self, n: i64) -> bool {
        if n == 0 {
            return true;
        }
        match self {
            CanonicalSubmonoid::Zero => false,
            CanonicalSubmonoid::Group { d } => n.unsigned_abs().is_multiple_of(*d),
            CanonicalSubmonoid::Positive { d, gaps, conductor } => {
                n > 0 && in_scaled_semigroup(n.unsigned_abs(), *d, gaps, *conductor)
            }
            CanonicalSubmonoid::Negative { d, gaps, conductor } => {
                n < 0 && in_scaled_semigroup(n.unsigned_abs(), *d, gaps, *conductor)
            }
        }
    }

    /// Members in `[-n, n]`, ascending.
    pub fn window(&self, n: u64) -> Vec<i64> {
        let n = n as i64;
        (-n..=n).filter(|&v| self.contains(v)).collect()
    }

    /// `S = -S`; only the trivial submonoid and subgroups qualify.
    pub fn is_negation_closed(&self) -> bool {
        matches!(
            self,
            CanonicalSubmonoid::Zero | CanonicalSubmonoid::Group { .. }
        )
    }

    /// A finite generating set for this submonoid.
    pub fn generators(&self) -> GeneratorSet {
        match self {
            CanonicalSubmonoid::Zero => GeneratorSet::default(),
            CanonicalSubmonoid::Group { d } => GeneratorSet::new([*d as i64, -(*d as i64)]),
            CanonicalSubmonoid::Positive { d, gaps, conductor }
            | CanonicalSubmonoid::Negative { d, gaps, conductor } => {
                let sign = if matches!(self, CanonicalSubmonoid::Positive { .. }) {
                    1
                } else {
                    -1
                };
                // every member up to 2·conductor generates everything beyond it
                (1..=2 * conductor.max(&1))
                    .filter(|k| gaps.binary_search(k).is_err())
                    .map(|k| sign * (k * d) as i64)
                    .collect()
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

fn in_scaled_semigroup(abs: u64, d: u64, gaps: &[u64], conductor: u64) -> bool {
    if !abs.is_multiple_of(d) {
        return false;
    }
    let k = abs / d;
    k >= conductor || gaps.binary_search(&k).is_err()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gens(v: &[i64]) -> GeneratorSet {
        GeneratorSet::from(v)
    }

    #[test]
    fn closure_of_three_five() {
        assert_eq!(
            closure_oracle(&gens(&[3, 5]), 12),
            vec![0, 3, 5, 6, 8, 9, 10, 11, 12]
        );
    }

    #[test]
    fn closure_of_nothing_is_zero() {
        assert_eq!(closure_oracle(&gens(&[]), 5), vec![0]);
        assert_eq!(closure_oracle(&gens(&[0, 0]), 5), vec![0]);
    }

    #[test]
    fn closure_mixed_signs_reaches_everything() {
        assert_eq!(closure_oracle(&gens(&[3, -5]), 10), (-10..=10).collect::<Vec<_>>());
    }

    #[test]
    fn canonical_three_five() {
        assert_eq!(
            canonicalize(&gens(&[3, 5])),
            CanonicalSubmonoid::Positive {
                d: 1,
                gaps: vec![1, 2, 4, 7],
                conductor: 8
            }
        );
    }

    #[test]
    fn canonical_small_cases() {
        assert_eq!(canonicalize(&gens(&[2, -2])), CanonicalSubmonoid::Group { d: 2 });
        assert_eq!(canonicalize(&gens(&[0])), CanonicalSubmonoid::Zero);
        assert_eq!(
            canonicalize(&gens(&[-3])),
            CanonicalSubmonoid::Negative {
                d: 3,
                gaps: vec![],
                conductor: 1
            }
        );
        assert_eq!(
            canonicalize(&gens(&[6, 4, 4, 0])),
            CanonicalSubmonoid::Positive {
                d: 2,
                gaps: vec![1],
                conductor: 2
            }
        );
    }

    #[test]
    fn group_two_matches_oracle() {
        let evens: Vec<i64> = (-20..=20).filter(|v| v % 2 == 0).collect();
        assert_eq!(closure_oracle(&gens(&[2, -2]), 20), evens);
        assert_eq!(canonicalize(&gens(&[2, -2])).window(20), evens);
    }

    #[test]
    fn membership() {
        let s = canonicalize(&gens(&[3, 5]));
        assert!(!s.contains(7));
        assert!(s.contains(9));
        assert!(!s.contains(-3));
        assert!(CanonicalSubmonoid::Zero.contains(0));
        assert!(!CanonicalSubmonoid::Zero.contains(1));
    }

    #[test]
    fn windows() {
        assert_eq!(canonicalize(&gens(&[3, 5])).window(6), vec![0, 3, 5, 6]);
        assert_eq!(CanonicalSubmonoid::Group { d: 2 }.window(3), vec![-2, 0, 2]);
        assert_eq!(canonicalize(&gens(&[2])).window(5), vec![0, 2, 4]);
    }

    #[test]
    fn negation_closure() {
        assert!(CanonicalSubmonoid::Group { d: 2 }.is_negation_closed());
        assert!(CanonicalSubmonoid::Zero.is_negation_closed());
        assert!(!canonicalize(&gens(&[3, 5])).is_negation_closed());
    }

    #[test]
    fn json_shape() {
        let v = canonicalize(&gens(&[3, 5])).to_json();
        assert_eq!(
            v,
            serde_json::json!({"variant": "positive", "d": 1, "gaps": [1, 2, 4, 7], "conductor": 8})
        );
        assert_eq!(
            CanonicalSubmonoid::Zero.to_json(),
            serde_json::json!({"variant": "zero"})
        );
        assert_eq!(
            CanonicalSubmonoid::Group { d: 4 }.to_json(),
            serde_json::json!({"variant": "group", "d": 4})
        );
        let back: CanonicalSubmonoid = serde_json::from_value(v).unwrap();
        assert_eq!(back, canonicalize(&gens(&[3, 5])));
    }

    fn small_gens() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-9i64..=9, 0..5)
    }

    proptest! {
        #[test]
        fn window_agrees_with_oracle(g in small_gens(), bound in 1u64..=50) {
            let g = GeneratorSet::new(g);
            prop_assert_eq!(canonicalize(&g).window(bound), closure_oracle(&g, bound));
        }

        #[test]
        fn closed_under_addition(g in small_gens()) {
            let s = canonicalize(&GeneratorSet::new(g));
            prop_assert!(s.contains(0));
            for a in -25i64..=25 {
                for b in -25i64..=25 {
                    if s.contains(a) && s.contains(b) {
                        prop_assert!(s.contains(a + b), "{} + {}", a, b);
                    }
                }
            }
        }

        #[test]
        fn regeneration_is_idempotent(g in small_gens()) {
            let s = canonicalize(&GeneratorSet::new(g));
            let bound = 200;
            prop_assert_eq!(&canonicalize(&GeneratorSet::new(s.window(bound))), &s);
            prop_assert_eq!(&canonicalize(&s.generators()), &s);
        }
    }
}
