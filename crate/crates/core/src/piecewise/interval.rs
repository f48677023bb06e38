use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number used for every coordinate and offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Ratio<i64>);

impl Q {
    pub fn int(n: i64) -> Self {
        Q(Ratio::from_integer(n))
    }

    pub fn new(num: i64, den: i64) -> Self {
        Q(Ratio::new(num, den))
    }

    pub fn zero() -> Self {
        Q(Ratio::zero())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Q(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl std::ops::Add for Q {
    type Output = Q;
    fn add(self, rhs: Q) -> Q {
        Q(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Q {
    type Output = Q;
    fn sub(self, rhs: Q) -> Q {
        Q(self.0 - rhs.0)
    }
}

impl std::ops::Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q::int(n)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

// Serialized as a reduced `[numerator, denominator]` pair.
impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.numer(), self.denom()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [num, den] = <[i64; 2]>::deserialize(d)?;
        if den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Q::new(num, den))
    }
}

/// An interval of the real line with exact endpoints.
///
/// Either `lo < hi`, or `lo == hi` with both ends closed (a single point).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Q, hi: Q, lo_closed: bool, hi_closed: bool) -> Option<Self> {
        let ok = match lo.cmp(&hi) {
            Ordering::Less => true,
            Ordering::Equal => lo_closed && hi_closed,
            Ordering::Greater => false,
        };
        ok.then_some(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    /// `[lo, hi)`
    pub fn half_open(lo: i64, hi: i64) -> Self {
        Self::new(Q::int(lo), Q::int(hi), true, false).expect("lo < hi")
    }

    /// `[lo, hi]`
    pub fn closed(lo: i64, hi: i64) -> Self {
        Self::new(Q::int(lo), Q::int(hi), true, true).expect("lo <= hi")
    }

    /// `(lo, hi)`
    pub fn open(lo: i64, hi: i64) -> Self {
        Self::new(Q::int(lo), Q::int(hi), false, false).expect("lo < hi")
    }

    pub fn point(p: Q) -> Self {
        Interval {
            lo: p,
            hi: p,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_half_open(&self) -> bool {
        self.lo < self.hi && self.lo_closed && !self.hi_closed
    }

    pub fn contains(&self, x: Q) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    /// Points of the interval accumulate at `x` from below.
    pub fn approaches_from_left(&self, x: Q) -> bool {
        self.lo < x && x <= self.hi
    }

    /// Points of the interval accumulate at `x` from above.
    pub fn approaches_from_right(&self, x: Q) -> bool {
        self.lo <= x && x < self.hi
    }

    pub fn translate(&self, by: Q) -> Self {
        Interval {
            lo: self.lo + by,
            hi: self.hi + by,
            ..*self
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Less => (other.lo, other.lo_closed),
            Ordering::Greater => (self.lo, self.lo_closed),
            Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi, self.hi_closed),
            Ordering::Greater => (other.hi, other.hi_closed),
            Ordering::Equal => (self.hi, self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.intersect(other).is_some()
    }

    /// `self` ends exactly where `next` begins, with the shared endpoint owned
    /// by exactly one of them.
    pub fn abuts(&self, next: &Interval) -> bool {
        self.hi == next.lo && (self.hi_closed != next.lo_closed)
    }

    /// Union of two abutting intervals.
    pub fn join(&self, next: &Interval) -> Interval {
        Interval {
            lo: self.lo,
            hi: next.hi,
            lo_closed: self.lo_closed,
            hi_closed: next.hi_closed,
        }
    }

    /// Ordering used for normalized lists: by left endpoint, a closed left
    /// end sorting before an open one.
    pub fn start_cmp(&self, other: &Interval) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then_with(|| other.lo_closed.cmp(&self.lo_closed))
    }

    pub fn length(&self) -> Q {
        self.hi - self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A finite union of pairwise disjoint intervals, sorted by left endpoint.
/// Abutting intervals are merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("intervals {0} and {1} overlap")]
pub struct OverlapError(pub Interval, pub Interval);

impl IntervalUnion {
    pub fn new(mut parts: Vec<Interval>) -> Result<Self, OverlapError> {
        parts.sort_by(Interval::start_cmp);
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for part in parts {
            match merged.last_mut() {
                Some(last) if last.overlaps(&part) => return Err(OverlapError(*last, part)),
                Some(last) if last.abuts(&part) => *last = last.join(&part),
                _ => merged.push(part),
            }
        }
        Ok(IntervalUnion { parts: merged })
    }

    pub fn single(part: Interval) -> Self {
        IntervalUnion { parts: vec![part] }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: Q) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn approaches_from_left(&self, x: Q) -> bool {
        self.parts.iter().any(|p| p.approaches_from_left(x))
    }

    pub fn approaches_from_right(&self, x: Q) -> bool {
        self.parts.iter().any(|p| p.approaches_from_right(x))
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        self.parts.len()
    }
}

impl TryFrom<Vec<Interval>> for IntervalUnion {
    type Error = OverlapError;
    fn try_from(value: Vec<Interval>) -> Result<Self, Self::Error> {
        IntervalUnion::new(value)
    }
}

impl From<IntervalUnion> for Vec<Interval> {
    fn from(value: IntervalUnion) -> Self {
        value.parts
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
