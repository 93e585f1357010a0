//! Finite unions of intervals and points of `[0, 1]`.
//!
//! [`RangeSet`] is kept in a canonical form (sorted, pairwise disjoint,
//! non-mergeable parts), so structural equality is set equality. It is used
//! for the range `M` of a generator, accumulation sets, and the witness sets
//! of the condition checks.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::Q01;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("invalid interval: lo {lo} / hi {hi}")]
    InvalidInterval { lo: String, hi: String },
    #[error("associated pair is inconsistent with the range: {0}")]
    InconsistentPair(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Open,
    Closed,
}

impl BoundKind {
    pub fn is_closed(self) -> bool {
        self == BoundKind::Closed
    }

    pub fn flip(self) -> Self {
        match self {
            BoundKind::Open => BoundKind::Closed,
            BoundKind::Closed => BoundKind::Open,
        }
    }

    pub fn from_closed(closed: bool) -> Self {
        if closed {
            BoundKind::Closed
        } else {
            BoundKind::Open
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bound {
    pub value: Q01,
    pub kind: BoundKind,
}

impl Bound {
    pub fn closed(value: Q01) -> Self {
        Bound { value, kind: BoundKind::Closed }
    }

    pub fn open(value: Q01) -> Self {
        Bound { value, kind: BoundKind::Open }
    }

    pub fn is_closed(&self) -> bool {
        self.kind.is_closed()
    }
}

/// Lower bounds: smaller value first; at equal values a closed bound starts earlier.
fn cmp_lo(a: &Bound, b: &Bound) -> Ordering {
    a.value
        .cmp(&b.value)
        .then_with(|| b.is_closed().cmp(&a.is_closed()))
}

/// Upper bounds: at equal values a closed bound reaches further.
fn cmp_hi(a: &Bound, b: &Bound) -> Ordering {
    a.value
        .cmp(&b.value)
        .then_with(|| a.is_closed().cmp(&b.is_closed()))
}

/// A nonempty interval of `[0, 1]`, possibly a single point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenInterval {
    lo: Bound,
    hi: Bound,
}

impl GenInterval {
    pub fn new(lo: Bound, hi: Bound) -> Result<Self, RangeError> {
        Self::try_new(lo.clone(), hi.clone()).ok_or_else(|| RangeError::InvalidInterval {
            lo: format!("{}{}", if lo.is_closed() { "[" } else { "(" }, lo.value),
            hi: format!("{}{}", hi.value, if hi.is_closed() { "]" } else { ")" }),
        })
    }

    /// `None` when the bounds describe the empty set.
    pub fn try_new(lo: Bound, hi: Bound) -> Option<Self> {
        match lo.value.cmp(&hi.value) {
            Ordering::Less => Some(GenInterval { lo, hi }),
            Ordering::Equal if lo.is_closed() && hi.is_closed() => Some(GenInterval { lo, hi }),
            _ => None,
        }
    }

    pub fn with_kinds(lo: Q01, lo_kind: BoundKind, hi: Q01, hi_kind: BoundKind) -> Result<Self, RangeError> {
        Self::new(Bound { value: lo, kind: lo_kind }, Bound { value: hi, kind: hi_kind })
    }

    /// `[lo, hi]`
    pub fn closed(lo: Q01, hi: Q01) -> Self {
        Self::new(Bound::closed(lo), Bound::closed(hi)).expect("closed interval with lo > hi")
    }

    /// `(lo, hi)`
    pub fn open(lo: Q01, hi: Q01) -> Self {
        Self::new(Bound::open(lo), Bound::open(hi)).expect("empty open interval")
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: Q01, hi: Q01) -> Self {
        Self::new(Bound::open(lo), Bound::closed(hi)).expect("empty interval")
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: Q01, hi: Q01) -> Self {
        Self::new(Bound::closed(lo), Bound::open(hi)).expect("empty interval")
    }

    pub fn point(p: Q01) -> Self {
        GenInterval { lo: Bound::closed(p.clone()), hi: Bound::closed(p) }
    }

    pub fn unit() -> Self {
        Self::closed(Q01::zero(), Q01::one())
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo.value == self.hi.value
    }

    pub fn contains(&self, x: &Q01) -> bool {
        let above = match x.cmp(&self.lo.value) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo.is_closed(),
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi.value) {
            Ordering::Less => true,
            Ordering::Equal => self.hi.is_closed(),
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn intersect(&self, other: &GenInterval) -> Option<GenInterval> {
        let lo = if cmp_lo(&self.lo, &other.lo) == Ordering::Less { &other.lo } else { &self.lo };
        let hi = if cmp_hi(&self.hi, &other.hi) == Ordering::Less { &self.hi } else { &other.hi };
        GenInterval::try_new(lo.clone(), hi.clone())
    }
}

impl fmt::Display for GenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo.value);
        }
        write!(
            f,
            "{}{},{}{}",
            if self.lo.is_closed() { "[" } else { "(" },
            self.lo.value,
            self.hi.value,
            if self.hi.is_closed() { "]" } else { ")" }
        )
    }
}

/// Serialized form of one part: `{lo, lo_kind, hi, hi_kind}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartRecord {
    pub lo: Q01,
    pub lo_kind: BoundKind,
    pub hi: Q01,
    pub hi_kind: BoundKind,
}

impl Serialize for GenInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PartRecord {
            lo: self.lo.value.clone(),
            lo_kind: self.lo.kind,
            hi: self.hi.value.clone(),
            hi_kind: self.hi.kind,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenInterval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PartRecord::deserialize(d)?;
        GenInterval::with_kinds(r.lo, r.lo_kind, r.hi, r.hi_kind).map_err(serde::de::Error::custom)
    }
}

/// Canonical finite union of disjoint [`GenInterval`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<GenInterval>", into = "Vec<GenInterval>")]
pub struct RangeSet {
    parts: Vec<GenInterval>,
}

impl From<Vec<GenInterval>> for RangeSet {
    fn from(raw: Vec<GenInterval>) -> Self {
        RangeSet::normalize(raw)
    }
}

impl From<RangeSet> for Vec<GenInterval> {
    fn from(s: RangeSet) -> Self {
        s.parts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

impl RangeSet {
    pub fn empty() -> Self {
        RangeSet { parts: Vec::new() }
    }

    pub fn unit() -> Self {
        RangeSet { parts: vec![GenInterval::unit()] }
    }

    pub fn interval(i: GenInterval) -> Self {
        RangeSet { parts: vec![i] }
    }

    pub fn points<I: IntoIterator<Item = Q01>>(points: I) -> Self {
        Self::normalize(points.into_iter().map(GenInterval::point).collect())
    }

    /// Sort and merge overlapping or touching intervals.
    pub fn normalize(mut raw: Vec<GenInterval>) -> Self {
        raw.sort_by(|a, b| cmp_lo(&a.lo, &b.lo).then_with(|| cmp_hi(&a.hi, &b.hi)));
        let mut parts: Vec<GenInterval> = Vec::with_capacity(raw.len());
        for next in raw {
            if let Some(cur) = parts.last_mut() {
                let joins = match next.lo.value.cmp(&cur.hi.value) {
                    Ordering::Less => true,
                    Ordering::Equal => cur.hi.is_closed() || next.lo.is_closed(),
                    Ordering::Greater => false,
                };
                if joins {
                    if cmp_hi(&next.hi, &cur.hi) == Ordering::Greater {
                        cur.hi = next.hi;
                    }
                    continue;
                }
            }
            parts.push(next);
        }
        RangeSet { parts }
    }

    pub fn parts(&self) -> &[GenInterval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn member(&self, x: &Q01) -> bool {
        // parts are sorted by lower bound; find the last part starting at or before x
        let idx = self.parts.partition_point(|p| p.lo.value <= *x);
        idx > 0 && self.parts[idx - 1].contains(x)
    }

    pub fn union(&self, other: &RangeSet) -> RangeSet {
        let mut raw = self.parts.clone();
        raw.extend(other.parts.iter().cloned());
        RangeSet::normalize(raw)
    }

    pub fn intersection(&self, other: &RangeSet) -> RangeSet {
        let mut raw = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                if let Some(i) = a.intersect(b) {
                    raw.push(i);
                }
            }
        }
        RangeSet::normalize(raw)
    }

    pub fn complement(&self) -> RangeSet {
        let mut out = Vec::new();
        let mut lo = Bound::closed(Q01::zero());
        for p in &self.parts {
            let hi = Bound { value: p.lo.value.clone(), kind: p.lo.kind.flip() };
            if let Some(i) = GenInterval::try_new(lo, hi) {
                out.push(i);
            }
            lo = Bound { value: p.hi.value.clone(), kind: p.hi.kind.flip() };
        }
        if let Some(i) = GenInterval::try_new(lo, Bound::closed(Q01::one())) {
            out.push(i);
        }
        RangeSet { parts: out }
    }

    pub fn difference(&self, other: &RangeSet) -> RangeSet {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &RangeSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn without_point(&self, p: &Q01) -> RangeSet {
        self.difference(&RangeSet::points([p.clone()]))
    }

    /// Infimum (attained or not); `None` when empty.
    pub fn inf(&self) -> Option<&Q01> {
        self.parts.first().map(|p| &p.lo.value)
    }

    /// Supremum (attained or not); `None` when empty.
    pub fn sup(&self) -> Option<&Q01> {
        self.parts.last().map(|p| &p.hi.value)
    }

    /// Accumulation points from the left (`Left`), right (`Right`), or both.
    pub fn acc_set(&self, side: Side) -> RangeSet {
        match side {
            Side::Left => RangeSet::normalize(
                self.parts
                    .iter()
                    .filter(|p| !p.is_point())
                    .map(|p| GenInterval::open_closed(p.lo.value.clone(), p.hi.value.clone()))
                    .collect(),
            ),
            Side::Right => RangeSet::normalize(
                self.parts
                    .iter()
                    .filter(|p| !p.is_point())
                    .map(|p| GenInterval::closed_open(p.lo.value.clone(), p.hi.value.clone()))
                    .collect(),
            ),
            Side::Both => self.acc_set(Side::Left).intersection(&self.acc_set(Side::Right)),
        }
    }

    /// A strictly monotone sequence of members converging to `x` from the
    /// requested side, or `None` when `x` is not an accumulation point from
    /// that side. Used to witness membership of accumulation sets.
    pub fn approach_sequence(&self, x: &Q01, side: Side, len: usize) -> Option<Vec<Q01>> {
        let part = self.parts.iter().find(|p| {
            !p.is_point()
                && match side {
                    Side::Left => p.lo.value < *x && *x <= p.hi.value,
                    Side::Right => p.lo.value <= *x && *x < p.hi.value,
                    Side::Both => false,
                }
        })?;
        let anchor = match side {
            Side::Left => &part.lo.value,
            _ => &part.hi.value,
        };
        // midpoints between x and the far end of the part, halving each step
        let mut seq = Vec::with_capacity(len);
        let mut cur = x.midpoint(anchor);
        for _ in 0..len {
            seq.push(cur.clone());
            cur = cur.midpoint(x);
        }
        if side == Side::Left {
            // increasing towards x
            debug_assert!(seq.windows(2).all(|w| w[0] < w[1]));
        }
        Some(seq)
    }
}

impl fmt::Display for RangeSet {
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

/// One gap `[lo, hi]` of an associated pair together with its representative
/// `rep`, the unique point of the range inside the gap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    #[serde(rename = "b")]
    pub lo: Q01,
    #[serde(rename = "d")]
    pub hi: Q01,
    #[serde(rename = "c")]
    pub rep: Q01,
}

impl Gap {
    pub fn contains(&self, x: &Q01) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn has_positive_length(&self) -> bool {
        self.lo < self.hi
    }

    pub fn as_interval(&self) -> GenInterval {
        GenInterval::closed(self.lo.clone(), self.hi.clone())
    }
}

/// The gap system `(𝒮, C)` associated with a range set.
///
/// `zero` is the stipulated gap `[0, f(0⁺)]` with representative `f(0)`; it
/// belongs to the index set only when it has positive length. `gaps` holds the
/// remaining gaps in increasing order. For the full range `[0,1]` the single
/// degenerate gap `[1,1]` with representative `1` is stored there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedPair {
    zero: Gap,
    gaps: Vec<Gap>,
}

impl AssociatedPair {
    pub fn new(zero: Gap, mut gaps: Vec<Gap>) -> Self {
        gaps.sort_by(|a, b| a.lo.cmp(&b.lo));
        AssociatedPair { zero, gaps }
    }

    pub fn zero_gap(&self) -> &Gap {
        &self.zero
    }

    pub fn has_zero_gap(&self) -> bool {
        self.zero.has_positive_length()
    }

    /// Gaps indexed by `K \ {0}`.
    pub fn gaps(&self) -> &[Gap] {
        &self.gaps
    }

    /// All gaps of `K`, the stipulated zero gap first when present.
    pub fn all_gaps(&self) -> impl Iterator<Item = &Gap> {
        self.has_zero_gap()
            .then_some(&self.zero)
            .into_iter()
            .chain(self.gaps.iter())
    }

    pub fn positive_gaps(&self) -> impl Iterator<Item = &Gap> {
        self.all_gaps().filter(|g| g.has_positive_length())
    }

    /// The representative set `C`.
    pub fn reps(&self) -> Vec<Q01> {
        let mut c: Vec<Q01> = self.all_gaps().map(|g| g.rep.clone()).collect();
        c.sort();
        c.dedup();
        c
    }

    /// The gap containing `x` with `x` different from its representative.
    pub fn lookup(&self, x: &Q01) -> Option<&Gap> {
        self.all_gaps().find(|g| g.contains(x) && g.rep != *x)
    }

    /// Check `lo <= rep <= hi`, `[lo,hi] ∩ M = {rep}`, pairwise disjointness,
    /// and that the gaps cover `M^c`.
    pub fn validate_against(&self, m: &RangeSet) -> Result<(), RangeError> {
        let all: Vec<&Gap> = self.all_gaps().collect();
        for g in &all {
            if !(g.lo <= g.rep && g.rep <= g.hi) {
                return Err(RangeError::InconsistentPair(format!(
                    "representative {} outside [{},{}]",
                    g.rep, g.lo, g.hi
                )));
            }
            let hit = m.intersection(&RangeSet::interval(g.as_interval()));
            if hit != RangeSet::points([g.rep.clone()]) {
                return Err(RangeError::InconsistentPair(format!(
                    "[{},{}] ∩ M = {} instead of {{{}}}",
                    g.lo, g.hi, hit, g.rep
                )));
            }
        }
        for w in all.windows(2) {
            if w[0].hi >= w[1].lo {
                return Err(RangeError::InconsistentPair(format!(
                    "gaps [{},{}] and [{},{}] overlap",
                    w[0].lo, w[0].hi, w[1].lo, w[1].hi
                )));
            }
        }
        let covered = RangeSet::normalize(all.iter().map(|g| g.as_interval()).collect());
        let stray = m.complement().difference(&covered);
        if !stray.is_empty() {
            return Err(RangeError::InconsistentPair(format!("{stray} lies outside M and every gap")));
        }
        Ok(())
    }
}

/// Range collapse `F_M`: identity on `M`, gap representative elsewhere.
pub fn f_cap(m: &RangeSet, pair: &AssociatedPair, x: &Q01) -> Result<Q01, RangeError> {
    if m.member(x) {
        return Ok(x.clone());
    }
    pair.lookup(x)
        .map(|g| g.rep.clone())
        .ok_or_else(|| RangeError::InconsistentPair(format!("{x} is neither in M nor in a gap")))
}

/// `F_M` through its order-theoretic definition: the unique point of
/// `M ∩ [sup([0,x] ∩ M), inf([x,1] ∩ M)]`, with `sup ∅ = 0` and `inf ∅ = 1`.
pub fn f_cap_by_bounds(m: &RangeSet, x: &Q01) -> Result<Q01, RangeError> {
    let below = m.intersection(&RangeSet::interval(GenInterval::closed(Q01::zero(), x.clone())));
    let above = m.intersection(&RangeSet::interval(GenInterval::closed(x.clone(), Q01::one())));
    let s = below.sup().cloned().unwrap_or_else(Q01::zero);
    let i = above.inf().cloned().unwrap_or_else(Q01::one);
    if s > i {
        return Err(RangeError::InconsistentPair(format!("sup {s} exceeds inf {i}")));
    }
    let window = m.intersection(&RangeSet::interval(GenInterval::closed(s, i)));
    match window.parts() {
        [p] if p.is_point() => Ok(p.lo().value.clone()),
        _ => Err(RangeError::InconsistentPair(format!(
            "M ∩ [sup, inf] = {window} is not a single point"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Q01 {
        Q01::frac(n, d)
    }

    /// `[0,2/5] ∪ (2/3,1]`
    fn m31() -> RangeSet {
        RangeSet::normalize(vec![
            GenInterval::open_closed(q(2, 3), q(1, 1)),
            GenInterval::closed(q(0, 1), q(2, 5)),
        ])
    }

    fn pair31() -> AssociatedPair {
        AssociatedPair::new(
            Gap { lo: q(0, 1), hi: q(0, 1), rep: q(0, 1) },
            vec![Gap { lo: q(2, 5), hi: q(2, 3), rep: q(2, 5) }],
        )
    }

    #[test]
    fn normalize_merges_and_sorts() {
        let s = RangeSet::normalize(vec![
            GenInterval::closed(q(0, 1), q(2, 5)),
            GenInterval::open(q(2, 5), q(1, 2)),
        ]);
        assert_eq!(s.parts(), &[GenInterval::closed_open(q(0, 1), q(1, 2))]);

        let s = m31();
        assert_eq!(
            s.parts(),
            &[
                GenInterval::closed(q(0, 1), q(2, 5)),
                GenInterval::open_closed(q(2, 3), q(1, 1))
            ]
        );

        let s = RangeSet::points([q(1, 2), q(1, 2)]);
        assert_eq!(s.parts(), &[GenInterval::point(q(1, 2))]);
    }

    #[test]
    fn open_touching_parts_stay_apart() {
        let s = RangeSet::normalize(vec![
            GenInterval::closed_open(q(0, 1), q(1, 2)),
            GenInterval::open_closed(q(1, 2), q(1, 1)),
        ]);
        assert_eq!(s.parts().len(), 2);
        assert!(!s.member(&q(1, 2)));
    }

    #[test]
    fn membership() {
        let m = m31();
        assert!(m.member(&q(2, 5)));
        assert!(!m.member(&q(2, 3)));
        assert!(!m.member(&q(1, 2)));
        assert!(m.member(&q(1, 1)));
        assert!(m.member(&q(0, 1)));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(
            m31().complement().parts(),
            &[GenInterval::open_closed(q(2, 5), q(2, 3))]
        );
        assert!(RangeSet::unit().complement().is_empty());
        assert_eq!(RangeSet::empty().complement(), RangeSet::unit());
    }

    #[test]
    fn accumulation_sets() {
        let m = m31();
        assert_eq!(
            m.acc_set(Side::Left),
            RangeSet::normalize(vec![
                GenInterval::open_closed(q(0, 1), q(2, 5)),
                GenInterval::open_closed(q(2, 3), q(1, 1)),
            ])
        );
        assert_eq!(
            m.acc_set(Side::Right),
            RangeSet::normalize(vec![
                GenInterval::closed_open(q(0, 1), q(2, 5)),
                GenInterval::closed_open(q(2, 3), q(1, 1)),
            ])
        );
        assert!(RangeSet::points([q(1, 2)]).acc_set(Side::Both).is_empty());
    }

    #[test]
    fn accumulation_points_have_approach_sequences() {
        let m = m31();
        for side in [Side::Left, Side::Right] {
            let acc = m.acc_set(side);
            for x in [q(0, 1), q(1, 5), q(2, 5), q(2, 3), q(4, 5), q(1, 1), q(1, 2)] {
                let seq = m.approach_sequence(&x, side, 8);
                assert_eq!(acc.member(&x), seq.is_some(), "{x} {side:?}");
                if let Some(seq) = seq {
                    assert!(seq.iter().all(|s| m.member(s) && *s != x));
                    let gaps: Vec<_> = seq
                        .iter()
                        .map(|s| if *s < x { x.sub(s).unwrap() } else { s.sub(&x).unwrap() })
                        .collect();
                    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
                }
            }
        }
    }

    #[test]
    fn range_collapse_examples() {
        let m = m31();
        let pair = pair31();
        assert_eq!(f_cap(&m, &pair, &q(1, 2)).unwrap(), q(2, 5));
        assert_eq!(f_cap(&m, &pair, &q(3, 10)).unwrap(), q(3, 10));
        assert_eq!(f_cap(&m, &pair, &q(2, 3)).unwrap(), q(2, 5));

        // [1/2,2/3) ∪ {1} with gaps [0,1/2] -> 1/2 and [2/3,1] -> 1
        let m = RangeSet::normalize(vec![
            GenInterval::closed_open(q(1, 2), q(2, 3)),
            GenInterval::point(q(1, 1)),
        ]);
        let pair = AssociatedPair::new(
            Gap { lo: q(0, 1), hi: q(1, 2), rep: q(1, 2) },
            vec![Gap { lo: q(2, 3), hi: q(1, 1), rep: q(1, 1) }],
        );
        pair.validate_against(&m).unwrap();
        assert_eq!(f_cap(&m, &pair, &q(3, 4)).unwrap(), q(1, 1));
        assert_eq!(f_cap(&m, &pair, &q(1, 4)).unwrap(), q(1, 2));
    }

    #[test]
    fn inconsistent_pair_is_reported() {
        let m = m31();
        let bad = AssociatedPair::new(
            Gap { lo: q(0, 1), hi: q(0, 1), rep: q(0, 1) },
            vec![Gap { lo: q(2, 5), hi: q(1, 2), rep: q(2, 5) }],
        );
        assert!(f_cap(&m, &bad, &q(3, 5)).is_err());
        assert!(bad.validate_against(&m).is_err());
        pair31().validate_against(&m).unwrap();
    }

    fn arb_set() -> impl Strategy<Value = RangeSet> {
        prop::collection::vec((0i64..=24, 0i64..=24, any::<bool>(), any::<bool>()), 0..5).prop_map(|raw| {
            RangeSet::normalize(
                raw.into_iter()
                    .filter_map(|(a, b, lc, hc)| {
                        let (a, b) = (a.min(b), a.max(b));
                        GenInterval::try_new(
                            Bound { value: q(a, 24), kind: BoundKind::from_closed(lc) },
                            Bound { value: q(b, 24), kind: BoundKind::from_closed(hc || a == b) },
                        )
                        .map(|i| if a == b { GenInterval::point(q(a, 24)) } else { i })
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn complement_is_involutive(s in arb_set()) {
            prop_assert_eq!(s.complement().complement(), s);
        }

        #[test]
        fn membership_matches_set_algebra(s in arb_set(), t in arb_set(), n in 0i64..=48) {
            let x = q(n, 48);
            prop_assert_eq!(s.complement().member(&x), !s.member(&x));
            prop_assert_eq!(s.union(&t).member(&x), s.member(&x) || t.member(&x));
            prop_assert_eq!(s.intersection(&t).member(&x), s.member(&x) && t.member(&x));
        }

        #[test]
        fn canonical_parts_never_merge(s in arb_set()) {
            for w in s.parts().windows(2) {
                let (a, b) = (&w[0], &w[1]);
                prop_assert!(a.hi().value <= b.lo().value);
                if a.hi().value == b.lo().value {
                    prop_assert!(!a.hi().is_closed() && !b.lo().is_closed());
                }
            }
        }
    }
}
