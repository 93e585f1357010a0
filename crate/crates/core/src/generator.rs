//! Strictly increasing piecewise-affine generators `f : [0,1] → [0,1]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Signed;
use thiserror::Error;

use crate::numeric::{Q01, Rat};
use crate::rangeset::{AssociatedPair, Bound, Gap, GenInterval, RangeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("no piece or override covers a neighbourhood of {0}")]
    CoverageGap(Q01),
    #[error("domains overlap at {0}")]
    Overlap(Q01),
    #[error("not strictly increasing at {at}: value {left} on the left, {right} on the right")]
    NotIncreasing { at: Q01, left: Q01, right: Q01 },
    #[error("piece on {0} has non-positive slope {1}")]
    BadSlope(String, Rat),
    #[error("piece on {0} leaves [0,1]")]
    OutOfRange(String),
    #[error("piece domain {0} has zero length; use an override for single points")]
    DegenerateDomain(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePiece {
    pub domain: GenInterval,
    pub slope: Rat,
    pub intercept: Rat,
}

impl AffinePiece {
    pub fn new(domain: GenInterval, slope: Rat, intercept: Rat) -> Self {
        AffinePiece { domain, slope, intercept }
    }

    fn raw_at(&self, x: &Q01) -> Rat {
        &self.slope * x.as_rat() + &self.intercept
    }

    /// Value of the affine formula at `x`; callers stay inside the closure
    /// of the domain, where validation guarantees `[0,1]`.
    fn at(&self, x: &Q01) -> Q01 {
        Q01::clamp_rat(self.raw_at(x))
    }

    /// `x` with `slope·x + intercept = y`.
    fn solve(&self, y: &Q01) -> Rat {
        (y.as_rat() - &self.intercept) / &self.slope
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Segment {
    Piece(usize),
    Point(Q01, Q01),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitSide {
    Left,
    Right,
}

/// A jump of `f` at `x`: `f(x⁻) < f(x⁺)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jump {
    pub x: Q01,
    pub left: Q01,
    pub value: Q01,
    pub right: Q01,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseMonotone {
    pieces: Vec<AffinePiece>,
    overrides: BTreeMap<Q01, Q01>,
    // pieces and override points in domain order
    segments: Vec<Segment>,
}

impl PiecewiseMonotone {
    pub fn new(mut pieces: Vec<AffinePiece>, overrides: BTreeMap<Q01, Q01>) -> Result<Self, GeneratorError> {
        for p in &pieces {
            let name = p.domain.to_string();
            if p.domain.is_point() {
                return Err(GeneratorError::DegenerateDomain(name));
            }
            if !p.slope.is_positive() {
                return Err(GeneratorError::BadSlope(name, p.slope.clone()));
            }
            let one = Rat::from_integer(1.into());
            let lo = p.raw_at(&p.domain.lo().value);
            let hi = p.raw_at(&p.domain.hi().value);
            if lo.is_negative() || hi > one {
                return Err(GeneratorError::OutOfRange(name));
            }
        }
        pieces.sort_by(|a, b| a.domain.lo().value.cmp(&b.domain.lo().value));

        let mut segments: Vec<Segment> = (0..pieces.len()).map(Segment::Piece).collect();
        segments.extend(overrides.iter().map(|(x, v)| Segment::Point(x.clone(), v.clone())));
        let span = |s: &Segment| -> GenInterval {
            match s {
                Segment::Piece(i) => pieces[*i].domain.clone(),
                Segment::Point(x, _) => GenInterval::point(x.clone()),
            }
        };
        segments.sort_by(|a, b| {
            let (a, b) = (span(a), span(b));
            a.lo().value
                .cmp(&b.lo().value)
                .then_with(|| b.lo().is_closed().cmp(&a.lo().is_closed()))
        });

        let mut f = PiecewiseMonotone { pieces, overrides, segments };
        f.check_partition()?;
        f.check_monotone()?;
        f.segments.shrink_to_fit();
        Ok(f)
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn overrides(&self) -> &BTreeMap<Q01, Q01> {
        &self.overrides
    }

    fn span(&self, s: &Segment) -> GenInterval {
        match s {
            Segment::Piece(i) => self.pieces[*i].domain.clone(),
            Segment::Point(x, _) => GenInterval::point(x.clone()),
        }
    }

    fn check_partition(&self) -> Result<(), GeneratorError> {
        let spans: Vec<GenInterval> = self.segments.iter().map(|s| self.span(s)).collect();
        let Some(first) = spans.first() else {
            return Err(GeneratorError::CoverageGap(Q01::zero()));
        };
        if !first.lo().value.is_zero() || !first.lo().is_closed() {
            return Err(GeneratorError::CoverageGap(first.lo().value.clone()));
        }
        for w in spans.windows(2) {
            let (prev, next) = (w[0].hi(), w[1].lo());
            match prev.value.cmp(&next.value) {
                Ordering::Less => return Err(GeneratorError::CoverageGap(prev.value.clone())),
                Ordering::Greater => return Err(GeneratorError::Overlap(next.value.clone())),
                Ordering::Equal => match (prev.is_closed(), next.is_closed()) {
                    (true, true) => return Err(GeneratorError::Overlap(next.value.clone())),
                    (false, false) => return Err(GeneratorError::CoverageGap(next.value.clone())),
                    _ => {}
                },
            }
        }
        let last = spans.last().expect("nonempty").hi();
        if !last.value.is_one() || !last.is_closed() {
            return Err(GeneratorError::CoverageGap(last.value.clone()));
        }
        Ok(())
    }

    /// Value approached at the right end / left end of a segment.
    fn end_value(&self, s: &Segment, at_hi: bool) -> Q01 {
        match s {
            Segment::Piece(i) => {
                let p = &self.pieces[*i];
                p.at(if at_hi { &p.domain.hi().value } else { &p.domain.lo().value })
            }
            Segment::Point(_, v) => v.clone(),
        }
    }

    fn check_monotone(&self) -> Result<(), GeneratorError> {
        for w in self.segments.windows(2) {
            let left = self.end_value(&w[0], true);
            let right = self.end_value(&w[1], false);
            if left > right {
                return Err(GeneratorError::NotIncreasing {
                    at: self.span(&w[1]).lo().value.clone(),
                    left,
                    right,
                });
            }
        }
        Ok(())
    }

    fn segment_at(&self, x: &Q01) -> &Segment {
        self.segments
            .iter()
            .find(|s| self.span(s).contains(x))
            .expect("segments partition [0,1]")
    }

    pub fn eval(&self, x: &Q01) -> Q01 {
        match self.segment_at(x) {
            Segment::Piece(i) => self.pieces[*i].at(x),
            Segment::Point(_, v) => v.clone(),
        }
    }

    /// `f(x⁻)` or `f(x⁺)`, with `f(0⁻) = 0` and `f(1⁺) = 1`.
    pub fn one_sided_limit(&self, x: &Q01, side: LimitSide) -> Q01 {
        match side {
            LimitSide::Left if x.is_zero() => Q01::zero(),
            LimitSide::Right if x.is_one() => Q01::one(),
            LimitSide::Left => {
                let p = self
                    .pieces
                    .iter()
                    .find(|p| p.domain.lo().value < *x && *x <= p.domain.hi().value)
                    .expect("some piece ends at or after x");
                p.at(x)
            }
            LimitSide::Right => {
                let p = self
                    .pieces
                    .iter()
                    .find(|p| p.domain.lo().value <= *x && *x < p.domain.hi().value)
                    .expect("some piece starts at or before x");
                p.at(x)
            }
        }
    }

    /// `Ran(f)`.
    pub fn range(&self) -> RangeSet {
        let mut raw: Vec<GenInterval> = self
            .pieces
            .iter()
            .map(|p| {
                GenInterval::new(
                    Bound { value: p.at(&p.domain.lo().value), kind: p.domain.lo().kind },
                    Bound { value: p.at(&p.domain.hi().value), kind: p.domain.hi().kind },
                )
                .expect("positive slope keeps the image nonempty")
            })
            .collect();
        raw.extend(self.overrides.values().cloned().map(GenInterval::point));
        RangeSet::normalize(raw)
    }

    /// `f((0,1))`.
    pub fn interior_range(&self) -> RangeSet {
        let open = GenInterval::open(Q01::zero(), Q01::one());
        let mut raw = Vec::new();
        for p in &self.pieces {
            if let Some(d) = p.domain.intersect(&open) {
                raw.push(
                    GenInterval::new(
                        Bound { value: p.at(&d.lo().value), kind: d.lo().kind },
                        Bound { value: p.at(&d.hi().value), kind: d.hi().kind },
                    )
                    .expect("positive slope"),
                );
            }
        }
        for (x, v) in &self.overrides {
            if open.contains(x) {
                raw.push(GenInterval::point(v.clone()));
            }
        }
        RangeSet::normalize(raw)
    }

    /// `sup{x : f(x) < y}` with `sup ∅ = 0`.
    pub fn pseudo_inverse(&self, y: &Q01) -> Q01 {
        let mut s = Q01::zero();
        for seg in &self.segments {
            match seg {
                Segment::Point(x, v) => {
                    if v >= y {
                        break;
                    }
                    s = x.clone();
                }
                Segment::Piece(i) => {
                    let p = &self.pieces[*i];
                    if p.at(&p.domain.lo().value) >= *y {
                        break;
                    }
                    let hi = &p.domain.hi().value;
                    let cut = p.solve(y);
                    s = if cut >= *hi.as_rat() { hi.clone() } else { Q01::clamp_rat(cut) };
                    if s < *hi {
                        break;
                    }
                }
            }
        }
        s
    }

    /// Left and right end values of every piece and override point.
    pub fn boundaries(&self) -> Vec<Q01> {
        let mut out: Vec<Q01> = self
            .segments
            .iter()
            .flat_map(|s| {
                let sp = self.span(s);
                [sp.lo().value.clone(), sp.hi().value.clone()]
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All `x ∈ (0, 1]` with `f(x⁻) < f(x⁺)`.
    pub fn jumps(&self) -> Vec<Jump> {
        self.boundaries()
            .into_iter()
            .filter(|x| !x.is_zero())
            .filter_map(|x| {
                let left = self.one_sided_limit(&x, LimitSide::Left);
                let right = self.one_sided_limit(&x, LimitSide::Right);
                (left < right).then(|| Jump { value: self.eval(&x), x, left, right })
            })
            .collect()
    }

    /// The canonical pair `(𝒮, C)` built from the jumps of `f`.
    pub fn associated_pair(&self) -> AssociatedPair {
        let zero = Gap {
            lo: Q01::zero(),
            hi: self.one_sided_limit(&Q01::zero(), LimitSide::Right),
            rep: self.eval(&Q01::zero()),
        };
        let mut gaps: Vec<Gap> = self
            .jumps()
            .into_iter()
            .map(|j| Gap { lo: j.left, hi: j.right, rep: j.value })
            .collect();
        if gaps.is_empty() && !zero.has_positive_length() {
            // M = [0,1]
            gaps.push(Gap { lo: Q01::one(), hi: Q01::one(), rep: Q01::one() });
        }
        AssociatedPair::new(zero, gaps)
    }
}
