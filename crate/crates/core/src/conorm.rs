//! Continuous t-conorms given as ordinal sums of Archimedean summands.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{Q01, Rat};
use crate::rangeset::{Bound, BoundKind, GenInterval, RangeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConormError {
    #[error("summand <{lo},{hi}> has empty carrier")]
    EmptyCarrier { lo: Q01, hi: Q01 },
    #[error("summands <{a_lo},{a_hi}> and <{b_lo},{b_hi}> overlap")]
    Overlap { a_lo: Q01, a_hi: Q01, b_lo: Q01, b_hi: Q01 },
}

/// Operations a continuous Archimedean t-conorm on `[0,1]` must expose for
/// the exact image computations. Arguments are coordinates already rescaled
/// to the unit square of the summand.
pub trait Archimedean {
    fn eval(&self, u: &Q01, v: &Q01) -> Q01;

    /// Least `u` with `S(u, v) = 1`.
    fn saturation(&self, v: &Q01) -> Q01;

    /// The `u` with `S(u, v) = t`, for `v <= t < 1`.
    fn section_inverse(&self, v: &Q01, t: &Q01) -> Q01;

    /// Whether `S(u - δ, v - δ) = 1` for all small `δ > 0`.
    fn saturated_interior(&self, u: &Q01, v: &Q01) -> bool;

    fn is_strict(&self) -> bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArchKind {
    /// `x + y - xy`
    ProbabilisticSum,
    /// `min(x + y, 1)`
    Lukasiewicz,
}

impl Archimedean for ArchKind {
    fn eval(&self, u: &Q01, v: &Q01) -> Q01 {
        match self {
            ArchKind::ProbabilisticSum => {
                Q01::clamp_rat(u.as_rat() + v.as_rat() - u.as_rat() * v.as_rat())
            }
            ArchKind::Lukasiewicz => u.add_clamped(v),
        }
    }

    fn saturation(&self, v: &Q01) -> Q01 {
        match self {
            ArchKind::ProbabilisticSum if v.is_one() => Q01::zero(),
            ArchKind::ProbabilisticSum => Q01::one(),
            ArchKind::Lukasiewicz => Q01::one().sub_floored(v),
        }
    }

    fn section_inverse(&self, v: &Q01, t: &Q01) -> Q01 {
        match self {
            // t = u + v - uv  =>  u = (t - v) / (1 - v)
            ArchKind::ProbabilisticSum => {
                let one = Rat::from_integer(1.into());
                Q01::clamp_rat((t.as_rat() - v.as_rat()) / (one - v.as_rat()))
            }
            ArchKind::Lukasiewicz => t.sub_floored(v),
        }
    }

    fn saturated_interior(&self, u: &Q01, v: &Q01) -> bool {
        match self {
            ArchKind::ProbabilisticSum => false,
            ArchKind::Lukasiewicz => u.as_rat() + v.as_rat() > Rat::from_integer(1.into()),
        }
    }

    fn is_strict(&self) -> bool {
        matches!(self, ArchKind::ProbabilisticSum)
    }
}

impl std::fmt::Display for ArchKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ArchKind::ProbabilisticSum => "S_p",
            ArchKind::Lukasiewicz => "S_L",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Summand {
    pub lo: Q01,
    pub hi: Q01,
    pub kind: ArchKind,
}

impl Summand {
    pub fn new(lo: Q01, hi: Q01, kind: ArchKind) -> Self {
        Summand { lo, hi, kind }
    }

    fn width(&self) -> Rat {
        self.hi.as_rat() - self.lo.as_rat()
    }

    /// Map `[lo, hi]` onto `[0, 1]`.
    pub fn normalize(&self, x: &Q01) -> Q01 {
        Q01::clamp_rat((x.as_rat() - self.lo.as_rat()) / self.width())
    }

    /// Map `[0, 1]` back onto `[lo, hi]`.
    pub fn denormalize(&self, u: &Q01) -> Q01 {
        Q01::clamp_rat(self.lo.as_rat() + self.width() * u.as_rat())
    }

    pub fn in_square(&self, x: &Q01) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn in_carrier(&self, x: &Q01) -> bool {
        self.lo < *x && *x < self.hi
    }

    pub fn eval(&self, x: &Q01, y: &Q01) -> Q01 {
        self.denormalize(&self.kind.eval(&self.normalize(x), &self.normalize(y)))
    }

    pub fn carrier(&self) -> GenInterval {
        GenInterval::open(self.lo.clone(), self.hi.clone())
    }
}

/// A continuous t-conorm `(<a_α, e_α, S_α>)`: rescaled Archimedean
/// summands on disjoint carriers, `max` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OrdinalSumConorm {
    summands: Vec<Summand>,
}

/// One piece of the section `u ↦ T*(u, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
enum SectionPiece<'a> {
    Constant(Q01),
    Identity,
    Scaled(&'a Summand),
}

impl OrdinalSumConorm {
    pub fn new(mut summands: Vec<Summand>) -> Result<Self, ConormError> {
        for s in &summands {
            if s.lo >= s.hi {
                return Err(ConormError::EmptyCarrier { lo: s.lo.clone(), hi: s.hi.clone() });
            }
        }
        summands.sort_by(|a, b| a.lo.cmp(&b.lo));
        for w in summands.windows(2) {
            if w[0].hi > w[1].lo {
                return Err(ConormError::Overlap {
                    a_lo: w[0].lo.clone(),
                    a_hi: w[0].hi.clone(),
                    b_lo: w[1].lo.clone(),
                    b_hi: w[1].hi.clone(),
                });
            }
        }
        Ok(OrdinalSumConorm { summands })
    }

    /// The pure `max` t-conorm.
    pub fn maximum() -> Self {
        OrdinalSumConorm { summands: Vec::new() }
    }

    /// A single summand over the whole unit interval.
    pub fn global(kind: ArchKind) -> Self {
        OrdinalSumConorm { summands: vec![Summand::new(Q01::zero(), Q01::one(), kind)] }
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// The summand whose open carrier contains `x`.
    pub fn carrier_of(&self, x: &Q01) -> Option<&Summand> {
        self.summands.iter().find(|s| s.in_carrier(x))
    }

    fn square_of(&self, x: &Q01, y: &Q01) -> Option<&Summand> {
        self.summands.iter().find(|s| s.in_square(x) && s.in_square(y))
    }

    pub fn eval(&self, x: &Q01, y: &Q01) -> Q01 {
        match self.square_of(x, y) {
            Some(s) => s.eval(x, y),
            None => x.max_of(y),
        }
    }

    pub fn idempotents(&self) -> RangeSet {
        RangeSet::normalize(self.summands.iter().map(Summand::carrier).collect()).complement()
    }

    pub fn is_idempotent(&self, a: &Q01) -> bool {
        self.carrier_of(a).is_none()
    }

    /// `x^(n)` with `x^(1) = x`.
    pub fn power(&self, x: &Q01, n: u32) -> Q01 {
        assert!(n >= 1, "power index starts at 1");
        let mut acc = x.clone();
        for _ in 1..n {
            let next = self.eval(&acc, x);
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }

    /// Least `n <= max_n` with `x^(n) = 1`, for `x ∈ (0, 1)`.
    pub fn nilpotency_index(&self, x: &Q01, max_n: u32) -> Option<u32> {
        if x.is_zero() || x.is_one() {
            return None;
        }
        let mut acc = x.clone();
        for n in 1..=max_n {
            if acc.is_one() {
                return Some(n);
            }
            let next = self.eval(&acc, x);
            if next == acc {
                return None;
            }
            acc = next;
        }
        None
    }

    fn section_pieces(&self, c: &Q01) -> Vec<(GenInterval, SectionPiece<'_>)> {
        match self.carrier_of(c) {
            Some(s) => vec![
                (GenInterval::closed(Q01::zero(), s.lo.clone()), SectionPiece::Constant(c.clone())),
                (GenInterval::closed(s.lo.clone(), s.hi.clone()), SectionPiece::Scaled(s)),
                (GenInterval::closed(s.hi.clone(), Q01::one()), SectionPiece::Identity),
            ],
            None => vec![
                (GenInterval::closed(Q01::zero(), c.clone()), SectionPiece::Constant(c.clone())),
                (GenInterval::closed(c.clone(), Q01::one()), SectionPiece::Identity),
            ],
        }
    }

    /// `{T*(u, c) : u ∈ I}` with exact endpoint kinds.
    pub fn section_image(&self, i: &GenInterval, c: &Q01) -> RangeSet {
        let mut raw = Vec::new();
        for (domain, piece) in self.section_pieces(c) {
            let Some(j) = i.intersect(&domain) else { continue };
            match piece {
                SectionPiece::Constant(v) => raw.push(GenInterval::point(v)),
                SectionPiece::Identity => raw.push(j),
                SectionPiece::Scaled(s) => raw.push(scaled_image(s, &j, c)),
            }
        }
        RangeSet::normalize(raw)
    }

    /// `T*(A, B) = {T*(x, y) : x ∈ A, y ∈ B}`.
    pub fn set_image(&self, a: &RangeSet, b: &RangeSet) -> RangeSet {
        let mut raw = Vec::new();
        for i in a.parts() {
            for j in b.parts() {
                raw.push(self.box_image(i, j));
            }
        }
        RangeSet::normalize(raw)
    }

    /// `T*(I × J)`, an interval by continuity and monotonicity.
    fn box_image(&self, i: &GenInterval, j: &GenInterval) -> GenInterval {
        let low = self.eval(&i.lo().value, &j.lo().value);
        let high = self.eval(&i.hi().value, &j.hi().value);
        if low == high {
            return GenInterval::point(low);
        }
        let lo_attained = if i.lo().is_closed() || j.lo().is_closed() {
            (i.lo().is_closed() && self.section_attains_low(j, &i.lo().value))
                || (j.lo().is_closed() && self.section_attains_low(i, &j.lo().value))
        } else {
            self.saturated_near_low_corner(&i.lo().value, &j.lo().value)
        };
        let hi_attained = if i.hi().is_closed() || j.hi().is_closed() {
            (i.hi().is_closed() && self.section_attains_high(j, &i.hi().value))
                || (j.hi().is_closed() && self.section_attains_high(i, &j.hi().value))
        } else {
            self.saturated_near_high_corner(&i.hi().value, &j.hi().value)
        };
        GenInterval::new(
            Bound { value: low, kind: kind_of(lo_attained) },
            Bound { value: high, kind: kind_of(hi_attained) },
        )
        .expect("image of a nonempty box is nonempty")
    }

    fn section_attains_low(&self, j: &GenInterval, c: &Q01) -> bool {
        let img = self.section_image(j, c);
        img.parts().first().is_some_and(|p| p.lo().is_closed())
    }

    fn section_attains_high(&self, j: &GenInterval, c: &Q01) -> bool {
        let img = self.section_image(j, c);
        img.parts().last().is_some_and(|p| p.hi().is_closed())
    }

    /// `T*` is constant on `(α, α+ε] × (β, β+ε]` for some `ε`.
    fn saturated_near_low_corner(&self, alpha: &Q01, beta: &Q01) -> bool {
        self.summands.iter().any(|s| {
            s.lo <= *alpha
                && *alpha < s.hi
                && s.lo <= *beta
                && *beta < s.hi
                && s.kind.eval(&s.normalize(alpha), &s.normalize(beta)).is_one()
        })
    }

    /// `T*` is constant on `[σ-ε, σ) × [τ-ε, τ)` for some `ε`.
    fn saturated_near_high_corner(&self, sigma: &Q01, tau: &Q01) -> bool {
        self.summands.iter().any(|s| {
            s.lo < *sigma
                && *sigma <= s.hi
                && s.lo < *tau
                && *tau <= s.hi
                && s.kind.saturated_interior(&s.normalize(sigma), &s.normalize(tau))
        })
    }
}

fn kind_of(attained: bool) -> BoundKind {
    if attained {
        BoundKind::Closed
    } else {
        BoundKind::Open
    }
}

/// Image of `J ⊆ [lo, hi]` under `u ↦ lo + w·S((u-lo)/w, (c-lo)/w)`.
/// The map is strictly increasing up to the saturation point, then constant.
fn scaled_image(s: &Summand, j: &GenInterval, c: &Q01) -> GenInterval {
    let v = s.normalize(c);
    let z = s.kind.saturation(&v);
    let g = |x: &Q01| s.denormalize(&s.kind.eval(&s.normalize(x), &v));
    let p = s.normalize(&j.lo().value);
    let q = s.normalize(&j.hi().value);
    if q.cmp(&z) != Ordering::Greater {
        GenInterval::new(
            Bound { value: g(&j.lo().value), kind: j.lo().kind },
            Bound { value: g(&j.hi().value), kind: j.hi().kind },
        )
        .unwrap_or_else(|_| GenInterval::point(g(&j.lo().value)))
    } else if p >= z {
        GenInterval::point(s.hi.clone())
    } else {
        GenInterval::new(
            Bound { value: g(&j.lo().value), kind: j.lo().kind },
            Bound::closed(s.hi.clone()),
        )
        .expect("saturating section image")
    }
}
