//! The generated operation `T(x,y) = f⁽⁻¹⁾(T*(f(x), f(y)))` and the induced
//! operation `x ⊗ y = F_M(T*(x, y))` on the range `M`.

use serde::Serialize;
use thiserror::Error;

use crate::conditions::TripleSequence;
use crate::conorm::OrdinalSumConorm;
use crate::generator::{LimitSide, PiecewiseMonotone};
use crate::numeric::Q01;
use crate::rangeset::{f_cap, AssociatedPair, RangeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenOpError {
    #[error("{0} is not in the range of the generator")]
    NotInRange(Q01),
}

/// Axis direction for a one-sided limit of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    XLeft,
    XRight,
    YLeft,
    YRight,
}

#[derive(Debug, Clone)]
pub struct GeneratedOp {
    f: PiecewiseMonotone,
    s: OrdinalSumConorm,
    m: RangeSet,
    pair: AssociatedPair,
}

/// Result of `i ⊕ j` together with `m_ij = min{T*(a_i,b_j), T*(a_j,b_i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OplusResult {
    pub index: usize,
    pub m_ij: Q01,
}

impl GeneratedOp {
    pub fn new(f: PiecewiseMonotone, s: OrdinalSumConorm) -> Self {
        let m = f.range();
        let pair = f.associated_pair();
        GeneratedOp { f, s, m, pair }
    }

    pub fn generator(&self) -> &PiecewiseMonotone {
        &self.f
    }

    pub fn conorm(&self) -> &OrdinalSumConorm {
        &self.s
    }

    pub fn range(&self) -> &RangeSet {
        &self.m
    }

    pub fn pair(&self) -> &AssociatedPair {
        &self.pair
    }

    /// `f(0)`
    pub fn f0(&self) -> Q01 {
        self.f.eval(&Q01::zero())
    }

    /// `f(0⁺)`
    pub fn f0_plus(&self) -> Q01 {
        self.f.one_sided_limit(&Q01::zero(), LimitSide::Right)
    }

    pub fn eval(&self, x: &Q01, y: &Q01) -> Q01 {
        self.f.pseudo_inverse(&self.s.eval(&self.f.eval(x), &self.f.eval(y)))
    }

    /// `F_M(x)`
    pub fn collapse(&self, x: &Q01) -> Q01 {
        f_cap(&self.m, &self.pair, x).expect("canonical pair covers the complement of M")
    }

    pub fn otimes(&self, x: &Q01, y: &Q01) -> Result<Q01, GenOpError> {
        for v in [x, y] {
            if !self.m.member(v) {
                return Err(GenOpError::NotInRange(v.clone()));
            }
        }
        Ok(self.otimes_unchecked(x, y))
    }

    /// `F_M(T*(x, y))` without the membership check.
    pub fn otimes_unchecked(&self, x: &Q01, y: &Q01) -> Q01 {
        self.collapse(&self.s.eval(x, y))
    }

    /// Limit of `T` at `(x, y)` when one coordinate approaches from one side.
    pub fn one_sided_limit(&self, x: &Q01, y: &Q01, dir: Direction) -> Q01 {
        let (fx, fy) = match dir {
            Direction::XLeft => (self.f.one_sided_limit(x, LimitSide::Left), self.f.eval(y)),
            Direction::XRight => (self.f.one_sided_limit(x, LimitSide::Right), self.f.eval(y)),
            Direction::YLeft => (self.f.eval(x), self.f.one_sided_limit(y, LimitSide::Left)),
            Direction::YRight => (self.f.eval(x), self.f.one_sided_limit(y, LimitSide::Right)),
        };
        self.f.pseudo_inverse(&self.s.eval(&fx, &fy))
    }

    /// Limit of `T(s, t)` as `(s, t) → (x, y)` from the open quadrant on the
    /// given sides. At `0` only the right side and at `1` only the left side
    /// exist inside the square; `Left` at `0` or `Right` at `1` uses the value.
    pub fn quadrant_limit(&self, x: &Q01, xs: LimitSide, y: &Q01, ys: LimitSide) -> Q01 {
        let side = |v: &Q01, s: LimitSide| -> Q01 {
            match s {
                LimitSide::Left if v.is_zero() => self.f.eval(v),
                LimitSide::Right if v.is_one() => self.f.eval(v),
                _ => self.f.one_sided_limit(v, s),
            }
        };
        self.f.pseudo_inverse(&self.s.eval(&side(x, xs), &side(y, ys)))
    }

    /// `i ⊕ j = max{k : a_k ≤ T*(a_i, a_j)}` with 1-based indices.
    pub fn oplus(triples: &TripleSequence, s: &OrdinalSumConorm, i: usize, j: usize) -> OplusResult {
        let t = triples.get(i);
        let u = triples.get(j);
        let target = s.eval(&t.a, &u.a);
        let index = triples
            .triples
            .iter()
            .rposition(|tr| tr.a <= target)
            .map(|p| p + 1)
            .unwrap_or(1);
        let m_ij = s.eval(&t.a, &u.b).min_of(&s.eval(&u.a, &t.b));
        OplusResult { index, m_ij }
    }
}
