//! Exact deciders for the conditions (D0)-(D8), the triple decomposition of
//! the range, and the resulting verdict.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::conorm::{OrdinalSumConorm, Summand};
use crate::genop::GeneratedOp;
use crate::numeric::Q01;
use crate::rangeset::{GenInterval, RangeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionId {
    D0,
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    D8,
    #[serde(rename = "D8PRIME")]
    D8Prime,
    HypIdempotent,
    HypSummand,
    HypA0,
    Eq45,
    Eq46,
    CorI,
    CorII,
    CorIII,
}

impl ConditionId {
    pub fn as_str(self) -> &'static str {
        match self {
            ConditionId::D0 => "D0",
            ConditionId::D1 => "D1",
            ConditionId::D2 => "D2",
            ConditionId::D3 => "D3",
            ConditionId::D4 => "D4",
            ConditionId::D5 => "D5",
            ConditionId::D6 => "D6",
            ConditionId::D7 => "D7",
            ConditionId::D8 => "D8",
            ConditionId::D8Prime => "D8PRIME",
            ConditionId::HypIdempotent => "HYP_IDEMPOTENT",
            ConditionId::HypSummand => "HYP_SUMMAND",
            ConditionId::HypA0 => "HYP_A0",
            ConditionId::Eq45 => "EQ45",
            ConditionId::Eq46 => "EQ46",
            ConditionId::CorI => "COR_I",
            ConditionId::CorII => "COR_II",
            ConditionId::CorIII => "COR_III",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evidence attached to a failed condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    None,
    Set(RangeSet),
    Indices { i: usize, j: usize, k: usize },
    Gap { k: usize, b: Q01, c: Q01, d: Q01 },
    Closure { x: Q01, y: Q01, value: Q01 },
    Triple { x: Q01, y: Q01, z: Q01, lhs: Q01, rhs: Q01 },
    Point { point: Q01 },
    Reason { code: String, message: String },
}

impl Witness {
    pub fn is_none(&self) -> bool {
        matches!(self, Witness::None)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::None => write!(f, "-"),
            Witness::Set(s) => write!(f, "{s}"),
            Witness::Indices { i, j, k } => write!(f, "(i,j,k) = ({i},{j},{k})"),
            Witness::Gap { k, b, c, d } => write!(f, "k={k}: [b,d] = [{b},{d}], c = {c}"),
            Witness::Closure { x, y, value } => write!(f, "{x} ⊗ {y} = {value} escapes the set"),
            Witness::Triple { x, y, z, lhs, rhs } => {
                write!(f, "(x,y,z) = ({x},{y},{z}): {lhs} ≠ {rhs}")
            }
            Witness::Point { point } => write!(f, "{point}"),
            Witness::Reason { code, message } => write!(f, "{code}: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: ConditionId,
    pub holds: bool,
    pub witness: Witness,
    pub notes: String,
}

impl ConditionReport {
    fn new(condition: ConditionId, witness: Witness, notes: impl Into<String>) -> Self {
        ConditionReport { condition, holds: witness.is_none(), witness, notes: notes.into() }
    }

    fn from_set(condition: ConditionId, set: RangeSet, notes: impl Into<String>) -> Self {
        let witness = if set.is_empty() { Witness::None } else { Witness::Set(set) };
        Self::new(condition, witness, notes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub a: Q01,
    pub b: Q01,
    pub c: Q01,
}

impl Triple {
    pub fn new(a: Q01, b: Q01, c: Q01) -> Self {
        Triple { a, b, c }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Why the range is not of the triple form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecomposeFailure {
    pub code: &'static str,
    pub message: String,
}

impl DecomposeFailure {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        DecomposeFailure { code, message: message.into() }
    }
}

impl fmt::Display for DecomposeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

/// `{(a_i, b_i, c_i)}` for `i = 1..n`, together with `f(0)` and `f(0⁺)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSequence {
    pub triples: Vec<Triple>,
    pub f0: Q01,
    pub f0plus: Q01,
}

impl TripleSequence {
    pub fn new(triples: Vec<Triple>, f0: Q01, f0plus: Q01) -> Self {
        TripleSequence { triples, f0, f0plus }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// 1-based access.
    pub fn get(&self, i: usize) -> &Triple {
        &self.triples[i - 1]
    }

    /// `d_i = a_{i+1}`, or `1` for the last index.
    pub fn d(&self, i: usize) -> Q01 {
        self.triples.get(i).map(|t| t.a.clone()).unwrap_or_else(Q01::one)
    }

    /// Check every ordering constraint of the triple form.
    pub fn validate(&self) -> Result<(), DecomposeFailure> {
        let Some(first) = self.triples.first() else {
            return Err(DecomposeFailure::new("empty", "no triples"));
        };
        if first.a != self.f0plus {
            return Err(DecomposeFailure::new(
                "a1_mismatch",
                format!("a_1 = {} differs from f(0+) = {}", first.a, self.f0plus),
            ));
        }
        for (n, t) in self.triples.iter().enumerate() {
            let i = n + 1;
            if !(t.a < t.b && t.b <= t.c) {
                return Err(DecomposeFailure::new(
                    "order_violation",
                    format!("a_i<b_i<=c_i violated at i={i}: {t}"),
                ));
            }
            if let Some(next) = self.triples.get(i) {
                if !(t.b < next.a && t.c <= next.a) {
                    return Err(DecomposeFailure::new(
                        "order_violation",
                        format!("b_i<a_(i+1), c_i<=a_(i+1) violated at i={i}"),
                    ));
                }
            }
        }
        let n = self.triples.len();
        if n >= 2 && self.triples[n - 1].b.is_one() {
            return Err(DecomposeFailure::new("bn_not_below_one", format!("b_n<1 violated at n={n}")));
        }
        Ok(())
    }

    /// `{f(0)} ∪ ⋃ ((a_i, b_i) ∪ {c_i})`.
    pub fn reconstruct(&self) -> RangeSet {
        let mut raw = vec![GenInterval::point(self.f0.clone())];
        for t in &self.triples {
            raw.push(GenInterval::open(t.a.clone(), t.b.clone()));
            raw.push(GenInterval::point(t.c.clone()));
        }
        RangeSet::normalize(raw)
    }

    pub fn c_values(&self) -> Vec<Q01> {
        self.triples.iter().map(|t| t.c.clone()).collect()
    }
}

impl fmt::Display for TripleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, t) in self.triples.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    BorderContinuousTconorm,
    NotTconorm,
    HypothesesNotMet,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::BorderContinuousTconorm => "border_continuous_tconorm",
            Conclusion::NotTconorm => "not_tconorm",
            Conclusion::HypothesesNotMet => "hypotheses_not_met",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    F0plusPositive,
    F0plusZero,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::F0plusPositive => "f0plus_positive",
            Branch::F0plusZero => "f0plus_zero",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D7Mode {
    /// The per-`(i,j,k)` "either ... or ..." reading.
    Disjunction,
    /// The interval-avoidance form of Eqs. (4.5) and (4.6).
    Eq45Eq46,
}

/// The summand `<m, n>` whose open carrier contains `f((0,1))`.
pub fn hypothesis_summand(g: &GeneratedOp) -> Option<&Summand> {
    let interior = g.generator().interior_range();
    g.conorm()
        .summands()
        .iter()
        .find(|s| interior.is_subset(&RangeSet::interval(s.carrier())))
}

pub fn check_hypotheses(g: &GeneratedOp) -> Vec<ConditionReport> {
    let f0p = g.f0_plus();
    let s = g.conorm();

    let idem = match s.carrier_of(&f0p) {
        None => ConditionReport::new(ConditionId::HypIdempotent, Witness::None, format!("f(0+) = {f0p} is idempotent")),
        Some(sm) => ConditionReport::new(
            ConditionId::HypIdempotent,
            Witness::Point { point: f0p.clone() },
            format!("f(0+) = {f0p} lies inside the carrier ({},{})", sm.lo, sm.hi),
        ),
    };

    let interior = g.generator().interior_range();
    let summand = match hypothesis_summand(g) {
        Some(sm) => ConditionReport::new(
            ConditionId::HypSummand,
            Witness::None,
            format!("f((0,1)) ⊆ ({},{}) of <{},{},{}>", sm.lo, sm.hi, sm.lo, sm.hi, sm.kind),
        ),
        None => ConditionReport::new(
            ConditionId::HypSummand,
            Witness::Set(interior.clone()),
            format!("f((0,1)) = {interior} lies in no single summand carrier"),
        ),
    };

    let m = g.range();
    let above = m.intersection(&RangeSet::interval(GenInterval::open_closed(f0p.clone(), Q01::one())));
    let a0 = match above.parts().first() {
        Some(p) if p.lo().value == f0p && !p.is_point() => ConditionReport::new(
            ConditionId::HypA0,
            Witness::None,
            format!("({f0p},{}] ⊆ M", p.hi().value.midpoint(&f0p)),
        ),
        first => {
            let reach = first.map(|p| p.lo().value.clone()).unwrap_or_else(Q01::one);
            let hole = m.complement().intersection(&RangeSet::interval(GenInterval::closed(f0p.clone(), reach)));
            ConditionReport::new(
                ConditionId::HypA0,
                Witness::Set(hole),
                format!("no interval (f(0+), ε] = ({f0p}, ε] lies in M"),
            )
        }
    };
    vec![idem, summand, a0]
}

struct DSets {
    m: RangeSet,
    m_minus_c: RangeSet,
    m_minus_one: RangeSet,
    c_minus_f0: RangeSet,
    bc: RangeSet,
}

fn d_sets(g: &GeneratedOp) -> DSets {
    let m = g.range().clone();
    let c = RangeSet::points(g.pair().reps());
    let bc = RangeSet::normalize(
        g.pair()
            .gaps()
            .iter()
            .map(|gap| GenInterval::closed(gap.lo.clone(), gap.rep.clone()))
            .collect(),
    );
    DSets {
        m_minus_c: m.difference(&c),
        m_minus_one: m.without_point(&Q01::one()),
        c_minus_f0: c.without_point(&g.f0()),
        bc,
        m,
    }
}

pub fn check_d0(g: &GeneratedOp) -> ConditionReport {
    let bad = g
        .pair()
        .gaps()
        .iter()
        .enumerate()
        .find(|(_, gap)| gap.hi < Q01::one() && gap.rep >= gap.hi);
    match bad {
        Some((k, gap)) => ConditionReport::new(
            ConditionId::D0,
            Witness::Gap { k: k + 1, b: gap.lo.clone(), c: gap.rep.clone(), d: gap.hi.clone() },
            "c_k = d_k < 1",
        ),
        None => ConditionReport::new(ConditionId::D0, Witness::None, "c_k < d_k whenever d_k < 1"),
    }
}

pub fn check_d1(g: &GeneratedOp) -> ConditionReport {
    let s = d_sets(g);
    let img = g.conorm().set_image(&s.m_minus_one, &s.c_minus_f0);
    ConditionReport::from_set(
        ConditionId::D1,
        img.intersection(&s.m_minus_c),
        format!("T*(M\\{{1}}, C\\{{f(0)}}) = {img}; M\\C = {}", s.m_minus_c),
    )
}

pub fn check_d2(g: &GeneratedOp) -> ConditionReport {
    let s = d_sets(g);
    let img = g.conorm().set_image(&s.m_minus_one, &s.bc);
    ConditionReport::from_set(
        ConditionId::D2,
        img.intersection(&s.m_minus_c),
        format!("T*(M\\{{1}}, ∪[b_k,c_k]) = {img}"),
    )
}

pub fn check_d3(g: &GeneratedOp) -> ConditionReport {
    let s = d_sets(g);
    let ds = RangeSet::points(g.pair().gaps().iter().filter(|gap| gap.hi < Q01::one()).map(|gap| gap.hi.clone()));
    let img = g.conorm().set_image(&s.m, &s.m_minus_c);
    ConditionReport::from_set(ConditionId::D3, img.intersection(&ds), format!("{{d_k < 1}} = {ds}"))
}

pub fn check_d4(g: &GeneratedOp) -> ConditionReport {
    let c = g.pair().reps();
    let witness = semigroup_witness(g, &c);
    ConditionReport::new(ConditionId::D4, witness, format!("C = {}", list(&c)))
}

pub fn check_d5(g: &GeneratedOp) -> ConditionReport {
    let s = d_sets(g);
    let img = g.conorm().set_image(&s.m_minus_one.union(&s.bc), &s.bc);
    ConditionReport::from_set(
        ConditionId::D5,
        img.intersection(&s.m_minus_c),
        format!("T*((M\\{{1}}) ∪ B, B) = {img} with B = ∪[b_k,c_k] = {}", s.bc),
    )
}

/// Dispatch for `D0`..`D5`.
pub fn check_d(g: &GeneratedOp, which: ConditionId) -> Option<ConditionReport> {
    Some(match which {
        ConditionId::D0 => check_d0(g),
        ConditionId::D1 => check_d1(g),
        ConditionId::D2 => check_d2(g),
        ConditionId::D3 => check_d3(g),
        ConditionId::D4 => check_d4(g),
        ConditionId::D5 => check_d5(g),
        _ => return None,
    })
}

fn list(v: &[Q01]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Closure and associativity of `⊗` on a finite subset of `M`.
fn semigroup_witness(g: &GeneratedOp, elems: &[Q01]) -> Witness {
    for x in elems {
        for y in elems {
            let v = g.otimes_unchecked(x, y);
            if !elems.contains(&v) {
                return Witness::Closure { x: x.clone(), y: y.clone(), value: v };
            }
        }
    }
    for x in elems {
        for y in elems {
            let xy = g.otimes_unchecked(x, y);
            for z in elems {
                let lhs = g.otimes_unchecked(&xy, z);
                let rhs = g.otimes_unchecked(x, &g.otimes_unchecked(y, z));
                if lhs != rhs {
                    return Witness::Triple { x: x.clone(), y: y.clone(), z: z.clone(), lhs, rhs };
                }
            }
        }
    }
    Witness::None
}

/// Split `M` into `{f(0)} ∪ ⋃ ((a_i,b_i) ∪ {c_i})`.
pub fn decompose_triples(g: &GeneratedOp) -> Result<TripleSequence, DecomposeFailure> {
    let f0 = g.f0();
    let f0plus = g.f0_plus();
    let rest = g.range().without_point(&f0);

    let mut triples = Vec::new();
    let mut pending: Option<(Q01, Q01)> = None;
    for part in rest.parts() {
        let mut part = part.clone();
        if let Some((a, b)) = pending.take() {
            if part.is_point() {
                triples.push(Triple::new(a, b, part.lo().value.clone()));
                continue;
            }
            if !part.lo().is_closed() {
                return Err(DecomposeFailure::new(
                    "missing_c",
                    format!("({a},{b}) is followed by an open part {part} instead of a point c_i"),
                ));
            }
            // [l, h⟩ supplies c_i = l and starts the next triple at a = l
            let l = part.lo().value.clone();
            triples.push(Triple::new(a, b, l.clone()));
            part = GenInterval::new(crate::rangeset::Bound::open(l), part.hi().clone())
                .expect("positive length part");
        }
        if part.is_point() {
            return Err(DecomposeFailure::new(
                "stray_point",
                format!("isolated point {} does not follow an open interval", part.lo().value),
            ));
        }
        if part.lo().is_closed() {
            return Err(DecomposeFailure::new(
                "closed_start",
                format!("part {part} starts closed without a preceding interval"),
            ));
        }
        let (a, b) = (part.lo().value.clone(), part.hi().value.clone());
        if part.hi().is_closed() {
            triples.push(Triple::new(a, b.clone(), b));
        } else {
            pending = Some((a, b));
        }
    }
    if let Some((a, b)) = pending {
        return Err(DecomposeFailure::new("missing_c", format!("({a},{b}) has no closing point c_n")));
    }
    let seq = TripleSequence::new(triples, f0, f0plus);
    seq.validate()?;
    debug_assert_eq!(&seq.reconstruct(), g.range());
    Ok(seq)
}

struct D7Terms {
    taa: Q01,
    tbb: Q01,
    tcc: Q01,
    m_ij: Q01,
}

fn d7_terms(t: &TripleSequence, s: &OrdinalSumConorm, i: usize, j: usize) -> D7Terms {
    let (ti, tj) = (t.get(i), t.get(j));
    D7Terms {
        taa: s.eval(&ti.a, &tj.a),
        tbb: s.eval(&ti.b, &tj.b),
        tcc: s.eval(&ti.c, &tj.c),
        m_ij: s.eval(&ti.a, &tj.b).min_of(&s.eval(&tj.a, &ti.b)),
    }
}

fn eq45_at(terms: &D7Terms, k: &Triple) -> bool {
    // (m_ij, T*(c_i,c_j)) ∩ (a_k, b_k) = ∅
    terms.m_ij.max_of(&k.a) >= terms.tcc.min_of(&k.b)
}

fn eq46_at(terms: &D7Terms, k: &Triple) -> bool {
    !(terms.taa < k.a && k.a < terms.tbb)
}

fn disjunction_at(terms: &D7Terms, k: &Triple) -> bool {
    (k.a <= terms.taa && k.b <= terms.m_ij) || terms.tcc <= k.a
}

/// First `(i,j,k)` in lexicographic order violating `pred`.
fn first_violation(t: &TripleSequence, s: &OrdinalSumConorm, pred: impl Fn(&D7Terms, &Triple) -> bool) -> Witness {
    let n = t.len();
    for i in 1..=n {
        for j in 1..=n {
            let terms = d7_terms(t, s, i, j);
            for k in 1..=n {
                if !pred(&terms, t.get(k)) {
                    return Witness::Indices { i, j, k };
                }
            }
        }
    }
    Witness::None
}

pub fn check_d7(t: &TripleSequence, s: &OrdinalSumConorm, mode: D7Mode) -> ConditionReport {
    match mode {
        D7Mode::Disjunction => ConditionReport::new(
            ConditionId::D7,
            first_violation(t, s, disjunction_at),
            "a_k ≤ T*(a_i,a_j) and b_k ≤ m_ij, or T*(c_i,c_j) ≤ a_k, for every (i,j,k)",
        ),
        D7Mode::Eq45Eq46 => ConditionReport::new(
            ConditionId::D7,
            first_violation(t, s, |terms, k| eq45_at(terms, k) && eq46_at(terms, k)),
            "checked as (m_ij, T*(c_i,c_j)) ∩ (a_k,b_k) = ∅ and a_k ∉ (T*(a_i,a_j), T*(b_i,b_j))",
        ),
    }
}

pub fn check_eq45(t: &TripleSequence, s: &OrdinalSumConorm) -> ConditionReport {
    ConditionReport::new(
        ConditionId::Eq45,
        first_violation(t, s, eq45_at),
        "(min{T*(a_i,b_j),T*(a_j,b_i)}, T*(c_i,c_j)) ∩ (a_k,b_k) = ∅",
    )
}

pub fn check_eq46(t: &TripleSequence, s: &OrdinalSumConorm) -> ConditionReport {
    ConditionReport::new(ConditionId::Eq46, first_violation(t, s, eq46_at), "a_k ∉ (T*(a_i,a_j), T*(b_i,b_j))")
}

pub fn check_d8(g: &GeneratedOp, t: &TripleSequence, include_c0: bool) -> ConditionReport {
    let mut elems = t.c_values();
    if include_c0 {
        elems.insert(0, t.f0.clone());
    }
    elems.sort();
    elems.dedup();
    let id = if include_c0 { ConditionId::D8 } else { ConditionId::D8Prime };
    let witness = semigroup_witness(g, &elems);
    ConditionReport::new(id, witness, format!("semigroup check over {}", list(&elems)))
}

/// Items (i)-(iii) of the closing corollary as explicit set computations.
pub fn corollary_check(g: &GeneratedOp, t: &TripleSequence) -> Vec<ConditionReport> {
    let s = g.conorm();
    let n = t.len();
    let mut first = Vec::new();
    let mut second = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let terms = d7_terms(t, s, i, j);
            first.extend(GenInterval::try_new(
                crate::rangeset::Bound::open(terms.m_ij.clone()),
                crate::rangeset::Bound::open(terms.tcc.clone()),
            ));
            second.extend(GenInterval::try_new(
                crate::rangeset::Bound::open(terms.taa.clone()),
                crate::rangeset::Bound::open(terms.tbb.clone()),
            ));
        }
    }
    let inner = RangeSet::normalize(
        t.triples.iter().map(|tr| GenInterval::open(tr.a.clone(), tr.b.clone())).collect(),
    );
    let a_points = RangeSet::points(t.triples.iter().map(|tr| tr.a.clone()));
    let first = RangeSet::normalize(first);
    let second = RangeSet::normalize(second);

    let d8 = check_d8(g, t, !g.f0_plus().is_zero());
    vec![
        ConditionReport::from_set(
            ConditionId::CorI,
            first.intersection(&inner),
            format!("∪(m_ij, T*(c_i,c_j)) = {first}; ∪(a_i,b_i) = {inner}"),
        ),
        ConditionReport::from_set(
            ConditionId::CorII,
            second.intersection(&a_points),
            format!("∪(T*(a_i,a_j), T*(b_i,b_j)) = {second}"),
        ),
        ConditionReport { condition: ConditionId::CorIII, ..d8 },
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub hypothesis_ok: bool,
    pub hypotheses: Vec<ConditionReport>,
    pub conditions: Vec<ConditionReport>,
    pub corollary: Vec<ConditionReport>,
    pub conclusion: Conclusion,
    pub branch: Branch,
    pub triples: Option<TripleSequence>,
}

impl Verdict {
    pub fn report(&self, id: ConditionId) -> Option<&ConditionReport> {
        self.hypotheses
            .iter()
            .chain(&self.conditions)
            .chain(&self.corollary)
            .find(|r| r.condition == id)
    }

    pub fn holds(&self, id: ConditionId) -> Option<bool> {
        self.report(id).map(|r| r.holds)
    }

    /// Internal cross-checks that must agree whenever the hypotheses hold.
    pub fn consistency_issues(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if !self.hypothesis_ok {
            return issues;
        }
        let h = |id| self.holds(id);
        if let (Some(d7), Some(e45), Some(e46)) = (h(ConditionId::D7), h(ConditionId::Eq45), h(ConditionId::Eq46)) {
            if d7 != (e45 && e46) {
                issues.push(format!("D7 = {d7} but EQ45 ∧ EQ46 = {}", e45 && e46));
            }
            if let (Some(c1), Some(c2)) = (h(ConditionId::CorI), h(ConditionId::CorII)) {
                if d7 != (c1 && c2) {
                    issues.push(format!("D7 = {d7} but COR_I ∧ COR_II = {}", c1 && c2));
                }
            }
        }
        let d8 = h(ConditionId::D8).or(h(ConditionId::D8Prime));
        if let (Some(d8), Some(c3)) = (d8, h(ConditionId::CorIII)) {
            if d8 != c3 {
                issues.push(format!("D8 = {d8} but COR_III = {c3}"));
            }
        }
        if self.conclusion == Conclusion::BorderContinuousTconorm {
            for id in [ConditionId::D0, ConditionId::D1, ConditionId::D2, ConditionId::D3, ConditionId::D4, ConditionId::D5] {
                if h(id) == Some(false) {
                    issues.push(format!("{id} fails although the verdict is positive"));
                }
            }
        }
        issues
    }
}

pub fn theorem_verdict(g: &GeneratedOp) -> Verdict {
    let hypotheses = check_hypotheses(g);
    let hypothesis_ok = hypotheses.iter().all(|r| r.holds);
    let branch = if g.f0_plus().is_zero() { Branch::F0plusZero } else { Branch::F0plusPositive };

    let mut conditions: Vec<ConditionReport> = [
        ConditionId::D0,
        ConditionId::D1,
        ConditionId::D2,
        ConditionId::D3,
        ConditionId::D4,
        ConditionId::D5,
    ]
    .into_iter()
    .filter_map(|id| check_d(g, id))
    .collect();

    let mut corollary = Vec::new();
    let decomposition = decompose_triples(g);
    let positive = match &decomposition {
        Ok(t) => {
            conditions.push(ConditionReport::new(ConditionId::D6, Witness::None, format!("M is determined by {t}")));
            let d7 = check_d7(t, g.conorm(), D7Mode::Disjunction);
            let d8 = check_d8(g, t, branch == Branch::F0plusPositive);
            let positive = d7.holds && d8.holds;
            conditions.push(d7);
            conditions.push(check_eq45(t, g.conorm()));
            conditions.push(check_eq46(t, g.conorm()));
            conditions.push(d8);
            corollary = corollary_check(g, t);
            positive
        }
        Err(e) => {
            conditions.push(ConditionReport::new(
                ConditionId::D6,
                Witness::Reason { code: e.code.to_string(), message: e.message.clone() },
                "M is not of the triple form",
            ));
            false
        }
    };

    let conclusion = if !hypothesis_ok {
        Conclusion::HypothesesNotMet
    } else if positive {
        Conclusion::BorderContinuousTconorm
    } else {
        Conclusion::NotTconorm
    };
    Verdict {
        hypothesis_ok,
        hypotheses,
        conditions,
        corollary,
        conclusion,
        branch,
        triples: decomposition.ok(),
    }
}
