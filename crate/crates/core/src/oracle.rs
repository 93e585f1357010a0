//! Brute-force checks of the t-conorm axioms that do not rely on the
//! characterization: exhaustive sweeps over probe sets, analytic border
//! continuity, cancellation desk checks and a counterexample search.
//!
//! Sweeps can only falsify. A passing axiom is reported as `not_falsified`.
//! When several violations exist the lexicographically first one (by probe
//! index) is reported, so output is independent of thread scheduling.

use std::collections::HashMap;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::conditions::{theorem_verdict, Conclusion, ConditionReport, TripleSequence, Verdict, Witness};
use crate::conorm::OrdinalSumConorm;
use crate::generator::LimitSide;
use crate::genop::GeneratedOp;
use crate::numeric::{Q01, Rat};
use crate::rangeset::GenInterval;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeSet {
    pub points: Vec<Q01>,
    pub denominator: u64,
    /// Non-grid points that were added.
    pub critical: Vec<Q01>,
}

impl ProbeSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &Q01) -> bool {
        self.points.binary_search(x).is_ok()
    }

    /// Probe set built from explicit points only.
    pub fn from_points(points: impl IntoIterator<Item = Q01>) -> Self {
        let mut points: Vec<Q01> = points.into_iter().collect();
        points.sort();
        points.dedup();
        ProbeSet { critical: points.clone(), points, denominator: 0 }
    }
}

/// Grid `i/D` plus piece boundaries, gap endpoints, summand endpoints, the
/// images of the grid under `f`, and the pullbacks through `f⁽⁻¹⁾` of all of
/// those range values.
pub fn build_probes(g: &GeneratedOp, denominator: u64) -> ProbeSet {
    assert!(denominator >= 2, "probe denominator must be at least 2");
    let d = denominator as i64;
    let grid: Vec<Q01> = (0..=d).map(|i| Q01::frac(i, d)).collect();

    let f = g.generator();
    let mut raw: Vec<Q01> = f.boundaries();
    let mut values = Vec::new();
    for gap in g.pair().all_gaps() {
        values.extend([gap.lo.clone(), gap.rep.clone(), gap.hi.clone()]);
    }
    for s in g.conorm().summands() {
        values.extend([s.lo.clone(), s.hi.clone()]);
    }
    values.extend(grid.iter().map(|x| f.eval(x)));
    values.extend(grid.iter().cloned());
    raw.extend(values.iter().map(|v| f.pseudo_inverse(v)));
    raw.extend(values);

    let mut points: Vec<Q01> = grid.iter().cloned().chain(raw.iter().cloned()).collect();
    points.sort();
    points.dedup();
    let mut critical: Vec<Q01> = raw.into_iter().filter(|x| grid.binary_search(x).is_err()).collect();
    critical.sort();
    critical.dedup();
    ProbeSet { points, denominator, critical }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    NotFalsified,
    Failed,
}

impl Status {
    fn from_witness<T>(w: &Option<T>) -> Self {
        if w.is_some() {
            Status::Failed
        } else {
            Status::NotFalsified
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    T1,
    T2,
    T3,
    S4,
}

/// An exact violation.
///
/// - T1: `lhs = T(x,y)`, `rhs = T(y,x)`.
/// - T2: `lhs = T(T(x,y),z)`, `rhs = T(x,T(y,z))`.
/// - T3: `x < y` but `lhs = T(x,z) > rhs = T(y,z)`.
/// - S4: `lhs = T(x,0)`, `rhs = x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub x: Q01,
    pub y: Q01,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Q01>,
    pub lhs: Q01,
    pub rhs: Q01,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub status: Status,
    pub witness: Option<Counterexample>,
}

/// A boundary point where the lower and upper limits of `T` differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discontinuity {
    pub x: Q01,
    pub y: Q01,
    pub lower: Q01,
    pub value: Q01,
    pub upper: Q01,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorderReport {
    pub status: Status,
    pub witness: Option<Discontinuity>,
    /// Limit of `T` at `(0,0)` from inside the square.
    pub origin_limit: Q01,
    /// `T` continuous at `(0,0)` with `T(0,0) = 0`.
    pub origin_ok: bool,
    pub f0plus_idempotent: bool,
    pub s4_ok: bool,
    /// The three equivalent statements agree.
    pub equivalence_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeMeta {
    pub denominator: u64,
    pub size: usize,
    pub critical: Vec<Q01>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub probes: ProbeMeta,
    pub axioms: Vec<AxiomResult>,
    pub border_continuity: BorderReport,
    /// The associativity counterexample, when one was found.
    pub counterexample: Option<Counterexample>,
}

impl OracleReport {
    pub fn axiom(&self, a: Axiom) -> &AxiomResult {
        self.axioms.iter().find(|r| r.axiom == a).expect("all axioms are checked")
    }

    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|r| r.status == Status::NotFalsified)
            && self.border_continuity.status == Status::NotFalsified
    }
}

/// `T` on all probe pairs, row-major.
struct Table {
    n: usize,
    values: Vec<Q01>,
}

impl Table {
    fn new(g: &GeneratedOp, p: &[Q01]) -> Self {
        let n = p.len();
        let values = (0..n * n)
            .into_par_iter()
            .map(|ix| g.eval(&p[ix / n], &p[ix % n]))
            .collect();
        Table { n, values }
    }

    fn get(&self, i: usize, j: usize) -> &Q01 {
        &self.values[i * self.n + j]
    }
}

fn first_pair<F>(n: usize, f: F) -> Option<Counterexample>
where
    F: Fn(usize, usize) -> Option<Counterexample> + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|i| (0..n).find_map(|j| f(i, j)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next()
}

fn t2_sweep(g: &GeneratedOp, p: &[Q01], table: &Table) -> Option<Counterexample> {
    let n = p.len();
    let index: HashMap<&Q01, usize> = p.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let t = |u: &Q01, k: usize, right: bool| -> Q01 {
        match index.get(u) {
            Some(&i) if right => table.get(i, k).clone(),
            Some(&i) => table.get(k, i).clone(),
            None if right => g.eval(u, &p[k]),
            None => g.eval(&p[k], u),
        }
    };
    (0..n)
        .into_par_iter()
        .map(|i| {
            for j in 0..n {
                let xy = table.get(i, j);
                for k in 0..n {
                    let lhs = t(xy, k, true);
                    let rhs = t(table.get(j, k), i, false);
                    if lhs != rhs {
                        return Some(Counterexample {
                            x: p[i].clone(),
                            y: p[j].clone(),
                            z: Some(p[k].clone()),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
            None
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next()
}

/// Exhaustive check of T1, T3 and S4 over probe pairs and T2 over probe triples.
pub fn axiom_check(g: &GeneratedOp, probes: &ProbeSet) -> OracleReport {
    let p = &probes.points;
    let n = p.len();
    let table = Table::new(g, p);

    let t1 = first_pair(n, |i, j| {
        (table.get(i, j) != table.get(j, i)).then(|| Counterexample {
            x: p[i].clone(),
            y: p[j].clone(),
            z: None,
            lhs: table.get(i, j).clone(),
            rhs: table.get(j, i).clone(),
        })
    });
    // consecutive probes suffice by transitivity; both argument slots
    let t3 = (0..n.saturating_sub(1))
        .into_par_iter()
        .map(|i| {
            (0..n).find_map(|k| {
                let viol = |a: &Q01, b: &Q01| (a > b).then(|| (a.clone(), b.clone()));
                viol(table.get(i, k), table.get(i + 1, k))
                    .or_else(|| viol(table.get(k, i), table.get(k, i + 1)))
                    .map(|(lhs, rhs)| Counterexample {
                        x: p[i].clone(),
                        y: p[i + 1].clone(),
                        z: Some(p[k].clone()),
                        lhs,
                        rhs,
                    })
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next();
    let zero = Q01::zero();
    let s4 = p.iter().find_map(|x| {
        let v = g.eval(x, &zero);
        (v != *x).then(|| Counterexample { x: x.clone(), y: zero.clone(), z: None, lhs: v, rhs: x.clone() })
    });
    let t2 = t2_sweep(g, p, &table);

    let border = border_continuity_check(g, probes);
    let result = |axiom, witness: Option<Counterexample>| AxiomResult { axiom, status: Status::from_witness(&witness), witness };
    OracleReport {
        probes: ProbeMeta { denominator: probes.denominator, size: n, critical: probes.critical.clone() },
        counterexample: t2.clone(),
        axioms: vec![result(Axiom::T1, t1), result(Axiom::T2, t2), result(Axiom::T3, t3), result(Axiom::S4, s4)],
        border_continuity: border,
    }
}

fn lower_upper(g: &GeneratedOp, x: &Q01, y: &Q01) -> (Q01, Q01) {
    (
        g.quadrant_limit(x, LimitSide::Left, y, LimitSide::Left),
        g.quadrant_limit(x, LimitSide::Right, y, LimitSide::Right),
    )
}

/// Continuity of `T` at every probe point of the four edges.
///
/// `T` is non-decreasing in each argument and `f⁽⁻¹⁾`, `T*` are continuous,
/// so `T` is continuous at `(x,y)` iff its lower-left and upper-right
/// quadrant limits coincide. Discontinuities on an edge can only sit at
/// breakpoints of `f`, which every probe set contains.
pub fn border_continuity_check(g: &GeneratedOp, probes: &ProbeSet) -> BorderReport {
    let (zero, one) = (Q01::zero(), Q01::one());
    let mut edge_points = Vec::with_capacity(4 * probes.len());
    for p in &probes.points {
        edge_points.extend([
            (p.clone(), zero.clone()),
            (zero.clone(), p.clone()),
            (p.clone(), one.clone()),
            (one.clone(), p.clone()),
        ]);
    }
    edge_points.sort();
    edge_points.dedup();
    let witness = edge_points
        .par_iter()
        .map(|(x, y)| {
            let (lower, upper) = lower_upper(g, x, y);
            (lower != upper).then(|| Discontinuity { x: x.clone(), y: y.clone(), value: g.eval(x, y), lower, upper })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next();

    let origin_limit = g.quadrant_limit(&zero, LimitSide::Right, &zero, LimitSide::Right);
    let origin_ok = origin_limit.is_zero() && g.eval(&zero, &zero).is_zero();
    let f0plus_idempotent = g.conorm().is_idempotent(&g.f0_plus());
    let s4_ok = probes.points.iter().all(|x| g.eval(x, &zero) == *x);
    let border_ok = witness.is_none() && s4_ok;
    BorderReport {
        status: Status::from_witness(&witness),
        witness,
        origin_limit,
        origin_ok,
        f0plus_idempotent,
        s4_ok,
        equivalence_agrees: origin_ok == f0plus_idempotent && f0plus_idempotent == border_ok,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CancellationWitness {
    pub x: Q01,
    pub y: Q01,
    pub z: Q01,
    pub value: Q01,
}

/// `S(x,y) = S(x,z) < cap` implies `y = z`, over all probe triples.
pub fn cancellation_check(s: &OrdinalSumConorm, probes: &[Q01], cap: &Q01) -> Option<CancellationWitness> {
    for x in probes {
        for (n, y) in probes.iter().enumerate() {
            let v = s.eval(x, y);
            if v >= *cap {
                continue;
            }
            for z in &probes[n + 1..] {
                if z != y && s.eval(x, z) == v {
                    return Some(CancellationWitness { x: x.clone(), y: y.clone(), z: z.clone(), value: v });
                }
            }
        }
    }
    None
}

/// The conditional cancellation law inside each summand, with cap at its top.
pub fn summand_cancellation(s: &OrdinalSumConorm, denominator: i64) -> Vec<Option<CancellationWitness>> {
    s.summands()
        .iter()
        .map(|sm| {
            let pts: Vec<Q01> = (0..=denominator)
                .map(|i| lerp(&sm.lo, &sm.hi, &Rat::new(i.into(), denominator.into())))
                .collect();
            cancellation_check(s, &pts, &sm.hi)
        })
        .collect()
}

fn lerp(lo: &Q01, hi: &Q01, t: &Rat) -> Q01 {
    Q01::clamp_rat(lo.as_rat() + (hi.as_rat() - lo.as_rat()) * t)
}

/// An associativity violation of `⊗` on `M`, with the preimages in `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    /// `(x ⊗ y) ⊗ z` vs `x ⊗ (y ⊗ z)` on range values.
    pub range: Counterexample,
    /// `T(T(x',y'),z')` vs `T(x',T(y',z'))` with `f(x') = x` etc.
    pub domain: Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { evaluated: usize, hit: SearchHit },
    NotFound { evaluated: usize },
}

impl SearchOutcome {
    pub fn hit(&self) -> Option<&SearchHit> {
        match self {
            SearchOutcome::Found { hit, .. } => Some(hit),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

fn dyadic_inside(part: &GenInterval, depth: u32, out: &mut Vec<Q01>) {
    let (lo, hi) = (&part.lo().value, &part.hi().value);
    if part.lo().is_closed() {
        out.push(lo.clone());
    }
    if part.hi().is_closed() {
        out.push(hi.clone());
    }
    if part.is_point() {
        return;
    }
    let mut delta = Rat::new(1.into(), 2.into());
    for _ in 0..depth {
        out.push(lerp(lo, hi, &delta));
        out.push(lerp(lo, hi, &(Rat::one() - &delta)));
        delta /= Rat::from_integer(2.into());
    }
}

fn candidates(g: &GeneratedOp, failed: &ConditionReport, triples: Option<&TripleSequence>) -> Vec<Q01> {
    let m = g.range();
    let mut out = Vec::new();
    match &failed.witness {
        Witness::Set(set) => {
            for part in set.parts() {
                dyadic_inside(part, 4, &mut out);
            }
        }
        Witness::Indices { i, j, k } => {
            if let Some(t) = triples {
                for ix in [*i, *j, *k] {
                    let tr = t.get(ix);
                    dyadic_inside(&GenInterval::open(tr.a.clone(), tr.b.clone()), 4, &mut out);
                    out.push(tr.c.clone());
                }
            }
        }
        Witness::Gap { b, c, d, .. } => out.extend([b.clone(), c.clone(), d.clone()]),
        Witness::Closure { x, y, value } => out.extend([x.clone(), y.clone(), value.clone()]),
        Witness::Triple { x, y, z, .. } => out.extend([x.clone(), y.clone(), z.clone()]),
        Witness::Point { point } => out.push(point.clone()),
        Witness::None | Witness::Reason { .. } => {}
    }
    out.extend([g.f0(), g.f0_plus()]);
    out.extend(g.pair().reps());
    for gap in g.pair().all_gaps() {
        out.extend([gap.lo.clone(), gap.hi.clone()]);
    }
    for part in m.parts() {
        dyadic_inside(part, 6, &mut out);
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|x| m.member(x) && seen.insert(x.clone()));
    out
}

fn random_member(g: &GeneratedOp, rng: &mut ChaCha8Rng) -> Q01 {
    let parts = g.range().parts();
    let part = &parts[rng.gen_range(0..parts.len())];
    if part.is_point() {
        return part.lo().value.clone();
    }
    let k: i64 = rng.gen_range(1..1024);
    lerp(&part.lo().value, &part.hi().value, &Rat::new(k.into(), 1024.into()))
}

/// Searches for `x, y, z ∈ M` with `(x⊗y)⊗z ≠ x⊗(y⊗z)`.
///
/// Candidates come first from the failed condition's witness geometry, then
/// from `C`, the gap endpoints and dyadic offsets inside every part of `M`;
/// triples are enumerated shell by shell in candidate order. Half the budget
/// goes to that phase and the rest to seeded random sampling of `M`.
pub fn witness_search(
    g: &GeneratedOp,
    failed: &ConditionReport,
    triples: Option<&TripleSequence>,
    budget: usize,
    seed: u64,
) -> SearchOutcome {
    let mut evaluated = 0;
    if budget == 0 || failed.holds {
        return SearchOutcome::NotFound { evaluated };
    }
    let check = |x: &Q01, y: &Q01, z: &Q01| -> Option<SearchHit> {
        let lhs = g.otimes_unchecked(&g.otimes_unchecked(x, y), z);
        let rhs = g.otimes_unchecked(x, &g.otimes_unchecked(y, z));
        (lhs != rhs).then(|| to_hit(g, x, y, z, lhs, rhs))
    };

    let cands = candidates(g, failed, triples);
    let phase_one = budget.div_ceil(2);
    'shells: for n in 0..cands.len() {
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    if i.max(j).max(k) != n {
                        continue;
                    }
                    if evaluated >= phase_one {
                        break 'shells;
                    }
                    evaluated += 1;
                    if let Some(hit) = check(&cands[i], &cands[j], &cands[k]) {
                        return SearchOutcome::Found { evaluated, hit };
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while evaluated < budget {
        let (x, y, z) = (random_member(g, &mut rng), random_member(g, &mut rng), random_member(g, &mut rng));
        evaluated += 1;
        if let Some(hit) = check(&x, &y, &z) {
            return SearchOutcome::Found { evaluated, hit };
        }
    }
    SearchOutcome::NotFound { evaluated }
}

fn to_hit(g: &GeneratedOp, x: &Q01, y: &Q01, z: &Q01, lhs: Q01, rhs: Q01) -> SearchHit {
    let f = g.generator();
    let (px, py, pz) = (f.pseudo_inverse(x), f.pseudo_inverse(y), f.pseudo_inverse(z));
    let dl = g.eval(&g.eval(&px, &py), &pz);
    let dr = g.eval(&px, &g.eval(&py, &pz));
    SearchHit {
        range: Counterexample { x: x.clone(), y: y.clone(), z: Some(z.clone()), lhs, rhs },
        domain: Counterexample { x: px, y: py, z: Some(pz), lhs: dl, rhs: dr },
    }
}

/// Re-evaluates a T2 counterexample from scratch.
pub fn confirms_t2(g: &GeneratedOp, c: &Counterexample) -> bool {
    let Some(z) = &c.z else { return false };
    let lhs = g.eval(&g.eval(&c.x, &c.y), z);
    let rhs = g.eval(&c.x, &g.eval(&c.y, z));
    lhs == c.lhs && rhs == c.rhs && lhs != rhs
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub conclusion: Conclusion,
    pub oracle: OracleReport,
    pub search: Option<SearchOutcome>,
    /// A negative verdict without any concrete violation.
    pub needs_review: bool,
    /// Contradictions between the characterization and the oracle.
    pub issues: Vec<String>,
}

/// Runs the oracle and cross-checks it against the verdict.
pub fn verify(g: &GeneratedOp, denominator: u64, budget: usize) -> (Verdict, VerifyReport) {
    let verdict = theorem_verdict(g);
    let probes = build_probes(g, denominator);
    let oracle = axiom_check(g, &probes);
    let mut issues = verdict.consistency_issues();

    let search = (verdict.conclusion == Conclusion::NotTconorm).then(|| {
        let failed = verdict
            .conditions
            .iter()
            .find(|r| !r.holds && !matches!(r.witness, Witness::Reason { .. }))
            .or_else(|| verdict.conditions.iter().find(|r| !r.holds))
            .expect("a negative verdict has a failed condition");
        witness_search(g, failed, verdict.triples.as_ref(), budget, DEFAULT_SEED)
    });

    match verdict.conclusion {
        Conclusion::BorderContinuousTconorm => {
            for r in &oracle.axioms {
                if r.status == Status::Failed {
                    issues.push(format!("verdict is positive but {:?} fails: {:?}", r.axiom, r.witness));
                }
            }
            if oracle.border_continuity.status == Status::Failed {
                issues.push("verdict is positive but T is discontinuous on the border".into());
            }
        }
        Conclusion::NotTconorm | Conclusion::HypothesesNotMet => {}
    }
    if !oracle.border_continuity.equivalence_agrees {
        issues.push(format!(
            "continuity at the origin ({}), idempotency of f(0+) ({}) and border continuity with S4 disagree",
            oracle.border_continuity.origin_ok, oracle.border_continuity.f0plus_idempotent
        ));
    }
    if let Some(c) = &oracle.counterexample {
        if !confirms_t2(g, c) {
            issues.push(format!("T2 counterexample does not re-evaluate: {c:?}"));
        }
    }
    if let Some(hit) = search.as_ref().and_then(SearchOutcome::hit) {
        if !confirms_t2(g, &hit.domain) {
            issues.push("search hit does not carry over to T".into());
        }
    }
    let needs_review = verdict.conclusion == Conclusion::NotTconorm
        && oracle.all_pass()
        && search.as_ref().and_then(SearchOutcome::hit).is_none();

    let conclusion = verdict.conclusion;
    (verdict, VerifyReport { conclusion, oracle, search, needs_review, issues })
}
