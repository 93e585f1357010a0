//! Shared helpers: a reference evaluator written directly from the
//! definitions, and seeded random instance builders.
#![allow(dead_code)]

pub mod suites;

use std::collections::BTreeMap;
use std::str::FromStr;

use conorm_core::conorm::ArchKind;
use conorm_core::genop::GeneratedOp;
use conorm_core::spec::{ConormSpec, GeneratorSpec, InstanceSpec, PieceSpec, SummandSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type R = BigRational;

pub fn r(n: i64, d: i64) -> R {
    R::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse(s: &str) -> R {
    R::from_str(s).expect("rational text")
}

pub fn text(x: &R) -> String {
    x.to_string()
}

struct RefPiece {
    lo: R,
    hi: R,
    lo_closed: bool,
    hi_closed: bool,
    slope: R,
    intercept: R,
}

impl RefPiece {
    fn contains(&self, x: &R) -> bool {
        (if self.lo_closed { *x >= self.lo } else { *x > self.lo })
            && (if self.hi_closed { *x <= self.hi } else { *x < self.hi })
    }

    fn at(&self, x: &R) -> R {
        &self.slope * x + &self.intercept
    }
}

/// `T(x,y) = f⁽⁻¹⁾(T*(f(x),f(y)))` evaluated straight from the spec text.
pub struct Reference {
    pieces: Vec<RefPiece>,
    overrides: Vec<(R, R)>,
    summands: Vec<(R, R, ArchKind)>,
}

impl Reference {
    pub fn new(spec: &InstanceSpec) -> Self {
        Reference {
            pieces: spec
                .generator
                .pieces
                .iter()
                .map(|p| RefPiece {
                    lo: parse(&p.lo),
                    hi: parse(&p.hi),
                    lo_closed: p.lo_closed,
                    hi_closed: p.hi_closed,
                    slope: parse(&p.slope),
                    intercept: parse(&p.intercept),
                })
                .collect(),
            overrides: spec.generator.overrides.iter().map(|(k, v)| (parse(k), parse(v))).collect(),
            summands: spec.conorm.summands.iter().map(|s| (parse(&s.lo), parse(&s.hi), s.kind)).collect(),
        }
    }

    pub fn f(&self, x: &R) -> R {
        if let Some((_, v)) = self.overrides.iter().find(|(k, _)| k == x) {
            return v.clone();
        }
        self.pieces.iter().find(|p| p.contains(x)).expect("f is total").at(x)
    }

    /// `sup{x : f(x) < y}`, `sup ∅ = 0`, from the closed-form piece inverses.
    pub fn f_inv(&self, y: &R) -> R {
        let mut best = R::zero();
        for p in &self.pieces {
            if p.at(&p.lo) < *y {
                let cut = (y - &p.intercept) / &p.slope;
                let s = if cut < p.hi { cut } else { p.hi.clone() };
                best = best.max(s);
            }
        }
        for (x, v) in &self.overrides {
            if v < y {
                best = best.max(x.clone());
            }
        }
        best
    }

    pub fn s(&self, x: &R, y: &R) -> R {
        for (lo, hi, kind) in &self.summands {
            if lo <= x && x <= hi && lo <= y && y <= hi {
                let w = hi - lo;
                let (u, v) = ((x - lo) / &w, (y - lo) / &w);
                let t = match kind {
                    ArchKind::ProbabilisticSum => &u + &v - &u * &v,
                    ArchKind::Lukasiewicz => (&u + &v).min(R::one()),
                };
                return lo + w * t;
            }
        }
        x.clone().max(y.clone())
    }

    pub fn t(&self, x: &R, y: &R) -> R {
        self.f_inv(&self.s(&self.f(x), &self.f(y)))
    }
}

fn rand_kind(rng: &mut ChaCha8Rng) -> ArchKind {
    if rng.gen_bool(0.5) {
        ArchKind::ProbabilisticSum
    } else {
        ArchKind::Lukasiewicz
    }
}

/// `count` distinct sorted integers in `1..n`.
fn sorted_sample(rng: &mut ChaCha8Rng, n: i64, count: usize) -> Vec<i64> {
    let mut all: Vec<i64> = (1..n).collect();
    all.shuffle(rng);
    let mut v: Vec<i64> = all.into_iter().take(count).collect();
    v.sort();
    v
}

fn piece(lo: &R, lo_closed: bool, hi: &R, hi_closed: bool, v0: &R, v1: &R) -> PieceSpec {
    let slope = (v1 - v0) / (hi - lo);
    let intercept = v0 - &slope * lo;
    PieceSpec {
        lo: text(lo),
        hi: text(hi),
        lo_closed,
        hi_closed,
        slope: text(&slope),
        intercept: text(&intercept),
    }
}

/// Strictly increasing piecewise-affine `f` taking `(0,1)` into `(lo_v, hi_v)`,
/// starting at `f(0⁺) = lo_v`. Jumps, continuous joins and isolated override
/// points at the breakpoints are all drawn at random.
pub fn random_generator(rng: &mut ChaCha8Rng, lo_v: &R, hi_v: &R, f0: &R, f1_max: &R) -> GeneratorSpec {
    let k = rng.gen_range(1..=4);
    let xs: Vec<R> = {
        let mut v = vec![R::zero()];
        v.extend(sorted_sample(rng, 12, k - 1).into_iter().map(|i| r(i, 12)));
        v.push(R::one());
        v
    };
    // 2k values in (lo_v, hi_v]; equal neighbours across a breakpoint mean no jump
    let n = 48;
    let mut ticks = sorted_sample(rng, n + 1, 2 * k - 1);
    ticks.insert(0, 0);
    for i in (2..ticks.len()).step_by(2) {
        if rng.gen_bool(0.3) {
            ticks[i] = ticks[i - 1];
        }
    }
    let val = |t: i64| lo_v + (hi_v - lo_v) * r(t, n);

    let mut pieces = Vec::new();
    let mut overrides = BTreeMap::new();
    let zero_override = *f0 != *lo_v;
    if zero_override {
        overrides.insert("0".to_string(), text(f0));
    }
    let mut lo_closed = !zero_override;
    for i in 0..k {
        let (v0, v1) = (val(ticks[2 * i]), val(ticks[2 * i + 1]));
        let last = i + 1 == k;
        let (hi_closed, next_lo_closed) = if last {
            (false, false)
        } else if ticks.get(2 * i + 2) == Some(&ticks[2 * i + 1]) {
            // continuous join: exactly one side owns the breakpoint
            let left = rng.gen_bool(0.5);
            (left, !left)
        } else {
            match rng.gen_range(0..3) {
                0 => (true, false),
                1 => (false, true),
                _ => {
                    let next = val(ticks[2 * i + 2]);
                    let t: i64 = rng.gen_range(0..=4);
                    let v = &v1 + (&next - &v1) * r(t, 4);
                    overrides.insert(text(&xs[i + 1]), text(&v));
                    (false, false)
                }
            }
        };
        let mut p = piece(&xs[i], lo_closed, &xs[i + 1], hi_closed, &v0, &v1);
        if last {
            // close at 1 with the limit, or leave open and override above it
            if rng.gen_bool(0.5) && v1 < *hi_v {
                p.hi_closed = true;
            } else {
                let t: i64 = rng.gen_range(0..=4);
                let f1 = &v1 + (f1_max - &v1).max(R::zero()) * r(t, 4);
                overrides.insert("1".to_string(), text(&f1));
            }
        }
        pieces.push(p);
        lo_closed = next_lo_closed;
    }
    GeneratorSpec { pieces, overrides }
}

/// A random instance satisfying the hypotheses of the characterization: one
/// summand `<m, n>` contains `f((0,1))`, and `f(0⁺) = m` is idempotent.
pub fn random_hypothesis_instance(rng: &mut ChaCha8Rng) -> InstanceSpec {
    let m = r(rng.gen_range(0..=2), 4);
    let n = r(rng.gen_range(3..=4), 4).max(&m + r(1, 4));
    let mut summands = vec![SummandSpec { lo: text(&m), hi: text(&n), kind: rand_kind(rng) }];
    if m > R::zero() && rng.gen_bool(0.5) {
        summands.insert(0, SummandSpec { lo: "0".into(), hi: text(&(&m / r(2, 1))), kind: rand_kind(rng) });
    }
    if n < R::one() && rng.gen_bool(0.5) {
        summands.push(SummandSpec { lo: text(&n), hi: "1".into(), kind: rand_kind(rng) });
    }
    let f0 = if m > R::zero() && rng.gen_bool(0.5) { &m * r(rng.gen_range(0..=3), 4) } else { m.clone() };
    let generator = random_generator(rng, &m, &n, &f0, &R::one());
    InstanceSpec { metadata: Default::default(), generator, conorm: ConormSpec { summands } }
}

/// A random instance with no structural guarantees beyond a valid `f` and `T*`.
pub fn random_instance(rng: &mut ChaCha8Rng) -> InstanceSpec {
    let lo = r(rng.gen_range(0..=8), 16);
    let hi = r(rng.gen_range(12..=16), 16);
    let f0 = if rng.gen_bool(0.3) { &lo * r(1, 2) } else { lo.clone() };
    let generator = random_generator(rng, &lo, &hi, &f0, &R::one());
    let count = rng.gen_range(1..=4);
    let mut cuts = sorted_sample(rng, 8, count);
    cuts.insert(0, 0);
    cuts.push(8);
    let mut summands = Vec::new();
    for w in cuts.windows(2) {
        if rng.gen_bool(0.7) {
            summands.push(SummandSpec { lo: text(&r(w[0], 8)), hi: text(&r(w[1], 8)), kind: rand_kind(rng) });
        }
    }
    InstanceSpec { metadata: Default::default(), generator, conorm: ConormSpec { summands } }
}

pub fn build(spec: &InstanceSpec) -> GeneratedOp {
    spec.build().unwrap_or_else(|e| panic!("random instance is valid: {e}\n{}", spec.to_json()))
}

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}
