//! Seeded randomized suites. Each returns the number of instances examined
//! and every violation found, so callers can assert or report.

use conorm_core::cli;
use conorm_core::conditions::{
    check_d1, check_d2, check_d5, check_d7, check_d8, corollary_check, decompose_triples, ConditionId, D7Mode,
};
use conorm_core::numeric::Q01;
use conorm_core::oracle::{border_continuity_check, build_probes, Status};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

#[derive(Debug, Default)]
pub struct SuiteResult {
    pub instances: usize,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn expect(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !cond && self.violations.len() < 20 {
            self.violations.push(msg());
        }
    }
}

fn rng(suite: u64, i: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(suite.wrapping_mul(1_000_003).wrapping_add(i))
}

fn grid(n: i64) -> Vec<Q01> {
    (0..=n).map(|i| Q01::frac(i, n)).collect()
}

/// `F_M ∘ F_M = F_M`, `F_M(x) ∈ M`, and `F_M(x) = x ⟺ x ∈ M`.
pub fn collapse_suite(n: usize) -> SuiteResult {
    let mut res = SuiteResult::default();
    for i in 0..n as u64 {
        let spec = random_instance(&mut rng(1, i));
        let g = build(&spec);
        res.instances += 1;
        let mut pts = grid(48);
        for gap in g.pair().all_gaps() {
            pts.extend([gap.lo.clone(), gap.rep.clone(), gap.hi.clone()]);
        }
        for x in &pts {
            let fx = g.collapse(x);
            res.expect(g.collapse(&fx) == fx, || format!("seed {i}: F(F({x})) ≠ F({x})"));
            res.expect(g.range().member(&fx), || format!("seed {i}: F({x}) = {fx} ∉ M"));
            res.expect((fx == *x) == g.range().member(x), || format!("seed {i}: fixed point mismatch at {x}"));
        }
    }
    res
}

/// `f⁽⁻¹⁾ ∘ f = id`, `f ∘ f⁽⁻¹⁾ = F_M`, and agreement with the reference.
pub fn pseudo_inverse_suite(n: usize) -> SuiteResult {
    let mut res = SuiteResult::default();
    for i in 0..n as u64 {
        let spec = random_instance(&mut rng(2, i));
        let g = build(&spec);
        let reference = Reference::new(&spec);
        res.instances += 1;
        let f = g.generator();
        let mut xs = grid(48);
        xs.extend(f.boundaries());
        for x in &xs {
            res.expect(f.pseudo_inverse(&f.eval(x)) == *x, || format!("seed {i}: f⁻¹(f({x})) ≠ {x}"));
        }
        let mut ys = grid(48);
        for gap in g.pair().all_gaps() {
            ys.extend([gap.lo.clone(), gap.rep.clone(), gap.hi.clone()]);
        }
        for y in &ys {
            let inv = f.pseudo_inverse(y);
            res.expect(f.eval(&inv) == g.collapse(y), || format!("seed {i}: f(f⁻¹({y})) ≠ F_M({y})"));
            res.expect(*inv.as_rat() == reference.f_inv(y.as_rat()), || format!("seed {i}: f⁻¹({y}) differs from reference"));
        }
    }
    res
}

/// Counts of `(D1 fails, D2 fails)` are returned alongside, to show coverage.
pub fn d_implication_suite(n: usize) -> (SuiteResult, usize, usize) {
    let mut res = SuiteResult::default();
    let (mut d1_fail, mut d2_fail) = (0, 0);
    for i in 0..n as u64 {
        let spec = random_hypothesis_instance(&mut rng(3, i));
        let g = build(&spec);
        res.instances += 1;
        let (d1, d2, d5) = (check_d1(&g).holds, check_d2(&g).holds, check_d5(&g).holds);
        d1_fail += usize::from(!d1);
        d2_fail += usize::from(!d2);
        res.expect(d2 == d5, || format!("seed {i}: D2 = {d2}, D5 = {d5}\n{}", spec.to_json()));
        res.expect(!d5 || d2, || format!("seed {i}: D5 without D2"));
        res.expect(!d2 || d1, || format!("seed {i}: D2 without D1"));
    }
    (res, d1_fail, d2_fail)
}

/// Hypothesis instances whose range has the triple form, until `n` are found.
fn decomposable(suite: u64, n: usize) -> Vec<(u64, InstanceSpec)> {
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < n {
        let spec = random_hypothesis_instance(&mut rng(suite, i));
        if decompose_triples(&build(&spec)).is_ok() {
            out.push((i, spec));
        }
        i += 1;
        assert!(i < 50 * n as u64, "generator rarely yields decomposable ranges");
    }
    out
}

/// Returns the suite and how many instances fail D7.
pub fn d7_mode_suite(n: usize) -> (SuiteResult, usize) {
    let mut res = SuiteResult::default();
    let mut failing = 0;
    for (i, spec) in decomposable(4, n) {
        let g = build(&spec);
        let t = decompose_triples(&g).unwrap();
        res.instances += 1;
        let a = check_d7(&t, g.conorm(), D7Mode::Disjunction);
        let b = check_d7(&t, g.conorm(), D7Mode::Eq45Eq46);
        failing += usize::from(!a.holds);
        res.expect(a.holds == b.holds, || format!("seed {i}: D7 modes disagree\n{}", spec.to_json()));
    }
    (res, failing)
}

pub fn corollary_suite(n: usize) -> SuiteResult {
    let mut res = SuiteResult::default();
    for (i, spec) in decomposable(5, n) {
        let g = build(&spec);
        let t = decompose_triples(&g).unwrap();
        res.instances += 1;
        let cor = corollary_check(&g, &t);
        let holds = |id| cor.iter().find(|r| r.condition == id).unwrap().holds;
        let d7 = check_d7(&t, g.conorm(), D7Mode::Disjunction).holds;
        let d8 = check_d8(&g, &t, !g.f0_plus().is_zero()).holds;
        res.expect((holds(ConditionId::CorI) && holds(ConditionId::CorII)) == d7, || {
            format!("seed {i}: COR (i)∧(ii) vs D7 = {d7}\n{}", spec.to_json())
        });
        res.expect(holds(ConditionId::CorIII) == d8, || format!("seed {i}: COR (iii) vs D8 = {d8}"));
    }
    res
}

/// The three equivalent statements, each by its own code path:
/// limits from the reference evaluator, idempotency in `T*`, and the
/// oracle's edge-limit sweep together with S4. Returns how many instances
/// have a non-idempotent `f(0⁺)`.
pub fn equivalence_suite(n: usize) -> (SuiteResult, usize) {
    let mut res = SuiteResult::default();
    let mut non_idem = 0;
    for i in 0..n as u64 {
        let mut r = rng(6, i);
        let spec = random_instance(&mut r);
        let g = build(&spec);
        let reference = Reference::new(&spec);
        res.instances += 1;

        // f(0⁺) from the reference pieces, then the limit of T at the origin
        let eps = r_small();
        let f0p = {
            let (a, b) = (reference.f(&eps), reference.f(&(&eps / R::from_integer(2.into()))));
            // affine near 0: extrapolate the first piece to x = 0
            &b - (&a - &b)
        };
        let limit = reference.f_inv(&reference.s(&f0p, &f0p));
        let zero = R::zero();
        let by_limits = limit.is_zero() && reference.t(&zero, &zero).is_zero();

        let idem = g.conorm().is_idempotent(&g.f0_plus());
        non_idem += usize::from(!idem);

        let probes = build_probes(&g, 12);
        let border = border_continuity_check(&g, &probes);
        let by_edges = border.status == Status::NotFalsified && border.s4_ok;

        res.expect(by_limits == idem && idem == by_edges, || {
            format!("seed {i}: limits {by_limits}, idempotent {idem}, edges {by_edges}\n{}", spec.to_json())
        });
    }
    (res, non_idem)
}

/// Well inside the first piece of every generated `f` (breakpoints are
/// multiples of 1/12).
fn r_small() -> R {
    r(1, 1000)
}

/// `verify` through the CLI on every fixture and `n` hypothesis instances.
pub fn verify_exit_suite(n: usize, denominator: u64) -> SuiteResult {
    let mut res = SuiteResult::default();
    let dir = tempfile::tempdir().expect("temp dir");
    let mut paths: Vec<(String, std::path::PathBuf)> = conorm_core::fixtures::SOURCES
        .iter()
        .map(|(name, _)| (name.to_string(), fixture_path(name)))
        .collect();
    for i in 0..n as u64 {
        let spec = random_hypothesis_instance(&mut rng(7, i));
        let path = dir.path().join(format!("random_{i}.json"));
        std::fs::write(&path, spec.to_json()).expect("write spec");
        paths.push((format!("random seed {i}"), path));
    }
    let d = denominator.to_string();
    for (name, path) in paths {
        res.instances += 1;
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let args = ["conorm", "verify", path.to_str().unwrap(), "--denominator", &d, "--witness-budget", "5000"];
        let code = cli::run(args, &mut out, &mut err);
        res.expect(code == cli::EXIT_OK, || {
            format!("{name}: exit {code}\n{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err))
        });
    }
    res
}
