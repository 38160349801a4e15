//! The acceptance suite: every release-gating check as a callable criterion,
//! shared by the `verify-all` command and the integration tests.

use num_traits::{One, Signed, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{certified_abs_max, markov_bound, paturi_bound};
use crate::boolsym::MultilinearPoly;
use crate::constructions::{chebyshev_counting_poly, chebyshev_counting_verify, fedja_construct, fedja_verify};
use crate::lp::{
    build_laurent_dual, build_laurent_primal, min_degree_search, sbqp_optimum, simplex_solve,
    solve_via_dual, DegreeFamily, SearchThreshold,
};
use crate::qsim::{
    acceptance_profile, classical_baselines, laurent_fit, run_collision_counting,
    run_reflection_counting, trace_distance_qsamples, ClassicalMode,
};
use crate::scalar::{binomial, format_rat, rat, rat_int};
use crate::witness::{build_witness, WitnessParams};
use crate::{Poly, Rat};

#[derive(Clone, Copy, Debug)]
pub struct AcceptanceConfig {
    /// Quick profile: smaller trial counts and trimmed grids.
    pub quick: bool,
    pub seed: u64,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig { quick: false, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    fn ok(id: u32, name: &'static str, detail: String) -> Self {
        CriterionResult { id, name, pass: true, detail }
    }

    fn fail(id: u32, name: &'static str, detail: String) -> Self {
        CriterionResult { id, name, pass: false, detail }
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:2} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

fn outcome(id: u32, name: &'static str, pass: bool, detail: String) -> CriterionResult {
    if pass {
        CriterionResult::ok(id, name, detail)
    } else {
        CriterionResult::fail(id, name, detail)
    }
}

/// Frozen first-derivation fixtures for the minimal-degree trend criteria.
/// (instance, minimal degree) pairs; see the trend criteria for context.
pub mod fixtures {
    /// Minimal D2 with D1 = 0 reaching eps <= 1/3, keyed by (N, w).
    pub const MIN_D2: [(u64, u64, u64); 3] = [(64, 2, 4), (144, 4, 4), (256, 8, 4)];
    /// Minimal D1 with D2 = 0 reaching eps <= 1/3 at N = 8w, keyed by w.
    pub const MIN_D1: [(u64, u64); 3] = [(8, 2), (27, 3), (64, 3)];
    /// Minimal total degree with alpha > 0, keyed by (N, w).
    pub const MIN_SBQP_DEGREE: [(u64, u64, u64); 3] = [(16, 2, 2), (24, 2, 2), (32, 3, 2)];
}

/// 1. Dual-witness orthogonality.
///
/// The stated tuples include (8192, 64, 2), where c = 2 merges the support
/// point c w with 2w: |T| = d1 + d2 + 1 there, and the moment identity holds
/// exactly for j <= |T| - 2 = d1 + d2 - 1 while the j = d1 + d2 sum is
/// provably nonzero. The check therefore runs to the support-derived cap and
/// additionally asserts the nonzero moment just past it.
pub fn criterion_1(_cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "dual-witness orthogonality";
    let mut detail = Vec::new();
    for (n, w, c) in [(512u64, 8u64, 3u64), (2048, 27, 3), (8192, 64, 2), (8192, 64, 4)] {
        let params = match WitnessParams::new(n, w, c) {
            Ok(p) => p,
            Err(e) => return CriterionResult::fail(1, name, e.to_string()),
        };
        let wit = match build_witness(&params) {
            Ok(w) => w,
            Err(e) => return CriterionResult::fail(1, name, e.to_string()),
        };
        let cap = wit.support.orthogonality_cap();
        for (j, sum) in wit.moment_sums(cap) {
            if !sum.is_zero() {
                return CriterionResult::fail(
                    1,
                    name,
                    format!("nonzero moment j = {j} at ({n},{w},{c}): {}", format_rat(&sum)),
                );
            }
        }
        let full = params.d1 + params.d2;
        if cap < full {
            // c = 2 collision: the moment at d1 + d2 must be nonzero.
            let past = wit.moment_sums(full).pop().unwrap();
            if past.1.is_zero() {
                return CriterionResult::fail(
                    1,
                    name,
                    format!("expected nonzero moment at j = {full} for ({n},{w},{c})"),
                );
            }
            detail.push(format!("({n},{w},{c}): exact to j<={cap}, j={full} nonzero as proven"));
        } else {
            detail.push(format!("({n},{w},{c}): exact to j<={cap}"));
        }
    }
    CriterionResult::ok(1, name, detail.join("; "))
}

/// 2. Dual objective positivity and c-monotonicity.
pub fn criterion_2(_cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "dual objective positivity / c-monotonicity";
    let mut objectives = Vec::new();
    for (n, w, c) in [(512u64, 8u64, 3u64), (2048, 27, 3), (8192, 64, 2), (8192, 64, 4)] {
        let wit = build_witness(&WitnessParams::new(n, w, c).unwrap()).unwrap();
        let obj = wit.dual_objective();
        if !obj.is_positive() || obj > Rat::one() {
            return CriterionResult::fail(2, name, format!("objective out of (0,1] at ({n},{w},{c})"));
        }
        objectives.push(((n, w, c), obj));
    }
    let o2 = &objectives.iter().find(|((n, w, c), _)| (*n, *w, *c) == (8192, 64, 2)).unwrap().1;
    let o4 = &objectives.iter().find(|((n, w, c), _)| (*n, *w, *c) == (8192, 64, 4)).unwrap().1;
    outcome(
        2,
        name,
        o4 > o2,
        format!(
            "all in (0,1]; objective(c=4) = {} > objective(c=2) = {}",
            format_rat(o4),
            format_rat(o2)
        ),
    )
}

/// 3. LP strong duality on a grid within (N <= 64, w in {1,2,4}, D1 <= 2, D2 <= 8).
pub fn criterion_3(cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "LP strong duality";
    let mut grid: Vec<(u64, u64, u64, u64)> = Vec::new();
    let d2s: &[u64] = if cfg.quick { &[0, 3] } else { &[0, 2, 4, 8] };
    let d1s: &[u64] = if cfg.quick { &[0, 1] } else { &[0, 1, 2] };
    for &n in &[12u64, 20] {
        for &w in &[1u64, 2, 4] {
            for &d1 in d1s {
                for &d2 in d2s {
                    grid.push((n, w, d1, d2));
                }
            }
        }
    }
    if !cfg.quick {
        grid.push((64, 2, 1, 3));
        grid.push((64, 4, 2, 8));
    }
    let mut checked = 0;
    for (n, w, d1, d2) in grid {
        let primal = simplex_solve(&build_laurent_primal(n, w, d1, d2, false).unwrap()).unwrap();
        let dual = simplex_solve(&build_laurent_dual(n, w, d1, d2).unwrap()).unwrap();
        if primal.value != dual.value {
            return CriterionResult::fail(
                3,
                name,
                format!(
                    "optima differ at ({n},{w},{d1},{d2}): {} vs {}",
                    format_rat(&primal.value),
                    format_rat(&dual.value)
                ),
            );
        }
        checked += 1;
    }
    CriterionResult::ok(3, name, format!("{checked} primal/dual pairs agree exactly"))
}

/// 4. Weak duality: the witness objective never exceeds the exact primal
/// optimum at the witness degrees.
pub fn criterion_4(cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "weak-duality consistency";
    let mut instances: Vec<(u64, u64, u64)> = vec![(64, 4, 3), (512, 8, 3)];
    if !cfg.quick {
        instances.push((2048, 27, 3));
    }
    let mut detail = Vec::new();
    for (n, w, c) in instances {
        let params = WitnessParams::new(n, w, c).unwrap();
        let wit = build_witness(&params).unwrap();
        let obj = wit.dual_objective();
        let eps = match crate::lp::laurent_primal_optimum(n, w, params.d1, params.d2, false) {
            Ok(e) => e,
            Err(e) => return CriterionResult::fail(4, name, e.to_string()),
        };
        if obj > eps {
            return CriterionResult::fail(
                4,
                name,
                format!(
                    "witness objective {} exceeds primal optimum {} at ({n},{w},{c})",
                    format_rat(&obj),
                    format_rat(&eps)
                ),
            );
        }
        detail.push(format!("({n},{w},{c}): {} <= {}", format_rat(&obj), format_rat(&eps)));
    }
    CriterionResult::ok(4, name, detail.join("; "))
}

/// 5. Tradeoff trend at desk scale, with frozen first-derivation fixtures.
pub fn criterion_5(cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "tradeoff trend (min degrees)";
    let third = SearchThreshold::EpsAtMost(rat(1, 3));
    let within3 = |value: u64, target: f64| -> bool {
        let v = value as f64;
        v * 3.0 >= target && v <= 3.0 * target
    };
    let mut detail = Vec::new();
    // D1 = 0, search D2, target sqrt(N/w).
    let d2_instances: &[(u64, u64, u64)] =
        if cfg.quick { &fixtures::MIN_D2[..1] } else { &fixtures::MIN_D2 };
    for &(n, w, frozen) in d2_instances {
        let got = min_degree_search(
            DegreeFamily::PrimalVaryD2 { n, w, d1: 0, restricted: false },
            &third,
            24,
        )
        .unwrap()
        .unwrap_or(u64::MAX);
        let target = ((n / w) as f64).sqrt();
        if got != frozen || !within3(got, target) {
            return CriterionResult::fail(
                5,
                name,
                format!("min D2 at ({n},{w}) = {got}, frozen {frozen}, target {target:.2}"),
            );
        }
        detail.push(format!("D2*({n},{w})={got}"));
    }
    // D2 = 0, search D1 at N = 8w, target w^(1/3).
    let d1_instances: &[(u64, u64)] =
        if cfg.quick { &fixtures::MIN_D1[..1] } else { &fixtures::MIN_D1 };
    for &(w, frozen) in d1_instances {
        let n = 8 * w;
        let got = min_degree_search(
            DegreeFamily::PrimalVaryD1 { n, w, d2: 0, restricted: false },
            &third,
            24,
        )
        .unwrap()
        .unwrap_or(u64::MAX);
        let target = (w as f64).cbrt();
        if got != frozen || !within3(got, target) {
            return CriterionResult::fail(
                5,
                name,
                format!("min D1 at (N=8w, w={w}) = {got}, frozen {frozen}, target {target:.2}"),
            );
        }
        detail.push(format!("D1*(w={w})={got}"));
    }
    CriterionResult::ok(5, name, detail.join("; "))
}

/// 6. SBQP lattice program: alpha*(0) = 0 and the minimal positive-alpha
/// degree is nondecreasing in N at fixed w, within a factor 3 of
/// min{w, sqrt(N/w)}.
pub fn criterion_6(cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "SBQP lattice LP shape";
    let instances: &[(u64, u64, u64)] =
        if cfg.quick { &fixtures::MIN_SBQP_DEGREE[..1] } else { &fixtures::MIN_SBQP_DEGREE };
    let mut minimal = Vec::new();
    for &(n, w, frozen) in instances {
        let zero = sbqp_optimum(n, w, 0).unwrap();
        if !zero.is_zero() {
            return CriterionResult::fail(6, name, format!("alpha*(degree 0) != 0 at ({n},{w})"));
        }
        let got = min_degree_search(DegreeFamily::Sbqp { n, w }, &SearchThreshold::AlphaPositive, 10)
            .unwrap()
            .unwrap_or(u64::MAX);
        let target = (w as f64).min(((n as f64) / (w as f64)).sqrt());
        let within = (got as f64) * 3.0 >= target && (got as f64) <= 3.0 * target;
        if got != frozen || !within {
            return CriterionResult::fail(
                6,
                name,
                format!("min degree at ({n},{w}) = {got}, frozen {frozen}, target {target:.2}"),
            );
        }
        minimal.push((n, w, got));
    }
    // Nondecreasing in N at fixed w.
    for a in &minimal {
        for b in &minimal {
            if a.1 == b.1 && a.0 < b.0 && a.2 > b.2 {
                return CriterionResult::fail(
                    6,
                    name,
                    format!("minimal degree decreased in N at fixed w: {minimal:?}"),
                );
            }
        }
    }
    CriterionResult::ok(6, name, format!("{minimal:?}"))
}

/// 7. Symmetrization oracle equivalence plus the worked example.
pub fn criterion_7(cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "symmetrization oracle equivalence";
    let runs = if cfg.quick { 50 } else { 200 };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for trial in 0..runs {
        let n = rng.gen_range(1..=12usize);
        let terms: Vec<(u32, Rat)> = (0..rng.gen_range(0..6))
            .map(|_| {
                (
                    rng.gen_range(0..1u32 << n),
                    rat(rng.gen_range(-12..=12), rng.gen_range(1..=5)),
                )
            })
            .collect();
        let p = MultilinearPoly::new(n, terms).unwrap();
        let q = p.mp_symmetrize();
        for k in 0..=n {
            let brute = p.brute_force_weight_average(k).unwrap();
            if q.eval(&rat_int(k as i64)) != brute {
                return CriterionResult::fail(
                    7,
                    name,
                    format!("mp_symmetrize disagrees with brute force (trial {trial}, n {n}, k {k})"),
                );
            }
        }
    }
    // 2 x1 x2 + x2 x3 + x2 -> 3k^2 + k, reproduced exactly.
    let p = MultilinearPoly::new(
        3,
        vec![(0b011u32, rat_int(2)), (0b110, rat_int(1)), (0b010, rat_int(1))],
    )
    .unwrap();
    let pass = p.eas_symmetrize() == Poly::from_i64(&[0, 1, 3]);
    outcome(7, name, pass, format!("{runs} random polynomials, all weights; worked example exact"))
}

/// 8. The combinatorial key identity over random polynomials.
pub fn criterion_8(cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "key identity";
    let runs = if cfg.quick { 30 } else { 100 };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x8);
    for _ in 0..runs {
        let n = rng.gen_range(2..=40u64);
        let deg = rng.gen_range(0..n) as usize;
        let coeffs: Vec<Rat> = (0..=deg)
            .map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=7)))
            .collect();
        let q = Poly::new(coeffs);
        let mut acc = Rat::zero();
        for l in 0..=n {
            let mut term = Rat::from_integer(binomial(n, l)) * q.eval(&rat_int(l as i64));
            if l % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        if !acc.is_zero() {
            return CriterionResult::fail(8, name, format!("nonzero alternating sum at N = {n}"));
        }
    }
    CriterionResult::ok(8, name, format!("{runs} random polynomials, exact zero"))
}

/// 9. Appendix product bound at every valid index.
pub fn criterion_9(_cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "appendix product bound";
    let mut count = 0;
    for (w, c) in [(64u64, 2u64), (125, 3), (216, 3)] {
        let d1 = {
            let mut r = 0u64;
            while (r + 1) * (r + 1) * (r + 1) <= w / c {
                r += 1;
            }
            r
        };
        for i in 1..=d1 {
            match crate::witness::appendix_product_check(w, c, i) {
                Ok((lhs, rhs, true)) => {
                    let _ = (lhs, rhs);
                    count += 1;
                }
                Ok((lhs, rhs, false)) => {
                    return CriterionResult::fail(
                        9,
                        name,
                        format!(
                            "bound fails at (w={w}, c={c}, i={i}): {} < {}",
                            format_rat(&lhs),
                            format_rat(&rhs)
                        ),
                    );
                }
                Err(e) => return CriterionResult::fail(9, name, e.to_string()),
            }
        }
    }
    CriterionResult::ok(9, name, format!("{count} index checks hold exactly"))
}

/// 10. The fedja construction: all three properties, the continuous
/// certification, and the degree cap.
pub fn criterion_10(cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "fedja construction";
    let ws: &[u64] = if cfg.quick { &[8, 27] } else { &[8, 27, 64] };
    let mut detail = Vec::new();
    for &w in ws {
        let fp = match fedja_construct(w) {
            Ok(f) => f,
            Err(e) => return CriterionResult::fail(10, name, e.to_string()),
        };
        let rep = match fedja_verify(&fp, 4 * w) {
            Ok(r) => r,
            Err(e) => return CriterionResult::fail(10, name, e.to_string()),
        };
        let ok = rep.low_ok
            && rep.mid_ok
            && rep.high_ok
            && rep.continuous_high_ok
            && (rep.degree as u64) <= rep.degree_cap;
        if !ok {
            return CriterionResult::fail(
                10,
                name,
                format!("w = {w}: {:?}", rep.violations),
            );
        }
        detail.push(format!("w={w}: deg {} <= {}", rep.degree, rep.degree_cap));
    }
    CriterionResult::ok(10, name, detail.join("; "))
}

/// 11. Laurent structure of acceptance profiles at N = 12.
pub fn criterion_11(cfg: &AcceptanceConfig) -> CriterionResult {
    use crate::qsim::{Acceptance, Circuit, Prim};
    let name = "Laurent structure fits";
    let n = 12u64;
    let fixture_set: Vec<u64> = vec![1, 2, 5];
    let circuits: Vec<(&str, Circuit, (u64, u64, u64, u64))> = vec![
        (
            "two-sample 1/k",
            Circuit {
                prims: vec![Prim::PrepareSample, Prim::PrepareSample],
                accept: Acceptance::AllSampleRegsEqual,
            },
            (0, 2, 0, 0),
        ),
        (
            "single reflection",
            Circuit {
                prims: vec![Prim::PrepareUniform, Prim::ReflectS { reg: 0 }],
                accept: Acceptance::ProjectUniform { reg: 0 },
            },
            (0, 0, 1, 0),
        ),
        (
            "V probe",
            Circuit {
                prims: vec![
                    Prim::PrepareVRegister,
                    Prim::ApplyV { reg: 0 },
                    Prim::PhaseFixedSet { reg: 0, set: fixture_set },
                    Prim::ApplyV { reg: 0 },
                ],
                accept: Acceptance::ProjectZeroAxis { reg: 0 },
            },
            (0, 0, 0, 2),
        ),
    ];
    let mut detail = Vec::new();
    for (label, circuit, (t, r1, r2, v)) in circuits {
        let profile = match acceptance_profile(&circuit, n, true, cfg.seed, 0) {
            Ok(p) => p,
            Err(e) => return CriterionResult::fail(11, name, e.to_string()),
        };
        let values: Vec<f64> = profile.iter().map(|p| p.q).collect();
        let fit = match laurent_fit(&values, t, r1, r2, v) {
            Ok(f) => f,
            Err(e) => return CriterionResult::fail(11, name, e.to_string()),
        };
        if !fit.pass {
            return CriterionResult::fail(
                11,
                name,
                format!("{label}: residual {:.3e} on window {:?}", fit.safe_residual, fit.safe_window),
            );
        }
        detail.push(format!("{label}: {:.1e}", fit.safe_residual));
    }
    // Anti-test: dropping the needed negative exponent must fail loudly.
    let inverse: Vec<f64> = (1..=n).map(|k| 1.0 / k as f64).collect();
    let anti = crate::qsim::window_fit_residual(&inverse, 0, 3).unwrap();
    outcome(
        11,
        name,
        anti > 1e-3,
        format!("{}; anti-test residual {:.2e} > 1e-3", detail.join("; "), anti),
    )
}

/// 12. The two counting algorithms at their stated budgets; the binomial
/// confidence interval must exclude 0.6.
pub fn criterion_12(cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "quantum counting simulations";
    let trials = if cfg.quick { 1_000 } else { 10_000 };
    let ci_excludes = |rate: f64, trials: u64| -> bool {
        let se = (rate * (1.0 - rate) / trials as f64).sqrt();
        rate - 1.96 * se > 0.6
    };
    let refl = run_reflection_counting(1024, 16, 240, trials, cfg.seed).unwrap();
    if refl.per_trial.reflections > 240 || !ci_excludes(refl.success_rate, trials) {
        return CriterionResult::fail(
            12,
            name,
            format!("reflection: rate {:.4}, reflections {}", refl.success_rate, refl.per_trial.reflections),
        );
    }
    let coll = run_collision_counting(512, 8, trials, cfg.seed ^ 1).unwrap();
    let used = coll.per_trial.samples + coll.per_trial.reflections;
    if used > 120 || !ci_excludes(coll.success_rate, trials) {
        return CriterionResult::fail(
            12,
            name,
            format!("collision: rate {:.4}, resources {used}"),
        );
    }
    CriterionResult::ok(
        12,
        name,
        format!(
            "reflection {:.4} within {} reflections; collision {:.4} within {used}",
            refl.success_rate, refl.per_trial.reflections, coll.success_rate
        ),
    )
}

/// 13. Classical baselines at (4096, 64).
pub fn criterion_13(cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "classical baselines";
    let trials = if cfg.quick { 1_000 } else { 10_000 };
    let samples = classical_baselines(4096, 64, ClassicalMode::Samples, 52, trials, cfg.seed).unwrap();
    let queries = classical_baselines(4096, 64, ClassicalMode::Queries, 1024, trials, cfg.seed ^ 2).unwrap();
    let single = classical_baselines(4096, 64, ClassicalMode::Samples, 1, trials, cfg.seed ^ 3).unwrap();
    let pass = samples.success_rate >= 2.0 / 3.0
        && queries.success_rate >= 2.0 / 3.0
        && (single.success_rate - 0.5).abs() < 0.05;
    outcome(
        13,
        name,
        pass,
        format!(
            "samples(52) {:.4}; queries(16N/w) {:.4}; samples(1) {:.4} ~ 1/2",
            samples.success_rate, queries.success_rate, single.success_rate
        ),
    )
}

/// 14. Trace distance facts.
pub fn criterion_14(_cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "trace distance";
    if trace_distance_qsamples(4, 1, 0).unwrap() != 0.0 {
        return CriterionResult::fail(14, name, "k = 0 must give zero".into());
    }
    let d211 = trace_distance_qsamples(2, 1, 1).unwrap();
    if (d211 - 0.5).abs() > 1e-9 {
        return CriterionResult::fail(14, name, format!("(2,1,1) gave {d211}"));
    }
    let d: Vec<f64> = (1..=3).map(|k| trace_distance_qsamples(6, 1, k).unwrap()).collect();
    let monotone = d[0] <= d[1] + 1e-12 && d[1] <= d[2] + 1e-12;
    outcome(
        14,
        name,
        monotone,
        format!("(2,1,1) = {d211:.9}; (6,1,k) = [{:.6}, {:.6}, {:.6}]", d[0], d[1], d[2]),
    )
}

/// 15. The Markov and Paturi bound checkers, never violated over random
/// certified-bounded polynomials.
pub fn criterion_15(cfg: &AcceptanceConfig) -> CriterionResult {
    let name = "approximation-theory property suites";
    let runs = if cfg.quick { 100 } else { 1000 };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xf);
    // Markov: |p'| on a fine grid never exceeds the bound.
    for trial in 0..runs {
        let deg = rng.gen_range(0..=6usize);
        let coeffs: Vec<Rat> = (0..=deg)
            .map(|_| rat(rng.gen_range(-32..=32), 64))
            .collect();
        let p = Poly::new(coeffs);
        let a = rat_int(rng.gen_range(-3..=0));
        let b = &a + rat_int(rng.gen_range(1..=4));
        let bound = markov_bound(&p, &a, &b).unwrap();
        let dp = p.derivative();
        for i in 0..=64 {
            let x = &a + (&b - &a) * rat(i, 64);
            if dp.eval(&x).abs() > bound {
                return CriterionResult::fail(15, name, format!("Markov violated on trial {trial}"));
            }
        }
    }
    // Paturi: normalize to certified |p| <= 1 on [-1,1], check growth.
    for trial in 0..runs {
        let deg = rng.gen_range(1..=8usize);
        let coeffs: Vec<Rat> = (0..=deg)
            .map(|_| rat(rng.gen_range(-32..=32), 32))
            .collect();
        let p = Poly::new(coeffs);
        if p.is_zero() {
            continue;
        }
        let m = certified_abs_max(&p, &rat_int(-1), &rat_int(1), 512).unwrap();
        if !m.hi.is_positive() {
            continue;
        }
        let scaled = p.scale(&(Rat::one() / &m.hi));
        let d = scaled.degree().unwrap_or(0) as u64;
        for mu in [rat(1, 16), rat(1, 8), rat(1, 4)] {
            let value = scaled.eval(&(Rat::one() + &mu)).abs();
            if !paturi_bound(d, &mu).certainly_at_least(&value) {
                return CriterionResult::fail(15, name, format!("Paturi violated on trial {trial}"));
            }
        }
    }
    CriterionResult::ok(15, name, format!("{runs} Markov + {runs} Paturi trials, no violations"))
}

/// Extra consistency surface used by the CLI: the counting polynomial's
/// verification hooks at small instances.
pub fn counting_polynomial_hooks() -> bool {
    for (n, w) in [(16u64, 1u64), (64, 4), (256, 8)] {
        let p = chebyshev_counting_poly(n, w, false).unwrap();
        let rep = chebyshev_counting_verify(n, w, &p);
        if !rep.at_least_two || !rep.bounded_on_upper_range {
            return false;
        }
    }
    true
}

/// Runs every criterion in order.
pub fn all_criteria(cfg: &AcceptanceConfig) -> Vec<CriterionResult> {
    vec![
        criterion_1(cfg),
        criterion_2(cfg),
        criterion_3(cfg),
        criterion_4(cfg),
        criterion_5(cfg),
        criterion_6(cfg),
        criterion_7(cfg),
        criterion_8(cfg),
        criterion_9(cfg),
        criterion_10(cfg),
        criterion_11(cfg),
        criterion_12(cfg),
        criterion_13(cfg),
        criterion_14(cfg),
        criterion_15(cfg),
    ]
}
