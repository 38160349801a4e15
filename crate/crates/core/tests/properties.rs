//! Property suites for the exact kernels: split/recombine identities,
//! symmetrization against brute-force oracles, bound checkers against exact
//! evaluation, and the LP solver against vertex enumeration.

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use apxcount::boolsym::MultilinearPoly;
use apxcount::bounds::{certified_abs_max, certified_range, markov_bound, paturi_bound};
use apxcount::lp::{simplex_solve, LinearProgram, LpStatus, Objective, Sense, VarBound};
use apxcount::scalar::{binomial, rat, rat_int};
use apxcount::witness::{build_witness, WitnessParams};
use apxcount::{BivarPoly, LaurentPoly, Poly, Rat};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-24i64..=24, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(arb_rat(), 1..=max_deg + 1).prop_map(Poly::new)
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    (prop::collection::vec(arb_rat(), 1..=9), -4i64..=2)
        .prop_map(|(coeffs, min_exp)| LaurentPoly::new(min_exp, coeffs))
}

fn arb_bivar() -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec(((0usize..4, 0usize..4), arb_rat()), 0..6)
        .prop_map(|terms| {
            let t: Vec<(usize, usize, Rat)> =
                terms.into_iter().map(|((i, j), c)| (i, j, c)).collect();
            BivarPoly::from_terms(&t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_split_recombines(q in arb_laurent(), k in prop::sample::select(vec![-7i64, -3, -1, 1, 2, 5, 9])) {
        let (u, v) = q.split();
        let x = rat_int(k);
        let direct = q.eval(&x).unwrap();
        let recombined = u.eval(&x) + v.eval(&(Rat::one() / x));
        prop_assert_eq!(direct, recombined);
    }

    #[test]
    fn symmetric_laurent_round_trip(q in arb_poly(6)) {
        // Substituting x + 1/x into q gives a symmetric Laurent polynomial;
        // eliminating back must reproduce q exactly.
        let l = LaurentPoly::substitute_x_plus_inv(&q);
        prop_assert!(l.is_symmetric());
        let q2 = l.symmetric_to_ordinary().unwrap();
        prop_assert_eq!(q2, q);
        let l2 = LaurentPoly::substitute_x_plus_inv(&l.symmetric_to_ordinary().unwrap());
        prop_assert_eq!(l2, l);
    }

    #[test]
    fn hyperbola_of_symmetrized_is_symmetric(p in arb_bivar(), a in prop::sample::select(vec![1i64, 2, 3, -1])) {
        let sym = p.symmetrize_swap();
        let l = sym.hyperbola_restrict(&rat_int(a)).unwrap();
        prop_assert!(l.is_symmetric());
    }

    #[test]
    fn mp_symmetrize_matches_brute_force(seed in prop::collection::vec((0u32..1024, arb_rat()), 0..6)) {
        let n = 10usize;
        let p = MultilinearPoly::new(n, seed).unwrap();
        let q = p.mp_symmetrize();
        for k in 0..=n {
            let brute = p.brute_force_weight_average(k).unwrap();
            prop_assert_eq!(q.eval(&rat_int(k as i64)), brute, "k = {}", k);
        }
    }

    #[test]
    fn keyidentity_random_polynomials(coeffs in prop::collection::vec(arb_rat(), 1..12), n in 4u64..=24) {
        // sum_l C(N,l) (-1)^l Q(l) = 0 for deg Q <= N - 1.
        let q = Poly::new(coeffs);
        prop_assume!((q.degree().unwrap_or(0) as u64) < n);
        let mut acc = Rat::zero();
        for l in 0..=n {
            let mut term = Rat::from_integer(binomial(n, l)) * q.eval(&rat_int(l as i64));
            if l % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn markov_bound_dominates_derivative(p in arb_poly(6), lo in -4i64..0, len in 1i64..6) {
        let a = rat_int(lo);
        let b = rat_int(lo + len);
        let bound = markov_bound(&p, &a, &b).unwrap();
        let dp = p.derivative();
        // Fine grid sweep of |p'|.
        for i in 0..=96 {
            let x = &a + (&b - &a) * rat(i, 96);
            prop_assert!(dp.eval(&x).abs() <= bound);
        }
    }

    #[test]
    fn certified_range_contains_samples(p in arb_poly(7)) {
        let a = rat_int(-1);
        let b = rat_int(1);
        let (min_b, max_b) = certified_range(&p, &a, &b, 64).unwrap();
        for i in 0..=200 {
            let v = p.eval(&(&a + (&b - &a) * rat(i, 200)));
            prop_assert!(v <= max_b.hi && v >= min_b.lo);
        }
    }

    #[test]
    fn paturi_bound_dominates_growth(p in arb_poly(8)) {
        prop_assume!(!p.is_zero());
        // Certify |p| <= 1 on [-1,1] by exact normalization.
        let m = certified_abs_max(&p, &rat_int(-1), &rat_int(1), 512).unwrap();
        prop_assume!(m.hi.is_positive());
        let scaled = p.scale(&(Rat::one() / &m.hi));
        let d = scaled.degree().unwrap_or(0) as u64;
        for mu in [rat(1, 16), rat(1, 8), rat(1, 4)] {
            let value = scaled.eval(&(Rat::one() + &mu)).abs();
            prop_assert!(paturi_bound(d, &mu).certainly_at_least(&value));
        }
    }
}

#[test]
fn eas_symmetrization_bounded_on_reals() {
    // For p bounded in [0,1] on every Boolean input, the erase-all-subscripts
    // symmetrization stays in [0,1] at real inputs in [0,1]; checked for 20
    // normalized random polynomials at 100 rational points each.
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let n = 8usize;
    for _ in 0..20 {
        let terms: Vec<(u32, Rat)> = (0..5)
            .map(|_| (rng.gen_range(0..1u32 << n), rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))))
            .collect();
        let p = MultilinearPoly::new(n, terms).unwrap();
        // Normalize to [0,1] on the cube by exact enumeration.
        let values: Vec<Rat> = (0..1u32 << n).map(|m| p.eval_mask(m)).collect();
        let lo = values.iter().min().unwrap().clone();
        let hi = values.iter().max().unwrap().clone();
        if lo == hi {
            continue;
        }
        let span = &hi - &lo;
        let shifted = MultilinearPoly::new(
            n,
            p.terms()
                .map(|(m, c)| (m, c / &span))
                .chain(std::iter::once((0u32, -&lo / &span)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let q = shifted.eas_symmetrize();
        for i in 0..=100i64 {
            let k = rat(i, 100);
            let v = q.eval(&k);
            assert!(
                !v.is_negative() && v <= Rat::one(),
                "eas value escapes [0,1] at k = {i}/100"
            );
        }
    }
}

#[test]
fn mp_symmetrization_halfinteger_witness() {
    // Regression fixture: and-of-two is cube-bounded yet its Minsky-Papert
    // symmetrization is negative at k = 1/2.
    let p = MultilinearPoly::new(2, vec![(0b11u32, rat_int(1))]).unwrap();
    let q = p.mp_symmetrize();
    assert_eq!(q.eval(&rat(1, 2)), rat(-1, 8));
}

#[test]
fn two_oracle_coupling_identity() {
    // q(s,t) == E[p(X,Y)] with X ~ Bin(N, s/N), Y ~ Bin(N, t/N),
    // via the independent raw-moment route (Stirling numbers), for all
    // multilinear monomials of total degree <= 4 on two blocks of N <= 6.
    for n in [2usize, 4, 6] {
        let masks: Vec<u32> = (0..1u32 << (2 * n)).filter(|m| m.count_ones() <= 4).collect();
        for chunk in masks.chunks(97) {
            // sample sparsely to keep runtime sane
            let mask = chunk[0];
            let r = MultilinearPoly::new(2 * n, vec![(mask, rat_int(1))]).unwrap();
            let (q, p) = r.two_oracle_symmetrize(n).unwrap();
            let coupled = binomial_expectation(&p, n as u64);
            assert_eq!(q, coupled, "coupling fails at n = {n}, mask = {mask:#b}");
        }
    }
}

/// E[p(X, Y)] for independent X ~ Bin(N, s/N), Y ~ Bin(N, t/N), expanded via
/// raw binomial moments E[X^m] = sum_a S2(m, a) (N)_a (s/N)^a.
fn binomial_expectation(p: &BivarPoly, n: u64) -> BivarPoly {
    let max_deg = 9usize;
    let s2 = stirling2(max_deg);
    let moment = |m: usize| -> Poly {
        // polynomial in the mean variable
        let mut acc = Poly::zero();
        for a in 0..=m {
            if s2[m][a].is_zero() {
                continue;
            }
            let mut falling = Rat::one();
            for i in 0..a as u64 {
                falling *= rat_int((n - i) as i64);
            }
            let coeff = &s2[m][a] * falling / apxcount::Scalar::pow_u(&rat_int(n as i64), a);
            acc = acc.add(&Poly::monomial(coeff, a));
        }
        acc
    };
    let mut out = BivarPoly::zero();
    for (i, j, c) in p.terms() {
        let mx = moment(i);
        let my = moment(j);
        out = out.add(&BivarPoly::from_product(&mx, &my).scale(c));
    }
    out
}

fn stirling2(max: usize) -> Vec<Vec<Rat>> {
    let mut s = vec![vec![Rat::zero(); max + 1]; max + 1];
    s[0][0] = Rat::one();
    for m in 1..=max {
        for a in 1..=m {
            let t = s[m - 1][a].clone() * rat_int(a as i64) + s[m - 1][a - 1].clone();
            s[m][a] = t;
        }
    }
    s
}

#[test]
fn chebyshev_extrema_sign_pattern() {
    // T_d alternates sign at rational approximations of its d+1 extrema.
    for d in [3usize, 5, 8, 12] {
        let t = Poly::chebyshev(d);
        for k in 0..=d {
            let node = (k as f64 * std::f64::consts::PI / d as f64).cos();
            let approx = rat((node * (1 << 20) as f64).round() as i64, 1 << 20);
            let v = t.eval(&approx);
            let expect_positive = k % 2 == 0;
            assert_eq!(
                v.is_positive(),
                expect_positive,
                "T_{d} sign at extremum {k}"
            );
        }
    }
}

#[test]
fn witness_is_feasible_for_paper_dual() {
    // The normalized witness satisfies the dual program's rows exactly and
    // its objective value there equals dual_objective.
    let params = WitnessParams::new(64, 4, 3).unwrap();
    let wit = build_witness(&params).unwrap();
    let lp = apxcount::lp::build_laurent_dual(64, 4, params.d1, params.d2).unwrap();
    // Assemble the split-variable assignment phi+ = max(phi, 0), phi- = -min(phi, 0).
    let mut x = vec![Rat::zero(); lp.num_vars()];
    for l in 1..=64u64 {
        let phi = wit.phi(l);
        let idx = 2 * (l - 1) as usize;
        if phi.is_positive() {
            x[idx] = phi;
        } else {
            x[idx + 1] = -phi;
        }
    }
    // Rows: moments must vanish, normalization row must be exactly 1.
    for (row, (sense, rhs)) in lp.rows.iter().zip(lp.senses.iter().zip(lp.rhs.iter())) {
        let lhs: Rat = row.iter().zip(&x).map(|(a, b)| a * b).sum();
        match sense {
            Sense::Eq => assert_eq!(&lhs, rhs),
            Sense::Le => assert!(lhs <= *rhs && lhs == Rat::one(), "normalization tight"),
            Sense::Ge => unreachable!(),
        }
    }
    let objective: Rat = lp.objective.iter().zip(&x).map(|(a, b)| a * b).sum();
    assert_eq!(objective, wit.dual_objective());
}

#[test]
fn simplex_agrees_with_vertex_enumeration() {
    // Degenerate cycling fixture, cross-checked by enumerating every basic
    // feasible point of {x >= 0, Ax <= b} directly.
    let a_rows: Vec<Vec<Rat>> = vec![
        vec![rat(1, 4), rat_int(-60), rat(-1, 25), rat_int(9)],
        vec![rat(1, 2), rat_int(-90), rat(-1, 50), rat_int(3)],
        vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)],
    ];
    let b = vec![rat_int(0), rat_int(0), rat_int(1)];
    let c = vec![rat(-3, 4), rat_int(150), rat(-1, 50), rat_int(6)];
    let lp = LinearProgram::new(
        Objective::Minimize,
        c.clone(),
        a_rows.clone(),
        vec![Sense::Le; 3],
        b.clone(),
        vec![VarBound::NonNegative; 4],
        (0..4).map(|i| format!("x{i}")).collect(),
    )
    .unwrap();
    let sol = simplex_solve(&lp).unwrap();
    assert_eq!(sol.status, LpStatus::Optimal);

    // Vertex enumeration: choose 4 tight constraints among 3 rows + 4 sign
    // bounds, solve exactly, keep feasible points, take the best objective.
    let mut best: Option<Rat> = None;
    let nrows = 3;
    let nvars = 4;
    let total = nrows + nvars;
    for pick in 0..(1u32 << total) {
        if pick.count_ones() as usize != nvars {
            continue;
        }
        let mut mat = Vec::new();
        let mut rhs = Vec::new();
        for r in 0..total {
            if pick >> r & 1 == 0 {
                continue;
            }
            if r < nrows {
                mat.push(a_rows[r].clone());
                rhs.push(b[r].clone());
            } else {
                let mut row = vec![Rat::zero(); nvars];
                row[r - nrows] = Rat::one();
                mat.push(row);
                rhs.push(Rat::zero());
            }
        }
        if let Some(x) = solve_square(&mut mat, &mut rhs) {
            let feasible = x.iter().all(|v| !v.is_negative())
                && a_rows.iter().zip(&b).all(|(row, bound)| {
                    row.iter().zip(&x).map(|(p, q)| p * q).sum::<Rat>() <= *bound
                });
            if feasible {
                let val: Rat = c.iter().zip(&x).map(|(p, q)| p * q).sum();
                best = Some(match best {
                    None => val,
                    Some(cur) => cur.min(val),
                });
            }
        }
    }
    assert_eq!(sol.value, best.unwrap());
}

/// Test-local exact Gaussian elimination (independent of the library path).
fn solve_square(mat: &mut [Vec<Rat>], rhs: &mut [Rat]) -> Option<Vec<Rat>> {
    let n = mat.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        let p = mat[col][col].clone();
        for r in 0..n {
            if r == col || mat[r][col].is_zero() {
                continue;
            }
            let f = &mat[r][col] / &p;
            for c2 in col..n {
                let d = &f * &mat[col][c2];
                mat[r][c2] -= d;
            }
            let d = &f * &rhs[col];
            rhs[r] -= d;
        }
    }
    Some((0..n).map(|i| &rhs[i] / &mat[i][i]).collect())
}

#[test]
fn fedja_feeds_explosion_audit() {
    // The assembled approximant, viewed as the pure 1/k part of a Laurent
    // polynomial, shows the large v-side jump G_v >= 1/6.
    let fp = apxcount::constructions::fedja_construct(27).unwrap();
    let q = apxcount::constructions::fedja_as_laurent(&fp);
    let audit = apxcount::bounds::explosion_audit(&q, 1000, 27).unwrap();
    let g_v = audit.quantity("G_v").unwrap();
    assert!(g_v.lo >= rat(1, 6), "G_v lower bound too small");
    // The fedja polynomial genuinely solves the promise, so no violations.
    assert!(audit.input_violations.is_empty(), "{:?}", audit.input_violations);
}
