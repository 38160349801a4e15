//! Explicit approximating polynomials with computational certification.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bounds::{certified_range, default_grid, BoundsError};
use crate::lp::{
    build_laurent_primal, simplex_solve, LinearProgram, LpError, Objective, Sense, VarBound,
};
use crate::scalar::{format_rat, rat, rat_int, rat_to_f64};
use crate::{Poly, Rat};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("w must be at least 8, got {0}")]
    WTooSmall(u64),
    #[error("k_max = {k_max} must be at least 2w = {min}")]
    KMaxTooSmall { k_max: u64, min: u64 },
    #[error("need 1 <= w and 2w <= N, got w = {w}, N = {n}")]
    BadCounting { n: u64, w: u64 },
    #[error("no corrector constants satisfied the exact conditions for w = {0}")]
    CorrectorSearchFailed(u64),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// The purely-negative-degree approximant, assembled in the variable
/// x = 1/k: a root block u, a shifted Chebyshev jump v, and a fixed cubic
/// corrector, with every certification step exact.
#[derive(Clone, Debug)]
pub struct FedjaPoly {
    pub w: u64,
    /// ceil(w^(1/3)); u has roots at 1/1 .. 1/d.
    pub d: u64,
    /// u(x) = (1 - x)(1 - 2x) ... (1 - d x).
    pub u: Poly,
    /// v(x) = T_d(B(x)) with B affine, B(1/w) = 1, B(1/d) = -1.
    pub v: Poly,
    /// The cubic corrector applied to the normalized product.
    pub amplifier: Poly,
    /// Final polynomial in x = 1/k.
    pub assembled: Poly,
    /// Exact value of v at the jump point x = 1/(2w); at least 2 by
    /// construction while |v| <= 1 on [1/w, 1/d].
    pub jump_value: Rat,
    /// Corrector constants frozen by the deterministic search.
    pub corrector_a: Rat,
    pub corrector_b: Rat,
}

fn integer_cbrt_ceil(v: u64) -> u64 {
    let mut r = 0u64;
    while r * r * r < v {
        r += 1;
    }
    r
}

/// Smoothstep 3y^2 - 2y^3.
fn smoothstep() -> Poly {
    Poly::from_i64(&[0, 0, 3, -2])
}

/// Exact range of the smoothstep over [p, q]: its only critical points are
/// 0 and 1, so endpoints plus interior critical values suffice.
fn smoothstep_range(p: &Rat, q: &Rat) -> (Rat, Rat) {
    let g = smoothstep();
    let mut vals = vec![g.eval(p), g.eval(q)];
    if p < &Rat::zero() && q > &Rat::zero() {
        vals.push(Rat::zero());
    }
    if p < &Rat::one() && q > &Rat::one() {
        vals.push(Rat::one());
    }
    (vals.iter().min().cloned().unwrap(), vals.iter().max().cloned().unwrap())
}

/// Builds the approximant for w >= 8.
///
/// Certified quantities steer a deterministic search for the corrector's
/// affine constants (a, b): with z the raw product u v, tau1 an upper bound
/// for the normalized values at inverse integers 1/k, k <= w, and tau2 a
/// lower bound for the normalized values on (0, 1/(2w)], the conditions
///
///   g([b, a tau1 + b])   inside [0, 1/3]
///   g([b, a + b])        inside [0, 1]
///   g([a tau2 + b, a+b]) inside [2/3, 1]
///
/// are checked exactly (g is the smoothstep); the first passing pair is
/// frozen. Total degree is 3 * 2d <= 8 ceil(w^(1/3)).
pub fn fedja_construct(w: u64) -> Result<FedjaPoly, ConstructionError> {
    if w < 8 {
        return Err(ConstructionError::WTooSmall(w));
    }
    let d = integer_cbrt_ceil(w);
    // u = prod (1 - m x)
    let mut u = Poly::one();
    for m in 1..=d {
        u = u.mul(&Poly::new(vec![Rat::one(), rat_int(-(m as i64))]));
    }
    // B affine with B(1/w) = 1, B(1/d) = -1.
    let lo = rat(1, w as i64);
    let hi = rat(1, d as i64);
    let slope = rat_int(-2) / (&hi - &lo);
    let intercept = (&hi + &lo) / (&hi - &lo);
    let v = Poly::chebyshev(d as usize).compose(&Poly::new(vec![intercept, slope]));
    let jump_value = v.eval(&rat(1, 2 * w as i64));

    let raw = u.mul(&v);
    let grid = default_grid(&raw);

    // Certified landmarks of the raw product.
    let (all_min, all_max) = certified_range(&raw, &Rat::zero(), &hi, grid)?;
    let (_low_min, low_max) = certified_range(&raw, &lo, &hi, grid)?;
    let (high_min, _high_max) = certified_range(&raw, &Rat::zero(), &rat(1, 2 * w as i64), grid)?;
    let z_lo = all_min.lo.clone().min(Rat::zero());
    let z_hi = all_max.hi.clone().max(Rat::zero());
    let span = &z_hi - &z_lo;
    // Conservative normalized class boundaries.
    let tau1 = (low_max.hi.clone().max(Rat::zero()) - &z_lo) / &span;
    let tau2 = (&high_min.lo - &z_lo) / &span;

    // Deterministic exact search for the corrector constants. The output is
    // kappa * g(a y + b) with kappa slightly below 1: the final polynomial
    // must stay strictly inside its bands so the continuous certification
    // (which always carries positive Markov slack) can confirm them.
    let kappa = rat(63, 64);
    let third = rat(1, 3);
    let high_floor = rat(2, 3) + rat(1, 256);
    let mut found = None;
    'outer: for ai in 16..=40u32 {
        let a = rat(ai as i64, 16);
        for bi in -16..=16i32 {
            let b = rat(bi as i64, 64);
            let low_end = &a * &tau1 + &b;
            let high_start = &a * &tau2 + &b;
            let top = &a + &b;
            let (lo_min, lo_max) = smoothstep_range(&b, &low_end);
            let (full_min, full_max) = smoothstep_range(&b, &top);
            let (hi_min, _hi_max) = smoothstep_range(&high_start, &top);
            if lo_min >= Rat::zero()
                && &kappa * lo_max <= third
                && full_min >= Rat::zero()
                && full_max <= Rat::one()
                && &kappa * hi_min >= high_floor
            {
                found = Some((a, b));
                break 'outer;
            }
        }
    }
    let (a, b) = found.ok_or(ConstructionError::CorrectorSearchFailed(w))?;

    // assembled = kappa * g(a * (raw - z_lo)/span + b), composed exactly.
    let pre_slope = &a / &span;
    let pre_intercept = &b - &a * &z_lo / &span;
    let amplifier = smoothstep().compose(&Poly::new(vec![b.clone(), a.clone()])).scale(&kappa);
    let inner = raw.scale(&pre_slope).add(&Poly::constant(pre_intercept));
    let assembled = smoothstep().compose(&inner).scale(&kappa);

    Ok(FedjaPoly {
        w,
        d,
        u,
        v,
        amplifier,
        assembled,
        jump_value,
        corrector_a: a,
        corrector_b: b,
    })
}

/// Verification report for the three defining properties.
#[derive(Clone, Debug, Serialize)]
pub struct FedjaReport {
    pub w: u64,
    pub k_max: u64,
    pub degree: usize,
    pub degree_cap: u64,
    /// p(1/k) in [0, 1/3] for k = 1..w.
    pub low_ok: bool,
    /// p(1/k) in [0, 1] for w < k < 2w.
    pub mid_ok: bool,
    /// p(1/k) in [2/3, 1] for 2w <= k <= k_max.
    pub high_ok: bool,
    /// Certified p(x) in [2/3, 1] on the whole interval [0, 1/(2w)]
    /// (covers every k >= 2w and the x -> 0 limit).
    pub continuous_high_ok: bool,
    pub constant_term: String,
    pub violations: Vec<String>,
}

pub fn fedja_verify(fp: &FedjaPoly, k_max: u64) -> Result<FedjaReport, ConstructionError> {
    let w = fp.w;
    if k_max < 2 * w {
        return Err(ConstructionError::KMaxTooSmall { k_max, min: 2 * w });
    }
    let p = &fp.assembled;
    let mut violations = Vec::new();
    let third = rat(1, 3);
    let two_thirds = rat(2, 3);

    let mut low_ok = true;
    for k in 1..=w {
        let val = p.eval(&rat(1, k as i64));
        if val.is_negative() || val > third {
            low_ok = false;
            violations.push(format!("p(1/{k}) = {} outside [0, 1/3]", format_rat(&val)));
        }
    }
    let mut mid_ok = true;
    for k in w + 1..2 * w {
        let val = p.eval(&rat(1, k as i64));
        if val.is_negative() || val > Rat::one() {
            mid_ok = false;
            violations.push(format!("p(1/{k}) = {} outside [0, 1]", format_rat(&val)));
        }
    }
    let mut high_ok = true;
    for k in 2 * w..=k_max {
        let val = p.eval(&rat(1, k as i64));
        if val < two_thirds || val > Rat::one() {
            high_ok = false;
            violations.push(format!("p(1/{k}) = {} outside [2/3, 1]", format_rat(&val)));
        }
    }
    // Fine grid: the construction leaves only a ~1/256 margin inside the
    // bands, so push the certification slack well below that.
    let deg = p.degree().unwrap_or(1) as u32;
    let grid = default_grid(p).max(32 * deg * deg.saturating_sub(1).max(1));
    let (cmin, cmax) = certified_range(p, &Rat::zero(), &rat(1, 2 * w as i64), grid)?;
    let continuous_high_ok = cmin.lo >= two_thirds && cmax.hi <= Rat::one();
    if !continuous_high_ok {
        violations.push(format!(
            "certified range on [0, 1/(2w)] = [{}, {}] escapes [2/3, 1]",
            format_rat(&cmin.lo),
            format_rat(&cmax.hi)
        ));
    }

    Ok(FedjaReport {
        w,
        k_max,
        degree: p.degree().unwrap_or(0),
        degree_cap: 8 * fp.d,
        low_ok,
        mid_ok,
        high_ok,
        continuous_high_ok,
        constant_term: format_rat(&p.coeff(0)),
        violations,
    })
}

/// The Chebyshev counting polynomial P(l) = T_d(1 + 2w/N - l/N) with
/// d = ceil(sqrt(N/w)).
///
/// The scaling here reproduces the classical w = 1 formula exactly and keeps
/// the argument inside [-1, 1] for every integer l in [2w, N]; the variant
/// with l/(wN) in place of l/N is available behind `paper_variant` for
/// comparison but fails its own boundedness at l = 2w once w >= 2.
pub fn chebyshev_counting_poly(n: u64, w: u64, paper_variant: bool) -> Result<Poly, ConstructionError> {
    if w < 1 || 2 * w > n {
        return Err(ConstructionError::BadCounting { n, w });
    }
    // exact ceil(sqrt(N/w)) on the rational N/w
    let ratio = rat(n as i64, w as i64);
    let mut dd = 0i64;
    while rat_int(dd) * rat_int(dd) < ratio {
        dd += 1;
    }
    let d = dd as usize;
    let slope = if paper_variant {
        rat(-1, (w * n) as i64)
    } else {
        rat(-1, n as i64)
    };
    let intercept = Rat::one() + rat(2 * w as i64, n as i64);
    Ok(Poly::chebyshev(d).compose(&Poly::new(vec![intercept, slope])))
}

/// Verification hooks: P(w) >= 2 and |P(l)| <= 1 for l = 2w..N.
#[derive(Clone, Debug, Serialize)]
pub struct ChebCountReport {
    pub n: u64,
    pub w: u64,
    pub degree: usize,
    pub value_at_w: String,
    pub value_at_w_f64: f64,
    pub at_least_two: bool,
    pub bounded_on_upper_range: bool,
    pub violations: Vec<String>,
}

pub fn chebyshev_counting_verify(n: u64, w: u64, p: &Poly) -> ChebCountReport {
    let pw = p.eval(&rat_int(w as i64));
    let at_least_two = pw >= rat_int(2);
    let mut violations = Vec::new();
    let mut bounded = true;
    for l in 2 * w..=n {
        let v = p.eval(&rat_int(l as i64));
        if v.abs() > Rat::one() {
            bounded = false;
            violations.push(format!("|P({l})| = {} > 1", format_rat(&v.abs())));
        }
    }
    ChebCountReport {
        n,
        w,
        degree: p.degree().unwrap_or(0),
        value_at_w: format_rat(&pw),
        value_at_w_f64: rat_to_f64(&pw),
        at_least_two,
        bounded_on_upper_range: bounded,
        violations,
    }
}

/// Best feasibility error achieved by an affine rescaling of the counting
/// polynomial inside the transformed primal with D1 = 0: minimizes eps over
/// (alpha, beta) subject to |alpha P(w) + beta - 1| <= eps,
/// |alpha P(2w) + beta + 1| <= eps, |alpha P(l) + beta| <= 1 + eps on the
/// boundedness range. This upper-bounds the primal optimum at
/// (D1, D2) = (0, deg P).
pub fn cheb_affine_feasibility(n: u64, w: u64, restricted: bool) -> Result<(Rat, Poly), ConstructionError> {
    let p = chebyshev_counting_poly(n, w, false)?;
    let values: Vec<(u64, Rat)> = crate::lp::boundedness_range(n, w, restricted)
        .into_iter()
        .map(|l| (l, p.eval(&rat_int(l as i64))))
        .collect();
    let pw = p.eval(&rat_int(w as i64));
    let p2w = p.eval(&rat_int(2 * w as i64));

    // Variables alpha, beta (free), eps (nonneg); minimize eps.
    let mut rows = Vec::new();
    let mut senses = Vec::new();
    let mut rhs = Vec::new();
    let mut push = |pv: &Rat, sign: i64, eps_coeff: Rat, b: Rat| {
        rows.push(vec![rat_int(sign) * pv, rat_int(sign), eps_coeff]);
        senses.push(Sense::Le);
        rhs.push(b);
    };
    // |alpha P(w) + beta - 1| <= eps
    push(&pw, 1, -Rat::one(), Rat::one());
    push(&pw, -1, -Rat::one(), -Rat::one());
    // |alpha P(2w) + beta + 1| <= eps
    push(&p2w, 1, -Rat::one(), -Rat::one());
    push(&p2w, -1, -Rat::one(), Rat::one());
    for (_, pv) in &values {
        push(pv, 1, -Rat::one(), Rat::one());
        push(pv, -1, -Rat::one(), Rat::one());
    }
    let lp = LinearProgram::new(
        Objective::Minimize,
        vec![Rat::zero(), Rat::zero(), Rat::one()],
        rows,
        senses,
        rhs,
        vec![VarBound::Free, VarBound::Free, VarBound::NonNegative],
        vec!["alpha".into(), "beta".into(), "eps".into()],
    )?;
    let sol = simplex_solve(&lp)?;
    let alpha = sol.primal[0].clone();
    let beta = sol.primal[1].clone();
    let q = p.scale(&alpha).add(&Poly::constant(beta));
    Ok((sol.value, q))
}

/// The assembled fedja polynomial as a purely negative-degree Laurent
/// polynomial q(k) = p(1/k).
pub fn fedja_as_laurent(fp: &FedjaPoly) -> crate::LaurentPoly {
    let terms: Vec<(i64, Rat)> = fp
        .assembled
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (-(i as i64), c.clone()))
        .collect();
    crate::LaurentPoly::from_terms(&terms)
}

/// Check that the primal optimum at (0, deg P) is at most the affine
/// feasibility bound (weak upper-bound certificate).
pub fn cheb_upper_bound_consistent(n: u64, w: u64) -> Result<(Rat, Rat), ConstructionError> {
    let p = chebyshev_counting_poly(n, w, false)?;
    let (eps_affine, _) = cheb_affine_feasibility(n, w, false)?;
    let lp = build_laurent_primal(n, w, 0, p.degree().unwrap_or(0) as u64, false)?;
    let opt = crate::lp::solve_via_dual(&lp)?;
    Ok((opt.value, eps_affine))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fedja_structure_w27() {
        let fp = fedja_construct(27).unwrap();
        assert_eq!(fp.d, 3);
        // u(1/k) = 0 exactly for k in [w^(1/3)]
        for k in 1..=3i64 {
            assert!(fp.u.eval(&rat(1, k)).is_zero());
        }
        // jump value at least 2 while |v| <= 1 on the window
        assert!(fp.jump_value >= rat_int(2));
        // degree cap
        assert!(fp.assembled.degree().unwrap_or(usize::MAX) <= (8 * fp.d) as usize);
    }

    #[test]
    fn fedja_u_bounded_on_window() {
        // w = 27: u in [0,1] on [0, 1/3], sampled exactly plus certified slack.
        let fp = fedja_construct(27).unwrap();
        for i in 0..=200i64 {
            let x = rat(i, 600); // [0, 1/3]
            let v = fp.u.eval(&x);
            assert!(!v.is_negative() && v <= Rat::one(), "u({i}/600) out of range");
        }
        let (mn, mx) = certified_range(&fp.u, &rat_int(0), &rat(1, 3), 256).unwrap();
        assert!(mn.lo > rat(-1, 100));
        assert!(mx.hi < rat(101, 100));
    }

    #[test]
    fn fedja_verify_small_cubes() {
        for w in [8u64, 27] {
            let fp = fedja_construct(w).unwrap();
            let rep = fedja_verify(&fp, 3 * w).unwrap();
            assert!(rep.low_ok && rep.mid_ok && rep.high_ok && rep.continuous_high_ok,
                "violations at w={w}: {:?}", rep.violations);
            assert!(rep.degree as u64 <= rep.degree_cap);
        }
    }

    #[test]
    fn fedja_rejects_small_w() {
        assert!(fedja_construct(7).is_err());
    }

    #[test]
    fn cheb_count_base_example() {
        // N=16, w=1: P(1) = T_4(17/16) >= 2.
        let p = chebyshev_counting_poly(16, 1, false).unwrap();
        assert_eq!(p.eval(&rat_int(1)), rat(17729, 8192));
        let rep = chebyshev_counting_verify(16, 1, &p);
        assert!(rep.at_least_two && rep.bounded_on_upper_range);
        // l = 16: argument 2/16 inside [-1, 1]
        assert!(p.eval(&rat_int(16)).abs() <= Rat::one());
    }

    #[test]
    fn cheb_count_unit_argument() {
        // N=64, w=4, l = 2w: argument exactly 1, P = 1.
        let p = chebyshev_counting_poly(64, 4, false).unwrap();
        assert_eq!(p.eval(&rat_int(8)), rat_int(1));
    }

    #[test]
    fn cheb_paper_variant_unbounded_for_larger_w() {
        // The uncorrected scaling escapes [-1, 1] at l = 2w once w >= 2.
        let p = chebyshev_counting_poly(64, 4, true).unwrap();
        let rep = chebyshev_counting_verify(64, 4, &p);
        assert!(!rep.bounded_on_upper_range);
    }

    #[test]
    fn cheb_affine_upper_bound() {
        let (opt, affine) = cheb_upper_bound_consistent(16, 1).unwrap();
        assert!(affine < Rat::one(), "affine eps = {}", format_rat(&affine));
        assert!(opt <= affine);
    }
}
