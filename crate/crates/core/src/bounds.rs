//! Certified polynomial range bounds and the approximation-theory checkers.
//!
//! Everything here is exact rational arithmetic except [`paturi_bound`],
//! whose value is transcendental; that one returns directed high-precision
//! enclosures and is flagged as non-exact.

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::poly::Degree;
use crate::scalar::{format_rat, rat, rat_int, rat_to_f64, sqrt_lower, sqrt_upper};
use crate::{LaurentPoly, Poly, Rat};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("interval [{0}, {1}] is empty or degenerate")]
    EmptyInterval(String, String),
    #[error("grid must be at least 2, got {0}")]
    BadGrid(u32),
    #[error("explosion audit requires 0 < 4w < N, got w = {w}, N = {n}")]
    BadAuditParams { n: u64, w: u64 },
}

/// Two-sided enclosure of a scalar quantity. When `certified` is set the true
/// value provably lies in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalBound {
    #[serde(with = "crate::scalar::rat_string")]
    pub lo: Rat,
    #[serde(with = "crate::scalar::rat_string")]
    pub hi: Rat,
    pub certified: bool,
}

impl IntervalBound {
    pub fn exact(v: Rat) -> Self {
        IntervalBound { lo: v.clone(), hi: v, certified: true }
    }

    pub fn lo_f64(&self) -> f64 {
        rat_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        rat_to_f64(&self.hi)
    }
}

/// Default sampling grid: 64 per degree, floored at 64.
pub fn default_grid(p: &Poly) -> u32 {
    64 * (p.degree().unwrap_or(0) as u32).max(1)
}

fn sample_points(a: &Rat, b: &Rat, grid: u32) -> Vec<Rat> {
    let step = (b - a) / rat_int(grid as i64);
    (0..=grid).map(|i| a + &step * rat_int(i as i64)).collect()
}

/// Certified (min, max) of `p` on `[a, b]`.
///
/// Samples at `grid + 1` equispaced points and adds slack derived from the
/// Markov brothers' inequality applied twice: with `S` the sampled
/// oscillation and `d` the degree, the true oscillation is at most
/// `S / (1 - d^2 (d-1)^2 / (2 grid^2))`, and between adjacent samples the
/// polynomial deviates from the endpoint chord by at most
/// `osc * d^2 (d-1)^2 / (4 grid^2)`. The grid is enlarged internally when
/// needed to keep the geometric correction valid, so the result is always
/// certified.
pub fn certified_range(
    p: &Poly,
    a: &Rat,
    b: &Rat,
    grid: u32,
) -> Result<(IntervalBound, IntervalBound), BoundsError> {
    if a >= b {
        return Err(BoundsError::EmptyInterval(format_rat(a), format_rat(b)));
    }
    if grid < 2 {
        return Err(BoundsError::BadGrid(grid));
    }
    let d = p.degree().unwrap_or(0) as u64;
    let d1 = d.saturating_sub(1);
    // Certification needs 2 grid^2 > d^2 (d-1)^2.
    let mut grid = grid as u64;
    while 2 * grid * grid <= d * d * d1 * d1 {
        grid *= 2;
    }
    let samples: Vec<Rat> = sample_points(a, b, grid as u32).iter().map(|x| p.eval(x)).collect();
    let max_s = samples.iter().max().cloned().unwrap();
    let min_s = samples.iter().min().cloned().unwrap();
    let osc_s = &max_s - &min_s;
    let slack = if d <= 1 {
        Rat::zero()
    } else {
        // beta = d^2 (d-1)^2 / (4 grid^2); osc <= S / (1 - 2 beta); slack = osc * beta
        let beta = Rat::new(
            BigInt::from(d * d * d1 * d1),
            BigInt::from(4 * grid * grid),
        );
        let osc_hi = &osc_s / (Rat::one() - rat_int(2) * &beta);
        osc_hi * beta
    };
    let max_bound = IntervalBound { lo: max_s.clone(), hi: max_s + &slack, certified: true };
    let min_bound = IntervalBound { lo: &min_s - &slack, hi: min_s, certified: true };
    Ok((min_bound, max_bound))
}

/// Certified maximum of `p` on `[a, b]`: `lo` is the best sample, `hi` adds
/// the Markov-derived slack.
pub fn interval_extremum(p: &Poly, a: &Rat, b: &Rat, grid: u32) -> Result<IntervalBound, BoundsError> {
    certified_range(p, a, b, grid).map(|(_, max)| max)
}

/// Certified oscillation max - min of `p` on `[a, b]`.
pub fn certified_oscillation(p: &Poly, a: &Rat, b: &Rat, grid: u32) -> Result<IntervalBound, BoundsError> {
    let (min, max) = certified_range(p, a, b, grid)?;
    Ok(IntervalBound {
        lo: &max.lo - &min.hi,
        hi: &max.hi - &min.lo,
        certified: true,
    })
}

/// Certified maximum of |p| on `[a, b]`.
pub fn certified_abs_max(p: &Poly, a: &Rat, b: &Rat, grid: u32) -> Result<IntervalBound, BoundsError> {
    let (min, max) = certified_range(p, a, b, grid)?;
    let lo = max.lo.clone().max(-min.hi.clone()).max(Rat::zero());
    let hi = max.hi.max(-min.lo).max(Rat::zero());
    Ok(IntervalBound { lo, hi, certified: true })
}

/// Markov derivative bound: H / (b - a) * deg(p)^2 with H the certified
/// oscillation of `p` on `[a, b]`. Every value of |p'| on the interval is
/// provably at most the returned bound.
pub fn markov_bound(p: &Poly, a: &Rat, b: &Rat) -> Result<Rat, BoundsError> {
    if a >= b {
        return Err(BoundsError::EmptyInterval(format_rat(a), format_rat(b)));
    }
    let d = p.degree().unwrap_or(0) as i64;
    if d == 0 {
        return Ok(Rat::zero());
    }
    let h = certified_oscillation(p, a, b, default_grid(p))?.hi;
    Ok(h / (b - a) * rat_int(d * d))
}

/// Number of decimal digits carried by [`paturi_bound`] (mantissa 256 bits).
const PATURI_PRECISION_BITS: usize = 256;

/// Growth bound exp(2 d sqrt(2 mu + mu^2)) for a degree-d polynomial bounded
/// by 1 on [-1, 1], evaluated at 1 + mu. Transcendental, hence returned as a
/// directed high-precision enclosure rather than an exact rational.
#[derive(Clone, Debug)]
pub struct PaturiBound {
    pub degree: u64,
    pub mu: Rat,
    /// Decimal rendering of the enclosure midpoint (>= 50 significant digits).
    pub decimal: String,
    pub approx: f64,
    pub exact: bool,
    lower: BigFloat,
    upper: BigFloat,
}

impl PaturiBound {
    /// True when `value` (exact) is certainly at most the bound.
    pub fn certainly_at_least(&self, value: &Rat) -> bool {
        rat_to_bigfloat(value, RoundingMode::Up) <= self.lower
    }

    /// Directed enclosure of the true bound.
    pub fn enclosure(&self) -> (&BigFloat, &BigFloat) {
        (&self.lower, &self.upper)
    }
}

fn bigint_to_bigfloat(n: &BigInt, rm: RoundingMode) -> BigFloat {
    // Assemble from 64-bit limbs, most significant first.
    let (sign, mag) = (n.sign(), n.magnitude());
    let digits = mag.to_u64_digits();
    let mut acc = BigFloat::from_u64(0, PATURI_PRECISION_BITS);
    let shift = BigFloat::from_u64(u64::MAX, PATURI_PRECISION_BITS)
        .add(&BigFloat::from_u64(1, PATURI_PRECISION_BITS), PATURI_PRECISION_BITS, rm);
    for limb in digits.iter().rev() {
        acc = acc
            .mul(&shift, PATURI_PRECISION_BITS, rm)
            .add(&BigFloat::from_u64(*limb, PATURI_PRECISION_BITS), PATURI_PRECISION_BITS, rm);
    }
    if sign == num_bigint::Sign::Minus {
        acc.neg()
    } else {
        acc
    }
}

fn rat_to_bigfloat(r: &Rat, rm: RoundingMode) -> BigFloat {
    // Directed: numerator rounded in the requested direction, denominator in
    // the opposite one, division in the requested one. Valid for r >= 0.
    assert!(!r.is_negative(), "directed conversion expects a nonnegative rational");
    let opposite = match rm {
        RoundingMode::Up => RoundingMode::Down,
        _ => RoundingMode::Up,
    };
    let num = bigint_to_bigfloat(r.numer(), rm);
    let den = bigint_to_bigfloat(r.denom(), opposite);
    num.div(&den, PATURI_PRECISION_BITS, rm)
}

/// exp(2 d sqrt(2 mu + mu^2)) as a directed enclosure; requires mu >= 0.
pub fn paturi_bound(degree: u64, mu: &Rat) -> PaturiBound {
    assert!(!mu.is_negative(), "paturi_bound requires mu >= 0");
    if degree == 0 || mu.is_zero() {
        let one = BigFloat::from_u64(1, PATURI_PRECISION_BITS);
        return PaturiBound {
            degree,
            mu: mu.clone(),
            decimal: "1.0".into(),
            approx: 1.0,
            exact: true,
            lower: one.clone(),
            upper: one,
        };
    }
    let arg = rat_int(2) * mu + mu * mu; // 2 mu + mu^2
    let two_d = rat_int(2 * degree as i64);
    let mut cc = Consts::new().expect("constants cache");
    let p = PATURI_PRECISION_BITS;
    let directed = |rm: RoundingMode, cc: &mut Consts| {
        rat_to_bigfloat(&arg, rm)
            .sqrt(p, rm)
            .mul(&rat_to_bigfloat(&two_d, rm), p, rm)
            .exp(p, rm, cc)
    };
    let lower = directed(RoundingMode::Down, &mut cc);
    let upper = directed(RoundingMode::Up, &mut cc);
    let exponent = 2.0 * degree as f64 * rat_to_f64(&arg).sqrt();
    PaturiBound {
        degree,
        mu: mu.clone(),
        decimal: format!("{}", lower),
        approx: exponent.exp(),
        exact: false,
        lower,
        upper,
    }
}

// ---------------------------------------------------------------------------
// Explosion-argument audit
// ---------------------------------------------------------------------------

/// Trivalent outcome of an interval-arithmetic inequality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainStatus {
    Holds,
    Fails,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainCheck {
    pub name: String,
    pub status: ChainStatus,
    /// Whether the degree hypothesis behind the inequality is met; the
    /// inequality is still reported when it is not.
    pub hypothesis_ok: bool,
    pub lhs: IntervalBound,
    pub rhs: IntervalBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplosionAudit {
    pub n: u64,
    pub w: u64,
    pub deg_u: Option<usize>,
    pub deg_v: Option<usize>,
    /// Violations of the purported approximate-counting behaviour of q
    /// (reported, never fatal).
    pub input_violations: Vec<String>,
    /// The ten growth quantities, keyed G/Delta/H/I/L per side.
    pub quantities: Vec<(String, IntervalBound)>,
    pub chains: Vec<ChainCheck>,
}

fn compare(lhs: &IntervalBound, rhs: &IntervalBound) -> ChainStatus {
    if lhs.lo >= rhs.hi {
        ChainStatus::Holds
    } else if lhs.hi < rhs.lo {
        ChainStatus::Fails
    } else {
        ChainStatus::Undetermined
    }
}

fn scale_bound(b: &IntervalBound, lo_factor: &Rat, hi_factor: &Rat) -> IntervalBound {
    // Valid for nonnegative quantities and positive factors.
    IntervalBound {
        lo: &b.lo * lo_factor,
        hi: &b.hi * hi_factor,
        certified: b.certified,
    }
}

/// Exact maximum pairwise difference of `p` over a finite set of abscissas.
fn discrete_oscillation(p: &Poly, points: impl Iterator<Item = Rat>) -> Rat {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for x in points {
        let v = p.eval(&x);
        if lo.as_ref().is_none_or(|l| v < *l) {
            lo = Some(v.clone());
        }
        if hi.as_ref().is_none_or(|h| v > *h) {
            hi = Some(v);
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => h - l,
        _ => Rat::zero(),
    }
}

/// Computes the ten growth quantities of the explosion argument for
/// q(k) = u(k) + v(1/k) and reports which inequalities of the two coupled
/// chains hold. Purely diagnostic: violations of the input promise are
/// reported alongside, not raised.
pub fn explosion_audit(q: &LaurentPoly, n: u64, w: u64) -> Result<ExplosionAudit, BoundsError> {
    if w == 0 || n <= 4 * w {
        return Err(BoundsError::BadAuditParams { n, w });
    }
    let (u, v) = q.split();
    let deg_u = match u.degree() {
        Degree::MinusInfinity => None,
        Degree::Of(d) => Some(d),
    };
    let deg_v = match v.degree() {
        Degree::MinusInfinity => None,
        Degree::Of(d) => Some(d),
    };

    // Input promise: q(w) <= 1/3, q(2w) >= 2/3, q(k) in [0,1] on 1..N.
    let mut violations = Vec::new();
    let qw = q.eval(&rat_int(w as i64)).expect("w > 0");
    if qw > rat(1, 3) {
        violations.push(format!("q(w) = {} > 1/3", format_rat(&qw)));
    }
    let q2w = q.eval(&rat_int(2 * w as i64)).expect("2w > 0");
    if q2w < rat(2, 3) {
        violations.push(format!("q(2w) = {} < 2/3", format_rat(&q2w)));
    }
    for k in 1..=n {
        let qk = q.eval(&rat_int(k as i64)).expect("k > 0");
        if qk.is_negative() || qk > Rat::one() {
            violations.push(format!("q({k}) = {} outside [0,1]", format_rat(&qk)));
        }
    }

    // Dyadic enclosure of sqrt(w); intervals are enlarged conservatively.
    let sqrt_w_lo = sqrt_lower(&rat_int(w as i64), 24);
    let sqrt_w_hi = sqrt_upper(&rat_int(w as i64), 24);
    let nn = rat_int(n as i64);
    let ww = rat_int(w as i64);
    let w2 = rat_int(2 * w as i64);
    let inv = |x: &Rat| Rat::one() / x;

    let grid_u = default_grid(&u);
    let grid_v = default_grid(&v);
    let u_prime = u.derivative();
    let v_prime = v.derivative();

    // A zero polynomial contributes zero to every quantity.
    let osc = |p: &Poly, a: &Rat, b: &Rat, g: u32| -> Result<IntervalBound, BoundsError> {
        if p.degree() == Degree::MinusInfinity || p.degree() == Degree::Of(0) {
            Ok(IntervalBound::exact(Rat::zero()))
        } else {
            certified_oscillation(p, a, b, g)
        }
    };
    let abs_max = |p: &Poly, a: &Rat, b: &Rat, g: u32| -> Result<IntervalBound, BoundsError> {
        if p.degree() == Degree::MinusInfinity {
            Ok(IntervalBound::exact(Rat::zero()))
        } else {
            certified_abs_max(p, a, b, g)
        }
    };

    let g_u = osc(&u, &sqrt_w_lo, &w2, grid_u)?;
    let delta_u = abs_max(&u_prime, &sqrt_w_lo, &w2, grid_u)?;
    let h_u = osc(&u, &sqrt_w_lo, &nn, grid_u)?;
    let i_u = osc(&u, &ww, &nn, grid_u)?;
    let l_u = IntervalBound::exact(discrete_oscillation(&u, (w..=n).map(|k| rat_int(k as i64))));

    let g_v = osc(&v, &inv(&nn), &inv(&ww), grid_v)?;
    let delta_v = abs_max(&v_prime, &inv(&nn), &inv(&ww), grid_v)?;
    let h_v = osc(&v, &inv(&nn), &inv(&sqrt_w_lo), grid_v)?;
    let i_v = osc(&v, &inv(&w2), &inv(&sqrt_w_lo), grid_v)?;
    let sqrt_w_ceil = {
        let mut k = 1u64;
        while k * k < w {
            k += 1;
        }
        k
    };
    let l_v = IntervalBound::exact(discrete_oscillation(
        &v,
        (sqrt_w_ceil..=2 * w).map(|k| inv(&rat_int(k as i64))),
    ));

    let du2 = rat_int((deg_u.unwrap_or(0).max(1) as i64).pow(2));
    let dv2 = rat_int((deg_v.unwrap_or(0).max(1) as i64).pow(2));
    let one = IntervalBound::exact(Rat::one());
    let minus = |a: &IntervalBound, b: &IntervalBound| IntervalBound {
        lo: &a.lo - &b.hi,
        hi: &a.hi - &b.lo,
        certified: a.certified && b.certified,
    };
    let half = |a: &IntervalBound| scale_bound(a, &rat(1, 2), &rat(1, 2));

    // Hypotheses for the shrink / discretization steps.
    let eps_u = (&ww - &sqrt_w_hi) / (&nn - &sqrt_w_lo);
    let hyp_i_u = eps_u * rat_int(100) * &du2 <= Rat::one();
    let hyp_l_u = du2.clone() <= rat_int((n - w) as i64); // deg(u)^2 <= N - w
    let eps_v = (&inv(&w2) - &inv(&nn)) / (&inv(&sqrt_w_lo) - &inv(&nn));
    let hyp_i_v = eps_v * rat_int(100) * &dv2 <= Rat::one();
    let hyp_l_v = dv2.clone() <= &sqrt_w_lo - rat(1, 2); // deg(v)^2 <= sqrt(w) - 1/2

    let mut chains = Vec::new();
    let mut push = |name: &str, lhs: &IntervalBound, rhs: IntervalBound, hyp: bool| {
        chains.push(ChainCheck {
            name: name.into(),
            status: compare(lhs, &rhs),
            hypothesis_ok: hyp,
            lhs: lhs.clone(),
            rhs,
        });
    };

    push("G_u >= L_v - 1", &g_u, minus(&l_v, &one), true);
    push(
        "Delta_u >= G_u / (2w)",
        &delta_u,
        scale_bound(&g_u, &(Rat::one() / &w2), &(Rat::one() / &w2)),
        true,
    );
    push(
        "H_u >= Delta_u (N - sqrt(w)) / deg(u)^2",
        &h_u,
        scale_bound(
            &delta_u,
            &((&nn - &sqrt_w_hi) / &du2),
            &((&nn - &sqrt_w_lo) / &du2),
        ),
        true,
    );
    push("I_u >= H_u / 2", &i_u, half(&h_u), hyp_i_u);
    push("L_u >= I_u / 2", &l_u, half(&i_u), hyp_l_u);

    push("G_v >= L_u - 1", &g_v, minus(&l_u, &one), true);
    push(
        "Delta_v >= G_v w",
        &delta_v,
        scale_bound(&g_v, &ww, &ww),
        true,
    );
    push(
        "H_v >= Delta_v (1/sqrt(w) - 1/N) / deg(v)^2",
        &h_v,
        scale_bound(
            &delta_v,
            &((&inv(&sqrt_w_hi) - &inv(&nn)) / &dv2),
            &((&inv(&sqrt_w_lo) - &inv(&nn)) / &dv2),
        ),
        true,
    );
    push("I_v >= H_v / 2", &i_v, half(&h_v), hyp_i_v);
    push("L_v >= I_v / 2", &l_v, half(&i_v), hyp_l_v);

    Ok(ExplosionAudit {
        n,
        w,
        deg_u,
        deg_v,
        input_violations: violations,
        quantities: vec![
            ("G_u".into(), g_u),
            ("Delta_u".into(), delta_u),
            ("H_u".into(), h_u),
            ("I_u".into(), i_u),
            ("L_u".into(), l_u),
            ("G_v".into(), g_v),
            ("Delta_v".into(), delta_v),
            ("H_v".into(), h_v),
            ("I_v".into(), i_v),
            ("L_v".into(), l_v),
        ],
        chains,
    })
}

impl ExplosionAudit {
    pub fn quantity(&self, name: &str) -> Option<&IntervalBound> {
        self.quantities.iter().find(|(n, _)| n == name).map(|(_, b)| b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::LaurentPoly;

    #[test]
    fn extremum_monotone_square() {
        // p = x^2 on [0,1]: lo = 1, hi >= 1, true max inside.
        let p = Poly::monomial(rat_int(1), 2);
        let b = interval_extremum(&p, &rat_int(0), &rat_int(1), 10).unwrap();
        assert_eq!(b.lo, rat_int(1));
        assert!(b.hi >= rat_int(1));
        assert!(b.certified);
    }

    #[test]
    fn extremum_chebyshev_contains_true_max() {
        let p = Poly::chebyshev(4);
        let b = interval_extremum(&p, &rat_int(-1), &rat_int(1), 64).unwrap();
        assert!(b.lo <= rat_int(1) && rat_int(1) <= b.hi);
        // |T_4| <= 1 on [-1,1]: the certified max cannot be far above 1.
        assert!(b.hi < rat(11, 10));
    }

    #[test]
    fn extremum_linear_is_exact() {
        // Linear polynomial: no slack, endpoint sampled.
        let p = Poly::from_i64(&[-1, 2]); // 2x - 1
        let b = interval_extremum(&p, &rat_int(0), &rat_int(1), 2).unwrap();
        assert_eq!(b.lo, rat_int(1));
        assert_eq!(b.hi, rat_int(1));
    }

    #[test]
    fn markov_chebyshev_extremal() {
        // T_3 on [-1,1]: true bound 9 = |T_3'(1)| is met; certified slack is tiny.
        let t3 = Poly::chebyshev(3);
        let bound = markov_bound(&t3, &rat_int(-1), &rat_int(1)).unwrap();
        assert_eq!(t3.derivative().eval(&rat_int(1)), rat_int(9));
        assert!(bound >= rat_int(9));
        assert!(bound < rat(905, 100));
    }

    #[test]
    fn markov_trivial_cases() {
        assert_eq!(markov_bound(&Poly::constant(rat_int(5)), &rat_int(0), &rat_int(1)).unwrap(), rat_int(0));
        let p = Poly::x();
        assert_eq!(markov_bound(&p, &rat_int(0), &rat_int(2)).unwrap(), rat_int(1));
        assert!(markov_bound(&p, &rat_int(2), &rat_int(0)).is_err());
    }

    #[test]
    fn paturi_trivial_and_boundary() {
        assert_eq!(paturi_bound(0, &rat(1, 4)).approx, 1.0);
        let b = paturi_bound(3, &Rat::zero());
        assert!(b.exact);
        // |T_3(1)| = 1 <= 1
        assert!(b.certainly_at_least(&rat_int(1)));
    }

    #[test]
    fn paturi_chebyshev_derived() {
        // T_4(9/8) = 1889/512 against exp(8 sqrt(17/64)).
        let t4 = Poly::chebyshev(4);
        let val = t4.eval(&rat(9, 8));
        assert_eq!(val, rat(1889, 512));
        let mu = rat(1, 8);
        let arg = rat_int(2) * &mu + &mu * &mu;
        assert_eq!(arg, rat(17, 64));
        let b = paturi_bound(4, &mu);
        assert!(b.certainly_at_least(&val));
        assert!(b.approx > 61.0 && b.approx < 62.0);
        assert!(b.decimal.len() >= 50);
    }

    #[test]
    fn audit_constant_half() {
        let q = LaurentPoly::from_terms(&[(0, rat(1, 2))]);
        let audit = explosion_audit(&q, 64, 2).unwrap();
        for (name, b) in &audit.quantities {
            assert_eq!(b.lo, rat_int(0), "{name}");
            assert_eq!(b.hi, rat_int(0), "{name}");
        }
        // q(w) = 1/2 > 1/3 and q(2w) = 1/2 < 2/3 are violations of the promise.
        assert_eq!(audit.input_violations.len(), 2);
    }

    #[test]
    fn audit_linear_example() {
        // q = k/N with a perfect-square w: G_u = (2w - sqrt(w))/N exactly.
        let n = 128u64;
        let w = 16u64;
        let q = LaurentPoly::from_terms(&[(1, rat(1, n as i64))]);
        let audit = explosion_audit(&q, n, w).unwrap();
        let g_u = audit.quantity("G_u").unwrap();
        let expect = rat((2 * w - 4) as i64, n as i64);
        assert_eq!(g_u.lo, expect);
        assert_eq!(g_u.hi, expect);
        let l_v = audit.quantity("L_v").unwrap();
        assert_eq!(l_v.lo, rat_int(0));
        assert_eq!(l_v.hi, rat_int(0));
    }
}
