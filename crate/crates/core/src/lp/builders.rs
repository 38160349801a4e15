//! The three program families over (Laurent) polynomial coefficients.

use num_traits::{One, Zero};

use super::simplex::{
    simplex_solve, solve_via_dual, LinearProgram, LpError, LpSolution, LpStatus, Objective, Sense,
    VarBound,
};
use crate::scalar::{rat_int, rat_pow};
use crate::Rat;

/// Desk-scale cap for the univariate boundedness range.
pub const MAX_UNIVARIATE_N: u64 = 512;
/// Desk-scale cap for the bivariate lattice.
pub const MAX_BIVAR_N: u64 = 32;

/// Smallest integer r with r^3 >= v.
pub fn integer_cbrt_ceil(v: u64) -> u64 {
    let mut r = 0u64;
    while r * r * r < v {
        r += 1;
    }
    r
}

/// Largest integer r with r^2 <= v.
pub fn integer_sqrt_floor(v: u64) -> u64 {
    let mut r = 0u64;
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

fn check_univariate_params(n: u64, w: u64) -> Result<(), LpError> {
    if w < 1 || 2 * w > n {
        return Err(LpError::BadParams(format!("need 1 <= w and 2w <= N, got w = {w}, N = {n}")));
    }
    if n > MAX_UNIVARIATE_N {
        return Err(LpError::CapExceeded(format!("N = {n} > {MAX_UNIVARIATE_N}")));
    }
    Ok(())
}

/// Boundedness abscissas: the full range 1..=N, or the restricted range
/// {ceil(w^(1/3))..w} union {2w..N}.
pub fn boundedness_range(n: u64, w: u64, restricted: bool) -> Vec<u64> {
    if restricted {
        (integer_cbrt_ceil(w).max(1)..=w).chain(2 * w..=n).collect()
    } else {
        (1..=n).collect()
    }
}

/// Primal program for the transformed Laurent approximation problem over
/// q(r) = a_0 + a_1 r + ... + a_{D1+D2} r^{D1+D2}:
///
/// minimize eps subject to
///   |q(w)  - w^D1|     <= eps w^D1
///   |q(2w) + (2w)^D1|  <= eps (2w)^D1
///   |q(l)|             <= (1 + eps) l^D1   for l in the boundedness range,
///
/// with every absolute value split into two linear rows. Variables are the
/// D1+D2+1 free coefficients and eps >= 0 (last).
pub fn build_laurent_primal(
    n: u64,
    w: u64,
    d1: u64,
    d2: u64,
    restricted_range: bool,
) -> Result<LinearProgram, LpError> {
    check_univariate_params(n, w)?;
    let deg = (d1 + d2) as usize;
    let nvars = deg + 2; // coefficients + eps
    let eps = nvars - 1;
    let powers = |l: u64| -> Vec<Rat> { (0..=deg).map(|j| rat_pow(&rat_int(l as i64), j as i64)).collect() };
    let weight = |l: u64| rat_pow(&rat_int(l as i64), d1 as i64);

    let mut rows = Vec::new();
    let mut senses = Vec::new();
    let mut rhs = Vec::new();
    let mut push = |coeffs: Vec<Rat>, sense: Sense, b: Rat| {
        rows.push(coeffs);
        senses.push(sense);
        rhs.push(b);
    };
    let signed_row = |l: u64, sign: i64| -> Vec<Rat> {
        let mut row: Vec<Rat> = powers(l).into_iter().map(|p| p * rat_int(sign)).collect();
        row.push(-weight(l));
        row
    };

    // |q(w) - w^D1| <= eps w^D1
    push(signed_row(w, 1), Sense::Le, weight(w));
    push(signed_row(w, -1), Sense::Le, -weight(w));
    // |q(2w) + (2w)^D1| <= eps (2w)^D1
    push(signed_row(2 * w, 1), Sense::Le, -weight(2 * w));
    push(signed_row(2 * w, -1), Sense::Le, weight(2 * w));
    // |q(l)| <= (1 + eps) l^D1
    for l in boundedness_range(n, w, restricted_range) {
        push(signed_row(l, 1), Sense::Le, weight(l));
        push(signed_row(l, -1), Sense::Le, weight(l));
    }

    let mut objective = vec![Rat::zero(); nvars];
    objective[eps] = Rat::one();
    let mut bounds = vec![VarBound::Free; nvars];
    bounds[eps] = VarBound::NonNegative;
    let mut names: Vec<String> = (0..=deg).map(|j| format!("a{j}")).collect();
    names.push("eps".into());
    LinearProgram::new(Objective::Minimize, objective, rows, senses, rhs, bounds, names)
}

/// Dual program over phi(1..N), split as phi = phi+ - phi- with
/// |phi| linearized as phi+ + phi-:
///
/// maximize phi(w) w^D1 - phi(2w) (2w)^D1 - sum_{l not in {w,2w}} |phi(l)| l^D1
/// subject to sum_l phi(l) l^j = 0 for j = 0..D1+D2,
///            sum_l |phi(l)| l^D1 <= 1.
///
/// The normalization row is stated with equality in the usual presentation;
/// `<=` is the exact linear-programming dual of the primal above (any
/// optimum with positive value makes it tight), which keeps strong duality
/// an exact identity even when the optimal value is zero.
pub fn build_laurent_dual(n: u64, w: u64, d1: u64, d2: u64) -> Result<LinearProgram, LpError> {
    check_univariate_params(n, w)?;
    let deg = (d1 + d2) as usize;
    let nv = 2 * n as usize; // phi+_l, phi-_l for l = 1..=N
    let idx_plus = |l: u64| 2 * (l - 1) as usize;
    let idx_minus = |l: u64| 2 * (l - 1) as usize + 1;

    let mut objective = vec![Rat::zero(); nv];
    for l in 1..=n {
        let wl = rat_pow(&rat_int(l as i64), d1 as i64);
        if l == w {
            objective[idx_plus(l)] = wl.clone();
            objective[idx_minus(l)] = -wl;
        } else if l == 2 * w {
            objective[idx_plus(l)] = -wl.clone();
            objective[idx_minus(l)] = wl;
        } else {
            objective[idx_plus(l)] = -wl.clone();
            objective[idx_minus(l)] = -wl;
        }
    }

    let mut rows = Vec::new();
    let mut senses = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..=deg {
        let mut row = vec![Rat::zero(); nv];
        for l in 1..=n {
            let p = rat_pow(&rat_int(l as i64), j as i64);
            row[idx_plus(l)] = p.clone();
            row[idx_minus(l)] = -p;
        }
        rows.push(row);
        senses.push(Sense::Eq);
        rhs.push(Rat::zero());
    }
    let mut norm = vec![Rat::zero(); nv];
    for l in 1..=n {
        let wl = rat_pow(&rat_int(l as i64), d1 as i64);
        norm[idx_plus(l)] = wl.clone();
        norm[idx_minus(l)] = wl;
    }
    rows.push(norm);
    senses.push(Sense::Le);
    rhs.push(Rat::one());

    let bounds = vec![VarBound::NonNegative; nv];
    let names: Vec<String> = (1..=n).flat_map(|l| [format!("phi+{l}"), format!("phi-{l}")]).collect();
    LinearProgram::new(Objective::Maximize, objective, rows, senses, rhs, bounds, names)
}

/// Bivariate lattice program behind the small-bounded-error query bound:
/// maximize alpha over polynomials p(x, y) of the given total degree with
///
///   2 alpha <= p(x, y) <= 1 on ([2w,N] x [2w,N]) cap Z^2,
///   0 <= p(x, y) <= alpha on L' cap Z^2,
///
/// where L' = [0,w]^2 union [0,w]x[2w,N] union [2w,N]x[0,w]. Variables are
/// the coefficients (free) plus alpha >= 0 (last).
pub fn build_sbqp_bivariate(n: u64, w: u64, degree: u64) -> Result<LinearProgram, LpError> {
    if 2 * w >= n {
        return Err(LpError::BadParams(format!("need 2w < N, got w = {w}, N = {n}")));
    }
    if n > MAX_BIVAR_N {
        return Err(LpError::CapExceeded(format!("N = {n} > {MAX_BIVAR_N}")));
    }
    let d = degree as usize;
    // Monomials x^i y^j with i + j <= d, in a fixed order.
    let monomials: Vec<(usize, usize)> =
        (0..=d).flat_map(|i| (0..=(d - i)).map(move |j| (i, j))).collect();
    let nv = monomials.len() + 1;
    let alpha = nv - 1;

    let eval_row = |x: u64, y: u64| -> Vec<Rat> {
        let xr = rat_int(x as i64);
        let yr = rat_int(y as i64);
        let mut row: Vec<Rat> = monomials
            .iter()
            .map(|&(i, j)| rat_pow(&xr, i as i64) * rat_pow(&yr, j as i64))
            .collect();
        row.push(Rat::zero());
        row
    };

    let mut rows = Vec::new();
    let mut senses = Vec::new();
    let mut rhs = Vec::new();

    let yes_region: Vec<(u64, u64)> =
        (2 * w..=n).flat_map(|x| (2 * w..=n).map(move |y| (x, y))).collect();
    let mut no_region: Vec<(u64, u64)> = Vec::new();
    for x in 0..=w {
        for y in 0..=w {
            no_region.push((x, y));
        }
        for y in 2 * w..=n {
            no_region.push((x, y));
        }
    }
    for x in 2 * w..=n {
        for y in 0..=w {
            no_region.push((x, y));
        }
    }

    for (x, y) in yes_region {
        // p - 2 alpha >= 0
        let mut row = eval_row(x, y);
        row[alpha] = rat_int(-2);
        rows.push(row);
        senses.push(Sense::Ge);
        rhs.push(Rat::zero());
        // p <= 1
        rows.push(eval_row(x, y));
        senses.push(Sense::Le);
        rhs.push(Rat::one());
    }
    for (x, y) in no_region {
        // p >= 0
        rows.push(eval_row(x, y));
        senses.push(Sense::Ge);
        rhs.push(Rat::zero());
        // p - alpha <= 0
        let mut row = eval_row(x, y);
        row[alpha] = rat_int(-1);
        rows.push(row);
        senses.push(Sense::Le);
        rhs.push(Rat::zero());
    }

    let mut objective = vec![Rat::zero(); nv];
    objective[alpha] = Rat::one();
    let mut bounds = vec![VarBound::Free; nv];
    bounds[alpha] = VarBound::NonNegative;
    let mut names: Vec<String> = monomials.iter().map(|(i, j)| format!("c{i}_{j}")).collect();
    names.push("alpha".into());
    LinearProgram::new(Objective::Maximize, objective, rows, senses, rhs, bounds, names)
}

/// Degree-parameterized LP family for the minimal-degree searches.
#[derive(Clone, Copy, Debug)]
pub enum DegreeFamily {
    /// Laurent primal with D1 fixed, searching over D2.
    PrimalVaryD2 { n: u64, w: u64, d1: u64, restricted: bool },
    /// Laurent primal with D2 fixed, searching over D1.
    PrimalVaryD1 { n: u64, w: u64, d2: u64, restricted: bool },
    /// Bivariate lattice program, searching over the total degree.
    Sbqp { n: u64, w: u64 },
}

#[derive(Clone, Debug)]
pub enum SearchThreshold {
    /// Optimal eps at most the given value (primal family).
    EpsAtMost(Rat),
    /// Optimal alpha strictly positive (lattice family).
    AlphaPositive,
}

impl DegreeFamily {
    pub fn solve_at(&self, degree: u64) -> Result<LpSolution, LpError> {
        match *self {
            DegreeFamily::PrimalVaryD2 { n, w, d1, restricted } => {
                let lp = build_laurent_primal(n, w, d1, degree, restricted)?;
                solve_via_dual(&lp)
            }
            DegreeFamily::PrimalVaryD1 { n, w, d2, restricted } => {
                let lp = build_laurent_primal(n, w, degree, d2, restricted)?;
                solve_via_dual(&lp)
            }
            DegreeFamily::Sbqp { n, w } => {
                let lp = build_sbqp_bivariate(n, w, degree)?;
                solve_via_dual(&lp)
            }
        }
    }
}

/// Smallest degree parameter whose exact optimum meets the threshold,
/// scanning upward from 0. Returns None when the cap is passed first.
pub fn min_degree_search(
    family: DegreeFamily,
    threshold: &SearchThreshold,
    cap: u64,
) -> Result<Option<u64>, LpError> {
    for degree in 0..=cap {
        let sol = family.solve_at(degree)?;
        if sol.status != LpStatus::Optimal {
            continue;
        }
        let met = match threshold {
            SearchThreshold::EpsAtMost(bound) => sol.value <= *bound,
            SearchThreshold::AlphaPositive => sol.value.is_positive(),
        };
        if met {
            return Ok(Some(degree));
        }
    }
    Ok(None)
}

/// Convenience: exact optimal eps of the Laurent primal, solved through the
/// mechanical dual (small basis) with the usual certificate verification.
pub fn laurent_primal_optimum(
    n: u64,
    w: u64,
    d1: u64,
    d2: u64,
    restricted: bool,
) -> Result<Rat, LpError> {
    let lp = build_laurent_primal(n, w, d1, d2, restricted)?;
    let sol = solve_via_dual(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(LpError::VerificationFailed(format!("unexpected status {:?}", sol.status)));
    }
    Ok(sol.value)
}

/// Exact optimal alpha of the bivariate lattice program.
pub fn sbqp_optimum(n: u64, w: u64, degree: u64) -> Result<Rat, LpError> {
    let lp = build_sbqp_bivariate(n, w, degree)?;
    let sol = solve_via_dual(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(LpError::VerificationFailed(format!("unexpected status {:?}", sol.status)));
    }
    Ok(sol.value)
}

use num_traits::Signed;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn primal_interpolation_gives_zero_eps() {
        // N=4, w=1, D1=0, D2=4: enough freedom for an exact fit.
        let eps = laurent_primal_optimum(4, 1, 0, 4, false).unwrap();
        assert!(eps.is_zero());
    }

    #[test]
    fn primal_constants_force_eps_one() {
        // N=20, w=2, D1=0, D2=0: |c-1| <= eps and |c+1| <= eps force eps = 1.
        let eps = laurent_primal_optimum(20, 2, 0, 0, false).unwrap();
        assert_eq!(eps, rat(1, 1));
    }

    #[test]
    fn primal_monotone_in_d2() {
        let e3 = laurent_primal_optimum(20, 2, 0, 3, false).unwrap();
        let e2 = laurent_primal_optimum(20, 2, 0, 2, false).unwrap();
        assert!(e3 < e2, "optimum must strictly improve with D2 here");
    }

    #[test]
    fn primal_matches_direct_solve() {
        // The mechanical-dual route and the direct tableau agree exactly.
        let lp = build_laurent_primal(16, 2, 1, 2, false).unwrap();
        let direct = simplex_solve(&lp).unwrap();
        let via = solve_via_dual(&lp).unwrap();
        assert_eq!(direct.value, via.value);
    }

    #[test]
    fn paper_dual_pairs_with_primal() {
        // The hand-stated dual program reaches the same optimum.
        for (n, w, d1, d2) in [(12u64, 1u64, 0u64, 2u64), (16, 2, 1, 3), (20, 4, 2, 2)] {
            let primal = laurent_primal_optimum(n, w, d1, d2, false).unwrap();
            let dual = simplex_solve(&build_laurent_dual(n, w, d1, d2).unwrap()).unwrap();
            assert_eq!(primal, dual.value, "pair mismatch at {n} {w} {d1} {d2}");
        }
    }

    #[test]
    fn sbqp_degree_zero_is_zero() {
        assert!(sbqp_optimum(16, 2, 0).unwrap().is_zero());
    }

    #[test]
    fn sbqp_guessing_degree_feasible() {
        // Degree 2 min{w, ceil(sqrt(N/w))} + 2 = 6 at (16, 2) admits alpha > 0.
        let alpha = sbqp_optimum(16, 2, 6).unwrap();
        assert!(alpha.is_positive());
    }

    #[test]
    fn sbqp_monotone_in_degree() {
        let a: Vec<Rat> = (0..=4).map(|d| sbqp_optimum(12, 2, d).unwrap()).collect();
        for pair in a.windows(2) {
            assert!(pair[0] <= pair[1]);
        }
    }

    #[test]
    fn search_family_basics() {
        // SBQP at degree 0 always fails, so the minimal degree is >= 1.
        let d = min_degree_search(DegreeFamily::Sbqp { n: 12, w: 2 }, &SearchThreshold::AlphaPositive, 8)
            .unwrap();
        assert!(d.unwrap() >= 1);
        // With D2 large enough for interpolation, D1 = 0 suffices.
        let d = min_degree_search(
            DegreeFamily::PrimalVaryD1 { n: 8, w: 2, d2: 8, restricted: false },
            &SearchThreshold::EpsAtMost(rat(1, 3)),
            4,
        )
        .unwrap();
        assert_eq!(d, Some(0));
    }

    #[test]
    fn range_helpers() {
        assert_eq!(integer_cbrt_ceil(8), 2);
        assert_eq!(integer_cbrt_ceil(9), 3);
        assert_eq!(integer_sqrt_floor(63), 7);
        let r = boundedness_range(20, 8, true);
        assert!(r.contains(&2) && r.contains(&8) && r.contains(&16) && !r.contains(&9));
    }
}
