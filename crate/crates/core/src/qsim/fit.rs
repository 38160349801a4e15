//! Least-squares fit of acceptance profiles onto Laurent exponent windows.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::QsimError;

#[derive(Clone, Debug, Serialize)]
pub struct FitReport {
    pub t: u64,
    pub r1: u64,
    pub r2: u64,
    pub v_uses: u64,
    /// Proof-derived window [-(R1+2R2+2V), 2(T+R1+2R2+2V)].
    pub safe_window: (i64, i64),
    pub safe_residual: f64,
    /// Statement-level window [-(R1+2R2+2V), 2T+R1+2R2+2V].
    pub tight_window: (i64, i64),
    pub tight_residual: f64,
    /// Residual threshold 1e-8 on the safe window.
    pub pass: bool,
    pub tight_pass: bool,
}

/// Column-scaled least squares; returns the max-abs residual.
fn window_residual(profile: &[f64], lo: i64, hi: i64) -> f64 {
    let rows = profile.len();
    let cols = (hi - lo + 1) as usize;
    let mut a = DMatrix::zeros(rows, cols);
    let mut scale = vec![0.0f64; cols];
    for (c, e) in (lo..=hi).enumerate() {
        for k in 1..=rows {
            a[(k - 1, c)] = (k as f64).powi(e as i32);
        }
        let norm = a.column(c).norm();
        scale[c] = if norm > 0.0 { norm } else { 1.0 };
        for k in 0..rows {
            a[(k, c)] /= scale[c];
        }
    }
    let b = DVector::from_row_slice(profile);
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&b, 1e-14).expect("svd solve");
    let residual = &a * x - b;
    residual.amax()
}

/// Fits q(1..N) on the exponent windows implied by the resource counts
/// (T queries, R1 samples, R2 reflections, V uses of the preparation
/// reflection). The proof-derived safe window is primary; whether the
/// tighter statement-level window also fits is reported alongside.
pub fn laurent_fit(
    profile: &[f64],
    t: u64,
    r1: u64,
    r2: u64,
    v_uses: u64,
) -> Result<FitReport, QsimError> {
    let n = profile.len() as u64;
    let r = r1 + 2 * r2 + 2 * v_uses;
    let safe = (-(r as i64), 2 * (t + r) as i64);
    let tight = (-(r as i64), (2 * t + r) as i64);
    let window = (safe.1 - safe.0 + 1) as usize;
    if window as u64 > n {
        return Err(QsimError::UnderdeterminedFit { window, n });
    }
    let safe_residual = window_residual(profile, safe.0, safe.1);
    let tight_residual = window_residual(profile, tight.0, tight.1);
    Ok(FitReport {
        t,
        r1,
        r2,
        v_uses,
        safe_window: safe,
        safe_residual,
        tight_window: tight,
        tight_residual,
        pass: safe_residual < 1e-8,
        tight_pass: tight_residual < 1e-8,
    })
}

/// Residual of a fit on an arbitrary window (for anti-tests).
pub fn window_fit_residual(profile: &[f64], lo: i64, hi: i64) -> Result<f64, QsimError> {
    let window = (hi - lo + 1) as usize;
    if window as u64 > profile.len() as u64 {
        return Err(QsimError::UnderdeterminedFit { window, n: profile.len() as u64 });
    }
    Ok(window_residual(profile, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_k_fits_sample_window() {
        let n = 12;
        let profile: Vec<f64> = (1..=n).map(|k| 1.0 / k as f64).collect();
        // Two samples, no queries: R = 2, window [-2, 4] (safe).
        let rep = laurent_fit(&profile, 0, 2, 0, 0).unwrap();
        assert!(rep.safe_residual < 1e-12, "residual {}", rep.safe_residual);
        assert!(rep.pass && rep.tight_pass);
    }

    #[test]
    fn excluded_exponent_fails() {
        let profile: Vec<f64> = (1..=12).map(|k| 1.0 / k as f64).collect();
        let residual = window_fit_residual(&profile, 0, 3).unwrap();
        assert!(residual > 1e-3, "residual {residual}");
    }

    #[test]
    fn underdetermined_rejected() {
        let profile: Vec<f64> = (1..=4).map(|k| k as f64).collect();
        assert!(matches!(
            laurent_fit(&profile, 2, 1, 1, 0),
            Err(QsimError::UnderdeterminedFit { .. })
        ));
    }
}
