//! Brute-force trace distance between averaged QSample tensor powers.

use nalgebra::DMatrix;

use super::QsimError;

/// Real symmetric density matrix (QSample states have real amplitudes).
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    pub dim: usize,
    pub entries: DMatrix<f64>,
}

impl DensityMatrix {
    /// Symmetrizes and checks the trace against 1 within 1e-9.
    pub fn new(entries: DMatrix<f64>) -> Result<Self, QsimError> {
        let dim = entries.nrows();
        let sym = (&entries + entries.transpose()) * 0.5;
        let trace: f64 = (0..dim).map(|i| sym[(i, i)]).sum();
        if (trace - 1.0).abs() > 1e-9 {
            return Err(QsimError::BadParams(format!("trace {trace} drifted from 1")));
        }
        Ok(DensityMatrix { dim, entries: sym })
    }
}

/// rho_{L,w,k} = E over |S| = w, S inside [L], of (|S><S|)^(x k).
pub fn qsample_density_matrix(l: u64, w: u64, k: u32) -> Result<DensityMatrix, QsimError> {
    let dim_u64 = (l as u64).checked_pow(k).ok_or(QsimError::DimensionCap(u64::MAX))?;
    if dim_u64 > 4096 {
        return Err(QsimError::DimensionCap(dim_u64));
    }
    let dim = dim_u64 as usize;
    let mut rho = DMatrix::zeros(dim, dim);
    let mut count = 0u64;
    let mut mask: u64 = (1u64 << w) - 1;
    let limit = 1u64 << l;
    let amp = 1.0 / (w as f64).sqrt();
    while mask < limit {
        // |S>^(x k) has entry prod_r amp * [i_r in S].
        let mut v = vec![0.0f64; dim];
        for (idx, val) in v.iter_mut().enumerate() {
            let mut rest = idx;
            let mut a = 1.0;
            for _ in 0..k {
                let comp = rest % l as usize;
                rest /= l as usize;
                if mask >> comp & 1 == 1 {
                    a *= amp;
                } else {
                    a = 0.0;
                    break;
                }
            }
            *val = a;
        }
        for i in 0..dim {
            if v[i] == 0.0 {
                continue;
            }
            for j in 0..dim {
                rho[(i, j)] += v[i] * v[j];
            }
        }
        count += 1;
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = ((r ^ mask) >> 2) / c | r;
    }
    rho /= count as f64;
    DensityMatrix::new(rho)
}

/// Trace distance between rho_{L,w,k} and rho_{L,2w,k}: half the sum of the
/// absolute eigenvalues of the difference.
pub fn trace_distance_qsamples(l: u64, w: u64, k: u32) -> Result<f64, QsimError> {
    if w < 1 || 2 * w > l {
        return Err(QsimError::BadParams(format!("need 1 <= w, 2w <= L; got w = {w}, L = {l}")));
    }
    if k == 0 {
        return Ok(0.0); // both states are the empty tensor
    }
    let a = qsample_density_matrix(l, w, k)?;
    let b = qsample_density_matrix(l, 2 * w, k)?;
    let diff = a.entries - b.entries;
    let eigen = diff.symmetric_eigen();
    Ok(0.5 * eigen.eigenvalues.iter().map(|e| e.abs()).sum::<f64>())
}
