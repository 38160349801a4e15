//! Multilinear polynomials over the Boolean cube and their symmetrizations.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::bivar::BivariatePolynomial;
use crate::Scalar;
use crate::scalar::{binomial, format_rat, parse_rat, rat_int};
use crate::{BivarPoly, Poly, Rat};

/// Hard cap on variable count (terms are keyed by u32 bitmasks).
pub const MAX_VARS: usize = 24;
/// Hard cap for brute-force enumeration over weight classes.
pub const MAX_BRUTE_FORCE_VARS: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoolsymError {
    #[error("n_vars = {0} exceeds the cap of {MAX_VARS}")]
    TooManyVars(usize),
    #[error("term mask {mask:#x} uses variables beyond n_vars = {n_vars}")]
    MaskOutOfRange { mask: u32, n_vars: usize },
    #[error("weight k = {k} out of range for n = {n} (cap {MAX_BRUTE_FORCE_VARS})")]
    WeightOutOfRange { k: usize, n: usize },
    #[error("expected {expected} variables (two blocks), got {got}")]
    BlockMismatch { expected: usize, got: usize },
}

/// Sparse multilinear polynomial on {0,1}^n: a map from variable-subset
/// bitmasks to coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearPoly {
    n_vars: usize,
    terms: BTreeMap<u32, Rat>,
}

impl MultilinearPoly {
    pub fn new(n_vars: usize, terms: impl IntoIterator<Item = (u32, Rat)>) -> Result<Self, BoolsymError> {
        if n_vars > MAX_VARS {
            return Err(BoolsymError::TooManyVars(n_vars));
        }
        let mut map: BTreeMap<u32, Rat> = BTreeMap::new();
        for (mask, c) in terms {
            if n_vars < 32 && mask >= (1u32 << n_vars) {
                return Err(BoolsymError::MaskOutOfRange { mask, n_vars });
            }
            let entry = map.entry(mask).or_insert_with(Rat::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultilinearPoly { n_vars, terms: map })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// Evaluation on a Boolean input given as a bitmask.
    pub fn eval_mask(&self, input: u32) -> Rat {
        let mut acc = Rat::zero();
        for (mask, c) in &self.terms {
            if mask & input == *mask {
                acc += c;
            }
        }
        acc
    }

    /// Evaluation on an arbitrary real-valued input vector.
    pub fn eval_real(&self, xs: &[Rat]) -> Rat {
        assert_eq!(xs.len(), self.n_vars);
        let mut acc = Rat::zero();
        for (mask, c) in &self.terms {
            let mut prod = c.clone();
            for (i, x) in xs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    prod *= x;
                }
            }
            acc += prod;
        }
        acc
    }

    /// Minsky-Papert symmetrization: the unique polynomial q of degree at
    /// most deg(p) with q(k) = E_{|X|=k}[p(X)] for k = 0..n. Computed by
    /// exact evaluation at every weight followed by exact interpolation.
    pub fn mp_symmetrize(&self) -> Poly {
        let n = self.n_vars;
        let points: Vec<(Rat, Rat)> = (0..=n)
            .map(|k| (rat_int(k as i64), self.weight_average(k)))
            .collect();
        Poly::interpolate(&points)
    }

    /// E_{|X|=k}[p(X)] via the exact term-by-term formula
    /// E[prod_{i in M} x_i] = C(n-|M|, k-|M|) / C(n, k).
    pub fn weight_average(&self, k: usize) -> Rat {
        let n = self.n_vars as u64;
        let k = k as u64;
        let denom = binomial(n, k);
        let mut acc = Rat::zero();
        for (mask, c) in &self.terms {
            let m = mask.count_ones() as u64;
            if m > k {
                continue;
            }
            acc += c * Rat::new(binomial(n - m, k - m), denom.clone());
        }
        acc
    }

    /// Erase-all-subscripts symmetrization: replace every variable with k.
    pub fn eas_symmetrize(&self) -> Poly {
        let mut acc = Poly::zero();
        for (mask, c) in &self.terms {
            acc = acc.add(&Poly::monomial(c.clone(), mask.count_ones() as usize));
        }
        acc
    }

    /// Independent oracle for [`Self::mp_symmetrize`]: averages p over all
    /// C(n,k) weight-k inputs by direct enumeration.
    pub fn brute_force_weight_average(&self, k: usize) -> Result<Rat, BoolsymError> {
        let n = self.n_vars;
        if k > n || n > MAX_BRUTE_FORCE_VARS {
            return Err(BoolsymError::WeightOutOfRange { k, n });
        }
        let mut acc = Rat::zero();
        let mut count = 0u64;
        // Gosper's hack over all weight-k masks.
        if k == 0 {
            return Ok(self.eval_mask(0));
        }
        let mut mask: u32 = (1u32 << k) - 1;
        let limit: u32 = 1u32 << n;
        while mask < limit {
            acc += self.eval_mask(mask);
            count += 1;
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
        Ok(acc / rat_int(count as i64))
    }

    /// Bivariate symmetrization for a polynomial on two n-variable oracle
    /// blocks (first block = bits 0..n, second block = bits n..2n).
    ///
    /// Returns `(q, p)`: q(s,t) substitutes s/n into the first block and t/n
    /// into the second (erase-all-subscripts per block); p(x,y) applies
    /// Minsky-Papert per block, i.e. each block-mask of size a contributes
    /// the falling-factorial factor (x)_a / (n)_a.
    pub fn two_oracle_symmetrize(&self, block: usize) -> Result<(BivarPoly, BivarPoly), BoolsymError> {
        if self.n_vars != 2 * block {
            return Err(BoolsymError::BlockMismatch { expected: 2 * block, got: self.n_vars });
        }
        let n = block as u64;
        let inv_n = Rat::new(1.into(), n.into());
        let mut q = BivarPoly::zero();
        let mut p = BivarPoly::zero();
        let lo_mask: u32 = (1u32 << block) - 1;
        for (mask, c) in &self.terms {
            let a = (mask & lo_mask).count_ones() as usize;
            let b = (mask >> block).count_ones() as usize;
            // q: (s/n)^a (t/n)^b
            let scale = c * inv_n.pow_u(a + b);
            q = q.add(&BivarPoly::from_terms(&[(a, b, scale)]));
            // p: (x)_a (y)_b / ((n)_a (n)_b)
            let mut denom = Rat::from_integer(1.into());
            for i in 0..a as u64 {
                denom *= rat_int((n - i) as i64);
            }
            for i in 0..b as u64 {
                denom *= rat_int((n - i) as i64);
            }
            let fx: Poly = Poly::falling_factorial(a);
            let fy: Poly = Poly::falling_factorial(b);
            p = p.add(&BivariatePolynomial::from_product(&fx, &fy).scale(&(c / denom)));
        }
        Ok((q, p))
    }
}

/// Wire format: `{"n_vars": n, "terms": [{"mask": m, "coeff": "num/den"}]}`.
#[derive(Serialize, Deserialize)]
pub struct MultilinearJson {
    pub n_vars: usize,
    pub terms: Vec<MultilinearTermJson>,
}

#[derive(Serialize, Deserialize)]
pub struct MultilinearTermJson {
    pub mask: u32,
    pub coeff: String,
}

impl MultilinearPoly {
    pub fn to_json(&self) -> MultilinearJson {
        MultilinearJson {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| MultilinearTermJson { mask: *m, coeff: format_rat(c) })
                .collect(),
        }
    }

    pub fn from_json(json: &MultilinearJson) -> Result<Self, String> {
        let terms = json
            .terms
            .iter()
            .map(|t| parse_rat(&t.coeff).map(|c| (t.mask, c)))
            .collect::<Result<Vec<_>, _>>()?;
        MultilinearPoly::new(json.n_vars, terms).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn mp(n: usize, terms: &[(u32, i64)]) -> MultilinearPoly {
        MultilinearPoly::new(n, terms.iter().map(|&(m, c)| (m, rat_int(c)))).unwrap()
    }

    #[test]
    fn mp_symmetrize_single_variable() {
        // p = x1 on n = 3 -> q(k) = k/3
        let q = mp(3, &[(0b001, 1)]).mp_symmetrize();
        assert_eq!(q, Poly::new(vec![rat_int(0), rat(1, 3)]));
    }

    #[test]
    fn mp_symmetrize_pair() {
        // p = x1 x2 on n = 2 -> q(k) = k(k-1)/2
        let q = mp(2, &[(0b11, 1)]).mp_symmetrize();
        assert_eq!(q, Poly::new(vec![rat_int(0), rat(-1, 2), rat(1, 2)]));
        // constant stays constant
        assert_eq!(mp(4, &[(0, 1)]).mp_symmetrize(), Poly::one());
    }

    #[test]
    fn mp_symmetrize_halfinteger_regression() {
        // p = x1 x2 is bounded in [0,1] on the cube, but its Minsky-Papert
        // symmetrization dips below 0 at the half-integer k = 1/2.
        let q = mp(2, &[(0b11, 1)]).mp_symmetrize();
        assert_eq!(q.eval(&rat(1, 2)), rat(-1, 8));
    }

    #[test]
    fn eas_paper_example() {
        // 2 x1 x2 + x2 x3 + x2 -> 3k^2 + k
        let p = mp(3, &[(0b011, 2), (0b110, 1), (0b010, 1)]);
        assert_eq!(p.eas_symmetrize(), Poly::from_i64(&[0, 1, 3]));
        // x1 -> k
        assert_eq!(mp(1, &[(1, 1)]).eas_symmetrize(), Poly::x());
        // x1 x2 x3 at 1/2 -> 1/8
        let q = mp(3, &[(0b111, 1)]).eas_symmetrize();
        assert_eq!(q.eval(&rat(1, 2)), rat(1, 8));
    }

    #[test]
    fn brute_force_matches_examples() {
        // x1 on n=3 at k=2 -> 2/3
        assert_eq!(mp(3, &[(1, 1)]).brute_force_weight_average(2).unwrap(), rat(2, 3));
        // x1 x2 on n=4 at k=4 -> 1
        assert_eq!(mp(4, &[(0b11, 1)]).brute_force_weight_average(4).unwrap(), rat_int(1));
        assert!(mp(3, &[(1, 1)]).brute_force_weight_average(4).is_err());
    }

    #[test]
    fn two_oracle_examples() {
        // r = x1 (first block), n = 2: q = s/2, p = x/2
        let (q, p) = mp(4, &[(0b0001, 1)]).two_oracle_symmetrize(2).unwrap();
        assert_eq!(q.coeff(1, 0), rat(1, 2));
        assert_eq!(p.coeff(1, 0), rat(1, 2));
        // r = x1 x3 (one per block), n = 2: q = st/4, p = xy/4
        let (q, p) = mp(4, &[(0b0101, 1)]).two_oracle_symmetrize(2).unwrap();
        assert_eq!(q.coeff(1, 1), rat(1, 4));
        assert_eq!(p.coeff(1, 1), rat(1, 4));
        // r = x1 x2 (both in block 0), n = 2: p = x(x-1)/2, q = s^2/4
        let (q, p) = mp(4, &[(0b0011, 1)]).two_oracle_symmetrize(2).unwrap();
        assert_eq!(q.coeff(2, 0), rat(1, 4));
        assert_eq!(p.coeff(2, 0), rat(1, 2));
        assert_eq!(p.coeff(1, 0), rat(-1, 2));
        // mismatched block count is rejected
        assert!(mp(3, &[(1, 1)]).two_oracle_symmetrize(2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = mp(3, &[(0b011, 2), (0b100, -1)]);
        let json = p.to_json();
        assert_eq!(MultilinearPoly::from_json(&json).unwrap(), p);
    }
}
