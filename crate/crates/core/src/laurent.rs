//! Laurent polynomials: univariate polynomials with negative exponents.

use crate::poly::Polynomial;
use crate::scalar::{format_rat, parse_rat, Scalar};
use crate::Rat;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("evaluation at 0 with negative exponents (min_exp = {0})")]
    EvalAtZero(i64),
    #[error("not symmetric: coefficient of x^{exp} differs from x^-{exp}")]
    NotSymmetric { exp: i64 },
}

/// Canonical dense Laurent polynomial: `coeffs[i]` is the coefficient of
/// x^(min_exp + i); first and last stored coefficients are nonzero unless the
/// polynomial is zero (empty coefficients, min_exp = 0).
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial<T> {
    min_exp: i64,
    coeffs: Vec<T>,
}

impl<T: Scalar> LaurentPolynomial<T> {
    pub fn new(mut min_exp: i64, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let leading_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            coeffs.drain(..leading_zeros);
            min_exp += leading_zeros as i64;
        }
        if coeffs.is_empty() {
            min_exp = 0;
        }
        LaurentPolynomial { min_exp, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPolynomial { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn from_terms(terms: &[(i64, T)]) -> Self {
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|(e, _)| *e).min().unwrap();
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![T::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let idx = (e - lo) as usize;
            coeffs[idx] = coeffs[idx].clone() + c.clone();
        }
        LaurentPolynomial::new(lo, coeffs)
    }

    /// An ordinary polynomial viewed as a Laurent polynomial.
    pub fn from_poly(p: &Polynomial<T>) -> Self {
        LaurentPolynomial::new(0, p.coeffs().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> i64 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.min_exp + self.coeffs.len() as i64 - 1
        }
    }

    /// Negative degree D1 = -min(min_exp, 0).
    pub fn neg_degree(&self) -> i64 {
        (-self.min_exp).max(0)
    }

    /// Positive degree D2 = max(max_exp, 0).
    pub fn pos_degree(&self) -> i64 {
        self.max_exp().max(0)
    }

    pub fn coeff(&self, exp: i64) -> T {
        if exp < self.min_exp {
            return T::zero();
        }
        self.coeffs.get((exp - self.min_exp) as usize).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        let lo = self.min_exp;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (lo + i as i64, c))
    }

    pub fn eval(&self, x: &T) -> Result<T, LaurentError> {
        if x.is_zero() && self.min_exp < 0 {
            return Err(LaurentError::EvalAtZero(self.min_exp));
        }
        // Horner on the stored window, then multiply by x^min_exp.
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        Ok(if self.min_exp >= 0 {
            acc * x.pow_u(self.min_exp as usize)
        } else {
            acc / x.pow_u((-self.min_exp) as usize)
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms: Vec<(i64, T)> = self.terms().map(|(e, c)| (e, c.clone())).collect();
        terms.extend(other.terms().map(|(e, c)| (e, c.clone())));
        Self::from_terms(&terms)
    }

    pub fn scale(&self, c: &T) -> Self {
        LaurentPolynomial::new(self.min_exp, self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPolynomial::new(self.min_exp + other.min_exp, coeffs)
    }

    /// Splits q(k) = u(k) + v(1/k): `u` takes every nonnegative exponent
    /// (constant term included), `v` takes the negative exponents as a
    /// polynomial in 1/k with zero constant term.
    pub fn split(&self) -> (Polynomial<T>, Polynomial<T>) {
        let mut u = vec![T::zero(); (self.max_exp().max(0) + 1) as usize];
        let mut v = vec![T::zero(); (self.neg_degree() + 1) as usize];
        for (e, c) in self.terms() {
            if e >= 0 {
                u[e as usize] = c.clone();
            } else {
                v[(-e) as usize] = c.clone();
            }
        }
        (Polynomial::new(u), Polynomial::new(v))
    }

    /// True when the coefficient of x^i equals that of x^-i for all i.
    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    fn symmetry_defect(&self) -> Option<i64> {
        let top = self.max_exp().abs().max(self.min_exp.abs());
        (1..=top).find(|&e| self.coeff(e) != self.coeff(-e))
    }

    /// For l with l(x) = l(1/x), returns the ordinary polynomial q of degree
    /// equal to l's positive degree with l(x) = q(x + 1/x) identically.
    ///
    /// Uses the inductive binomial elimination: with S_i the polynomial in s
    /// expressing x^i + x^-i (S_0 = 2, S_1 = s, S_i = s S_{i-1} - S_{i-2}),
    /// l = a_0 + sum a_i (x^i + x^-i) maps to a_0 + sum a_i S_i.
    pub fn symmetric_to_ordinary(&self) -> Result<Polynomial<T>, LaurentError> {
        if let Some(exp) = self.symmetry_defect() {
            return Err(LaurentError::NotSymmetric { exp });
        }
        let d = self.max_exp().max(0);
        let mut out = Polynomial::constant(self.coeff(0));
        let mut s_prev = Polynomial::constant(T::from_i64(2));
        let mut s_cur = Polynomial::x();
        for i in 1..=d {
            out = out.add(&s_cur.scale(&self.coeff(i)));
            let next = Polynomial::x().mul(&s_cur).sub(&s_prev);
            s_prev = s_cur;
            s_cur = next;
        }
        Ok(out)
    }

    /// Expands q(x + 1/x) as a Laurent polynomial (round-trip direction of
    /// [`Self::symmetric_to_ordinary`]).
    pub fn substitute_x_plus_inv(q: &Polynomial<T>) -> Self {
        let s = LaurentPolynomial::from_terms(&[(1, T::one()), (-1, T::one())]);
        let mut acc = Self::zero();
        for c in q.coeffs().iter().rev() {
            acc = acc.mul(&s).add(&LaurentPolynomial::from_terms(&[(0, c.clone())]));
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LaurentPolynomial<U> {
        LaurentPolynomial::new(self.min_exp, self.coeffs.iter().map(f).collect())
    }
}

/// Wire format shared by ordinary and Laurent polynomials:
/// `{"min_exp": int, "coeffs": ["num/den", ...]}`.
#[derive(Serialize, Deserialize)]
pub struct PolyJson {
    pub min_exp: i64,
    pub coeffs: Vec<String>,
}

impl LaurentPolynomial<Rat> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(format_rat).collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self, String> {
        let coeffs = json.coeffs.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPolynomial::new(json.min_exp, coeffs))
    }
}

impl Polynomial<Rat> {
    pub fn to_json(&self) -> PolyJson {
        LaurentPolynomial::from_poly(self).to_json()
    }

    pub fn from_json(json: &PolyJson) -> Result<Self, String> {
        let l = LaurentPolynomial::from_json(json)?;
        if l.min_exp() < 0 {
            return Err(format!("negative exponent {} in ordinary polynomial", l.min_exp()));
        }
        let (u, _) = l.split();
        Ok(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use crate::{LaurentPoly, Poly};

    fn l(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(&terms.iter().map(|&(e, c)| (e, rat_int(c))).collect::<Vec<_>>())
    }

    #[test]
    fn split_examples() {
        // q = 3 + k - 2k^-2 -> u = 3 + k, v(y) = -2y^2
        let q = l(&[(0, 3), (1, 1), (-2, -2)]);
        let (u, v) = q.split();
        assert_eq!(u, Poly::from_i64(&[3, 1]));
        assert_eq!(v, Poly::from_i64(&[0, 0, -2]));

        // q = k^-1 -> u = 0, v = y
        let (u, v) = l(&[(-1, 1)]).split();
        assert!(u.is_zero());
        assert_eq!(v, Poly::from_i64(&[0, 1]));

        // q = 5 -> u = 5, v = 0 (constant term lives in u)
        let (u, v) = l(&[(0, 5)]).split();
        assert_eq!(u, Poly::from_i64(&[5]));
        assert!(v.is_zero());
    }

    #[test]
    fn split_recombines() {
        let q = l(&[(-3, 2), (-1, -7), (0, 4), (2, 9)]);
        let (u, v) = q.split();
        for k in [-3i64, -1, 1, 2, 5] {
            let x = rat_int(k);
            let direct = q.eval(&x).unwrap();
            let recombined = u.eval(&x) + v.eval(&(rat_int(1) / x.clone()));
            assert_eq!(direct, recombined);
        }
    }

    #[test]
    fn symmetric_to_ordinary_examples() {
        // t + 1/t -> s
        assert_eq!(l(&[(1, 1), (-1, 1)]).symmetric_to_ordinary().unwrap(), Poly::x());
        // t^2 + t^-2 -> s^2 - 2
        assert_eq!(
            l(&[(2, 1), (-2, 1)]).symmetric_to_ordinary().unwrap(),
            Poly::from_i64(&[-2, 0, 1])
        );
        // constant 7 -> 7
        assert_eq!(l(&[(0, 7)]).symmetric_to_ordinary().unwrap(), Poly::from_i64(&[7]));
    }

    #[test]
    fn symmetric_rejects_mismatch() {
        let err = l(&[(2, 1), (-2, 3)]).symmetric_to_ordinary().unwrap_err();
        assert_eq!(err, LaurentError::NotSymmetric { exp: 2 });
    }

    #[test]
    fn eval_at_zero_is_error() {
        assert!(l(&[(-1, 1)]).eval(&rat_int(0)).is_err());
        assert_eq!(l(&[(0, 2), (3, 1)]).eval(&rat_int(0)).unwrap(), rat_int(2));
    }

    #[test]
    fn degrees() {
        let q = l(&[(-2, 1), (5, 3)]);
        assert_eq!(q.neg_degree(), 2);
        assert_eq!(q.pos_degree(), 5);
        assert_eq!(LaurentPoly::zero().neg_degree(), 0);
        // Purely negative Laurent polynomial: max_exp < 0, pos_degree clamps at 0.
        let p = l(&[(-3, 1), (-1, 2)]);
        assert_eq!(p.max_exp(), -1);
        assert_eq!(p.pos_degree(), 0);
    }

    #[test]
    fn json_round_trip() {
        let q = LaurentPoly::from_terms(&[(-1, rat(1, 3)), (2, rat(-5, 7))]);
        let json = q.to_json();
        assert_eq!(json.min_exp, -1);
        assert_eq!(json.coeffs, vec!["1/3", "0/1", "0/1", "-5/7"]);
        assert_eq!(LaurentPoly::from_json(&json).unwrap(), q);
    }
}
