//! Bivariate polynomials with exact coefficients.

use crate::laurent::LaurentPolynomial;
use crate::poly::{Degree, Polynomial};
use crate::scalar::{format_rat, parse_rat, Scalar};
use crate::Rat;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BivarError {
    #[error("hyperbola restriction requires a nonzero scale")]
    ZeroScale,
}

/// Dense bivariate polynomial; `rows[i][j]` is the coefficient of x^i y^j.
/// Rows are kept trimmed so the total degree is max{i+j : coeff nonzero}.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariatePolynomial<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> BivariatePolynomial<T> {
    pub fn zero() -> Self {
        BivariatePolynomial { rows: Vec::new() }
    }

    pub fn from_terms(terms: &[(usize, usize, T)]) -> Self {
        let mut rows: Vec<Vec<T>> = Vec::new();
        for (i, j, c) in terms {
            if rows.len() <= *i {
                rows.resize_with(i + 1, Vec::new);
            }
            if rows[*i].len() <= *j {
                rows[*i].resize_with(j + 1, T::zero);
            }
            rows[*i][*j] = rows[*i][*j].clone() + c.clone();
        }
        let mut p = BivariatePolynomial { rows };
        p.canonicalize();
        p
    }

    fn canonicalize(&mut self) {
        for row in &mut self.rows {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.rows
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, c)| (i, j, c)))
            .filter(|(_, _, c)| !c.is_zero())
    }

    pub fn total_degree(&self) -> Degree {
        self.terms()
            .map(|(i, j, _)| Degree::Of(i + j))
            .max()
            .unwrap_or(Degree::MinusInfinity)
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        // Horner in y per row, then Horner in x across rows.
        let mut acc = T::zero();
        for row in self.rows.iter().rev() {
            let mut row_val = T::zero();
            for c in row.iter().rev() {
                row_val = row_val * y.clone() + c.clone();
            }
            acc = acc * x.clone() + row_val;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms: Vec<(usize, usize, T)> = self.terms().map(|(i, j, c)| (i, j, c.clone())).collect();
        terms.extend(other.terms().map(|(i, j, c)| (i, j, c.clone())));
        Self::from_terms(&terms)
    }

    pub fn scale(&self, s: &T) -> Self {
        let terms: Vec<_> = self.terms().map(|(i, j, c)| (i, j, c.clone() * s.clone())).collect();
        Self::from_terms(&terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (i, j, a) in self.terms() {
            for (k, l, b) in other.terms() {
                terms.push((i + k, j + l, a.clone() * b.clone()));
            }
        }
        Self::from_terms(&terms)
    }

    /// px(x) * py(y) as a bivariate polynomial.
    pub fn from_product(px: &Polynomial<T>, py: &Polynomial<T>) -> Self {
        let mut terms = Vec::new();
        for (i, a) in px.coeffs().iter().enumerate() {
            for (j, b) in py.coeffs().iter().enumerate() {
                terms.push((i, j, a.clone() * b.clone()));
            }
        }
        Self::from_terms(&terms)
    }

    /// p(y, x).
    pub fn swap_xy(&self) -> Self {
        let terms: Vec<_> = self.terms().map(|(i, j, c)| (j, i, c.clone())).collect();
        Self::from_terms(&terms)
    }

    /// (p(x,y) + p(y,x)) / 2; the output is invariant under the swap.
    pub fn symmetrize_swap(&self) -> Self {
        let half = T::one() / T::from_i64(2);
        self.add(&self.swap_xy()).scale(&half)
    }

    /// Restriction to the hyperbola (x = a t, y = a / t) as a Laurent
    /// polynomial in t. Both the positive and the negative degree are at most
    /// the total degree of p.
    pub fn hyperbola_restrict(&self, a: &T) -> Result<LaurentPolynomial<T>, BivarError> {
        if a.is_zero() {
            return Err(BivarError::ZeroScale);
        }
        let mut terms = Vec::new();
        for (i, j, c) in self.terms() {
            terms.push((i as i64 - j as i64, c.clone() * a.pow_u(i + j)));
        }
        Ok(LaurentPolynomial::from_terms(&terms))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> BivariatePolynomial<U> {
        let terms: Vec<_> = self.terms().map(|(i, j, c)| (i, j, f(c))).collect();
        BivariatePolynomial::from_terms(&terms)
    }
}

impl BivariatePolynomial<Rat> {
    /// Row-major triangular coefficient matrix: row i lists the coefficients
    /// of x^i y^j for j = 0..=(d-i), where d is the total degree.
    pub fn to_json_rows(&self) -> Vec<Vec<String>> {
        let d = self.total_degree().unwrap_or(0);
        if self.is_zero() {
            return vec![vec![format_rat(&num_traits::Zero::zero())]];
        }
        (0..=d)
            .map(|i| (0..=(d - i)).map(|j| format_rat(&self.coeff(i, j))).collect())
            .collect()
    }

    pub fn from_json_rows(rows: &[Vec<String>]) -> Result<Self, String> {
        let mut terms = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                terms.push((i, j, parse_rat(s)?));
            }
        }
        Ok(Self::from_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use crate::{BivarPoly, LaurentPoly};

    fn b(terms: &[(usize, usize, i64)]) -> BivarPoly {
        BivarPoly::from_terms(&terms.iter().map(|&(i, j, c)| (i, j, rat_int(c))).collect::<Vec<_>>())
    }

    #[test]
    fn hyperbola_examples() {
        // p = xy, a = 1 -> constant 1
        let p = b(&[(1, 1, 1)]);
        assert_eq!(
            p.hyperbola_restrict(&rat_int(1)).unwrap(),
            LaurentPoly::from_terms(&[(0, rat_int(1))])
        );
        // p = x + y, a = 2 -> 2t + 2/t
        let p = b(&[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(
            p.hyperbola_restrict(&rat_int(2)).unwrap(),
            LaurentPoly::from_terms(&[(1, rat_int(2)), (-1, rat_int(2))])
        );
        // p = x^2, a = 1 -> t^2
        let p = b(&[(2, 0, 1)]);
        assert_eq!(
            p.hyperbola_restrict(&rat_int(1)).unwrap(),
            LaurentPoly::from_terms(&[(2, rat_int(1))])
        );
        assert_eq!(p.hyperbola_restrict(&rat_int(0)).unwrap_err(), BivarError::ZeroScale);
    }

    #[test]
    fn symmetrize_examples() {
        // p = x -> (x + y)/2
        let p = b(&[(1, 0, 1)]).symmetrize_swap();
        assert_eq!(p.coeff(1, 0), rat(1, 2));
        assert_eq!(p.coeff(0, 1), rat(1, 2));
        // p = xy already symmetric
        let p = b(&[(1, 1, 1)]);
        assert_eq!(p.symmetrize_swap(), p);
        // antisymmetric part cancels
        assert!(b(&[(2, 0, 1), (0, 2, -1)]).symmetrize_swap().is_zero());
    }

    #[test]
    fn eval_and_degree() {
        let p = b(&[(2, 1, 3), (0, 0, -1)]); // 3x^2 y - 1
        assert_eq!(p.eval(&rat_int(2), &rat_int(5)), rat_int(59));
        assert_eq!(p.total_degree(), Degree::Of(3));
        assert_eq!(BivarPoly::zero().total_degree(), Degree::MinusInfinity);
    }

    #[test]
    fn json_rows_round_trip() {
        let p = b(&[(2, 1, 3), (1, 1, -2), (0, 0, 7)]);
        let rows = p.to_json_rows();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].len(), 4);
        assert_eq!(rows[3].len(), 1);
        assert_eq!(BivarPoly::from_json_rows(&rows).unwrap(), p);
    }
}
