//! Dense univariate polynomials with generic coefficients.
//!
//! Coefficients are stored in ascending degree order; the representation is
//! canonical (no trailing zeros), so the zero polynomial has an empty
//! coefficient vector and its degree is the sentinel
//! [`Degree::MinusInfinity`] rather than an integer in disguise.

use crate::scalar::Scalar;
use std::fmt;

/// Degree of a polynomial. The zero polynomial gets a dedicated sentinel so
/// that nothing ever does arithmetic on a `-1` by accident.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Of(usize),
}

impl Degree {
    /// Degree as usize, with the zero polynomial mapped to `default`.
    pub fn unwrap_or(self, default: usize) -> usize {
        match self {
            Degree::MinusInfinity => default,
            Degree::Of(d) => d,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Of(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Polynomial::new(vec![T::zero(), T::one()])
    }

    /// c * x^k.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Of(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Polynomial::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(T::from_i64(i as i64) * c.clone());
        }
        Polynomial::new(out)
    }

    /// Composition self(inner(x)).
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Polynomial::constant(c.clone()));
        }
        acc
    }

    /// q(x) = p(a*x + b). Degree is preserved whenever a != 0.
    pub fn compose_affine(&self, a: &T, b: &T) -> Self {
        self.compose(&Polynomial::new(vec![b.clone(), a.clone()]))
    }

    /// Chebyshev polynomial of the first kind via T_d = 2x T_{d-1} - T_{d-2}.
    pub fn chebyshev(d: usize) -> Self {
        let two_x = Polynomial::new(vec![T::zero(), T::from_i64(2)]);
        let mut prev = Polynomial::one();
        if d == 0 {
            return prev;
        }
        let mut cur = Polynomial::x();
        for _ in 1..d {
            let next = two_x.mul(&cur).sub(&prev);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Exact interpolation through the given points (distinct abscissas),
    /// via Newton divided differences.
    pub fn interpolate(points: &[(T, T)]) -> Self {
        if points.is_empty() {
            return Polynomial::zero();
        }
        let xs: Vec<T> = points.iter().map(|(x, _)| x.clone()).collect();
        // Divided-difference table, in place.
        let mut table: Vec<T> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..points.len() {
            for i in (level..points.len()).rev() {
                let dx = xs[i].clone() - xs[i - level].clone();
                table[i] = (table[i].clone() - table[i - 1].clone()) / dx;
            }
        }
        // Horner expansion of the Newton form.
        let mut acc = Polynomial::zero();
        for i in (0..points.len()).rev() {
            let shift = Polynomial::new(vec![-xs[i].clone(), T::one()]);
            acc = acc.mul(&shift).add(&Polynomial::constant(table[i].clone()));
        }
        acc
    }

    /// Falling factorial x(x-1)...(x-k+1) as a polynomial (1 for k = 0).
    pub fn falling_factorial(k: usize) -> Self {
        let mut acc = Polynomial::one();
        for i in 0..k {
            acc = acc.mul(&Polynomial::new(vec![T::from_i64(-(i as i64)), T::one()]));
        }
        acc
    }

    /// Maps coefficients into another scalar type (e.g. exact -> f64 mirror).
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}
