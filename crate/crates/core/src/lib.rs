//! Exact certificates and desk-scale simulations for approximate counting.
//!
//! The crate materializes the constructive objects behind the degree
//! tradeoffs of approximate counting with Laurent polynomials: the
//! symmetrization transforms, an exact rational simplex together with the
//! primal/dual programs over (Laurent) polynomial coefficients, the explicit
//! dual witness, explicit approximating polynomials, and small quantum
//! simulations of the counting algorithms. Every identity that is exact on
//! paper is checked in exact arithmetic here; floating point only appears in
//! the simulator and in mirrors that are clearly flagged as such.
//!
//! Core polynomial arithmetic is generic over the scalar type. The aliases
//! below fix the two instantiations used throughout: arbitrary-precision
//! rationals for certificates and `f64` for simulation-side mirrors.

pub mod acceptance;
pub mod bivar;
pub mod boolsym;
pub mod bounds;
pub mod constructions;
pub mod laurent;
pub mod lp;
pub mod poly;
pub mod qsim;
pub mod scalar;
pub mod witness;

pub use scalar::Scalar;

/// Arbitrary-precision rational scalar; always stored in lowest terms with a
/// positive denominator, so equality and ordering are exact.
pub type Rat = num_rational::BigRational;

/// Dense univariate polynomial with exact rational coefficients.
pub type Poly = poly::Polynomial<Rat>;
/// Univariate polynomial over `f64`, used by float mirrors.
pub type FloatPoly = poly::Polynomial<f64>;

/// Laurent polynomial (negative exponents allowed) over exact rationals.
pub type LaurentPoly = laurent::LaurentPolynomial<Rat>;
/// Laurent polynomial over `f64`.
pub type FloatLaurentPoly = laurent::LaurentPolynomial<f64>;

/// Bivariate polynomial over exact rationals.
pub type BivarPoly = bivar::BivariatePolynomial<Rat>;
