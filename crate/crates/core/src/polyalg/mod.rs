//! Exact scalars, multi-indices, sparse polynomials, parsing, and linear algebra over ℚ.

pub mod arith;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod univariate;

pub use arith::{fmt_rat, parse_rat, rat, ratio, Rational};
pub use matrix::{
    in_span, AffineSolution, ConstantSolution, LinAlgError, RationalMatrix, Rref, SpanBasis,
};
pub use parse::{parse_polynomial, parse_polynomial_auto, ParseError};
pub use poly::{default_var_names, is_homogeneous, render_polynomial, MultiIndex, Polynomial};
pub use univariate::{
    count_roots_between, rational_roots, sturm_count_roots, Bound, RootError, UnivariatePoly,
};
