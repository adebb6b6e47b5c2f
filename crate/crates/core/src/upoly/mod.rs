//! Univariate polynomials and rational functions over ℚ.

mod divisor;
mod factor;
mod modp;
mod parse;
mod poly;
mod ramification;
mod ratfunc;
pub(crate) mod zpoly;

pub use divisor::{divisor_of_zeros, fiber, ClosedPoint, Divisor};
pub use factor::{
    factor_poly, irreducible_factors, is_irreducible, squarefree_decomposition, PolyFactorization,
    FACTOR_DEGREE_CAP,
};
pub use parse::{parse_ratfunc, PARSE_DEGREE_CAP};
pub use poly::UniPoly;
pub use ramification::{
    critical_values, ramification_profile, ramification_total, CriticalValue, RamificationPoint,
};
pub use ratfunc::{P1Point, RatFunc};
