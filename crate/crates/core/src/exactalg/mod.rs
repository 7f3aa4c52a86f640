//! Exact arbitrary-precision arithmetic: integers, rationals, dense
//! univariate and bivariate polynomials, integer factorization and
//! factorization of univariate polynomials over the rationals.

mod bipoly;
mod intfactor;
mod intpoly;
mod qfactor;

pub use bipoly::BiPoly;
pub use intfactor::{
    factor_integer, is_perfect_square, is_prime, is_square_rational, square_class, FactorBudget,
    FactoredInt,
};
pub use intpoly::IntPoly;
pub use qfactor::factor_over_q;

use num_bigint::BigInt;
use thiserror::Error;

pub type BigRational = num_rational::BigRational;

#[derive(Debug, Error)]
pub enum ExactAlgError {
    /// A cofactor resisted factorization within the operation budget.
    /// Carries the fully factored part and the unfactored remainder.
    #[error("factorization budget exceeded; unfactored cofactor {cofactor}")]
    BudgetExceeded {
        partial: FactoredInt,
        cofactor: BigInt,
    },
    #[error("polynomial degree {0} exceeds the factorization cap of {1}")]
    DegreeCapExceeded(usize, usize),
}

pub type Result<T> = std::result::Result<T, ExactAlgError>;
