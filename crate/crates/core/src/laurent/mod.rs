//! Exact Laurent polynomial arithmetic and the specializations used to
//! compare knot polynomials.

mod bivariate;
mod lm;
mod series;
mod univariate;

pub use bivariate::LaurentVZ;
pub use lm::LMTable;
pub use series::{h_expansion, LowestTerm, NPoly, NSeries};
pub use univariate::{Laurent, LaurentA, LaurentS, LaurentV};

/// Default truncation order for h-series.
pub const DEFAULT_TRUNCATION: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("term v^{a} z^{b} has odd total degree and no Lickorish-Millett form")]
    OddDegree { a: i32, b: i32 },
    #[error("specialization is not a Laurent polynomial in s")]
    NotLaurentInS,
    #[error("h-expansion has a negative power of h")]
    NegativeHPower,
}

pub(crate) fn checked_exp(a: i32, b: i32) -> i32 {
    a.checked_add(b).unwrap_or_else(|| panic!("exponent overflow: {a} + {b} exceeds 32-bit range"))
}
