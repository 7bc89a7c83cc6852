//! Noncommutative correction polynomials `T_k(A, B)` and the modified
//! determinant calculus they feed into.
//!
//! `T_k` is the polynomial that restores multiplicativity of the regularized
//! determinant:
//!
//! ```text
//! det_k((I - A)(I - B)) = det_k(I - A) det_k(I - B) exp(tr T_k(A, B))
//! ```
//!
//! Polynomials carry exact rational coefficients; floating point only enters
//! when they are evaluated on matrices.

pub mod checks;
pub mod cmatrix;
pub mod golden;
pub mod ncpoly;

pub use checks::{
    det_swap_residual, matrix_jost_pais_residual, product_formula_residual, NEAR_SINGULAR_CONDITION,
};
pub use cmatrix::{det_k, CMatrix, Lu};
pub use golden::{golden_tk, GOLDEN_JSON};
pub use ncpoly::{
    cyclic_reduce, eval_poly, tk_generator, tk_polynomial, trace_poly, Letter, NCPoly, NCWord,
    MAX_TK_ORDER,
};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DetError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("order k = {0} is not supported (allowed: 1..={MAX_TK_ORDER})")]
    UnsupportedOrder(u32),
    #[error("matrix is numerically singular (condition estimate {condition:.3e})")]
    NearSingular { condition: f64 },
    #[error("malformed word {0:?}: only the letters A and B are allowed")]
    BadWord(String),
    #[error("golden file: {0}")]
    Golden(String),
}

pub(crate) fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
