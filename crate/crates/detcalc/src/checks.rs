//! Residuals of the determinant identities on finite matrices.

use crate::{cyclic_reduce, det_k, tk_polynomial, trace_poly, CMatrix, DetError};

/// Condition estimate above which `I - K_D` is treated as singular.
pub const NEAR_SINGULAR_CONDITION: f64 = 1e8;

fn same_square(a: &CMatrix, b: &CMatrix) -> Result<(), DetError> {
    if a.is_square() && b.is_square() && a.rows() == b.rows() {
        Ok(())
    } else {
        Err(DetError::Dimension(format!(
            "expected equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )))
    }
}

/// `|det_k((I-A)(I-B)) - det_k(I-A) det_k(I-B) exp(tr T_k(A,B))| / max(1, |lhs|)`.
pub fn product_formula_residual(a: &CMatrix, b: &CMatrix, k: u32) -> Result<f64, DetError> {
    same_square(a, b)?;
    let t = cyclic_reduce(&tk_polynomial(k)?);
    // (I - A)(I - B) = I + (AB - A - B)
    let x = &(&(a * b) - a) - b;
    let lhs = det_k(&x, k)?;
    let rhs = det_k(&-a, k)? * det_k(&-b, k)? * trace_poly(&t, a, b)?.exp();
    Ok((lhs - rhs).norm() / lhs.norm().max(1.0))
}

/// `|det(I_m - AB) - det(I_n - BA)| / max(1, |det(I_m - AB)|)` for `A` m x n, `B` n x m.
pub fn det_swap_residual(a: &CMatrix, b: &CMatrix) -> Result<f64, DetError> {
    if a.cols() != b.rows() || a.rows() != b.cols() {
        return Err(DetError::Dimension(format!(
            "swap identity needs m x n and n x m, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let left = (a * b).identity_minus()?.det()?;
    let right = (b * a).identity_minus()?.det()?;
    Ok((left - right).norm() / left.norm().max(1.0))
}

/// Finite-matrix version of the determinant reduction:
/// `det_k(I-K_N) / det_k(I-K_D) = det_k(I-A0) exp(tr T_k(A0, K_D))` with
/// `A0 = (K_N - K_D)(I - K_D)^{-1}`. Returns the residual relative to
/// `max(1, |lhs|)`.
pub fn matrix_jost_pais_residual(k_n: &CMatrix, k_d: &CMatrix, k: u32) -> Result<f64, DetError> {
    same_square(k_n, k_d)?;
    let t = cyclic_reduce(&tk_polynomial(k)?);
    let shifted = k_d.identity_minus()?;
    let condition = shifted.condition_estimate()?;
    if !(condition <= NEAR_SINGULAR_CONDITION) {
        return Err(DetError::NearSingular { condition });
    }
    let a0 = &(k_n - k_d) * &shifted.inverse()?;
    let lhs = det_k(&-k_n, k)? / det_k(&-k_d, k)?;
    let rhs = det_k(&-&a0, k)? * trace_poly(&t, &a0, k_d)?.exp();
    Ok((lhs - rhs).norm() / lhs.norm().max(1.0))
}
