#![allow(dead_code)]

use detcalc::CMatrix;
use num_complex::Complex64;
use rand::Rng;

/// Random complex matrix with entries uniform in the unit square, rescaled
/// so its Frobenius norm (hence its spectral radius) equals `radius`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, radius: f64) -> CMatrix {
    let m = CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let f = m.frobenius_norm();
    m.scale(Complex64::new(radius / f, 0.0))
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &CMatrix) -> Complex64 {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)];
    }
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let minor = CMatrix::from_fn(n - 1, n - 1, |r, c| {
            m[(r + 1, if c < j { c } else { c + 1 })]
        });
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * m[(0, j)] * cofactor_det(&minor);
    }
    total
}

/// Matrix exponential by scaling and squaring of a long Taylor series.
pub fn expm(a: &CMatrix) -> CMatrix {
    let norm = a.norm1();
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));
    let n = a.rows();
    let mut term = CMatrix::identity(n);
    let mut sum = CMatrix::identity(n);
    for j in 1..40 {
        term = (&term * &scaled).scale(Complex64::new(1.0 / j as f64, 0.0));
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
