//! Seeded random matrices for the finite-dimensional checks.

use detcalc::CMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in the unit square, rescaled to Frobenius norm `norm`,
/// which bounds the spectral radius.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, norm: f64) -> CMatrix {
    let m = CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let f = m.frobenius_norm();
    m.scale(Complex64::new(norm / f, 0.0))
}

/// One product-formula trial: dimension, order and a pair of square matrices
/// with spectral radius at most `radius`.
pub fn product_trial<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    k_max: u32,
    radius: f64,
) -> (usize, u32, CMatrix, CMatrix) {
    let dim = rng.gen_range(1..=max_dim);
    let k = rng.gen_range(1..=k_max);
    let ra = rng.gen_range(0.05 * radius..=radius);
    let rb = rng.gen_range(0.05 * radius..=radius);
    let a = random_matrix(rng, dim, dim, ra);
    let b = random_matrix(rng, dim, dim, rb);
    (dim, k, a, b)
}
