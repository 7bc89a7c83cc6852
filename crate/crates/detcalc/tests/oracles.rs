mod common;

use approx::assert_relative_eq;
use common::{cofactor_det, expm, random_matrix};
use detcalc::{
    cyclic_reduce, det_k, eval_poly, matrix_jost_pais_residual, product_formula_residual,
    tk_polynomial, CMatrix, NCPoly,
};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn lu_determinant_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let m = CMatrix::from_fn(5, 5, |_, _| {
            use rand::Rng;
            Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..6.3))
        });
        let lu = m.det().unwrap();
        let cof = cofactor_det(&m);
        assert!((lu - cof).norm() <= 1e-12 * cof.norm().max(1e-3));
    }
}

#[test]
fn det_k_matches_exponential_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 1..=5u32 {
        let a = random_matrix(&mut rng, 4, 4, 1.5);
        // det((I + A) exp(sum_{j<k} (-1)^j A^j / j)) with an explicit exponential
        let mut series = CMatrix::zeros(4, 4);
        let mut power = CMatrix::identity(4);
        for j in 1..k {
            power = &power * &a;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            series = &series + &power.scale(Complex64::new(sign / j as f64, 0.0));
        }
        let full = &a.plus_identity().unwrap() * &expm(&series);
        let oracle = full.det().unwrap();
        let d = det_k(&a, k).unwrap();
        assert!(
            (d - oracle).norm() <= 1e-12 * oracle.norm().max(1.0),
            "k = {k}"
        );
    }
}

#[test]
fn det_k_order_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for k in 1..=5u32 {
        let a = random_matrix(&mut rng, 4, 4, 1.2);
        let mut power = CMatrix::identity(4);
        for _ in 0..k {
            power = &power * &a;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let step = (sign * power.trace().unwrap() / k as f64).exp();
        let lhs = det_k(&a, k + 1).unwrap();
        let rhs = det_k(&a, k).unwrap() * step;
        assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm());
    }
}

#[test]
fn trace_invariant_under_cyclic_representative() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let a = random_matrix(&mut rng, 5, 5, 2.0);
    let b = random_matrix(&mut rng, 5, 5, 2.0);
    let raw = tk_polynomial(3).unwrap();
    let canon = cyclic_reduce(&raw);
    let printed = NCPoly::from_triples([("AAB", -1, 1), ("ABB", -1, 1), ("ABAB", 1, 2)]).unwrap();
    let rotated = NCPoly::from_triples([("ABA", -1, 1), ("BBA", -1, 1), ("BABA", 1, 2)]).unwrap();
    let t0 = eval_poly(&printed, &a, &b).unwrap().trace().unwrap();
    for q in [&raw, &canon, &rotated] {
        let t = eval_poly(q, &a, &b).unwrap().trace().unwrap();
        assert!((t - t0).norm() <= 1e-12 * t0.norm().max(1.0));
    }
    // the matrices themselves differ
    let ma = eval_poly(&printed, &a, &b).unwrap();
    let mb = eval_poly(&rotated, &a, &b).unwrap();
    assert!((&ma - &mb).frobenius_norm() > 1e-3);
}

#[test]
fn product_formula_on_moderate_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for k in 2..=5 {
        let a = random_matrix(&mut rng, 6, 6, 1.0);
        let b = random_matrix(&mut rng, 6, 6, 1.0);
        assert!(product_formula_residual(&a, &b, k).unwrap() <= 1e-9);
    }
}

#[test]
fn surrogate_with_vanishing_dirichlet_block() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for k in 1..=5 {
        let k_n = random_matrix(&mut rng, 5, 5, 0.7);
        let r = matrix_jost_pais_residual(&k_n, &CMatrix::zeros(5, 5), k).unwrap();
        assert!(r <= 1e-10, "k = {k}: {r}");
    }
    for k in [2, 3] {
        let k_n = random_matrix(&mut rng, 6, 6, 0.5);
        let k_d = random_matrix(&mut rng, 6, 6, 0.5);
        assert!(matrix_jost_pais_residual(&k_n, &k_d, k).unwrap() <= 1e-9);
    }
}

#[test]
fn schatten_matches_svd_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (r, c) in [(5, 5), (7, 3), (2, 6)] {
        let m = random_matrix(&mut rng, r, c, 3.0);
        let na = nalgebra::DMatrix::from_fn(r, c, |i, j| m[(i, j)]);
        let sv = na.singular_values();
        let mut oracle: Vec<f64> = sv.iter().copied().collect();
        oracle.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let ours = m.singular_values();
        for (x, y) in ours.iter().zip(&oracle) {
            assert_relative_eq!(x, y, max_relative = 1e-10);
        }
        let s1: f64 = oracle.iter().sum();
        assert_relative_eq!(m.schatten_norm(1.0), s1, max_relative = 1e-10);
        assert_relative_eq!(
            m.schatten_norm(2.0),
            m.frobenius_norm(),
            max_relative = 1e-12
        );
    }
}
