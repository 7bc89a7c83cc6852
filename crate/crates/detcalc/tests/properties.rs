mod common;

use common::random_matrix;
use detcalc::{det_k, det_swap_residual, product_formula_residual, CMatrix};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_formula_holds(seed in any::<u64>(), dim in 1usize..=8, k in 1u32..=5, radius in 0.01f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, dim, dim, radius);
        let b = random_matrix(&mut rng, dim, dim, radius);
        prop_assert!(product_formula_residual(&a, &b, k).unwrap() <= 1e-9);
    }

    #[test]
    fn swap_identity_holds(seed in any::<u64>(), m in 1usize..=10, n in 1usize..=10, scale in 0.1f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, m, n, scale);
        let b = random_matrix(&mut rng, n, m, scale);
        prop_assert!(det_swap_residual(&a, &b).unwrap() <= 1e-11);
    }
}

proptest! {
    #[test]
    fn regularization_keeps_zeros(seed in any::<u64>(), dim in 2usize..=6, k in 1u32..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, dim, dim, 1.0);
        prop_assert!(det_k(&a, k).unwrap().norm() > 0.0 || a.plus_identity().unwrap().det().unwrap().norm() == 0.0);
        // make I + A exactly singular: A = -P for a coordinate projection P
        let mut p = CMatrix::zeros(dim, dim);
        p[(0, 0)] = Complex64::new(-1.0, 0.0);
        for i in 1..dim {
            p[(i, i)] = a[(i, i)];
        }
        prop_assert_eq!(det_k(&p, k).unwrap(), Complex64::new(0.0, 0.0));
    }
}
