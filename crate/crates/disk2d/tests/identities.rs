mod common;

use common::*;
use disk2d::*;

#[test]
fn free_potential_is_trivial() {
    let v = free();
    let g = grid(&v, 40);
    let z = bench_z();
    assert_eq!(lhs_ratio_det(z, &v, 5, &g).unwrap().value, c(1.0, 0.0));
    assert!((rhs_dtn_det(z, &v, 5).unwrap().value - 1.0).norm() < 1e-12);
    assert_eq!(t2_trace(z, &v, 5, &g).unwrap(), c(0.0, 0.0));
    assert!(theorem42_residual(z, &v, 5, &g).unwrap() < 1e-12);
    assert!(neumann_variant_residual(z, &v, 5, &g).unwrap() < 1e-12);
    assert!(lemma35_mode_residual(2, z, &v, &g).unwrap() < 1e-12);
    assert_eq!(
        dln_det_check(z, &v, Boundary::Dirichlet, 3, &g, 1e-4)
            .unwrap()
            .residual,
        0.0
    );
}

#[test]
fn lhs_has_no_first_order_term_and_matches_second_order() {
    let v = bump();
    let g = grid(&v, 100);
    let z = bench_z();
    let m_max = 10;
    // -1/2 sum mult [tr K_N^2 - tr K_D^2] at unit coupling
    let mut coeff = c(0.0, 0.0);
    for m in 0..=m_max {
        let kn = bs_mode_matrix(m, z, &v, Boundary::Neumann, &g).unwrap();
        let kd = bs_mode_matrix(m, z, &v, Boundary::Dirichlet, &g).unwrap();
        let diff = kn.trace_of_product(&kn).unwrap() - kd.trace_of_product(&kd).unwrap();
        coeff -= 0.5 * mult(m) as f64 * diff;
    }
    let mut errs = Vec::new();
    for eps in [1e-2, 1e-3] {
        let log = lhs_ratio_det(z, &v.scaled(eps), m_max, &g)
            .unwrap()
            .log_value;
        errs.push(rel(log / (eps * eps), coeff));
        // the linear coefficient vanishes
        assert!(log.norm() / eps < 10.0 * eps * coeff.norm());
    }
    assert!(errs[1] < 1e-2, "{errs:?}");
    // O(eps) approach of the quadratic coefficient
    assert!(errs[1] < 0.2 * errs[0], "{errs:?}");
}

#[test]
fn lhs_is_conjugation_symmetric() {
    let v = bump();
    let g = grid(&v, 100);
    let a = lhs_ratio_det(c(-2.0, 0.5), &v, 8, &g).unwrap().value;
    let b = lhs_ratio_det(c(-2.0, -0.5), &v, 8, &g).unwrap().value;
    assert!(rel(b, a.conj()) < 1e-8);
}

#[test]
fn single_mode_rhs_is_one_factor() {
    let v = bump();
    let z = bench_z();
    let d0 = dtn_ratio(0, z, &v).unwrap();
    let r = rhs_dtn_det(z, &v, 0).unwrap();
    assert!(rel(r.value, d0 * (1.0 - d0).exp()) < 1e-13);
    assert_eq!(r.d, vec![d0]);
}

#[test]
fn dtn_ratio_decays_at_least_like_one_over_m() {
    let v = bump();
    let r = rhs_dtn_det(bench_z(), &v, 60).unwrap();
    let dev: Vec<f64> = r.d.iter().map(|d| (d - 1.0).norm()).collect();
    // C fitted on the low modes, then checked on the tail
    let cap = (1..=10).map(|m| m as f64 * dev[m]).fold(0.0, f64::max);
    for (m, &d) in dev.iter().enumerate().skip(11) {
        assert!(m as f64 * d <= cap, "m {m}: {d:e}");
    }
    assert!(r.truncation < 1e-7);
}

#[test]
fn mode_identity_holds_on_benchmark_modes() {
    let v = bump();
    let g = grid(&v, 200);
    for m in 0..=10 {
        let res = lemma35_mode_residual(m, bench_z(), &v, &g).unwrap();
        assert!(res <= 1e-4, "m {m}: {res:e}");
    }
}

#[test]
fn boundary_scalar_is_born_to_first_order() {
    let v = bump();
    let g = grid(&v, 100);
    let z = bench_z();
    for m in [0u32, 3] {
        let mut gaps = Vec::new();
        for eps in [1e-2, 1e-3] {
            let id = mode_identities(m, z, &v.scaled(eps), &g).unwrap();
            gaps.push((
                (id.boundary_scalar - id.born).norm(),
                ((1.0 - id.d) - id.born).norm(),
                id.born.norm(),
            ));
        }
        for k in 0..2 {
            let (g1, g2) = if k == 0 {
                (gaps[0].0, gaps[1].0)
            } else {
                (gaps[0].1, gaps[1].1)
            };
            // the gap is second order: a tenfold smaller coupling shrinks it about 100x
            assert!(g2 < 0.02 * g1 && g2 > 0.005 * g1, "m {m}: {g1:e} {g2:e}");
        }
        assert!(gaps[1].0 < 1e-2 * gaps[1].2);
    }
}

#[test]
fn trace_correction_scales_quadratically() {
    let v = bump();
    let g = grid(&v, 100);
    let a = t2_trace(bench_z(), &v.scaled(1e-2), 10, &g).unwrap();
    let b = t2_trace(bench_z(), &v.scaled(2e-2), 10, &g).unwrap();
    assert!(((b / a).norm() - 4.0).abs() < 0.04 * 4.0, "{}", b / a);
}

#[test]
fn trace_correction_is_basis_independent() {
    let v = bump();
    let g = grid(&v, 100);
    for m in [0u32, 1, 6] {
        let a = t2_mode(m, bench_z(), &v, &g, BoundaryBasis::Orthonormal).unwrap();
        let b = t2_mode(m, bench_z(), &v, &g, BoundaryBasis::Plain).unwrap();
        assert!(rel(b, a) < 1e-10);
    }
}

#[test]
fn dirichlet_identity_on_benchmark() {
    let v = bump();
    let g = grid(&v, 200);
    let res: Vec<f64> = [10, 20, 30]
        .iter()
        .map(|&m| theorem42_residual(bench_z(), &v, m, &g).unwrap())
        .collect();
    assert!(res[2] <= 1e-3, "{res:?}");
    assert!(res[1] <= 1.2 * res[0] && res[2] <= 1.2 * res[1], "{res:?}");
    let coarse = theorem42_residual(bench_z(), &v, 30, &grid(&v, 100)).unwrap();
    assert!(res[2] < coarse, "{coarse:e} vs {:e}", res[2]);
}

#[test]
fn dirichlet_identity_on_the_well() {
    let v = well();
    let g = grid(&v, 200);
    for z in [c(3.0, 1.0), c(-6.0, 0.2)] {
        let res = theorem42_residual(z, &v, 20, &g).unwrap();
        assert!(res <= 1e-3, "{z}: {res:e}");
    }
}

#[test]
fn neumann_variant_on_benchmark() {
    let v = bump();
    let g = grid(&v, 200);
    let nv = neumann_variant(bench_z(), &v, 30, &g).unwrap();
    let th = disk_reduction(bench_z(), &v, 30, &g).unwrap();
    assert!(nv.residual <= 1e-3, "{:e}", nv.residual);
    assert!((nv.lhs * th.lhs - 1.0).norm() < 1e-8);
}

#[test]
fn log_derivative_matches_trace_formula() {
    let v = bump();
    let g = grid(&v, 100);
    for bc in [Boundary::Dirichlet, Boundary::Neumann] {
        let fine = dln_det_check(bench_z(), &v, bc, 10, &g, 1e-4).unwrap();
        assert!(fine.residual <= 1e-5, "{bc:?}: {:e}", fine.residual);
        let a = dln_det_check(bench_z(), &v, bc, 10, &g, 1e-2)
            .unwrap()
            .residual;
        let b = dln_det_check(bench_z(), &v, bc, 10, &g, 5e-3)
            .unwrap()
            .residual;
        assert!((a / b - 4.0).abs() < 0.4, "{bc:?}: order ratio {}", a / b);
    }
}
