mod common;

use common::{c, gaussian, rel, square_well, square_well_jost};
use halfline::{
    jost_function, m_functions, solve_jost, solve_phi_d, solve_theta, HalfLineError, Potential1D,
    Preset, SolutionTable,
};
use num_complex::Complex64;

fn max_dev(t: &SolutionTable, f: impl Fn(f64) -> Complex64) -> f64 {
    t.nodes
        .iter()
        .zip(&t.values)
        .map(|(&x, &y)| (y - f(x)).norm())
        .fold(0.0, f64::max)
}

#[test]
fn free_solutions() {
    let v = Potential1D::zero();
    let z = c(3.0, 1.0);
    let k = numkit::sqrt_upper(z);
    let i = c(0.0, 1.0);
    assert!(max_dev(&solve_phi_d(z, &v, 100).unwrap(), |x| (k * x).sin() / k) < 1e-8);
    assert!(max_dev(&solve_theta(z, &v, 100).unwrap(), |x| (k * x).cos()) < 1e-8);
    assert!(max_dev(&solve_jost(z, &v, 100).unwrap(), |x| (i * k * x).exp()) < 1e-8);
    let zm = c(-1.0, 0.0);
    assert!(max_dev(&solve_phi_d(zm, &v, 100).unwrap(), |x| c(x.sinh(), 0.0)) < 1e-12);
    assert!(max_dev(&solve_theta(zm, &v, 100).unwrap(), |x| c(x.cosh(), 0.0)) < 1e-12);
    let j = jost_function(z, &v).unwrap();
    assert!((j.f0 - c(1.0, 0.0)).norm() < 1e-14);
    assert!((j.f0p - i * k).norm() < 1e-14);
}

#[test]
fn grid_guard() {
    assert_eq!(
        solve_phi_d(c(-1.0, 0.0), &square_well(), 10).unwrap_err(),
        HalfLineError::GridTooSmall(10)
    );
}

#[test]
fn square_well_regular_solution() {
    // inside the well phi = sin(q x) / q with q = sqrt(z + v0); at z = -1, v0 = 2: q = 1
    let t = solve_phi_d(c(-1.0, 0.0), &square_well(), 800).unwrap();
    let last = *t.values.last().unwrap();
    assert!((last - c(1f64.sin(), 0.0)).norm() < 1e-6);
}

#[test]
fn square_well_jost_value() {
    for z in [c(-1.0, 0.5), c(3.0, 1.0), c(0.3, 0.1), c(20.0, 5.0)] {
        let j = jost_function(z, &square_well()).unwrap();
        let (f0, f0p) = square_well_jost(z, 2.0, 1.0);
        assert!(rel(j.f0, f0) < 1e-6, "z={z}");
        assert!(rel(j.f0p, f0p) < 1e-6, "z={z}");
    }
}

#[test]
fn wronskians_are_constant() {
    for v in [square_well(), gaussian()] {
        for z in [c(-1.5, 0.2), c(5.0, 2.0)] {
            let n = 400;
            let phi = solve_phi_d(z, &v, n).unwrap();
            let theta = solve_theta(z, &v, n).unwrap();
            let f = solve_jost(z, &v, n).unwrap();
            for (a, b) in [(&theta, &phi), (&f, &phi), (&f, &theta)] {
                let w = a.wronskian(b);
                let dev = w.iter().map(|x| (x - w[0]).norm()).fold(0.0, f64::max);
                assert!(dev <= 1e-7 * (1.0 + w[0].norm()), "dev {dev}");
            }
            // W(theta, phi) = 1 and W(f, phi) = f(0)
            assert!((theta.wronskian(&phi)[0] - c(1.0, 0.0)).norm() < 1e-14);
            let wf = f.wronskian(&phi);
            assert!((wf[0] - f.values[0]).norm() < 1e-14);
            assert!((wf[n] - f.values[0]).norm() <= 1e-7 * f.values[0].norm());
        }
    }
}

#[test]
fn jost_tail_matches_plane_wave() {
    let z = c(2.0, 0.5);
    let v = gaussian();
    let f = solve_jost(z, &v, 200).unwrap();
    let k = numkit::sqrt_upper(z);
    let x = *f.nodes.last().unwrap();
    assert!((f.values.last().unwrap() - (c(0.0, 1.0) * k * x).exp()).norm() <= 1e-8);
}

#[test]
fn conjugation_symmetry_for_real_potentials() {
    for v in [square_well(), gaussian()] {
        for z in [c(-2.0, 0.0), c(-0.5, 0.0)] {
            let j = jost_function(z, &v).unwrap();
            assert!(j.f0.im.abs() < 1e-9 && j.f0p.im.abs() < 1e-9);
        }
        for z in [c(1.5, 0.8), c(-1.5, 0.8), c(10.0, 0.1)] {
            let a = jost_function(z, &v).unwrap();
            let b = jost_function(z.conj(), &v).unwrap();
            assert!((a.f0 - b.f0.conj()).norm() < 1e-9 * a.f0.norm());
            assert!((a.f0p - b.f0p.conj()).norm() < 1e-9 * a.f0p.norm());
        }
    }
}

#[test]
fn m_function_relations() {
    let m = m_functions(c(-1.0, 0.0), &Potential1D::zero()).unwrap();
    assert!((m.m0_d - c(-1.0, 0.0)).norm() < 1e-15);
    assert!((m.m_d - m.m0_d).norm() < 1e-14);
    for z in [c(-1.0, 0.3), c(4.0, 1.0)] {
        let m = m_functions(z, &square_well()).unwrap();
        assert!((m.m_n + 1.0 / m.m_d).norm() <= 1e-14 * m.m_n.norm());
        assert!((m.m0_n + 1.0 / m.m0_d).norm() <= 1e-14 * m.m0_n.norm());
    }
}

#[test]
fn zero_amplitude_preset_is_free() {
    let v = Potential1D::preset(Preset::SquareWell { v0: 2.0, a: 1.0 }.scaled(0.0)).unwrap();
    let j = jost_function(c(-1.0, 0.0), &v).unwrap();
    assert!((j.f0 - c(1.0, 0.0)).norm() < 1e-14);
}
