#![allow(dead_code)]

use disk2d::{RadialGrid, RadialPotential};
use halfline::Preset;
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Smooth attractive bump `-3 exp(-(r/0.3)^2)` on the unit disk.
pub fn bump() -> RadialPotential {
    RadialPotential::preset(
        1.0,
        Preset::Gaussian {
            amp: -3.0,
            center: 0.0,
            width: 0.3,
        },
    )
    .unwrap()
}

/// `V = -5` for `r < 0.5` on the unit disk.
pub fn well() -> RadialPotential {
    RadialPotential::preset(1.0, Preset::SquareWell { v0: 5.0, a: 0.5 }).unwrap()
}

pub fn free() -> RadialPotential {
    RadialPotential::zero(1.0).unwrap()
}

pub fn grid(v: &RadialPotential, n: usize) -> RadialGrid {
    RadialGrid::new(v, n).unwrap()
}

pub fn bench_z() -> Complex64 {
    c(-2.0, 0.5)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Zeros of `x -> J_m(x)` (or `J_m'(x)`) in `(lo, hi)` by sign changes and
/// bisection.
pub fn bessel_zeros(m: u32, lo: f64, hi: f64, derivative: bool) -> Vec<f64> {
    let f = |x: f64| {
        let (j, dj) = numkit::bessel_j(m, Complex64::new(x, 0.0)).unwrap();
        if derivative {
            dj.re
        } else {
            j.re
        }
    };
    let cells = 4000;
    let mut out = Vec::new();
    for i in 0..cells {
        let (mut a, mut b) = (
            lo + (hi - lo) * i as f64 / cells as f64,
            lo + (hi - lo) * (i + 1) as f64 / cells as f64,
        );
        let fa0 = f(a);
        if fa0 == 0.0 || fa0.signum() == f(b).signum() {
            continue;
        }
        for _ in 0..100 {
            let mid = 0.5 * (a + b);
            if f(mid).signum() == f(a).signum() {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}
