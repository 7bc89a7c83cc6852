#![allow(dead_code)]

use halfline::{Potential1D, Preset};
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn square_well() -> Potential1D {
    Potential1D::preset(Preset::SquareWell { v0: 2.0, a: 1.0 }).unwrap()
}

pub fn gaussian() -> Potential1D {
    Potential1D::preset(Preset::Gaussian {
        amp: -2.0,
        center: 0.5,
        width: 0.4,
    })
    .unwrap()
}

pub fn exp_decay() -> Potential1D {
    Potential1D::preset(Preset::ExpDecay {
        amp: -1.5,
        rate: 1.0,
        cutoff: 3.0,
    })
    .unwrap()
}

/// Twenty points in the upper half plane with moduli spread over [0.3, 30].
pub fn z_grid() -> Vec<Complex64> {
    (0..20)
        .map(|i| {
            let r = 0.3 * 100f64.powf(i as f64 / 19.0);
            let th = 0.15 + 2.8 * ((i * 7) % 20) as f64 / 19.0;
            Complex64::from_polar(r, th)
        })
        .collect()
}

/// Two-region closed form of `f_+(z, 0)`, `f_+'(z, 0)` for `V = -v0` on `(0, a)`.
pub fn square_well_jost(z: Complex64, v0: f64, a: f64) -> (Complex64, Complex64) {
    let k = numkit::sqrt_upper(z);
    let q = (z + v0).sqrt();
    let ik = Complex64::new(0.0, 1.0) * k;
    let e = (ik * a).exp();
    // inside: f = A cos(q x) + B sin(q x) with f(a) = e, f'(a) = i k e
    let (ca, sa) = ((q * a).cos(), (q * a).sin());
    let big_a = e * ca - ik * e * sa / q;
    let big_b = e * sa + ik * e * ca / q;
    (big_a, q * big_b)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}
