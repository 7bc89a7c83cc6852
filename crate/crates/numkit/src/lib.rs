//! Numerical substrate shared by the half-line and disk solvers.
//!
//! Everything here works on `Complex64` and plain slices. The pieces are
//! deliberately small: a branch-fixed square root, Gauss-Legendre rules,
//! Bessel functions of the first kind, an embedded Runge-Kutta integrator
//! and a continuous-argument tracker.

pub mod bessel;
pub mod ode;
pub mod phase;
pub mod quad;

use num_complex::Complex64;

pub use bessel::{bessel_j, BesselError};
pub use ode::{ode_integrate, Dopri5, OdeError};
pub use phase::{track_log, PhaseError, PhasePath};
pub use quad::{composite_gauss_legendre, gauss_legendre, QuadError, QuadGrid};

/// Square root with `Im >= 0`.
///
/// The cut lies along `[0, inf)`. On the cut the limit from the upper half
/// plane is returned, i.e. the nonnegative real root.
pub fn sqrt_upper(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re >= 0.0 {
        return Complex64::new(z.re.sqrt(), 0.0);
    }
    let s = z.sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_upper_examples() {
        let i = sqrt_upper(Complex64::new(-1.0, 0.0));
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let i = sqrt_upper(Complex64::new(-1.0, -0.0));
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(
            sqrt_upper(Complex64::new(4.0, 0.0)),
            Complex64::new(2.0, 0.0)
        );
        let r = sqrt_upper(Complex64::new(0.0, 2.0));
        assert!((r - Complex64::new(1.0, 1.0)).norm() < 1e-15);
        // just below the positive axis the root has a small positive imaginary part
        let r = sqrt_upper(Complex64::new(4.0, -1e-9));
        assert!(r.im > 0.0 && (r.re + 2.0).abs() < 1e-8);
    }
}
