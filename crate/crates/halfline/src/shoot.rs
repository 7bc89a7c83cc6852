//! Direct ODE shooting for `-y'' + V y = z y`, used where pointwise values
//! at arbitrary positions are needed.

use crate::{HalfLineError, Potential1D};
use num_complex::Complex64;
use numkit::{sqrt_upper, Dopri5};

pub(crate) const SHOOT_TOL: f64 = 1e-12;

fn integrate(
    z: Complex64,
    v: &Potential1D,
    y: &mut [Complex64; 2],
    from: f64,
    to: f64,
) -> Result<(), HalfLineError> {
    let mut rhs = |x: f64, y: &[Complex64], d: &mut [Complex64]| {
        d[0] = y[1];
        d[1] = (v.value(x) - z) * y[0];
    };
    let mut stepper = Dopri5::new(SHOOT_TOL)?;
    // the potential may jump at the support end; never step across it
    let cut = v.support();
    let mut t = from;
    if (from < cut && to > cut) || (from > cut && to < cut) {
        stepper.advance(&mut rhs, t, y, cut)?;
        t = cut;
    }
    stepper.advance(&mut rhs, t, y, to)?;
    Ok(())
}

/// `(phi(x), phi'(x))` for the regular solution.
pub fn shoot_regular(
    z: Complex64,
    v: &Potential1D,
    x: f64,
) -> Result<(Complex64, Complex64), HalfLineError> {
    let mut y = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    integrate(z, v, &mut y, 0.0, x)?;
    Ok((y[0], y[1]))
}

/// `(f(x), f'(x))` for the Jost solution; exact plane wave beyond the support.
pub fn shoot_jost(
    z: Complex64,
    v: &Potential1D,
    x: f64,
) -> Result<(Complex64, Complex64), HalfLineError> {
    let k = sqrt_upper(z);
    let ik = Complex64::new(0.0, 1.0) * k;
    let start = v.support().max(x);
    let e = (ik * start).exp();
    let mut y = [e, ik * e];
    integrate(z, v, &mut y, start, x)?;
    Ok((y[0], y[1]))
}

/// Jost data `(f(0), f'(0))` by shooting.
pub fn jost_by_shooting(
    z: Complex64,
    v: &Potential1D,
) -> Result<(Complex64, Complex64), HalfLineError> {
    shoot_jost(z, v, 0.0)
}
