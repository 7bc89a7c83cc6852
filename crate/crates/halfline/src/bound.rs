//! Negative eigenvalues of the Dirichlet half-line operator.

use crate::nystrom::{det_halfline, Boundary};
use crate::shoot::jost_by_shooting;
use crate::{HalfLineError, Potential1D};
use num_complex::Complex64;

/// Number of scan cells used to bracket sign changes.
pub const SCAN_POINTS: usize = 400;

/// A located eigenvalue with the Birman-Schwinger determinant at that point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub energy: f64,
    pub bs_determinant: Complex64,
}

fn jost_real(v: &Potential1D, lambda: f64) -> Result<f64, HalfLineError> {
    let (f0, _) = jost_by_shooting(Complex64::new(lambda, 0.0), v)?;
    Ok(f0.re)
}

/// Zeros of `lambda -> f_+(lambda, 0)` in `[lo, hi]`, located by sign-change
/// bracketing and bisection, each checked against the Nystrom determinant.
pub fn bound_states(v: &Potential1D, lo: f64, hi: f64) -> Result<Vec<BoundState>, HalfLineError> {
    if !v.is_real() {
        return Err(HalfLineError::ComplexPotential);
    }
    if !(lo < hi && hi < 0.0) {
        return Err(HalfLineError::BadInterval { lo, hi });
    }
    let xs: Vec<f64> = (0..=SCAN_POINTS)
        .map(|i| lo + (hi - lo) * i as f64 / SCAN_POINTS as f64)
        .collect();
    let fs = xs
        .iter()
        .map(|&x| jost_real(v, x))
        .collect::<Result<Vec<_>, _>>()?;
    let scale = fs.iter().fold(0.0f64, |m, f| m.max(f.abs()));
    for (x, f) in [(lo, fs[0]), (hi, fs[SCAN_POINTS])] {
        if f.abs() <= 1e-10 * scale {
            return Err(HalfLineError::RootAtEndpoint { lambda: x });
        }
    }
    let mut found = Vec::new();
    for i in 0..SCAN_POINTS {
        if fs[i] == 0.0 {
            found.push(xs[i]);
            continue;
        }
        // an exact zero at the right end is picked up by the next cell
        if fs[i + 1] == 0.0 || fs[i].signum() == fs[i + 1].signum() {
            continue;
        }
        let (mut a, mut b) = (xs[i], xs[i + 1]);
        let mut fa = fs[i];
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid == a || mid == b || b - a <= 1e-13 * (1.0 + mid.abs()) {
                break;
            }
            let fm = jost_real(v, mid)?;
            if fm == 0.0 {
                a = mid;
                b = mid;
                break;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        found.push(0.5 * (a + b));
    }
    found
        .into_iter()
        .map(|e| {
            let d = det_halfline(Complex64::new(e, 0.0), v, Boundary::Dirichlet)?;
            Ok(BoundState {
                energy: e,
                bs_determinant: d,
            })
        })
        .collect()
}
