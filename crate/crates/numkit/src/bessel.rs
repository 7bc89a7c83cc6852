//! Bessel functions of the first kind for complex argument and integer order.
//!
//! Small arguments use the power series. Larger ones use Miller's backward
//! recurrence normalized by the generating-function sum
//! `exp(-i w) = J_0 + 2 sum (-i)^k J_k`, or its mirror image in the lower
//! half plane, so the normalization sum never cancels.

use num_complex::Complex64;

/// Largest `|w|` accepted by [`bessel_j`].
pub const MAX_ARGUMENT: f64 = 200.0;
/// Largest order accepted by [`bessel_j`].
pub const MAX_ORDER: u32 = 120;
const SERIES_RADIUS: f64 = 12.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BesselError {
    #[error(
        "J_{m}({w}) is outside the accuracy envelope (|w| <= {MAX_ARGUMENT}, m <= {MAX_ORDER})"
    )]
    OutsideEnvelope { m: u32, w: Complex64 },
}

/// `(J_m(w), J_m'(w))`.
pub fn bessel_j(m: u32, w: Complex64) -> Result<(Complex64, Complex64), BesselError> {
    if !(w.norm() <= MAX_ARGUMENT) || m > MAX_ORDER {
        return Err(BesselError::OutsideEnvelope { m, w });
    }
    if w.norm() <= SERIES_RADIUS {
        let j = series(m, w);
        let jp = if m == 0 {
            -series(1, w)
        } else {
            0.5 * (series(m - 1, w) - series(m + 1, w))
        };
        Ok((j, jp))
    } else {
        let js = miller(m + 1, w);
        let j = js[m as usize];
        let jp = if m == 0 {
            -js[1]
        } else {
            0.5 * (js[m as usize - 1] - js[m as usize + 1])
        };
        Ok((j, jp))
    }
}

/// Power series `sum (-1)^k (w/2)^(2k+m) / (k! (k+m)!)`.
pub(crate) fn series(m: u32, w: Complex64) -> Complex64 {
    let half = 0.5 * w;
    let mut lead = Complex64::new(1.0, 0.0);
    for k in 1..=m {
        lead *= half / k as f64;
    }
    let q = -half * half;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..400 {
        term *= q / (k as f64 * (k + m) as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    lead * sum
}

/// `J_0..=J_top` by backward recurrence.
fn miller(top: u32, w: Complex64) -> Vec<Complex64> {
    let start = top as usize + (1.5 * w.norm()).ceil() as usize + 20;
    let mut vals = vec![Complex64::new(0.0, 0.0); start + 2];
    vals[start] = Complex64::new(1.0, 0.0);
    for k in (1..=start).rev() {
        let next = (2.0 * k as f64 / w) * vals[k] - vals[k + 1];
        vals[k - 1] = next;
        if next.norm() > 1e250 {
            for v in vals[k - 1..=start].iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    // exp(-i w) = J_0 + 2 sum (-i)^k J_k for Im w >= 0, conjugate phases below
    let unit = if w.im >= 0.0 {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    let mut phase = Complex64::new(1.0, 0.0);
    let mut norm = vals[0];
    for v in vals.iter().take(start + 1).skip(1) {
        phase *= unit;
        norm += 2.0 * phase * v;
    }
    let target = (unit * w).exp();
    let size = norm.norm();
    let scale = (target / size) / (norm / size);
    vals.truncate(top as usize + 1);
    for v in vals.iter_mut() {
        *v *= scale;
    }
    vals
}
