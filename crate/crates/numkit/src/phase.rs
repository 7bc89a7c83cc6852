//! Continuous argument of a nonvanishing function along a polygonal path.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

const MAX_DEPTH: u32 = 48;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PhaseError {
    #[error("function vanishes (or the path is under-resolved) between {a} and {b}")]
    ZeroCrossing { a: Complex64, b: Complex64 },
    #[error("non-finite function value at {z}")]
    NonFinite { z: Complex64 },
    #[error("a path needs at least one vertex")]
    EmptyPath,
}

/// Samples of `f` along a path with the continuously accumulated argument.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePath {
    /// `(parameter, z, f(z))`; the parameter runs from 0 to `vertices - 1`.
    pub samples: Vec<(f64, Complex64, Complex64)>,
    /// Argument assigned to the first sample.
    pub start_arg: f64,
    /// Accumulated change of argument along the path.
    pub winding: f64,
}

impl PhasePath {
    pub fn final_arg(&self) -> f64 {
        self.start_arg + self.winding
    }

    /// Continuous `log f` at the last sample.
    pub fn final_log(&self) -> Complex64 {
        let last = self.samples.last().expect("nonempty path").2;
        Complex64::new(last.norm().ln(), self.final_arg())
    }
}

fn point(path: &[Complex64], s: f64) -> Complex64 {
    let i = (s.floor() as usize).min(path.len() - 2);
    let frac = s - i as f64;
    path[i] + (path[i + 1] - path[i]) * frac
}

/// Tracks `Im log f` along the polygon through `path`.
///
/// Consecutive samples are bisected until their argument increment is below
/// `pi/2`. The first argument is the principal value unless `anchor` is given.
/// The caller is responsible for vertices dense enough that no full turn
/// hides between two of them.
pub fn track_log<F, E>(path: &[Complex64], mut f: F, anchor: Option<f64>) -> Result<PhasePath, E>
where
    F: FnMut(Complex64) -> Result<Complex64, E>,
    E: From<PhaseError>,
{
    if path.is_empty() {
        return Err(PhaseError::EmptyPath.into());
    }
    let mut eval = |z: Complex64| -> Result<Complex64, E> {
        let v = f(z)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(PhaseError::NonFinite { z }.into());
        }
        Ok(v)
    };
    let z0 = path[0];
    let f0 = eval(z0)?;
    if f0 == Complex64::new(0.0, 0.0) {
        return Err(PhaseError::ZeroCrossing { a: z0, b: z0 }.into());
    }
    let start_arg = anchor.unwrap_or_else(|| f0.arg());
    let mut samples = vec![(0.0, z0, f0)];
    let mut winding = 0.0;
    for seg in 0..path.len().saturating_sub(1) {
        // stack of pending right endpoints, processed left to right
        let (s_end, z_end) = ((seg + 1) as f64, path[seg + 1]);
        let f_end = eval(z_end)?;
        let mut stack = vec![(s_end, z_end, f_end, 0u32)];
        while let Some(&(s_b, z_b, f_b, depth)) = stack.last() {
            let (s_a, z_a, f_a) = *samples.last().unwrap();
            if f_b == Complex64::new(0.0, 0.0) {
                return Err(PhaseError::ZeroCrossing { a: z_a, b: z_b }.into());
            }
            let step = (f_b / f_a).arg();
            if step.abs() < FRAC_PI_2 {
                winding += step;
                samples.push((s_b, z_b, f_b));
                stack.pop();
                continue;
            }
            if depth >= MAX_DEPTH {
                return Err(PhaseError::ZeroCrossing { a: z_a, b: z_b }.into());
            }
            let s_m = 0.5 * (s_a + s_b);
            let z_m = point(path, s_m);
            let f_m = eval(z_m)?;
            stack.push((s_m, z_m, f_m, depth + 1));
        }
    }
    Ok(PhasePath {
        samples,
        start_arg,
        winding,
    })
}

/// Nearest multiple of `2 pi` to `x - reference`, added to `reference`.
pub fn unwrap_near(x: f64, reference: f64) -> f64 {
    let turns = ((reference - x) / (2.0 * PI)).round();
    x + 2.0 * PI * turns
}
