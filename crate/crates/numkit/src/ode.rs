//! Dormand-Prince 5(4) integration for small complex systems.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OdeError {
    #[error("tolerance {0} outside [1e-13, 1e-6]")]
    BadTolerance(f64),
    #[error("step size underflow at t = {t} (stiff or singular right-hand side)")]
    Stiffness { t: f64 },
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
    #[error("output node {node} lies outside the integration range")]
    NodeOutOfRange { node: f64 },
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Adaptive stepper. Keeps its step size between calls to [`Dopri5::advance`]
/// so that integrating node to node does not restart the step control.
#[derive(Debug, Clone)]
pub struct Dopri5 {
    tol: f64,
    h: f64,
    pub accepted: usize,
    pub rejected: usize,
    k: Vec<Vec<Complex64>>,
    ytmp: Vec<Complex64>,
    ynew: Vec<Complex64>,
}

impl Dopri5 {
    pub fn new(tol: f64) -> Result<Self, OdeError> {
        if !(1e-13..=1e-6).contains(&tol) {
            return Err(OdeError::BadTolerance(tol));
        }
        Ok(Self {
            tol,
            h: 0.0,
            accepted: 0,
            rejected: 0,
            k: Vec::new(),
            ytmp: Vec::new(),
            ynew: Vec::new(),
        })
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    fn ensure(&mut self, n: usize) {
        if self.ytmp.len() != n {
            self.k = vec![vec![Complex64::new(0.0, 0.0); n]; 7];
            self.ytmp = vec![Complex64::new(0.0, 0.0); n];
            self.ynew = vec![Complex64::new(0.0, 0.0); n];
        }
    }

    /// Integrates `y' = rhs(t, y)` from `t` to `t_end` in place.
    pub fn advance<F>(
        &mut self,
        rhs: &mut F,
        t: f64,
        y: &mut [Complex64],
        t_end: f64,
    ) -> Result<(), OdeError>
    where
        F: FnMut(f64, &[Complex64], &mut [Complex64]),
    {
        let n = y.len();
        self.ensure(n);
        let span = t_end - t;
        if span == 0.0 {
            return Ok(());
        }
        let dir = span.signum();
        if self.h == 0.0 || self.h.signum() != dir {
            self.h = dir * (span.abs() * 0.05).min(0.01 * (1.0 + t.abs()));
        }
        let mut t = t;
        rhs(t, y, &mut self.k[0]);
        loop {
            let remaining = t_end - t;
            if remaining * dir <= 0.0 {
                return Ok(());
            }
            let mut last = false;
            let mut h = self.h;
            if (h - remaining) * dir >= 0.0 {
                h = remaining;
                last = true;
            }
            if h.abs() < 1e-14 * (1.0 + t.abs()) && !last {
                return Err(OdeError::Stiffness { t });
            }
            let err = self.trial(rhs, t, y, h);
            if !err.is_finite() {
                if h.abs() < 1e-14 * (1.0 + t.abs()) {
                    return Err(OdeError::NonFinite { t });
                }
                self.h = 0.1 * h;
                self.rejected += 1;
                continue;
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                t = if last { t_end } else { t + h };
                y.copy_from_slice(&self.ynew);
                // first-same-as-last: stage 7 is the derivative at the new point
                let (head, tail) = self.k.split_at_mut(6);
                head[0].copy_from_slice(&tail[0]);
                self.accepted += 1;
                if !last || factor < 1.0 {
                    self.h = h * factor;
                }
            } else {
                self.rejected += 1;
                self.h = h * factor.min(1.0);
                if self.h.abs() < 1e-14 * (1.0 + t.abs()) {
                    return Err(OdeError::Stiffness { t });
                }
            }
        }
    }

    /// Takes one trial step, leaving the proposal in `ynew` and returning the
    /// scaled error norm.
    fn trial<F>(&mut self, rhs: &mut F, t: f64, y: &[Complex64], h: f64) -> f64
    where
        F: FnMut(f64, &[Complex64], &mut [Complex64]),
    {
        let n = y.len();
        let stages: [(f64, &[f64]); 5] = [
            (C2, &[A21]),
            (C3, &[A31, A32]),
            (C4, &[A41, A42, A43]),
            (C5, &[A51, A52, A53, A54]),
            (1.0, &[A61, A62, A63, A64, A65]),
        ];
        for (s, (c, a)) in stages.iter().enumerate() {
            for i in 0..n {
                let mut acc = y[i];
                for (j, aj) in a.iter().enumerate() {
                    acc += h * aj * self.k[j][i];
                }
                self.ytmp[i] = acc;
            }
            rhs(t + c * h, &self.ytmp, &mut self.k[s + 1]);
        }
        for i in 0..n {
            self.ynew[i] = y[i]
                + h * (B1 * self.k[0][i]
                    + B3 * self.k[2][i]
                    + B4 * self.k[3][i]
                    + B5 * self.k[4][i]
                    + B6 * self.k[5][i]);
        }
        rhs(t + h, &self.ynew, &mut self.k[6]);
        let ymax = y
            .iter()
            .chain(self.ynew.iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        let mut sum = 0.0;
        for i in 0..n {
            let e = h
                * (E1 * self.k[0][i]
                    + E3 * self.k[2][i]
                    + E4 * self.k[3][i]
                    + E5 * self.k[4][i]
                    + E6 * self.k[5][i]
                    + E7 * self.k[6][i]);
            let sc = self.tol
                * y[i]
                    .norm()
                    .max(self.ynew[i].norm())
                    .max(1e-3 * ymax)
                    .max(1e-300);
            let r = e.norm() / sc;
            sum += r * r;
        }
        (sum / n as f64).sqrt()
    }
}

/// Integrates from `t0` to `t1` and samples the state at every entry of
/// `nodes` (which must be ordered in the direction of integration and lie in
/// the range). The final state at `t1` is appended.
pub fn ode_integrate<F>(
    mut rhs: F,
    y0: &[Complex64],
    t0: f64,
    t1: f64,
    tol: f64,
    nodes: &[f64],
) -> Result<Vec<(f64, Vec<Complex64>)>, OdeError>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let mut stepper = Dopri5::new(tol)?;
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let mut y = y0.to_vec();
    let mut t = t0;
    let mut out = Vec::with_capacity(nodes.len() + 1);
    for &node in nodes.iter().chain(std::iter::once(&t1)) {
        if node < lo || node > hi || (node - t) * (t1 - t0) < 0.0 {
            return Err(OdeError::NodeOutOfRange { node });
        }
        stepper.advance(&mut rhs, t, &mut y, node)?;
        t = node;
        out.push((t, y.clone()));
    }
    Ok(out)
}
