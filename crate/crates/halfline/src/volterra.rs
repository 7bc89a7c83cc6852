//! Volterra integral equations for the regular, cosine-type and Jost
//! solutions, discretized by trapezoid product integration.

use crate::{HalfLineError, Potential1D};
use num_complex::Complex64;
use numkit::sqrt_upper;

/// Smallest accepted number of grid intervals.
pub const MIN_GRID: usize = 50;
/// Default grid for Richardson-extrapolated quantities (`n` and `2n`).
pub const DEFAULT_GRID: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    /// `phi(0) = 0`, `phi'(0) = 1`.
    RegularDirichlet,
    /// `theta(0) = 1`, `theta'(0) = 0`.
    Theta,
    /// `f(x) = exp(i sqrt(z) x)` beyond the support.
    Jost,
}

/// Values and derivatives of one solution on the uniform grid `x_i = i h`.
#[derive(Debug, Clone)]
pub struct SolutionTable {
    pub kind: SolutionKind,
    pub z: Complex64,
    pub nodes: Vec<f64>,
    pub values: Vec<Complex64>,
    pub derivs: Vec<Complex64>,
}

impl SolutionTable {
    /// `W(f, g)(x_i) = f g' - f' g` at every node.
    pub fn wronskian(&self, other: &SolutionTable) -> Vec<Complex64> {
        self.values
            .iter()
            .zip(&self.derivs)
            .zip(other.values.iter().zip(&other.derivs))
            .map(|((f, fp), (g, gp))| f * gp - fp * g)
            .collect()
    }
}

/// `f_+(z, 0)` and `f_+'(z, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostData {
    pub z: Complex64,
    pub f0: Complex64,
    pub f0p: Complex64,
}

fn check_grid(n: usize) -> Result<(), HalfLineError> {
    if n < MIN_GRID {
        Err(HalfLineError::GridTooSmall(n))
    } else {
        Ok(())
    }
}

fn grid(v: &Potential1D, n: usize) -> (f64, Vec<f64>, Vec<Complex64>) {
    let h = v.support() / n as f64;
    let nodes: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
    let vals = nodes.iter().map(|&x| v.value(x)).collect();
    (h, nodes, vals)
}

fn finite(table: SolutionTable) -> Result<SolutionTable, HalfLineError> {
    if table
        .values
        .iter()
        .chain(&table.derivs)
        .all(|c| c.re.is_finite() && c.im.is_finite())
    {
        Ok(table)
    } else {
        Err(HalfLineError::NonConvergent { z: table.z })
    }
}

/// Forward equation `y(x) = y0(x) + int_0^x s(x - t) V(t) y(t) dt` with
/// `s(x) = sin(k x) / k`.
fn forward(
    z: Complex64,
    v: &Potential1D,
    n: usize,
    kind: SolutionKind,
    free: impl Fn(f64) -> (Complex64, Complex64),
) -> Result<SolutionTable, HalfLineError> {
    check_grid(n)?;
    let k = sqrt_upper(z);
    let (h, nodes, pot) = grid(v, n);
    let s = |x: f64| {
        if k == Complex64::new(0.0, 0.0) {
            Complex64::new(x, 0.0)
        } else {
            (k * x).sin() / k
        }
    };
    let c = |x: f64| (k * x).cos();
    let mut values = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut derivs = vec![Complex64::new(0.0, 0.0); n + 1];
    // kernel tables s(i h), c(i h)
    let st: Vec<Complex64> = nodes.iter().map(|&x| s(x)).collect();
    let ct: Vec<Complex64> = nodes.iter().map(|&x| c(x)).collect();
    let mut vy = vec![Complex64::new(0.0, 0.0); n + 1];
    for i in 0..=n {
        let (y0, y0p) = free(nodes[i]);
        // trapezoid weights: 1/2 at both ends; the j = i term of the value
        // equation vanishes because s(0) = 0
        let mut acc = Complex64::new(0.0, 0.0);
        let mut accp = Complex64::new(0.0, 0.0);
        for j in 0..i {
            let w = if j == 0 { 0.5 } else { 1.0 };
            acc += w * st[i - j] * vy[j];
            accp += w * ct[i - j] * vy[j];
        }
        let y = y0 + h * acc;
        vy[i] = pot[i] * y;
        let yp = y0p
            + h * (accp
                + if i > 0 {
                    0.5 * vy[i]
                } else {
                    Complex64::new(0.0, 0.0)
                });
        values[i] = y;
        derivs[i] = yp;
    }
    finite(SolutionTable {
        kind,
        z,
        nodes,
        values,
        derivs,
    })
}

/// Regular solution `phi(z, x)` with `phi(0) = 0`, `phi'(0) = 1`.
pub fn solve_phi_d(
    z: Complex64,
    v: &Potential1D,
    n: usize,
) -> Result<SolutionTable, HalfLineError> {
    let k = sqrt_upper(z);
    forward(z, v, n, SolutionKind::RegularDirichlet, |x| {
        if k == Complex64::new(0.0, 0.0) {
            (Complex64::new(x, 0.0), Complex64::new(1.0, 0.0))
        } else {
            ((k * x).sin() / k, (k * x).cos())
        }
    })
}

/// Solution `theta(z, x)` with `theta(0) = 1`, `theta'(0) = 0`.
pub fn solve_theta(
    z: Complex64,
    v: &Potential1D,
    n: usize,
) -> Result<SolutionTable, HalfLineError> {
    let k = sqrt_upper(z);
    forward(z, v, n, SolutionKind::Theta, |x| {
        ((k * x).cos(), -k * (k * x).sin())
    })
}

/// Jost solution from the backward equation
/// `f(x) = e^{ikx} + int_x^X sin(k(t - x))/k V(t) f(t) dt`.
pub fn solve_jost(z: Complex64, v: &Potential1D, n: usize) -> Result<SolutionTable, HalfLineError> {
    check_grid(n)?;
    let k = sqrt_upper(z);
    let ik = Complex64::new(0.0, 1.0) * k;
    let (h, nodes, pot) = grid(v, n);
    let st: Vec<Complex64> = nodes
        .iter()
        .map(|&x| {
            if k == Complex64::new(0.0, 0.0) {
                Complex64::new(x, 0.0)
            } else {
                (k * x).sin() / k
            }
        })
        .collect();
    let ct: Vec<Complex64> = nodes.iter().map(|&x| (k * x).cos()).collect();
    let mut values = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut derivs = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut vy = vec![Complex64::new(0.0, 0.0); n + 1];
    for i in (0..=n).rev() {
        let e = (ik * nodes[i]).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut accp = Complex64::new(0.0, 0.0);
        for j in i + 1..=n {
            let w = if j == n { 0.5 } else { 1.0 };
            acc += w * st[j - i] * vy[j];
            accp += w * ct[j - i] * vy[j];
        }
        let y = e + h * acc;
        vy[i] = pot[i] * y;
        let yp = ik * e
            - h * (accp
                + if i < n {
                    0.5 * vy[i]
                } else {
                    Complex64::new(0.0, 0.0)
                });
        values[i] = y;
        derivs[i] = yp;
    }
    finite(SolutionTable {
        kind: SolutionKind::Jost,
        z,
        nodes,
        values,
        derivs,
    })
}

/// `(f_+(z, 0), f_+'(z, 0))` on grids `n` and `2n`, Richardson-extrapolated.
pub fn jost_function_with_grid(
    z: Complex64,
    v: &Potential1D,
    n: usize,
) -> Result<JostData, HalfLineError> {
    let coarse = solve_jost(z, v, n)?;
    let fine = solve_jost(z, v, 2 * n)?;
    let f0 = (4.0 * fine.values[0] - coarse.values[0]) / 3.0;
    let f0p = (4.0 * fine.derivs[0] - coarse.derivs[0]) / 3.0;
    Ok(JostData { z, f0, f0p })
}

/// Jost function with the default grid.
pub fn jost_function(z: Complex64, v: &Potential1D) -> Result<JostData, HalfLineError> {
    jost_function_with_grid(z, v, DEFAULT_GRID)
}

/// The four m-functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MFunctions {
    pub m0_d: Complex64,
    pub m_d: Complex64,
    pub m0_n: Complex64,
    pub m_n: Complex64,
}

/// `m_0^D = i sqrt(z)`, `m^D = f'/f`, `m_0^N = i / sqrt(z)`, `m^N = -f/f'`.
pub fn m_functions_from(jost: &JostData) -> Result<MFunctions, HalfLineError> {
    let z = jost.z;
    let k = sqrt_upper(z);
    if k == Complex64::new(0.0, 0.0) {
        return Err(HalfLineError::EigenvalueHit {
            operator: "free Neumann",
            z,
        });
    }
    let i = Complex64::new(0.0, 1.0);
    let scale = jost.f0.norm() + jost.f0p.norm() / k.norm();
    if jost.f0.norm() <= 1e-13 * scale {
        return Err(HalfLineError::EigenvalueHit {
            operator: "perturbed Dirichlet",
            z,
        });
    }
    if jost.f0p.norm() <= 1e-13 * scale * k.norm() {
        return Err(HalfLineError::EigenvalueHit {
            operator: "perturbed Neumann",
            z,
        });
    }
    Ok(MFunctions {
        m0_d: i * k,
        m_d: jost.f0p / jost.f0,
        m0_n: i / k,
        m_n: -jost.f0 / jost.f0p,
    })
}

pub fn m_functions(z: Complex64, v: &Potential1D) -> Result<MFunctions, HalfLineError> {
    m_functions_from(&jost_function(z, v)?)
}
