//! Nystrom discretization of the Birman-Schwinger kernels and the
//! resolvent-based boundary quantities.

use crate::shoot::{shoot_jost, shoot_regular};
use crate::volterra::DEFAULT_GRID;
use crate::{HalfLineError, Potential1D};
use detcalc::CMatrix;
use num_complex::Complex64;
use numkit::{composite_gauss_legendre, gauss_legendre, sqrt_upper, QuadGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Boundary {
    Dirichlet,
    Neumann,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Free half-line Green kernel of `-d^2/dx^2 - z` with the given boundary
/// condition at 0:
/// Dirichlet `sin(k x<) e^{i k x>} / k`, Neumann `i cos(k x<) e^{i k x>} / k`.
pub fn free_green(z: Complex64, bc: Boundary, x: f64, y: f64) -> Complex64 {
    let k = sqrt_upper(z);
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let out = (I * k * hi).exp();
    match bc {
        Boundary::Dirichlet => (k * lo).sin() / k * out,
        Boundary::Neumann => I * (k * lo).cos() / k * out,
    }
}

fn off_cut(z: Complex64) -> Result<(), HalfLineError> {
    if z.im == 0.0 && z.re >= 0.0 {
        Err(HalfLineError::OnCut { z })
    } else {
        Ok(())
    }
}

/// Quadrature nodes with the factors `u(x_i) sqrt(w_i)` and `sqrt(w_i) v(x_i)`.
struct Sampled {
    grid: QuadGrid,
    left: Vec<Complex64>,
    right: Vec<f64>,
}

fn sample(v: &Potential1D, n: usize) -> Result<Sampled, HalfLineError> {
    sample_on(v, gauss_legendre(n, 0.0, v.support())?)
}

fn sample_on(v: &Potential1D, grid: QuadGrid) -> Result<Sampled, HalfLineError> {
    let n = grid.len();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for (&x, &w) in grid.nodes.iter().zip(&grid.weights) {
        let (u, vv) = v.factors(x);
        left.push(u * w.sqrt());
        right.push(vv * w.sqrt());
    }
    Ok(Sampled { grid, left, right })
}

fn green_matrix(z: Complex64, bc: Boundary, nodes: &[f64]) -> CMatrix {
    CMatrix::from_fn(nodes.len(), nodes.len(), |i, j| {
        free_green(z, bc, nodes[i], nodes[j])
    })
}

/// `M_ij = u(x_i) sqrt(w_i) G_0(x_i, x_j) sqrt(w_j) v(x_j)` on an `n`-point
/// Gauss-Legendre grid over the support.
pub fn bs_matrix(
    z: Complex64,
    v: &Potential1D,
    bc: Boundary,
    n: usize,
) -> Result<CMatrix, HalfLineError> {
    off_cut(z)?;
    let s = sample(v, n)?;
    let g = green_matrix(z, bc, &s.grid.nodes);
    let m = CMatrix::from_fn(n, n, |i, j| s.left[i] * g[(i, j)] * s.right[j]);
    Ok(m)
}

fn det_single(
    z: Complex64,
    v: &Potential1D,
    bc: Boundary,
    n: usize,
) -> Result<Complex64, HalfLineError> {
    Ok(bs_matrix(z, v, bc, n)?.plus_identity()?.det()?)
}

/// `det(I + M)` on `n` and `2n` points, Richardson-extrapolated.
pub fn det_halfline_with_grid(
    z: Complex64,
    v: &Potential1D,
    bc: Boundary,
    n: usize,
) -> Result<Complex64, HalfLineError> {
    let coarse = det_single(z, v, bc, n)?;
    let fine = det_single(z, v, bc, 2 * n)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

pub fn det_halfline(
    z: Complex64,
    v: &Potential1D,
    bc: Boundary,
) -> Result<Complex64, HalfLineError> {
    det_halfline_with_grid(z, v, bc, DEFAULT_GRID)
}

/// Perturbed Dirichlet resolvent kernel `phi(x<) f(x>) / f(0)` from accurate
/// shooting.
pub fn perturbed_green(
    z: Complex64,
    v: &Potential1D,
    x: f64,
    y: f64,
) -> Result<Complex64, HalfLineError> {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    if lo < 0.0 {
        return Err(HalfLineError::OutOfDomain { x: lo });
    }
    let (f0, _) = shoot_jost(z, v, 0.0)?;
    if f0 == Complex64::new(0.0, 0.0) {
        return Err(HalfLineError::EigenvalueHit {
            operator: "perturbed Dirichlet",
            z,
        });
    }
    let (phi, _) = shoot_regular(z, v, lo)?;
    let (f, _) = shoot_jost(z, v, hi)?;
    Ok(phi * f / f0)
}

/// The same kernel assembled from the free kernel and the Nystrom matrix:
/// `G = G_0 - G_0 v (I + u G_0 v)^{-1} u G_0`. The grid is split at `x` and
/// `y` so the kinks of the outer kernels fall on panel ends; `n` is the total
/// node budget.
pub fn nystrom_perturbed_green(
    z: Complex64,
    v: &Potential1D,
    n: usize,
    x: f64,
    y: f64,
) -> Result<Complex64, HalfLineError> {
    off_cut(z)?;
    let end = v.support();
    let mut breaks = vec![0.0, end];
    for p in [x, y] {
        if p > 0.0 && p < end {
            breaks.push(p);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let per_panel = (n / (breaks.len() - 1)).max(1);
    let s = sample_on(v, composite_gauss_legendre(&breaks, per_panel)?)?;
    let n = s.grid.len();
    let m = CMatrix::from_fn(n, n, |i, j| {
        s.left[i]
            * free_green(z, Boundary::Dirichlet, s.grid.nodes[i], s.grid.nodes[j])
            * s.right[j]
    });
    let lu = m.plus_identity()?.lu()?;
    let rhs: Vec<Complex64> = (0..n)
        .map(|j| s.left[j] * free_green(z, Boundary::Dirichlet, s.grid.nodes[j], y))
        .collect();
    let sol = lu.solve_vec(&rhs).ok_or(HalfLineError::EigenvalueHit {
        operator: "perturbed Dirichlet",
        z,
    })?;
    let corr: Complex64 = (0..n)
        .map(|i| free_green(z, Boundary::Dirichlet, x, s.grid.nodes[i]) * s.right[i] * sol[i])
        .sum();
    Ok(free_green(z, Boundary::Dirichlet, x, y) - corr)
}

fn boundary_scalar_single(
    z: Complex64,
    v: &Potential1D,
    n: usize,
) -> Result<Complex64, HalfLineError> {
    let k = sqrt_upper(z);
    let s = sample(v, n)?;
    let nodes = &s.grid.nodes;
    let g0 = green_matrix(z, Boundary::Dirichlet, nodes);
    let m = CMatrix::from_fn(n, n, |i, j| s.left[i] * g0[(i, j)] * s.right[j]);
    // d/dx G_0^D(0, x') = exp(i k x')
    let a: Vec<Complex64> = nodes.iter().map(|&x| (I * k * x).exp()).collect();
    // row vector (a sqrt(w) v)^T (I + M)^{-1}, via the transposed system
    let lu_t = m.plus_identity()?.transpose().lu()?;
    let rhs: Vec<Complex64> = (0..n).map(|i| a[i] * s.right[i]).collect();
    let y = lu_t.solve_vec(&rhs).ok_or(HalfLineError::EigenvalueHit {
        operator: "perturbed Dirichlet",
        z,
    })?;
    let mut total = Complex64::new(0.0, 0.0);
    for l in 0..n {
        let corr: Complex64 = (0..n).map(|j| y[j] * s.left[j] * g0[(j, l)]).sum();
        let dg = a[l] - corr;
        let xl = nodes[l];
        let g = I / k * (I * k * xl).exp();
        total += s.grid.weights[l] * dg * v.value(xl) * g;
    }
    // gamma_N h = -h'(0) and the outer minus sign of the definition cancel
    Ok(Complex64::new(1.0, 0.0) + total)
}

/// `1 - S(z)` where `S` is the boundary scalar built from the perturbed
/// Dirichlet resolvent and the Neumann free kernel at the boundary point.
/// Richardson-extrapolated over `n` and `2n`.
pub fn boundary_scalar_with_grid(
    z: Complex64,
    v: &Potential1D,
    n: usize,
) -> Result<Complex64, HalfLineError> {
    off_cut(z)?;
    let coarse = boundary_scalar_single(z, v, n)?;
    let fine = boundary_scalar_single(z, v, 2 * n)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

pub fn boundary_scalar(z: Complex64, v: &Potential1D) -> Result<Complex64, HalfLineError> {
    boundary_scalar_with_grid(z, v, DEFAULT_GRID)
}
