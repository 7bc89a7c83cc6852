//! Mode-wise evaluation of the determinant identities on the disk.
//!
//! For mode `m` with `K = u (H_0 - z)^{-1} v` restricted to the mode:
//!
//! * `det_2(I + K_N) / det_2(I + K_D) = d e^{1 - d} e^{t}` where
//!   `d = mu / mu0` is the Dirichlet-to-Neumann ratio and
//!   `t = R <a V, G^V V b>` is the mode value of the trace correction,
//! * `d = 1 - S` with `S` the boundary scalar built from the perturbed
//!   Dirichlet resolvent,
//! * `det_2(I + K_D) / det_2(I + K_N) = (1/d) e^{1 - 1/d} e^{t'}` with the
//!   Neumann perturbed resolvent in `t'`.
//!
//! Full-disk quantities multiply (or add) the mode values with
//! multiplicity 2 for `m >= 1`.

use crate::modes::{bs_mode_matrix_parts, log_det2};
use crate::{
    dtn_ratio, mode_green_derivative, mult, Boundary, DiskError, ModeOperator, RadialGrid,
    RadialPotential,
};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// All mode values entering the identities at one `(m, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeIdentities {
    pub m: u32,
    /// `log det_2(I + K_N) - log det_2(I + K_D)` (imaginary part not reduced).
    pub log_ratio: Complex64,
    /// `mu_m / mu0_m`.
    pub d: Complex64,
    /// `R sum a W V b`, the first-order part of the boundary scalar.
    pub born: Complex64,
    /// Boundary scalar `S` from the perturbed Dirichlet resolvent.
    pub boundary_scalar: Complex64,
    /// Trace term with the perturbed Dirichlet resolvent.
    pub t: Complex64,
    /// Trace term with the perturbed Neumann resolvent.
    pub t_neumann: Complex64,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl ModeIdentities {
    pub fn lhs_factor(&self) -> Complex64 {
        self.log_ratio.exp()
    }

    /// `log(d e^{1-d})`.
    pub fn log_dtn_factor(&self) -> Complex64 {
        self.d.ln() + one() - self.d
    }

    pub fn rhs_factor(&self) -> Complex64 {
        (self.log_dtn_factor() + self.t).exp()
    }

    pub fn factor_residual(&self) -> f64 {
        (one() - (self.log_dtn_factor() + self.t - self.log_ratio).exp()).norm()
    }

    /// `|d - 1 + S|`.
    pub fn identity_residual(&self) -> f64 {
        (self.d - one() + self.boundary_scalar).norm()
    }

    /// `log((1/d) e^{1 - 1/d})`.
    pub fn log_ntd_factor(&self) -> Complex64 {
        let inv = one() / self.d;
        inv.ln() + one() - inv
    }

    pub fn neumann_residual(&self) -> f64 {
        (one() - (self.log_ntd_factor() + self.t_neumann + self.log_ratio).exp()).norm()
    }
}

/// Computes [`ModeIdentities`] for mode `m`.
pub fn mode_identities(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    grid: &RadialGrid,
) -> Result<ModeIdentities, DiskError> {
    let op = ModeOperator::new(m, z, v, grid)?;
    let d = dtn_ratio(m, z, v)?;
    let radius = op.radius;
    let n = op.len();
    let alpha: Vec<Complex64> = (0..n).map(|i| op.a[i] * op.area_v[i]).collect();
    let beta: Vec<Complex64> = (0..n).map(|i| op.area_v[i] * op.b[i]).collect();
    let born = radius
        * op.a
            .iter()
            .zip(&beta)
            .map(|(x, y)| x * y)
            .sum::<Complex64>();
    // d/dr G^V(R, .) = a - (a W V)^T G^V
    let row = op.perturbed_row(Boundary::Dirichlet, &alpha)?;
    let boundary_scalar = radius
        * (0..n)
            .map(|i| (op.a[i] - row[i]) * beta[i])
            .sum::<Complex64>();
    let t = radius * op.perturbed_form(Boundary::Dirichlet, &alpha, &beta)?;
    let t_neumann = -radius * op.perturbed_form(Boundary::Neumann, &alpha, &beta)?;
    let log_ratio = op.log_det2(Boundary::Neumann)? - op.log_det2(Boundary::Dirichlet)?;
    Ok(ModeIdentities {
        m,
        log_ratio,
        d,
        born,
        boundary_scalar,
        t,
        t_neumann,
    })
}

fn all_modes(
    z: Complex64,
    v: &RadialPotential,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<Vec<ModeIdentities>, DiskError> {
    (0..=m_max)
        .into_par_iter()
        .map(|m| mode_identities(m, z, v, grid))
        .collect()
}

fn weighted_sum<F: Fn(&ModeIdentities) -> Complex64>(modes: &[ModeIdentities], f: F) -> Complex64 {
    modes.iter().map(|x| mult(x.m) as f64 * f(x)).sum()
}

/// Left side of the disk identity, truncated to modes `0..=m_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhsRatio {
    pub value: Complex64,
    pub log_value: Complex64,
    /// `|factor(m_max) - 1|` of the last included mode.
    pub last_factor_deviation: f64,
}

/// `prod_m [det_2(I + K_N^(m)) / det_2(I + K_D^(m))]^mult(m)`.
pub fn lhs_ratio_det(
    z: Complex64,
    v: &RadialPotential,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<LhsRatio, DiskError> {
    let logs: Vec<(u32, Complex64)> = (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let kd = bs_mode_matrix_parts(m, z, v, Boundary::Dirichlet, grid)?;
            let kn = bs_mode_matrix_parts(m, z, v, Boundary::Neumann, grid)?;
            let ld = log_det2(&kd.1, &kd.0).ok_or(DiskError::SingularMode { m, z })?;
            let ln = log_det2(&kn.1, &kn.0).ok_or(DiskError::SingularMode { m, z })?;
            Ok((m, ln - ld))
        })
        .collect::<Result<_, DiskError>>()?;
    let log_value: Complex64 = logs.iter().map(|(m, l)| mult(*m) as f64 * l).sum();
    let last = logs.last().expect("at least mode 0").1;
    Ok(LhsRatio {
        value: log_value.exp(),
        log_value,
        last_factor_deviation: (last.exp() - one()).norm(),
    })
}

/// Right side without the trace correction, truncated to `0..=m_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsDtn {
    pub value: Complex64,
    pub log_value: Complex64,
    pub d: Vec<Complex64>,
    /// `|d_{m_max} - 1|`.
    pub truncation: f64,
}

/// `det_2(M^D M_0^D^{-1}) = prod_m [d_m e^{1 - d_m}]^mult(m)`.
pub fn rhs_dtn_det(z: Complex64, v: &RadialPotential, m_max: u32) -> Result<RhsDtn, DiskError> {
    let d: Vec<Complex64> = (0..=m_max)
        .into_par_iter()
        .map(|m| dtn_ratio(m, z, v))
        .collect::<Result<_, _>>()?;
    let log_value: Complex64 = d
        .iter()
        .enumerate()
        .map(|(m, &dm)| mult(m as u32) as f64 * (dm.ln() + one() - dm))
        .sum();
    let truncation = (d[m_max as usize] - one()).norm();
    Ok(RhsDtn {
        value: log_value.exp(),
        log_value,
        d,
        truncation,
    })
}

/// Normalization of the Fourier basis on the boundary circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryBasis {
    /// `e^{i m theta} / sqrt(2 pi R)`, orthonormal in `L^2(dsigma)`.
    Orthonormal,
    /// `e^{i m theta}`.
    Plain,
}

/// Mode value of the trace correction computed as
/// `<e_m, T e_m> / <e_m, e_m>` in the given boundary basis.
pub fn t2_mode(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    grid: &RadialGrid,
    basis: BoundaryBasis,
) -> Result<Complex64, DiskError> {
    let op = ModeOperator::new(m, z, v, grid)?;
    let radius = op.radius;
    let c = match basis {
        BoundaryBasis::Orthonormal => 1.0 / (2.0 * PI * radius).sqrt(),
        BoundaryBasis::Plain => 1.0,
    };
    let n = op.len();
    // lift of c e^{i m theta} into the interior, times V
    let lifted: Vec<Complex64> = (0..n)
        .map(|i| op.area_v[i] * c * radius * op.b[i])
        .collect();
    let alpha: Vec<Complex64> = (0..n).map(|i| op.a[i] * op.area_v[i]).collect();
    let coefficient = op.perturbed_form(Boundary::Dirichlet, &alpha, &lifted)?;
    let circle = 2.0 * PI * radius;
    Ok(c * coefficient * circle / (c * c * circle))
}

/// `sum_m mult(m) t_m` over `0..=m_max`.
pub fn t2_trace(
    z: Complex64,
    v: &RadialPotential,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<Complex64, DiskError> {
    Ok(weighted_sum(&all_modes(z, v, m_max, grid)?, |x| x.t))
}

/// Both sides of the disk identity and its trace correction.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport {
    pub lhs: Complex64,
    pub rhs_dtn: Complex64,
    pub t2: Complex64,
    pub residual: f64,
    /// `|d_{m_max} - 1|`.
    pub truncation: f64,
    pub modes: Vec<ModeIdentities>,
}

/// `|lhs - rhs_dtn e^{t2}| / |lhs|` with the mode breakdown.
pub fn disk_reduction(
    z: Complex64,
    v: &RadialPotential,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<ReductionReport, DiskError> {
    let modes = all_modes(z, v, m_max, grid)?;
    let log_lhs = weighted_sum(&modes, |x| x.log_ratio);
    let log_rhs = weighted_sum(&modes, |x| x.log_dtn_factor());
    let t2 = weighted_sum(&modes, |x| x.t);
    let residual = (one() - (log_rhs + t2 - log_lhs).exp()).norm();
    let truncation = (modes.last().expect("mode 0").d - one()).norm();
    Ok(ReductionReport {
        lhs: log_lhs.exp(),
        rhs_dtn: log_rhs.exp(),
        t2,
        residual,
        truncation,
        modes,
    })
}

pub fn theorem42_residual(
    z: Complex64,
    v: &RadialPotential,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<f64, DiskError> {
    Ok(disk_reduction(z, v, m_max, grid)?.residual)
}

/// Neumann variant: `det_2(I + K_D) / det_2(I + K_N)` against
/// `det_2(M_0^N^{-1} M^N) e^{t'}`.
pub fn neumann_variant(
    z: Complex64,
    v: &RadialPotential,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<ReductionReport, DiskError> {
    let modes = all_modes(z, v, m_max, grid)?;
    let log_lhs = -weighted_sum(&modes, |x| x.log_ratio);
    let log_rhs = weighted_sum(&modes, |x| x.log_ntd_factor());
    let t2 = weighted_sum(&modes, |x| x.t_neumann);
    let residual = (one() - (log_rhs + t2 - log_lhs).exp()).norm();
    let truncation = (one() / modes.last().expect("mode 0").d - one()).norm();
    Ok(ReductionReport {
        lhs: log_lhs.exp(),
        rhs_dtn: log_rhs.exp(),
        t2,
        residual,
        truncation,
        modes,
    })
}

pub fn neumann_variant_residual(
    z: Complex64,
    v: &RadialPotential,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<f64, DiskError> {
    Ok(neumann_variant(z, v, m_max, grid)?.residual)
}

/// `|d_m - 1 + S_m|` for one mode.
pub fn lemma35_mode_residual(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    grid: &RadialGrid,
) -> Result<f64, DiskError> {
    Ok(mode_identities(m, z, v, grid)?.identity_residual())
}

/// Centered difference of `log det_2(I + K)` against the trace formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DlnCheck {
    /// `-d/dz log det_2` by centered differences.
    pub finite_difference: Complex64,
    /// `tr(K' (I + K)^{-1} K)`, the discrete form of
    /// `tr[(H - z)^{-1} - (H_0 - z)^{-1} + (H_0 - z)^{-1} V (H_0 - z)^{-1}]`.
    pub trace: Complex64,
    pub residual: f64,
}

fn mode_trace_formula(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    bc: Boundary,
    grid: &RadialGrid,
) -> Result<Complex64, DiskError> {
    let (g, gz) = mode_green_derivative(m, z, bc, grid)?;
    let (k, lu) = crate::modes::sandwich_parts(v, grid, &g)?;
    let (kz, _) = crate::modes::sandwich_parts(v, grid, &gz)?;
    let x = lu.solve(&k).ok_or(DiskError::SingularMode { m, z })?;
    Ok(kz.trace_of_product(&x)?)
}

fn mode_log_det2(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    bc: Boundary,
    grid: &RadialGrid,
) -> Result<Complex64, DiskError> {
    let (k, lu) = bs_mode_matrix_parts(m, z, v, bc, grid)?;
    log_det2(&lu, &k).ok_or(DiskError::SingularMode { m, z })
}

/// Compares `-d/dz log det_2(I + K(z))` by centered differences with step
/// `h` against the trace formula, summed over modes `0..=m_max`.
pub fn dln_det_check(
    z: Complex64,
    v: &RadialPotential,
    bc: Boundary,
    m_max: u32,
    grid: &RadialGrid,
    h: f64,
) -> Result<DlnCheck, DiskError> {
    let parts: Vec<(Complex64, Complex64)> = (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let up = mode_log_det2(m, z + h, v, bc, grid)?;
            let down = mode_log_det2(m, z - h, v, bc, grid)?;
            // the ratio is close to 1, so its principal log is the right branch
            let fd = -(up - down).exp().ln() / (2.0 * h);
            let tr = mode_trace_formula(m, z, v, bc, grid)?;
            Ok((mult(m) as f64 * fd, mult(m) as f64 * tr))
        })
        .collect::<Result<_, DiskError>>()?;
    let finite_difference: Complex64 = parts.iter().map(|p| p.0).sum();
    let trace: Complex64 = parts.iter().map(|p| p.1).sum();
    let diff = (finite_difference - trace).norm();
    let residual = if diff == 0.0 {
        0.0
    } else {
        diff / trace.norm()
    };
    Ok(DlnCheck {
        finite_difference,
        trace,
        residual,
    })
}
