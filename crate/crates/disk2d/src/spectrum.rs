//! Eigenvalues, counting functions and spectral shift values on the disk.

use crate::identities::mode_identities;
use crate::modes::{bs_mode_matrix_parts, sandwich_parts};
use crate::radial::outward;
use crate::{
    dtn_ratio, mode_green, mult, prufer_angle, Boundary, DiskError, RadialGrid, RadialPotential,
};
use num_complex::Complex64;
use numkit::{track_log, PhasePath};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Slack for counting an eigenvalue that sits exactly at `lambda`.
const HIT_TOL: f64 = 1e-9;
/// Height of the horizontal leg of the spectral-shift path.
const PATH_HEIGHT: f64 = 1.0;
/// Largest spacing of path vertices along the horizontal leg.
const PATH_STEP: f64 = 0.25;
/// Vertices on each vertical descent to the real axis.
const DESCENT_STEPS: usize = 8;

fn require_real(v: &RadialPotential) -> Result<(), DiskError> {
    if v.is_real() {
        Ok(())
    } else {
        Err(DiskError::ComplexPotential)
    }
}

/// Every mode above `m_max` has its spectrum above
/// `(m_max + 1)^2 / R^2 - |V|_inf`.
fn check_truncation(v: &RadialPotential, m_max: u32, lambda: f64) -> Result<(), DiskError> {
    let r = v.radius();
    let bound = ((m_max + 1) as f64 / r).powi(2) - v.sup_norm();
    if bound <= lambda {
        return Err(DiskError::TruncationInsufficient {
            m_max,
            lambda,
            bound,
        });
    }
    Ok(())
}

/// Eigenvalues `<= lambda` of mode `m` (without angular multiplicity), from
/// the Pruefer angle at the boundary: Dirichlet eigenvalues sit at
/// `theta(R) = j pi`, Neumann ones at `theta(R) = pi/2 + j pi`, and
/// `theta(R)` increases with `lambda` from 0 at `-inf`.
fn mode_count(m: u32, lambda: f64, v: &RadialPotential, bc: Boundary) -> Result<u32, DiskError> {
    let theta = prufer_angle(m, lambda, v)? + HIT_TOL;
    let k = match bc {
        Boundary::Dirichlet => (theta / PI).floor(),
        Boundary::Neumann => (theta / PI + 0.5).floor(),
    };
    Ok(k.max(0.0) as u32)
}

/// Eigenvalue counts `N(lambda)` per mode and in total (with multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeCount {
    pub total: u32,
    pub per_mode: Vec<u32>,
}

/// Number of eigenvalues `<= lambda` of `-Laplace + V` with boundary
/// condition `bc`. Fails if modes above `m_max` could contribute.
pub fn counting(
    lambda: f64,
    v: &RadialPotential,
    bc: Boundary,
    m_max: u32,
) -> Result<ModeCount, DiskError> {
    require_real(v)?;
    check_truncation(v, m_max, lambda)?;
    let per_mode: Vec<u32> = (0..=m_max)
        .into_par_iter()
        .map(|m| mode_count(m, lambda, v, bc))
        .collect::<Result<_, _>>()?;
    let total = per_mode
        .iter()
        .enumerate()
        .map(|(m, &k)| mult(m as u32) * k)
        .sum();
    Ok(ModeCount { total, per_mode })
}

/// A zero of a mode factor of the boundary determinant, with the shooting
/// eigenvalue it was checked against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectedEigenvalue {
    pub lambda: f64,
    pub m: u32,
    pub multiplicity: u32,
    pub shooting: f64,
}

/// Real function whose zeros are the eigenvalues of mode `m`. The mode
/// factor of `det_2(M^D M_0^D^{-1})` is `d_m = -u'(R) / (u(R) mu0_m)`:
/// Neumann eigenvalues are the zeros of its numerator `u'(R)`, Dirichlet
/// eigenvalues the zeros of `1/d_m`, i.e. of `u(R)`. Both are returned in
/// the scaled normalization `u = r^m w`.
fn boundary_factor(
    m: u32,
    lambda: f64,
    v: &RadialPotential,
    bc: Boundary,
) -> Result<f64, DiskError> {
    let (_, end) = outward(m, Complex64::new(lambda, 0.0), v, &[], 1.0, false)?;
    Ok(match bc {
        Boundary::Dirichlet => end[0].re,
        Boundary::Neumann => (m as f64 * end[0] + v.radius() * end[1]).re,
    })
}

fn bisect<F>(mut f: F, mut a: f64, mut b: f64, mut fa: f64) -> Result<f64, DiskError>
where
    F: FnMut(f64) -> Result<f64, DiskError>,
{
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b || b - a <= 1e-14 * (1.0 + mid.abs()) {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Shooting eigenvalue in `[a, b]`: where the Pruefer angle reaches `target`.
fn prufer_root(
    m: u32,
    v: &RadialPotential,
    target: f64,
    a: f64,
    b: f64,
) -> Result<Option<f64>, DiskError> {
    let g = |x: f64| prufer_angle(m, x, v).map(|t| t - target);
    let (ga, gb) = (g(a)?, g(b)?);
    if ga > 0.0 || gb < 0.0 {
        return Ok(None);
    }
    Ok(Some(bisect(g, a, b, ga)?))
}

fn detect_mode(
    m: u32,
    lo: f64,
    hi: f64,
    v: &RadialPotential,
    bc: Boundary,
) -> Result<Vec<DetectedEigenvalue>, DiskError> {
    let first = mode_count(m, lo, v, bc)?;
    let expected = (mode_count(m, hi, v, bc)? - first) as usize;
    let f = |x: f64| boundary_factor(m, x, v, bc);
    let (flo, fhi) = (f(lo)?, f(hi)?);
    for (x, fx) in [(lo, flo), (hi, fhi)] {
        if fx == 0.0 {
            return Err(DiskError::WindowEndpoint { m, lambda: x });
        }
    }
    let mut cells = 64usize;
    let (xs, fs, brackets) = loop {
        let xs: Vec<f64> = (0..=cells)
            .map(|i| lo + (hi - lo) * i as f64 / cells as f64)
            .collect();
        let mut fs = Vec::with_capacity(xs.len());
        fs.push(flo);
        for &x in &xs[1..cells] {
            fs.push(f(x)?);
        }
        fs.push(fhi);
        let mut brackets = Vec::new();
        for i in 0..cells {
            if fs[i] == 0.0 {
                brackets.push(i);
            } else if fs[i + 1] != 0.0 && fs[i].signum() != fs[i + 1].signum() {
                brackets.push(i);
            }
        }
        if brackets.len() == expected || cells >= 1 << 14 {
            break (xs, fs, brackets);
        }
        cells *= 4;
    };
    if brackets.len() != expected {
        return Err(DiskError::DetectionIncomplete {
            m,
            found: brackets.len(),
            expected,
        });
    }
    let mut out = Vec::with_capacity(expected);
    for (k, i) in brackets.into_iter().enumerate() {
        let (a, b) = (xs[i], xs[i + 1]);
        let root = if fs[i] == 0.0 {
            a
        } else {
            bisect(f, a, b, fs[i])?
        };
        // brackets are in increasing order, one per eigenvalue of the window
        let j = (first as usize + k) as f64;
        let target = match bc {
            Boundary::Dirichlet => (j + 1.0) * PI,
            Boundary::Neumann => (j + 0.5) * PI,
        };
        let span = (b - a).max(1e-6);
        let shooting = prufer_root(m, v, target, root - span, root + span)?.ok_or(
            DiskError::DetectionMismatch {
                m,
                detected: root,
                shooting: f64::NAN,
            },
        )?;
        if (shooting - root).abs() > 1e-6 {
            return Err(DiskError::DetectionMismatch {
                m,
                detected: root,
                shooting,
            });
        }
        out.push(DetectedEigenvalue {
            lambda: root,
            m,
            multiplicity: mult(m),
            shooting,
        });
    }
    Ok(out)
}

/// Eigenvalues in `(lo, hi)` of `-Laplace + V` with boundary condition `bc`,
/// found as zeros of the mode factors of the boundary determinant and
/// checked against Pruefer shooting to `1e-6`. Sorted by `lambda`.
pub fn eig_detect(
    lo: f64,
    hi: f64,
    v: &RadialPotential,
    bc: Boundary,
    m_max: u32,
) -> Result<Vec<DetectedEigenvalue>, DiskError> {
    require_real(v)?;
    if !(lo < hi) {
        return Err(DiskError::BadWindow { lo, hi });
    }
    check_truncation(v, m_max, hi)?;
    let per_mode: Vec<Vec<DetectedEigenvalue>> = (0..=m_max)
        .into_par_iter()
        .map(|m| detect_mode(m, lo, hi, v, bc))
        .collect::<Result<_, _>>()?;
    let mut all: Vec<DetectedEigenvalue> = per_mode.into_iter().flatten().collect();
    all.sort_by(|a, b| a.lambda.total_cmp(&b.lambda).then(a.m.cmp(&b.m)));
    Ok(all)
}

/// Start of the real path: below every eigenvalue of the free and perturbed
/// operators and below every requested point.
fn path_start(v: &RadialPotential, lambdas: &[f64]) -> f64 {
    let lowest = lambdas.iter().copied().fold(f64::INFINITY, f64::min);
    (-6.0 * v.sup_norm() - 1.0).min(lowest - 1.0)
}

/// Polygon `start -> start + i h -> ... -> lambda_k + i h` through the sorted
/// `lambdas`; returns the vertices and the vertex index of each lambda.
fn horizontal_path(start: f64, sorted: &[f64]) -> (Vec<Complex64>, Vec<usize>) {
    let mut path = vec![
        Complex64::new(start, 0.0),
        Complex64::new(start, PATH_HEIGHT),
    ];
    let mut at = Vec::with_capacity(sorted.len());
    let mut x = start;
    for &lam in sorted {
        let pieces = ((lam - x) / PATH_STEP).ceil().max(0.0) as usize;
        for k in 1..pieces {
            path.push(Complex64::new(
                x + (lam - x) * k as f64 / pieces as f64,
                PATH_HEIGHT,
            ));
        }
        path.push(Complex64::new(lam, PATH_HEIGHT));
        at.push(path.len() - 1);
        x = lam;
    }
    (path, at)
}

/// Accumulated argument at every polygon vertex of a tracked path.
fn vertex_args(track: &PhasePath, vertices: usize) -> Vec<f64> {
    let mut out = vec![f64::NAN; vertices];
    let mut arg = track.start_arg;
    let mut prev = track.samples[0].2;
    out[0] = arg;
    for &(s, _, f) in &track.samples[1..] {
        arg += (f / prev).arg();
        prev = f;
        if s.fract() == 0.0 {
            out[s as usize] = arg;
        }
    }
    out
}

/// Continuous `Im log f(lambda + i0)` for each of `lambdas` (any order),
/// anchored at 0 at the path start, where `f` must be real and positive.
fn tracked_args<F>(lambdas: &[f64], start: f64, f: F) -> Result<Vec<f64>, DiskError>
where
    F: Fn(Complex64) -> Result<Complex64, DiskError>,
{
    let f0 = f(Complex64::new(start, 0.0))?;
    if !(f0.re > 0.0 && f0.im.abs() <= 1e-10 * f0.re) {
        return Err(DiskError::BadAnchor { lambda: start });
    }
    let mut order: Vec<usize> = (0..lambdas.len()).collect();
    order.sort_by(|&a, &b| lambdas[a].total_cmp(&lambdas[b]));
    let sorted: Vec<f64> = order.iter().map(|&i| lambdas[i]).collect();
    let (path, at) = horizontal_path(start, &sorted);
    let track = track_log(&path, &f, Some(0.0))?;
    let args = vertex_args(&track, path.len());
    let mut out = vec![0.0; lambdas.len()];
    for (k, &i) in order.iter().enumerate() {
        let lam = sorted[k];
        let descent: Vec<Complex64> = (0..=DESCENT_STEPS)
            .map(|j| {
                Complex64::new(
                    lam,
                    PATH_HEIGHT * (DESCENT_STEPS - j) as f64 / DESCENT_STEPS as f64,
                )
            })
            .collect();
        let down = track_log(&descent, &f, Some(args[at[k]]))?;
        out[i] = down.final_arg();
    }
    Ok(out)
}

fn check_scan(lambdas: &[f64], v: &RadialPotential, m_max: u32) -> Result<(), DiskError> {
    require_real(v)?;
    for &lam in lambdas {
        if !lam.is_finite() {
            return Err(DiskError::BadWindow {
                lo: f64::NEG_INFINITY,
                hi: lam,
            });
        }
    }
    let top = lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    check_truncation(v, m_max, top)
}

/// Mode values `xi_m(lambda) = pi^{-1} Im log det_2(I + K_m(lambda + i0))`,
/// indexed `[m][lambda]`.
fn xi_modes(
    lambdas: &[f64],
    v: &RadialPotential,
    bc: Boundary,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<Vec<Vec<f64>>, DiskError> {
    let start = path_start(v, lambdas);
    (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let det = |z: Complex64| -> Result<Complex64, DiskError> {
                let (_, lu) = bs_mode_matrix_parts(m, z, v, bc, grid)?;
                Ok(lu.det())
            };
            let args = tracked_args(lambdas, start, det)?;
            lambdas
                .iter()
                .zip(args)
                .map(|(&lam, arg)| {
                    let z = Complex64::new(lam, 0.0);
                    let g = mode_green(m, z, bc, grid)?;
                    let (k, _) = sandwich_parts(v, grid, &g)?;
                    Ok((arg - k.trace()?.im) / PI)
                })
                .collect()
        })
        .collect()
}

fn weighted(per_mode: &[Vec<f64>], i: usize) -> f64 {
    per_mode
        .iter()
        .enumerate()
        .map(|(m, xs)| mult(m as u32) as f64 * xs[i])
        .sum()
}

/// Spectral shift values `xi(lambda)` for `-Laplace + V` against
/// `-Laplace` with boundary condition `bc`, from the phase of the modified
/// Birman-Schwinger determinant tracked from below the spectrum.
pub fn xi_scan(
    lambdas: &[f64],
    v: &RadialPotential,
    bc: Boundary,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<Vec<f64>, DiskError> {
    check_scan(lambdas, v, m_max)?;
    let per_mode = xi_modes(lambdas, v, bc, m_max, grid)?;
    Ok((0..lambdas.len()).map(|i| weighted(&per_mode, i)).collect())
}

pub fn xi(
    lambda: f64,
    v: &RadialPotential,
    bc: Boundary,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<f64, DiskError> {
    Ok(xi_scan(&[lambda], v, bc, m_max, grid)?[0])
}

/// Counts of the four operators and both spectral shift values at `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountRecord {
    pub lambda: f64,
    pub n0_d: u32,
    pub n_d: u32,
    pub n0_n: u32,
    pub n_n: u32,
    pub xi_d: f64,
    pub xi_n: f64,
}

/// One row of the Dirichlet/Neumann spectral shift comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftRelationRow {
    pub record: CountRecord,
    /// `pi^{-1} Im log det_2(M^D M_0^D^{-1}) + pi^{-1} Im tr T_2`, tracked.
    pub boundary_phase: f64,
    /// `|(xi_N - xi_D) - ([N_D - N0_D] - [N_N - N0_N])|`.
    pub integer_residual: f64,
    /// `|(xi_N - xi_D) - boundary_phase|`.
    pub determinant_residual: f64,
}

/// Compares `xi_N - xi_D` with the counting functions and with the phase of
/// the boundary determinant at each of `lambdas` (real, off all four spectra).
pub fn shift_relation_scan(
    lambdas: &[f64],
    v: &RadialPotential,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<Vec<ShiftRelationRow>, DiskError> {
    check_scan(lambdas, v, m_max)?;
    let free = RadialPotential::zero(v.radius())?;
    let xi_d = xi_modes(lambdas, v, Boundary::Dirichlet, m_max, grid)?;
    let xi_n = xi_modes(lambdas, v, Boundary::Neumann, m_max, grid)?;
    let start = path_start(v, lambdas);
    let phase: Vec<Vec<f64>> = (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let args = tracked_args(lambdas, start, |z| dtn_ratio(m, z, v))?;
            lambdas
                .iter()
                .zip(args)
                .map(|(&lam, arg)| {
                    let id = mode_identities(m, Complex64::new(lam, 0.0), v, grid)?;
                    Ok((arg + (Complex64::new(1.0, 0.0) - id.d).im + id.t.im) / PI)
                })
                .collect()
        })
        .collect::<Result<_, DiskError>>()?;
    lambdas
        .iter()
        .enumerate()
        .map(|(i, &lam)| {
            let record = CountRecord {
                lambda: lam,
                n0_d: counting(lam, &free, Boundary::Dirichlet, m_max)?.total,
                n_d: counting(lam, v, Boundary::Dirichlet, m_max)?.total,
                n0_n: counting(lam, &free, Boundary::Neumann, m_max)?.total,
                n_n: counting(lam, v, Boundary::Neumann, m_max)?.total,
                xi_d: weighted(&xi_d, i),
                xi_n: weighted(&xi_n, i),
            };
            let shift = record.xi_n - record.xi_d;
            let counts =
                (record.n_d as f64 - record.n0_d as f64) - (record.n_n as f64 - record.n0_n as f64);
            let boundary_phase = weighted(&phase, i);
            Ok(ShiftRelationRow {
                record,
                boundary_phase,
                integer_residual: (shift - counts).abs(),
                determinant_residual: (shift - boundary_phase).abs(),
            })
        })
        .collect()
}

pub fn theorem49_check(
    lambda: f64,
    v: &RadialPotential,
    m_max: u32,
    grid: &RadialGrid,
) -> Result<ShiftRelationRow, DiskError> {
    Ok(shift_relation_scan(&[lambda], v, m_max, grid)?[0])
}
