//! Mode values of the Dirichlet-to-Neumann and Neumann-to-Dirichlet maps.
//!
//! On mode `m` the map `f -> -gamma_N u` (outward normal derivative of the
//! solution with boundary value `f`) acts as multiplication by
//! `mu_m(z) = -u'(R) / u(R)`.

use crate::radial::{march, outward};
use crate::{DiskError, RadialPotential};
use num_complex::Complex64;
use numkit::{bessel_j, sqrt_upper};

/// `mu_m(z)` for `-Laplace + V`.
pub fn dtn_mode(m: u32, z: Complex64, v: &RadialPotential) -> Result<Complex64, DiskError> {
    let (_, end) = outward(m, z, v, &[], 1.0, false)?;
    if end[0] == Complex64::new(0.0, 0.0) {
        return Err(DiskError::DirichletEigenvalue {
            m,
            z,
            operator: "perturbed",
        });
    }
    let mu = -(m as f64 / v.radius() + end[1] / end[0]);
    if !mu.is_finite() {
        return Err(DiskError::DirichletEigenvalue {
            m,
            z,
            operator: "perturbed",
        });
    }
    Ok(mu)
}

/// Free value `mu0_m(z) = -k J_m'(k R) / J_m(k R)`, `k = sqrt(z)`.
pub fn dtn_mode_free(m: u32, z: Complex64, radius: f64) -> Result<Complex64, DiskError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(DiskError::BadRadius(radius));
    }
    let k = sqrt_upper(z);
    if k == Complex64::new(0.0, 0.0) {
        // harmonic r^m
        return Ok(Complex64::new(-(m as f64) / radius, 0.0));
    }
    let (j, dj) = bessel_j(m, k * radius)?;
    if j == Complex64::new(0.0, 0.0) {
        return Err(DiskError::DirichletEigenvalue {
            m,
            z,
            operator: "free",
        });
    }
    // rescale first: |J_m|^2 underflows for large m at small |k R|
    let size = j.norm();
    Ok(-k * (dj / size) / (j / size))
}

/// `d_m(z) = mu_m(z) / mu0_m(z)`, the mode eigenvalue of
/// `M^D(z) M_0^D(z)^{-1}`.
pub fn dtn_ratio(m: u32, z: Complex64, v: &RadialPotential) -> Result<Complex64, DiskError> {
    let mu0 = dtn_mode_free(m, z, v.radius())?;
    if mu0 == Complex64::new(0.0, 0.0) {
        return Err(DiskError::NeumannEigenvalue {
            m,
            z,
            operator: "free",
        });
    }
    Ok(dtn_mode(m, z, v)? / mu0)
}

/// Mode value of the Neumann-to-Dirichlet map: the boundary value of the
/// solution whose outward normal derivative is 1. Integrated in the
/// unscaled variables `(u, u')`, independently of [`dtn_mode`]; limited to
/// `m <= 100`.
pub fn ntd_mode(m: u32, z: Complex64, v: &RadialPotential) -> Result<Complex64, DiskError> {
    if m > 100 {
        return Err(DiskError::BadPotential(format!(
            "ntd_mode supports m <= 100, got {m}"
        )));
    }
    let radius = v.radius();
    let r0 = 1e-3 * radius;
    let mf = m as f64;
    let c1 = (v.value(0.0) - z) / (4.0 * (mf + 1.0));
    // u = (r/R)^m (1 + c1 r^2)
    let lead = (r0 / radius).powi(m as i32);
    let mut y = [
        lead * (1.0 + c1 * r0 * r0),
        lead * (mf / r0 * (1.0 + c1 * r0 * r0) + 2.0 * c1 * r0),
    ];
    let m2 = mf * mf;
    let rhs = |r: f64, vz: Complex64, y: &[Complex64], d: &mut [Complex64]| {
        d[0] = y[1];
        d[1] = -y[1] / r + (m2 / (r * r) + vz) * y[0];
    };
    let mut end = [Complex64::new(0.0, 0.0); 2];
    march(v, z, &mut y, r0, &[radius], rhs, |_, s| {
        end.copy_from_slice(s)
    })?;
    if end[1] == Complex64::new(0.0, 0.0) {
        return Err(DiskError::NeumannEigenvalue {
            m,
            z,
            operator: "perturbed",
        });
    }
    Ok(end[0] / end[1])
}
