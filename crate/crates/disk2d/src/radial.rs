//! Radial ODE solutions for mode `m`:
//! `-u'' - u'/r + (m^2/r^2) u + V u = z u`.
//!
//! Solutions are carried in scaled form so that large `m` neither overflows
//! nor underflows: the regular solution as `u = r^m w` with
//! `w'' = -(2m+1)/r w' + (V - z) w`, and solutions fixed at the boundary as
//! `u = (R/r)^m p` with `p'' = (2m-1)/r p' + (V - z) p`.

use crate::{Boundary, DiskError, RadialPotential};
use num_complex::Complex64;
use numkit::Dopri5;

pub(crate) const RADIAL_TOL: f64 = 1e-12;
/// Start of the outward integration as a fraction of `R`.
const SEED_FRACTION: f64 = 1e-3;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Marches `y` from `from` through `targets` (ordered in the direction of
/// integration), never stepping across a jump of the potential, and hands
/// the state at each target to `record`. `rhs` receives `V(r) - z`.
pub(crate) fn march<F, G>(
    v: &RadialPotential,
    z: Complex64,
    y: &mut [Complex64],
    from: f64,
    targets: &[f64],
    mut rhs: F,
    mut record: G,
) -> Result<(), DiskError>
where
    F: FnMut(f64, Complex64, &[Complex64], &mut [Complex64]),
    G: FnMut(usize, &[Complex64]),
{
    let mut stepper = Dopri5::new(RADIAL_TOL)?;
    let breaks = v.breakpoints();
    let mut t = from;
    let mut leg =
        |t0: f64, t1: f64, y: &mut [Complex64], stepper: &mut Dopri5| -> Result<(), DiskError> {
            let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
            let nudge = 1e-12 * hi.max(1.0);
            let mut f = |r: f64, y: &[Complex64], d: &mut [Complex64]| {
                // sample V strictly inside the leg so jumps are seen from the correct side
                let rs = if hi - lo > 2.0 * nudge {
                    r.clamp(lo + nudge, hi - nudge)
                } else {
                    0.5 * (lo + hi)
                };
                rhs(r, v.value(rs) - z, y, d);
            };
            stepper.advance(&mut f, t0, y, t1)?;
            Ok(())
        };
    for (i, &target) in targets.iter().enumerate() {
        let dir = target - t;
        let mut cuts: Vec<f64> = breaks
            .iter()
            .copied()
            .filter(|&b| (b - t) * dir > 0.0 && (target - b) * dir > 0.0)
            .collect();
        if dir < 0.0 {
            cuts.reverse();
        }
        for b in cuts {
            leg(t, b, y, &mut stepper)?;
            t = b;
        }
        leg(t, target, y, &mut stepper)?;
        t = target;
        record(i, y);
    }
    Ok(())
}

/// Frobenius seed `w = 1 + c1 r^2 + c3 r^3 + c2 r^4` (times `scale`) and, when
/// `dz` is set, the `z`-derivative of the seed.
fn seed(m: u32, z: Complex64, v: &RadialPotential, r: f64, scale: f64, dz: bool) -> Vec<Complex64> {
    let mf = m as f64;
    let v0 = v.value(0.0);
    let slope = if v.breakpoints().first().is_some_and(|&b| b <= 2.0 * r) {
        c(0.0)
    } else {
        (v.value(r) - v0) / r
    };
    let q = v0 - z;
    let c1 = q / (4.0 * (mf + 1.0));
    let c2 = c1 * q / (8.0 * (mf + 2.0));
    let c3 = slope / (3.0 * (2.0 * mf + 3.0));
    let w = c(1.0) + c1 * r * r + c3 * r.powi(3) + c2 * r.powi(4);
    let dw = 2.0 * c1 * r + 3.0 * c3 * r * r + 4.0 * c2 * r.powi(3);
    let mut y = vec![w * scale, dw * scale];
    if dz {
        let c1z = c(-1.0 / (4.0 * (mf + 1.0)));
        let c2z = -c1 / (4.0 * (mf + 2.0));
        y.push((c1z * r * r + c2z * r.powi(4)) * scale);
        y.push((2.0 * c1z * r + 4.0 * c2z * r.powi(3)) * scale);
    }
    y
}

fn outward_rhs(m: u32) -> impl FnMut(f64, Complex64, &[Complex64], &mut [Complex64]) {
    let s = -(2.0 * m as f64 + 1.0);
    move |r, vz, y, d| {
        d[0] = y[1];
        d[1] = s / r * y[1] + vz * y[0];
        if y.len() == 4 {
            d[2] = y[3];
            d[3] = s / r * y[3] + vz * y[2] - y[0];
        }
    }
}

fn inward_rhs(m: u32) -> impl FnMut(f64, Complex64, &[Complex64], &mut [Complex64]) {
    let s = 2.0 * m as f64 - 1.0;
    move |r, vz, y, d| {
        d[0] = y[1];
        d[1] = s / r * y[1] + vz * y[0];
        if y.len() == 4 {
            d[2] = y[3];
            d[3] = s / r * y[3] + vz * y[2] - y[0];
        }
    }
}

/// States of the scaled regular solution at increasing `nodes` and at `R`.
/// With `dz` the state is `(w, w', w_z, w_z')`.
pub(crate) fn outward(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    nodes: &[f64],
    scale: f64,
    dz: bool,
) -> Result<(Vec<Vec<Complex64>>, Vec<Complex64>), DiskError> {
    let radius = v.radius();
    let r0 = nodes.first().map_or(SEED_FRACTION * radius, |&x| {
        (0.5 * x).min(SEED_FRACTION * radius)
    });
    let mut y = seed(m, z, v, r0, scale, dz);
    let mut targets = nodes.to_vec();
    targets.push(radius);
    let mut states = Vec::with_capacity(targets.len());
    march(v, z, &mut y, r0, &targets, outward_rhs(m), |_, s| {
        states.push(s.to_vec())
    })?;
    let end = states.pop().expect("boundary state");
    Ok((states, end))
}

/// States of the scaled boundary solution, fixed at `R` by the boundary
/// condition, at each of `nodes` (increasing order in and out).
/// Dirichlet: `u(R) = 0, u'(R) = 1`; Neumann: `u(R) = 1, u'(R) = 0`, up to the
/// constant factor of the scaling.
pub(crate) fn inward(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    nodes: &[f64],
    bc: Boundary,
    dz: bool,
) -> Result<Vec<Vec<Complex64>>, DiskError> {
    let radius = v.radius();
    let mut y = match bc {
        Boundary::Dirichlet => vec![c(0.0), c(1.0)],
        Boundary::Neumann => vec![c(1.0), c(m as f64 / radius)],
    };
    if dz {
        y.extend([c(0.0), c(0.0)]);
    }
    let targets: Vec<f64> = nodes.iter().rev().copied().collect();
    let mut states = Vec::with_capacity(nodes.len());
    march(v, z, &mut y, radius, &targets, inward_rhs(m), |_, s| {
        states.push(s.to_vec())
    })?;
    states.reverse();
    Ok(states)
}

/// The regular solution `u = r^m w` sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularSolution {
    pub m: u32,
    pub z: Complex64,
    pub radius: f64,
    pub nodes: Vec<f64>,
    pub w: Vec<Complex64>,
    pub dw: Vec<Complex64>,
    pub w_end: Complex64,
    pub dw_end: Complex64,
}

impl RegularSolution {
    /// `u'(R) / u(R)`.
    pub fn log_derivative(&self) -> Complex64 {
        self.m as f64 / self.radius + self.dw_end / self.w_end
    }

    /// `(u(R), u'(R))` with the normalization `u ~ r^m` at the origin.
    pub fn boundary_values(&self) -> (Complex64, Complex64) {
        let rm = self.radius.powi(self.m as i32);
        (
            rm * self.w_end,
            rm * (self.m as f64 / self.radius * self.w_end + self.dw_end),
        )
    }

    /// `(u(r_i), u'(r_i))`.
    pub fn at(&self, i: usize) -> (Complex64, Complex64) {
        let r = self.nodes[i];
        let rm = r.powi(self.m as i32);
        (
            rm * self.w[i],
            rm * (self.m as f64 / r * self.w[i] + self.dw[i]),
        )
    }
}

/// Regular solution of mode `m` at `z`, seeded by its Frobenius expansion
/// near the origin and integrated out to `R`, sampled at increasing `nodes`.
pub fn radial_regular(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    nodes: &[f64],
) -> Result<RegularSolution, DiskError> {
    radial_regular_with_seed(m, z, v, nodes, 1.0)
}

/// As [`radial_regular`] with the seed multiplied by `scale`.
pub fn radial_regular_with_seed(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    nodes: &[f64],
    scale: f64,
) -> Result<RegularSolution, DiskError> {
    let (states, end) = outward(m, z, v, nodes, scale, false)?;
    Ok(RegularSolution {
        m,
        z,
        radius: v.radius(),
        nodes: nodes.to_vec(),
        w: states.iter().map(|s| s[0]).collect(),
        dw: states.iter().map(|s| s[1]).collect(),
        w_end: end[0],
        dw_end: end[1],
    })
}

/// Pruefer angle `theta(R)` of the regular solution at real `lambda`, with
/// `u = rho sin(theta)`, `r u' = rho cos(theta)` and `theta` continuous from
/// its value at the origin.
pub fn prufer_angle(m: u32, lambda: f64, v: &RadialPotential) -> Result<f64, DiskError> {
    if !v.is_real() {
        return Err(DiskError::ComplexPotential);
    }
    let radius = v.radius();
    let r0 = SEED_FRACTION * radius;
    let z = c(lambda);
    let s = seed(m, z, v, r0, 1.0, false);
    let mf = m as f64;
    let theta0 = s[0].re.atan2(mf * s[0].re + r0 * s[1].re);
    let mut y = [c(theta0)];
    let m2 = mf * mf;
    let rhs = |r: f64, vz: Complex64, y: &[Complex64], d: &mut [Complex64]| {
        let (sn, cs) = y[0].re.sin_cos();
        // vz = V - lambda
        let q = -vz.re * r - m2 / r;
        d[0] = c(cs * cs / r + q * sn * sn);
    };
    let mut out = 0.0;
    march(v, z, &mut y, r0, &[radius], rhs, |_, s| out = s[0].re)?;
    Ok(out)
}
