//! Radial potentials on the disk and the radial quadrature grid.

use crate::DiskError;
use halfline::Preset;
use num_complex::Complex64;
use numkit::composite_gauss_legendre;
use std::fmt;
use std::sync::Arc;

type Sampler = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Bounded radial potential `V(r)` on `[0, R]`.
#[derive(Clone)]
pub struct RadialPotential {
    radius: f64,
    kind: Kind,
    sup_norm: f64,
    breaks: Vec<f64>,
}

#[derive(Clone)]
enum Kind {
    Preset(Preset),
    Custom { sampler: Sampler, real: bool },
}

impl fmt::Debug for RadialPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Preset(p) => write!(f, "RadialPotential(R = {}, {p:?})", self.radius),
            Kind::Custom { real, .. } => write!(
                f,
                "RadialPotential(R = {}, custom, real {real})",
                self.radius
            ),
        }
    }
}

fn check_radius(radius: f64) -> Result<(), DiskError> {
    if radius.is_finite() && radius > 0.0 {
        Ok(())
    } else {
        Err(DiskError::BadRadius(radius))
    }
}

impl RadialPotential {
    /// A preset shape in the radial variable. Jumps of the preset inside the
    /// disk become grid and integration breakpoints.
    pub fn preset(radius: f64, p: Preset) -> Result<Self, DiskError> {
        check_radius(radius)?;
        p.validate().map_err(DiskError::BadPotential)?;
        let jump = match p {
            Preset::Zero {} => None,
            Preset::SquareWell { a, .. } => Some(a),
            Preset::Gaussian { .. } => Some(p.support()),
            Preset::ExpDecay { cutoff, .. } => Some(cutoff),
        };
        let breaks = jump
            .filter(|&x| x > 0.0 && x < radius && !p.is_zero())
            .into_iter()
            .collect();
        let sup_norm = if p.is_zero() { 0.0 } else { p.sup_norm() };
        Ok(Self {
            radius,
            kind: Kind::Preset(p),
            sup_norm,
            breaks,
        })
    }

    pub fn zero(radius: f64) -> Result<Self, DiskError> {
        Self::preset(radius, Preset::Zero {})
    }

    /// User sampler with its interior jump points. The sup norm is estimated
    /// on a fine sample.
    pub fn custom<F>(radius: f64, sampler: F, breaks: &[f64], real: bool) -> Result<Self, DiskError>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        check_radius(radius)?;
        let mut sup: f64 = 0.0;
        for i in 0..=4000 {
            let val = sampler(radius * i as f64 / 4000.0);
            if !(val.re.is_finite() && val.im.is_finite()) {
                return Err(DiskError::BadPotential(format!(
                    "non-finite value at r = {}",
                    radius * i as f64 / 4000.0
                )));
            }
            sup = sup.max(val.norm());
        }
        let mut breaks: Vec<f64> = breaks
            .iter()
            .copied()
            .filter(|&x| x > 0.0 && x < radius)
            .collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        Ok(Self {
            radius,
            kind: Kind::Custom {
                sampler: Arc::new(sampler),
                real,
            },
            sup_norm: sup,
            breaks,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn as_preset(&self) -> Option<Preset> {
        match self.kind {
            Kind::Preset(p) => Some(p),
            Kind::Custom { .. } => None,
        }
    }

    /// `V(r)`; at a jump the value from the left.
    pub fn value(&self, r: f64) -> Complex64 {
        match &self.kind {
            Kind::Preset(p) => Complex64::new(p.value(r), 0.0),
            Kind::Custom { sampler, .. } => sampler(r),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    /// Interior points of `(0, R)` where `V` may jump.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    pub fn is_real(&self) -> bool {
        match &self.kind {
            Kind::Preset(_) => true,
            Kind::Custom { real, .. } => *real,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.kind {
            Kind::Preset(p) => p.is_zero(),
            Kind::Custom { .. } => self.sup_norm == 0.0,
        }
    }

    /// `V = u v` with `u = exp(i arg V) |V|^(1/2)` and `v = |V|^(1/2)`.
    pub fn factors(&self, r: f64) -> (Complex64, f64) {
        let val = self.value(r);
        let mag = val.norm();
        if mag == 0.0 {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        let root = mag.sqrt();
        (val / root, root)
    }

    /// `eps V` on the same disk.
    pub fn scaled(&self, eps: f64) -> RadialPotential {
        match &self.kind {
            Kind::Preset(p) => {
                let mut out = self.clone();
                out.kind = Kind::Preset(p.scaled(eps));
                out.sup_norm = self.sup_norm * eps.abs();
                out
            }
            Kind::Custom { sampler, real } => {
                let inner = sampler.clone();
                RadialPotential {
                    radius: self.radius,
                    kind: Kind::Custom {
                        sampler: Arc::new(move |r| eps * inner(r)),
                        real: *real,
                    },
                    sup_norm: self.sup_norm * eps.abs(),
                    breaks: self.breaks.clone(),
                }
            }
        }
    }
}

/// Smallest accepted radial grid.
pub const MIN_RADIAL_GRID: usize = 8;

/// Gauss-Legendre grid on `(0, R)` split at the potential's jump points, with
/// the area weights `w_i r_i` precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub radius: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `w_i r_i`, the quadrature weights of `r dr`.
    pub area: Vec<f64>,
    /// Panel ends, `0` and `R` included.
    pub breaks: Vec<f64>,
}

impl RadialGrid {
    /// About `n` nodes, shared equally among the panels.
    pub fn new(v: &RadialPotential, n: usize) -> Result<Self, DiskError> {
        if n < MIN_RADIAL_GRID {
            return Err(DiskError::GridTooSmall {
                min: MIN_RADIAL_GRID,
                got: n,
            });
        }
        let mut breaks = vec![0.0];
        breaks.extend_from_slice(v.breakpoints());
        breaks.push(v.radius());
        let per_panel = (n / (breaks.len() - 1)).max(MIN_RADIAL_GRID / 2);
        let q = composite_gauss_legendre(&breaks, per_panel)?;
        let area = q.nodes.iter().zip(&q.weights).map(|(r, w)| r * w).collect();
        Ok(Self {
            radius: v.radius(),
            nodes: q.nodes,
            weights: q.weights,
            area,
            breaks,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Interior panel ends.
    pub fn interior_breaks(&self) -> &[f64] {
        &self.breaks[1..self.breaks.len() - 1]
    }
}
