//! Potential presets shared by the half-line and radial solvers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Values below this magnitude are treated as exactly zero beyond the support.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Named potential shapes. Every preset vanishes beyond a finite support
/// point and is smooth on `[0, support]` when sampled as a left limit there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "snake_case")]
pub enum Preset {
    /// `V = 0`.
    Zero {},
    /// `V = -v0` on `[0, a]`.
    SquareWell { v0: f64, a: f64 },
    /// `V = amp * exp(-((x - center) / width)^2)`, cut where `|V| < 1e-12`.
    Gaussian { amp: f64, center: f64, width: f64 },
    /// `V = amp * exp(-rate * x)` on `[0, cutoff]`.
    ExpDecay { amp: f64, rate: f64, cutoff: f64 },
}

impl Preset {
    /// Checks parameter ranges; returns a message naming the bad field.
    pub fn validate(&self) -> Result<(), String> {
        let ok = |c: bool, msg: &str| if c { Ok(()) } else { Err(msg.to_string()) };
        match *self {
            Preset::Zero {} => Ok(()),
            Preset::SquareWell { v0, a } => {
                ok(v0.is_finite(), "square_well: v0 must be finite")?;
                ok(a.is_finite() && a > 0.0, "square_well: a must be positive")
            }
            Preset::Gaussian { amp, center, width } => {
                ok(amp.is_finite(), "gaussian: amp must be finite")?;
                ok(center.is_finite(), "gaussian: center must be finite")?;
                ok(
                    width.is_finite() && width > 0.0,
                    "gaussian: width must be positive",
                )
            }
            Preset::ExpDecay { amp, rate, cutoff } => {
                ok(amp.is_finite(), "exp_decay: amp must be finite")?;
                ok(
                    rate.is_finite() && rate >= 0.0,
                    "exp_decay: rate must be nonnegative",
                )?;
                ok(
                    cutoff.is_finite() && cutoff > 0.0,
                    "exp_decay: cutoff must be positive",
                )
            }
        }
    }

    /// Value at `x >= 0`, with the left limit taken at the support end.
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            Preset::Zero {} => 0.0,
            Preset::SquareWell { v0, a } => {
                if x <= a {
                    -v0
                } else {
                    0.0
                }
            }
            Preset::Gaussian { amp, center, width } => {
                if x <= self.support() {
                    let s = (x - center) / width;
                    amp * (-s * s).exp()
                } else {
                    0.0
                }
            }
            Preset::ExpDecay { amp, rate, cutoff } => {
                if x <= cutoff {
                    amp * (-rate * x).exp()
                } else {
                    0.0
                }
            }
        }
    }

    /// End of the support, `X_inf`.
    pub fn support(&self) -> f64 {
        match *self {
            Preset::Zero {} => 1.0,
            Preset::SquareWell { a, .. } => a,
            Preset::Gaussian { amp, center, width } => {
                if amp.abs() <= TAIL_TOLERANCE {
                    return 1.0;
                }
                let reach = width * (amp.abs() / TAIL_TOLERANCE).ln().sqrt();
                (center + reach).max(width)
            }
            Preset::ExpDecay { cutoff, .. } => cutoff,
        }
    }

    /// Supremum of `|V|` on `[0, inf)`.
    pub fn sup_norm(&self) -> f64 {
        match *self {
            Preset::Zero {} => 0.0,
            Preset::SquareWell { v0, .. } => v0.abs(),
            Preset::Gaussian { amp, center, width } => {
                if center >= 0.0 {
                    amp.abs()
                } else {
                    let s = center / width;
                    amp.abs() * (-s * s).exp()
                }
            }
            Preset::ExpDecay { amp, .. } => amp.abs(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            Preset::Zero {} => true,
            Preset::SquareWell { v0, .. } => v0 == 0.0,
            Preset::Gaussian { amp, .. } | Preset::ExpDecay { amp, .. } => amp == 0.0,
        }
    }

    /// Same shape with amplitude multiplied by `eps`.
    pub fn scaled(&self, eps: f64) -> Preset {
        match *self {
            Preset::Zero {} => Preset::Zero {},
            Preset::SquareWell { v0, a } => Preset::SquareWell { v0: eps * v0, a },
            Preset::Gaussian { amp, center, width } => Preset::Gaussian {
                amp: eps * amp,
                center,
                width,
            },
            Preset::ExpDecay { amp, rate, cutoff } => Preset::ExpDecay {
                amp: eps * amp,
                rate,
                cutoff,
            },
        }
    }
}

type Sampler = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Half-line potential: either a preset or a user sampler with an explicit
/// support. Beyond the support the potential is exactly zero.
#[derive(Clone)]
pub struct Potential1D {
    kind: Kind,
    support: f64,
}

#[derive(Clone)]
enum Kind {
    Preset(Preset),
    Custom { sampler: Sampler, real: bool },
}

impl fmt::Debug for Potential1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Preset(p) => write!(f, "Potential1D({p:?})"),
            Kind::Custom { real, .. } => write!(
                f,
                "Potential1D(custom, support {}, real {real})",
                self.support
            ),
        }
    }
}

impl Potential1D {
    pub fn preset(p: Preset) -> Result<Self, String> {
        p.validate()?;
        Ok(Self {
            kind: Kind::Preset(p),
            support: p.support(),
        })
    }

    pub fn zero() -> Self {
        Self {
            kind: Kind::Preset(Preset::Zero {}),
            support: 1.0,
        }
    }

    /// Arbitrary sampler on `[0, support]`; `real` declares that values have
    /// zero imaginary part.
    pub fn custom<F>(sampler: F, support: f64, real: bool) -> Result<Self, String>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        if !(support.is_finite() && support > 0.0) {
            return Err("support must be positive".into());
        }
        let pot = Self {
            kind: Kind::Custom {
                sampler: Arc::new(sampler),
                real,
            },
            support,
        };
        if let Some(x) = pot.tail_violation() {
            return Err(format!(
                "sampler is not negligible beyond the support (x = {x})"
            ));
        }
        Ok(pot)
    }

    pub fn as_preset(&self) -> Option<Preset> {
        match self.kind {
            Kind::Preset(p) => Some(p),
            Kind::Custom { .. } => None,
        }
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    /// `V(x)`; zero beyond the support.
    pub fn value(&self, x: f64) -> Complex64 {
        if x > self.support {
            return Complex64::new(0.0, 0.0);
        }
        match &self.kind {
            Kind::Preset(p) => Complex64::new(p.value(x), 0.0),
            Kind::Custom { sampler, .. } => sampler(x),
        }
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
            Kind::Custom { .. } => false,
        }
    }

    /// Factorization `V = u v` with `u = exp(i arg V) |V|^(1/2)`, `v = |V|^(1/2)`.
    pub fn factors(&self, x: f64) -> (Complex64, f64) {
        let val = self.value(x);
        let mag = val.norm();
        if mag == 0.0 {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        let root = mag.sqrt();
        (val / root, root)
    }

    /// Quadrature estimate of `int_0^X |V|`.
    pub fn l1_norm(&self) -> f64 {
        let g = numkit::gauss_legendre(200, 0.0, self.support).expect("positive support");
        g.integrate(|x| self.value(x).norm())
    }

    /// First sampled point beyond the support where `|V|` exceeds the tail tolerance.
    fn tail_violation(&self) -> Option<f64> {
        if let Kind::Custom { sampler, .. } = &self.kind {
            for i in 1..=64 {
                let x = self.support * (1.0 + i as f64 / 16.0);
                if sampler(x).norm() > TAIL_TOLERANCE {
                    return Some(x);
                }
            }
        }
        None
    }
}
