//! JSON run configuration.

use crate::Command;
use halfline::Preset;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BcChoice {
    Dirichlet,
    Neumann,
    Both,
}

impl BcChoice {
    pub fn boundaries(self) -> Vec<halfline::Boundary> {
        use halfline::Boundary::*;
        match self {
            BcChoice::Dirichlet => vec![Dirichlet],
            BcChoice::Neumann => vec![Neumann],
            BcChoice::Both => vec![Dirichlet, Neumann],
        }
    }
}

/// Evenly spaced points `lo, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Range {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        (0..self.count)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Product formula residual.
    pub product: f64,
    /// Half-line determinant and chain residuals.
    pub halfline: f64,
    /// Disk identity residuals.
    pub disk: f64,
    /// Distance of spectral shift values from integers.
    pub integer: f64,
    /// Determinant form of the Dirichlet/Neumann shift difference.
    pub phase: f64,
    /// `|d_{M} - 1|` above which a truncation warning is printed.
    pub truncation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            product: 1e-9,
            halfline: 1e-5,
            disk: 1e-3,
            integer: 1e-3,
            phase: 1e-2,
            truncation: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Must match the command on the command line when given.
    pub command: Option<String>,
    /// First CSV column; defaults to the command name.
    pub tag: Option<String>,
    #[serde(rename = "R")]
    pub radius: f64,
    pub potential: Preset,
    /// Single spectral parameter `[re, im]`.
    pub z: Option<[f64; 2]>,
    pub z_grid: Option<Vec<[f64; 2]>>,
    pub lambdas: Option<Vec<f64>>,
    pub lambda_range: Option<Range>,
    /// Eigenvalue search window `[lo, hi]`.
    pub window: Option<[f64; 2]>,
    pub bc: BcChoice,
    pub k: Option<u32>,
    #[serde(rename = "M_max")]
    pub m_max: u32,
    pub n_radial: usize,
    /// Half-line Nystrom size; extrapolated 400/800 when absent.
    pub n_grid: Option<usize>,
    pub trials: usize,
    pub dim: usize,
    pub k_max: u32,
    pub spectral_radius: f64,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// CSV file name inside the output directory.
    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            tag: None,
            radius: 1.0,
            potential: Preset::Zero {},
            z: None,
            z_grid: None,
            lambdas: None,
            lambda_range: None,
            window: None,
            bc: BcChoice::Both,
            k: None,
            m_max: 30,
            n_radial: 200,
            n_grid: None,
            trials: 500,
            dim: 8,
            k_max: 5,
            spectral_radius: 0.8,
            seed: 0,
            tolerances: Tolerances::default(),
            output: None,
        }
    }
}

/// Twenty points in the upper half plane with moduli spread over `[0.3, 30]`.
pub fn default_z_grid() -> Vec<[f64; 2]> {
    (0..20)
        .map(|i| {
            let r = 0.3 * 100f64.powf(i as f64 / 19.0);
            let th = 0.15 + 2.8 * ((i * 7) % 20) as f64 / 19.0;
            [r * th.cos(), r * th.sin()]
        })
        .collect()
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn finite_pair(p: &[f64; 2], what: &str) -> Result<(), String> {
    check(
        p[0].is_finite() && p[1].is_finite(),
        format!("{what}: entries must be finite"),
    )
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("config: {e}"))
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::from_json(&text)
    }

    pub fn tag(&self, cmd: Command) -> String {
        self.tag.clone().unwrap_or_else(|| cmd.name().to_string())
    }

    /// Spectral parameters: `z_grid`, else `z`, else the default grid.
    pub fn z_points(&self) -> Vec<[f64; 2]> {
        match (&self.z_grid, self.z) {
            (Some(g), _) => g.clone(),
            (None, Some(z)) => vec![z],
            (None, None) => default_z_grid(),
        }
    }

    pub fn lambda_points(&self) -> Vec<f64> {
        match (&self.lambdas, self.lambda_range) {
            (Some(l), _) => l.clone(),
            (None, Some(r)) => r.points(),
            (None, None) => Vec::new(),
        }
    }

    /// Checks the fields `cmd` reads.
    pub fn validate(&self, cmd: Command) -> Result<(), String> {
        if let Some(name) = &self.command {
            check(
                name == cmd.name(),
                format!("config is for command {name:?}, not {:?}", cmd.name()),
            )?;
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("product", t.product),
            ("halfline", t.halfline),
            ("disk", t.disk),
            ("integer", t.integer),
            ("phase", t.phase),
            ("truncation", t.truncation),
        ] {
            check(
                v.is_finite() && v > 0.0,
                format!("tolerances.{name} must be positive"),
            )?;
        }
        check(
            self.radius.is_finite() && self.radius > 0.0,
            "R must be positive",
        )?;
        self.potential.validate()?;
        if let Some(g) = &self.z_grid {
            check(!g.is_empty(), "z_grid must be nonempty")?;
        }
        for z in self.z_points() {
            finite_pair(&z, "z")?;
        }
        match cmd {
            Command::Tk => {
                let k = self.k.ok_or("tk needs k")?;
                check((1..=6).contains(&k), format!("k must be in 1..=6, got {k}"))
            }
            Command::VerifyProduct => {
                check(self.dim >= 1, "dim must be at least 1")?;
                check((1..=5).contains(&self.k_max), "k_max must be in 1..=5")?;
                check(
                    self.spectral_radius > 0.0 && self.spectral_radius < 1.0,
                    "spectral_radius must be in (0, 1)",
                )
            }
            Command::VerifyHalfline => {
                if let Some(n) = self.n_grid {
                    check(
                        n >= halfline::MIN_GRID,
                        format!("n_grid must be at least {}", halfline::MIN_GRID),
                    )?;
                }
                Ok(())
            }
            Command::VerifyDisk | Command::Spectra | Command::XiScan => {
                if let Some(k) = self.k {
                    check(k == 2, "disk computations use k = 2")?;
                }
                check(self.n_radial >= 8, "n_radial must be at least 8")?;
                match cmd {
                    Command::Spectra => {
                        let w = self.window.ok_or("spectra needs window [lo, hi]")?;
                        finite_pair(&w, "window")?;
                        check(w[0] < w[1], "window must satisfy lo < hi")
                    }
                    Command::XiScan => {
                        if let Some(r) = self.lambda_range {
                            check(
                                r.count >= 1 && r.lo <= r.hi,
                                "lambda_range needs count >= 1 and lo <= hi",
                            )?;
                        }
                        let pts = self.lambda_points();
                        check(!pts.is_empty(), "xi-scan needs lambdas or lambda_range")?;
                        check(pts.iter().all(|x| x.is_finite()), "lambdas must be finite")
                    }
                    _ => Ok(()),
                }
            }
        }
    }
}
