//! Schroedinger operators `-Laplace + V` on a disk of radius `R` with a radial
//! potential, decomposed into angular Fourier modes.
//!
//! Every operator in play (free and perturbed, Dirichlet and Neumann) acts
//! mode by mode, so Birman-Schwinger determinants, Dirichlet-to-Neumann
//! values and eigenvalue counts are products or sums over `m = 0, 1, ...`
//! with multiplicity 2 for `m >= 1`.

pub mod dtn;
pub mod identities;
pub mod modes;
pub mod potential;
pub mod radial;
pub mod spectrum;

pub use dtn::{dtn_mode, dtn_mode_free, dtn_ratio, ntd_mode};
pub use identities::{
    disk_reduction, dln_det_check, lemma35_mode_residual, lhs_ratio_det, mode_identities,
    neumann_variant, neumann_variant_residual, rhs_dtn_det, t2_mode, t2_trace, theorem42_residual,
    BoundaryBasis, DlnCheck, LhsRatio, ModeIdentities, ReductionReport, RhsDtn,
};
pub use modes::{
    bs_mode_matrix, det2, mode_green, mode_green_derivative, mode_wronskian_profile, ModeOperator,
};
pub use potential::{RadialGrid, RadialPotential};
pub use radial::{prufer_angle, radial_regular, radial_regular_with_seed, RegularSolution};
pub use spectrum::{
    counting, eig_detect, shift_relation_scan, theorem49_check, xi, xi_scan, CountRecord,
    DetectedEigenvalue, ModeCount, ShiftRelationRow,
};

pub use halfline::Boundary;
use num_complex::Complex64;

/// Angular multiplicity of mode `m`: `e^{+i m theta}` and `e^{-i m theta}`.
pub fn mult(m: u32) -> u32 {
    if m == 0 {
        1
    } else {
        2
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiskError {
    #[error("disk radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("potential: {0}")]
    BadPotential(String),
    #[error("radial grid needs at least {min} nodes, got {got}")]
    GridTooSmall { min: usize, got: usize },
    #[error("z = {z} is a Dirichlet eigenvalue of mode {m} ({operator})")]
    DirichletEigenvalue {
        m: u32,
        z: Complex64,
        operator: &'static str,
    },
    #[error("z = {z} is a Neumann eigenvalue of mode {m} ({operator})")]
    NeumannEigenvalue {
        m: u32,
        z: Complex64,
        operator: &'static str,
    },
    #[error("I + K is singular for mode {m} at z = {z}")]
    SingularMode { m: u32, z: Complex64 },
    #[error("modes above {m_max} reach down to {bound}, not above lambda = {lambda}; raise M_max")]
    TruncationInsufficient { m_max: u32, lambda: f64, bound: f64 },
    #[error("spectral operations need a real potential")]
    ComplexPotential,
    #[error("window [{lo}, {hi}] is empty")]
    BadWindow { lo: f64, hi: f64 },
    #[error("eigenvalue at the window endpoint {lambda} (mode {m}); move the window")]
    WindowEndpoint { m: u32, lambda: f64 },
    #[error(
        "mode {m}: {found} sign changes found but {expected} eigenvalues counted in the window"
    )]
    DetectionIncomplete {
        m: u32,
        found: usize,
        expected: usize,
    },
    #[error("mode {m}: determinant zero {detected} and shooting eigenvalue {shooting} disagree")]
    DetectionMismatch {
        m: u32,
        detected: f64,
        shooting: f64,
    },
    #[error("the determinant at the start of the real path, lambda = {lambda}, is not positive")]
    BadAnchor { lambda: f64 },
    #[error(transparent)]
    Ode(#[from] numkit::OdeError),
    #[error(transparent)]
    Quad(#[from] numkit::QuadError),
    #[error(transparent)]
    Bessel(#[from] numkit::BesselError),
    #[error(transparent)]
    Phase(#[from] numkit::PhaseError),
    #[error(transparent)]
    Det(#[from] detcalc::DetError),
}
