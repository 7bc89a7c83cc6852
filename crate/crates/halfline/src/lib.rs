//! Half-line Schroedinger operators `-d^2/dx^2 + V` on `(0, inf)` with
//! compactly supported potentials.
//!
//! Provides the regular and Jost solutions (Volterra product integration),
//! the Weyl-Titchmarsh m-functions, Nystrom Birman-Schwinger determinants for
//! Dirichlet and Neumann boundary conditions, the boundary scalar built from
//! the perturbed resolvent, and negative eigenvalues.

pub mod bound;
pub mod nystrom;
pub mod potential;
pub mod shoot;
pub mod volterra;

pub use bound::{bound_states, BoundState};
pub use nystrom::{
    boundary_scalar, boundary_scalar_with_grid, bs_matrix, det_halfline, det_halfline_with_grid,
    free_green, nystrom_perturbed_green, perturbed_green, Boundary,
};
pub use potential::{Potential1D, Preset, TAIL_TOLERANCE};
pub use shoot::{jost_by_shooting, shoot_jost, shoot_regular};
pub use volterra::{
    jost_function, jost_function_with_grid, m_functions, m_functions_from, solve_jost, solve_phi_d,
    solve_theta, JostData, MFunctions, SolutionKind, SolutionTable, DEFAULT_GRID, MIN_GRID,
};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HalfLineError {
    #[error("grid size {0} is below the minimum of {MIN_GRID}")]
    GridTooSmall(usize),
    #[error("spectral parameter {z} lies on the cut [0, inf)")]
    OnCut { z: Complex64 },
    #[error("z = {z} hits the spectrum of the {operator} operator")]
    EigenvalueHit {
        operator: &'static str,
        z: Complex64,
    },
    #[error("Volterra solution is not finite at z = {z}")]
    NonConvergent { z: Complex64 },
    #[error("position {x} is outside the half line")]
    OutOfDomain { x: f64 },
    #[error("bound states need a real potential")]
    ComplexPotential,
    #[error("search interval [{lo}, {hi}] must be nonempty and below 0")]
    BadInterval { lo: f64, hi: f64 },
    #[error("eigenvalue at the interval endpoint {lambda}; widen the search interval")]
    RootAtEndpoint { lambda: f64 },
    #[error(transparent)]
    Ode(#[from] numkit::OdeError),
    #[error(transparent)]
    Quad(#[from] numkit::QuadError),
    #[error(transparent)]
    Det(#[from] detcalc::DetError),
}
