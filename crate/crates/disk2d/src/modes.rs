//! Free radial Green kernels and Birman-Schwinger matrices of a single mode.

use crate::radial::{inward, outward};
use crate::{Boundary, DiskError, RadialGrid, RadialPotential};
use detcalc::{CMatrix, Lu};
use num_complex::Complex64;

/// Free regular solution and one boundary solution on a grid, with the
/// constant `C = r (u1 u2' - u1' u2)` expressed in the scaled variables.
struct FreePair {
    m: u32,
    nodes: Vec<f64>,
    reg: Vec<Vec<Complex64>>,
    reg_end: Vec<Complex64>,
    bnd: Vec<Vec<Complex64>>,
    wronskian: Complex64,
    wronskian_z: Complex64,
}

fn boundary_start(m: u32, radius: f64, bc: Boundary) -> (Complex64, Complex64) {
    match bc {
        Boundary::Dirichlet => (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
        Boundary::Neumann => (
            Complex64::new(1.0, 0.0),
            Complex64::new(m as f64 / radius, 0.0),
        ),
    }
}

/// `r (w p' - p w') - 2 m w p`.
fn scaled_wronskian(
    m: u32,
    r: f64,
    w: Complex64,
    dw: Complex64,
    p: Complex64,
    dp: Complex64,
) -> Complex64 {
    r * (w * dp - p * dw) - 2.0 * m as f64 * w * p
}

fn hit(m: u32, z: Complex64, bc: Boundary) -> DiskError {
    match bc {
        Boundary::Dirichlet => DiskError::DirichletEigenvalue {
            m,
            z,
            operator: "free",
        },
        Boundary::Neumann => DiskError::NeumannEigenvalue {
            m,
            z,
            operator: "free",
        },
    }
}

impl FreePair {
    fn new(
        m: u32,
        z: Complex64,
        grid: &RadialGrid,
        bc: Boundary,
        dz: bool,
    ) -> Result<Self, DiskError> {
        let free = RadialPotential::zero(grid.radius)?;
        let (reg, reg_end) = outward(m, z, &free, &grid.nodes, 1.0, dz)?;
        let bnd = inward(m, z, &free, &grid.nodes, bc, dz)?;
        let (p, dp) = boundary_start(m, grid.radius, bc);
        let wronskian = scaled_wronskian(m, grid.radius, reg_end[0], reg_end[1], p, dp);
        let wronskian_z = if dz {
            scaled_wronskian(m, grid.radius, reg_end[2], reg_end[3], p, dp)
        } else {
            Complex64::new(0.0, 0.0)
        };
        if wronskian == Complex64::new(0.0, 0.0) || !wronskian.is_finite() {
            return Err(hit(m, z, bc));
        }
        Ok(Self {
            m,
            nodes: grid.nodes.clone(),
            reg,
            reg_end,
            bnd,
            wronskian,
            wronskian_z,
        })
    }

    fn ratio(&self, lo: usize, hi: usize) -> f64 {
        (self.nodes[lo] / self.nodes[hi]).powi(self.m as i32)
    }

    /// `g(r_i, r_j) = -phi(r<) psi(r>) / C`.
    fn kernel(&self) -> CMatrix {
        let n = self.nodes.len();
        CMatrix::from_fn(n, n, |i, j| {
            let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
            -self.ratio(lo, hi) * self.reg[lo][0] * self.bnd[hi][0] / self.wronskian
        })
    }

    /// `d/dz g(r_i, r_j)`.
    fn kernel_z(&self) -> CMatrix {
        let n = self.nodes.len();
        let c = self.wronskian;
        CMatrix::from_fn(n, n, |i, j| {
            let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
            let rho = self.ratio(lo, hi);
            let (w, wz) = (self.reg[lo][0], self.reg[lo][2]);
            let (p, pz) = (self.bnd[hi][0], self.bnd[hi][2]);
            -rho * (wz * p + w * pz) / c + rho * w * p * self.wronskian_z / (c * c)
        })
    }
}

/// Free radial Green kernel of mode `m` for `bc` at `z`, sampled on the grid
/// nodes. It is the kernel of `(H_0 - z)^{-1}` on `L^2((0, R); r dr)`.
pub fn mode_green(
    m: u32,
    z: Complex64,
    bc: Boundary,
    grid: &RadialGrid,
) -> Result<CMatrix, DiskError> {
    Ok(FreePair::new(m, z, grid, bc, false)?.kernel())
}

/// The kernel and its exact `z`-derivative, from the variational equations.
pub fn mode_green_derivative(
    m: u32,
    z: Complex64,
    bc: Boundary,
    grid: &RadialGrid,
) -> Result<(CMatrix, CMatrix), DiskError> {
    let pair = FreePair::new(m, z, grid, bc, true)?;
    Ok((pair.kernel(), pair.kernel_z()))
}

/// `r (u1 u2' - u1' u2)` of the free regular and boundary solutions at every
/// grid node, in the scaled normalization.
pub fn mode_wronskian_profile(
    m: u32,
    z: Complex64,
    bc: Boundary,
    grid: &RadialGrid,
) -> Result<Vec<Complex64>, DiskError> {
    let pair = FreePair::new(m, z, grid, bc, false)?;
    Ok((0..grid.len())
        .map(|i| {
            scaled_wronskian(
                m,
                grid.nodes[i],
                pair.reg[i][0],
                pair.reg[i][1],
                pair.bnd[i][0],
                pair.bnd[i][1],
            )
        })
        .collect())
}

/// `u(r_i) sqrt(w_i r_i)` and `sqrt(w_i r_i) v(r_i)`.
fn factors(v: &RadialPotential, grid: &RadialGrid) -> (Vec<Complex64>, Vec<f64>) {
    grid.nodes
        .iter()
        .zip(&grid.area)
        .map(|(&r, &a)| {
            let (u, vv) = v.factors(r);
            (u * a.sqrt(), vv * a.sqrt())
        })
        .unzip()
}

fn sandwich(left: &[Complex64], g: &CMatrix, right: &[f64]) -> CMatrix {
    let n = left.len();
    CMatrix::from_fn(n, n, |i, j| left[i] * g[(i, j)] * right[j])
}

/// `M_ij = u(r_i) sqrt(w_i r_i) g(r_i, r_j) sqrt(w_j r_j) v(r_j)`, the mode
/// block of `u (H_0 - z)^{-1} v`.
pub fn bs_mode_matrix(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    bc: Boundary,
    grid: &RadialGrid,
) -> Result<CMatrix, DiskError> {
    let g = mode_green(m, z, bc, grid)?;
    let (left, right) = factors(v, grid);
    Ok(sandwich(&left, &g, &right))
}

/// `u sqrt(wr) g sqrt(wr) v` for a given kernel, with the LU factors of `I + K`.
pub(crate) fn sandwich_parts(
    v: &RadialPotential,
    grid: &RadialGrid,
    g: &CMatrix,
) -> Result<(CMatrix, Lu), DiskError> {
    let (left, right) = factors(v, grid);
    let k = sandwich(&left, g, &right);
    let lu = k.plus_identity()?.lu()?;
    Ok((k, lu))
}

/// [`bs_mode_matrix`] with the LU factors of `I + K`.
pub(crate) fn bs_mode_matrix_parts(
    m: u32,
    z: Complex64,
    v: &RadialPotential,
    bc: Boundary,
    grid: &RadialGrid,
) -> Result<(CMatrix, Lu), DiskError> {
    sandwich_parts(v, grid, &mode_green(m, z, bc, grid)?)
}

/// `det_2(I + M) = det(I + M) exp(-tr M)`.
pub fn det2(mat: &CMatrix) -> Result<Complex64, DiskError> {
    Ok(detcalc::det_k(mat, 2)?)
}

/// `log det_2(I + M)` from the LU pivots; the imaginary part is a sum of
/// pivot arguments, not reduced to a principal value.
pub(crate) fn log_det2(lu: &Lu, mat: &CMatrix) -> Option<Complex64> {
    Some(lu.log_det()? - mat.trace().ok()?)
}

/// Everything needed for the mode-wise identities at one `(m, z)`: free
/// kernels for both boundary conditions, the Birman-Schwinger matrices and
/// their factorizations, and the boundary kernels
/// `a(r') = d/dr g_D(R, r')` and `b(r') = g_N(r', R)`.
#[derive(Debug, Clone)]
pub struct ModeOperator {
    pub m: u32,
    pub z: Complex64,
    pub radius: f64,
    pub g_d: CMatrix,
    pub g_n: CMatrix,
    pub k_d: CMatrix,
    pub k_n: CMatrix,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    /// `w_i r_i V(r_i)`.
    pub area_v: Vec<Complex64>,
    left: Vec<Complex64>,
    right: Vec<f64>,
    lu_d: Lu,
    lu_n: Lu,
}

impl ModeOperator {
    pub fn new(
        m: u32,
        z: Complex64,
        v: &RadialPotential,
        grid: &RadialGrid,
    ) -> Result<Self, DiskError> {
        let pair_d = FreePair::new(m, z, grid, Boundary::Dirichlet, false)?;
        let pair_n = FreePair::new(m, z, grid, Boundary::Neumann, false)?;
        let g_d = pair_d.kernel();
        let g_n = pair_n.kernel();
        let (left, right) = factors(v, grid);
        let k_d = sandwich(&left, &g_d, &right);
        let k_n = sandwich(&left, &g_n, &right);
        let lu_d = k_d.plus_identity()?.lu()?;
        let lu_n = k_n.plus_identity()?.lu()?;
        if lu_d.is_singular() || lu_n.is_singular() {
            return Err(DiskError::SingularMode { m, z });
        }
        let radius = grid.radius;
        let (w_end, dw_end) = (pair_d.reg_end[0], pair_d.reg_end[1]);
        let dphi = m as f64 * w_end + radius * dw_end;
        if dphi == Complex64::new(0.0, 0.0) {
            return Err(hit(m, z, Boundary::Neumann));
        }
        let mut a = Vec::with_capacity(grid.len());
        let mut b = Vec::with_capacity(grid.len());
        for (i, &r) in grid.nodes.iter().enumerate() {
            let phi = (r / radius).powi(m as i32) * pair_d.reg[i][0];
            a.push(-phi / (radius * w_end));
            b.push(phi / dphi);
        }
        let area_v = grid
            .nodes
            .iter()
            .zip(&grid.area)
            .map(|(&r, &w)| w * v.value(r))
            .collect();
        Ok(Self {
            m,
            z,
            radius,
            g_d,
            g_n,
            k_d,
            k_n,
            a,
            b,
            area_v,
            left,
            right,
            lu_d,
            lu_n,
        })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    fn parts(&self, bc: Boundary) -> (&CMatrix, &CMatrix, &Lu) {
        match bc {
            Boundary::Dirichlet => (&self.g_d, &self.k_d, &self.lu_d),
            Boundary::Neumann => (&self.g_n, &self.k_n, &self.lu_n),
        }
    }

    pub fn log_det2(&self, bc: Boundary) -> Result<Complex64, DiskError> {
        let (_, k, lu) = self.parts(bc);
        log_det2(lu, k).ok_or(DiskError::SingularMode {
            m: self.m,
            z: self.z,
        })
    }

    /// `alpha^T G^V beta` for the perturbed kernel
    /// `G^V = G_0 - G_0 diag(sqrt(wr) v) (I + K)^{-1} diag(u sqrt(wr)) G_0`.
    pub fn perturbed_form(
        &self,
        bc: Boundary,
        alpha: &[Complex64],
        beta: &[Complex64],
    ) -> Result<Complex64, DiskError> {
        let (g, _, lu) = self.parts(bc);
        let n = self.len();
        let g_beta: Vec<Complex64> = (0..n)
            .map(|i| (0..n).map(|j| g[(i, j)] * beta[j]).sum())
            .collect();
        let rhs: Vec<Complex64> = (0..n).map(|i| self.left[i] * g_beta[i]).collect();
        let sol = lu.solve_vec(&rhs).ok_or(DiskError::SingularMode {
            m: self.m,
            z: self.z,
        })?;
        let direct: Complex64 = alpha.iter().zip(&g_beta).map(|(x, y)| x * y).sum();
        let mut alpha_g = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for (j, acc) in alpha_g.iter_mut().enumerate() {
                *acc += alpha[i] * g[(i, j)];
            }
        }
        let corr: Complex64 = (0..n).map(|j| alpha_g[j] * self.right[j] * sol[j]).sum();
        Ok(direct - corr)
    }

    /// The row vector `alpha^T G^V`.
    pub fn perturbed_row(
        &self,
        bc: Boundary,
        alpha: &[Complex64],
    ) -> Result<Vec<Complex64>, DiskError> {
        let (g, k, _) = self.parts(bc);
        let n = self.len();
        let mut alpha_g = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for (j, acc) in alpha_g.iter_mut().enumerate() {
                *acc += alpha[i] * g[(i, j)];
            }
        }
        let rhs: Vec<Complex64> = (0..n).map(|j| alpha_g[j] * self.right[j]).collect();
        let lu_t = k.plus_identity()?.transpose().lu()?;
        let s = lu_t.solve_vec(&rhs).ok_or(DiskError::SingularMode {
            m: self.m,
            z: self.z,
        })?;
        let mut row = alpha_g;
        for i in 0..n {
            let si = s[i] * self.left[i];
            for (j, out) in row.iter_mut().enumerate() {
                *out -= si * g[(i, j)];
            }
        }
        Ok(row)
    }
}
