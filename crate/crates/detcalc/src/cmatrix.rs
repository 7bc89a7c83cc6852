//! Dense complex matrices: LU, determinants, traces and singular values.

use crate::{c64, DetError};
use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Row-major dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, DetError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(DetError::Dimension(format!(
                "{rows}x{cols} matrix cannot hold {} entries",
                data.len()
            )));
        }
        if let Some(pos) = data
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(DetError::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![c64(0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c64(1.0);
        }
        m
    }

    /// Builds a matrix entrywise. Non-finite values are not checked here.
    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn require_square(&self, what: &str) -> Result<(), DetError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(DetError::Dimension(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    pub fn try_mul(&self, other: &CMatrix) -> Result<CMatrix, DetError> {
        if self.cols != other.rows {
            return Err(DetError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == c64(0.0) {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (r, b) in row.iter_mut().zip(brow) {
                    *r += a * b;
                }
            }
        }
        Ok(out)
    }

    fn try_zip(
        &self,
        other: &CMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<CMatrix, DetError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(DetError::Dimension(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_add(&self, other: &CMatrix) -> Result<CMatrix, DetError> {
        self.try_zip(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &CMatrix) -> Result<CMatrix, DetError> {
        self.try_zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// `I + self` for square matrices.
    pub fn plus_identity(&self) -> Result<CMatrix, DetError> {
        self.require_square("I + A")?;
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] += c64(1.0);
        }
        Ok(m)
    }

    /// `I - self` for square matrices.
    pub fn identity_minus(&self) -> Result<CMatrix, DetError> {
        (-self).plus_identity()
    }

    pub fn trace(&self) -> Result<Complex64, DetError> {
        self.require_square("trace")?;
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &CMatrix) -> Result<Complex64, DetError> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(DetError::Dimension(
                "trace of product needs shapes m x n and n x m".into(),
            ));
        }
        let mut s = c64(0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                s += self.data[i * self.cols + k] * other.data[k * other.cols + i];
            }
        }
        Ok(s)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn lu(&self) -> Result<Lu, DetError> {
        self.require_square("LU")?;
        Ok(Lu::factor(self.clone()))
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Result<Complex64, DetError> {
        Ok(self.lu()?.det())
    }

    pub fn inverse(&self) -> Result<CMatrix, DetError> {
        let lu = self.lu()?;
        lu.inverse().ok_or(DetError::NearSingular {
            condition: f64::INFINITY,
        })
    }

    /// One-norm condition number `|A|_1 |A^-1|_1` (infinite when singular).
    pub fn condition_estimate(&self) -> Result<f64, DetError> {
        let lu = self.lu()?;
        Ok(match lu.inverse() {
            Some(inv) => self.norm1() * inv.norm1(),
            None => f64::INFINITY,
        })
    }

    /// Singular values in descending order (one-sided Jacobi).
    pub fn singular_values(&self) -> Vec<f64> {
        let a = if self.rows >= self.cols {
            self.clone()
        } else {
            self.adjoint()
        };
        let (m, n) = (a.rows, a.cols);
        // column-major working copy
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|j| (0..m).map(|i| a[(i, j)]).collect())
            .collect();
        for _sweep in 0..80 {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                    let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                    let gamma: Complex64 = cols[p]
                        .iter()
                        .zip(&cols[q])
                        .map(|(x, y)| x.conj() * y)
                        .sum();
                    let g = gamma.norm();
                    if g <= 1e-15 * (alpha * beta).sqrt() || g == 0.0 {
                        continue;
                    }
                    rotated = true;
                    let phase = gamma / g;
                    let zeta = (beta - alpha) / (2.0 * g);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    let (left, right) = cols.split_at_mut(q);
                    for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                        let yq = *y * phase.conj();
                        let xp = *x;
                        *x = xp * c - yq * s;
                        *y = xp * s + yq * c;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<f64> = cols
            .iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        sv
    }

    /// Schatten `p`-norm `(sum sigma_i^p)^(1/p)`; `p = inf` gives the spectral norm.
    pub fn schatten_norm(&self, p: f64) -> f64 {
        let sv = self.singular_values();
        if p.is_infinite() {
            return sv.first().copied().unwrap_or(0.0);
        }
        let top = sv.first().copied().unwrap_or(0.0);
        if top == 0.0 {
            return 0.0;
        }
        top * sv
            .iter()
            .map(|s| (s / top).powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

/// # Panics
/// On incompatible shapes; use [`CMatrix::try_mul`] for a checked product.
impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.try_mul(rhs).expect("matrix product shapes")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.try_add(rhs).expect("matrix sum shapes")
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.try_sub(rhs).expect("matrix difference shapes")
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(c64(-1.0))
    }
}

/// LU factorization `P A = L U` with partial pivoting, stored in place.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    fn factor(mut a: CMatrix) -> Lu {
        let n = a.rows;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let mut piv = k;
            let mut best = a[(k, k)].norm();
            for i in k + 1..n {
                let v = a[(i, k)].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best == 0.0 {
                singular = true;
                continue;
            }
            if piv != k {
                for j in 0..n {
                    a.data.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
                sign = -sign;
            }
            let inv = 1.0 / a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] * inv;
                if f == c64(0.0) {
                    continue;
                }
                a[(i, k)] = f;
                let (top, bottom) = a.data.split_at_mut(i * n);
                let krow = &top[k * n + k + 1..k * n + n];
                let irow = &mut bottom[k + 1..n];
                for (x, y) in irow.iter_mut().zip(krow) {
                    *x -= f * y;
                }
            }
        }
        Lu {
            lu: a,
            perm,
            sign,
            singular,
        }
    }

    pub fn det(&self) -> Complex64 {
        if self.singular {
            return c64(0.0);
        }
        let n = self.lu.rows;
        (0..n).fold(c64(self.sign), |acc, i| acc * self.lu[(i, i)])
    }

    /// `log det` as `(ln |det|, sum of pivot arguments)`; the argument is not
    /// reduced modulo `2 pi`.
    pub fn log_det(&self) -> Option<Complex64> {
        if self.singular {
            return None;
        }
        let n = self.lu.rows;
        let mut s = if self.sign < 0.0 {
            Complex64::new(0.0, std::f64::consts::PI)
        } else {
            c64(0.0)
        };
        for i in 0..n {
            s += self.lu[(i, i)].ln();
        }
        Some(s)
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Solves `A x = b` for a single right-hand side.
    pub fn solve_vec(&self, b: &[Complex64]) -> Option<Vec<Complex64>> {
        if self.singular {
            return None;
        }
        let n = self.lu.rows;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        Some(x)
    }

    /// Solves `A X = B`.
    pub fn solve(&self, b: &CMatrix) -> Option<CMatrix> {
        if self.singular || b.rows != self.lu.rows {
            return None;
        }
        let n = self.lu.rows;
        let m = b.cols;
        let mut x = CMatrix::zeros(n, m);
        for (i, &p) in self.perm.iter().enumerate() {
            x.data[i * m..(i + 1) * m].copy_from_slice(&b.data[p * m..(p + 1) * m]);
        }
        for i in 0..n {
            let (done, rest) = x.data.split_at_mut(i * m);
            let row = &mut rest[..m];
            for j in 0..i {
                let f = self.lu[(i, j)];
                if f == c64(0.0) {
                    continue;
                }
                for (r, d) in row.iter_mut().zip(&done[j * m..(j + 1) * m]) {
                    *r -= f * d;
                }
            }
        }
        for i in (0..n).rev() {
            let (head, tail) = x.data.split_at_mut((i + 1) * m);
            let row = &mut head[i * m..];
            for j in i + 1..n {
                let f = self.lu[(i, j)];
                if f == c64(0.0) {
                    continue;
                }
                let off = (j - i - 1) * m;
                for (r, d) in row.iter_mut().zip(&tail[off..off + m]) {
                    *r -= f * d;
                }
            }
            let inv = 1.0 / self.lu[(i, i)];
            for r in row.iter_mut() {
                *r *= inv;
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<CMatrix> {
        self.solve(&CMatrix::identity(self.lu.rows))
    }
}

/// Regularized determinant `det_k(I + A) = det(I + A) exp(sum_{j<k} (-1)^j tr(A^j) / j)`.
///
/// Uses `det(exp X) = exp(tr X)`, so no matrix exponential is formed.
pub fn det_k(a: &CMatrix, k: u32) -> Result<Complex64, DetError> {
    if k == 0 {
        return Err(DetError::UnsupportedOrder(0));
    }
    let d = a.plus_identity()?.det()?;
    if k == 1 {
        return Ok(d);
    }
    let mut power = a.clone();
    let mut exponent = c64(0.0);
    for j in 1..k {
        if j > 1 {
            power = &power * a;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        exponent += sign * power.trace()? / j as f64;
    }
    Ok(d * exponent.exp())
}
