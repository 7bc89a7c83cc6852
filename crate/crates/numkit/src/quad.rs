//! Gauss-Legendre quadrature on intervals and panel partitions.

use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("empty interval: a = {a} is not below b = {b}")]
    EmptyInterval { a: f64, b: f64 },
    #[error("a rule needs at least one node")]
    NoNodes,
}

/// Nodes and weights of a (possibly composite) Gauss-Legendre rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub panels: usize,
    pub points_per_panel: usize,
}

impl QuadGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Sum of `w_i f(x_i)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Nodes and weights of the `n`-point rule on `[-1, 1]`, nodes ascending.
fn reference_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let half = (n + 1) / 2;
    for i in 0..half {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, t);
        if d != 0.0 {
            dp = d;
        }
        let weight = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}

/// `n`-point Gauss-Legendre rule mapped to `(a, b)`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<QuadGrid, QuadError> {
    composite_gauss_legendre(&[a, b], n)
}

/// Composite rule with `n` points on each panel `[breaks[i], breaks[i+1]]`.
pub fn composite_gauss_legendre(breaks: &[f64], n: usize) -> Result<QuadGrid, QuadError> {
    if n == 0 || breaks.len() < 2 {
        return Err(QuadError::NoNodes);
    }
    for pair in breaks.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(QuadError::EmptyInterval {
                a: pair[0],
                b: pair[1],
            });
        }
    }
    let (x, w) = reference_rule(n);
    let panels = breaks.len() - 1;
    let mut nodes = Vec::with_capacity(panels * n);
    let mut weights = Vec::with_capacity(panels * n);
    for pair in breaks.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        let half = 0.5 * (pair[1] - pair[0]);
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(mid + half * xi);
            weights.push(half * wi);
        }
    }
    Ok(QuadGrid {
        nodes,
        weights,
        panels,
        points_per_panel: n,
    })
}
