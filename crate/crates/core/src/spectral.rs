//! Second adjacency eigenvalue of regular graphs and the spectral
//! relation between ordinary and unique-neighbor expansion.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::metrics::{ordinary_expansion, unique_expansion};
use crate::ratio::Ratio;

const DENSE_LIMIT: usize = 64;
const POWER_TOL: f64 = 1e-9;
const POWER_MAX_ITERS: usize = 200_000;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectralEstimate {
    pub d: usize,
    pub lambda2: f64,
    pub tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Dense,
    Power,
}

pub fn lambda2(g: &Graph) -> Result<SpectralEstimate> {
    lambda2_with(g, Method::Auto)
}

pub fn lambda2_with(g: &Graph, method: Method) -> Result<SpectralEstimate> {
    let Some(d) = g.regular_degree() else {
        return domain("graph is not regular");
    };
    if g.n() < 2 || !g.is_connected() {
        return domain("graph must be connected with at least two vertices");
    }
    let dense = match method {
        Method::Auto => g.n() <= DENSE_LIMIT,
        Method::Dense => true,
        Method::Power => false,
    };
    let (lambda2, tolerance) = if dense { dense_lambda2(g) } else { power_lambda2(g, d) };
    Ok(SpectralEstimate { d, lambda2, tolerance })
}

fn dense_lambda2(g: &Graph) -> (f64, f64) {
    let n = g.n();
    let a: DMatrix<f64> = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let eig = SymmetricEigen::new(a.clone());
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    let k = order[1];
    let lambda = vals[k];
    let v = eig.eigenvectors.column(k);
    let residual = (&a * v - v * lambda).norm() / v.norm();
    (lambda, residual.max(f64::EPSILON * n as f64))
}

/// Power iteration on `A + dI` restricted to the complement of the all-ones
/// vector. The shift makes every eigenvalue non-negative so the dominant one
/// left after deflation is `λ₂ + d`.
fn power_lambda2(g: &Graph, d: usize) -> (f64, f64) {
    let n = g.n();
    let shift = d as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    deflate_normalize(&mut x);
    let mut theta = 0.0;
    let mut residual = f64::INFINITY;
    for _ in 0..POWER_MAX_ITERS {
        let ax = apply(g, &x);
        theta = dot(&x, &ax);
        residual = ax.iter().zip(&x).map(|(a, b)| (a - theta * b).powi(2)).sum::<f64>().sqrt();
        if residual < POWER_TOL {
            break;
        }
        let mut y: Vec<f64> = ax.iter().zip(&x).map(|(a, b)| a + shift * b).collect();
        deflate_normalize(&mut y);
        x = y;
    }
    (theta, residual)
}

fn apply(g: &Graph, x: &[f64]) -> Vec<f64> {
    (0..g.n()).map(|u| g.neighbors(u).iter().map(|&v| x[v]).sum()).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn deflate_normalize(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
    let norm = dot(x, x).sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

/// Both sides of `β ≥ (1 − 1/d)·β_u + (d − λ)(1 − α)/d`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectralCheck {
    pub beta: Ratio,
    pub beta_u: Ratio,
    pub spectrum: SpectralEstimate,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Slack for the floating-point right-hand side; equality cases (e.g. K_4)
/// are common.
pub const RELATION_SLACK: f64 = 1e-9;

pub fn check_spectral_relation(g: &Graph, alpha: Ratio) -> Result<SpectralCheck> {
    let spectrum = lambda2(g)?;
    let (beta, _) = ordinary_expansion(g, alpha)?;
    let (beta_u, _) = unique_expansion(g, alpha)?;
    let d = spectrum.d as f64;
    let lhs = beta.to_f64();
    let rhs = (1.0 - 1.0 / d) * beta_u.to_f64() + (d - spectrum.lambda2) * (1.0 - alpha.to_f64()) / d;
    let holds = lhs >= rhs - RELATION_SLACK - spectrum.tolerance;
    Ok(SpectralCheck { beta, beta_u, spectrum, lhs, rhs, holds })
}
