//! `√(−Δ)` on the channel of orbital number `l`, as multiplication by `ϱ`
//! between two unitary Hankel transforms.

use super::grid::{RadialGrid, Scheme};
use super::linalg::{symmetrize, SymEigen};
use super::transforms::hankel_matrix;
use crate::error::{Error, Result};
use faer::Mat;

#[derive(Debug, Clone)]
pub struct LaplacianChannel {
    /// `Tᵀ diag(ϱ) T` in orthonormal coordinates `√h ψ_i`.
    pub matrix: Mat<f64>,
    pub l: u32,
    pub grid: RadialGrid,
    pub frequencies: RadialGrid,
}

/// Needs a uniform grid; the frequencies are its dual grid, for which the
/// `l = 0` transform is the orthogonal discrete sine transform.
pub fn sqrt_laplacian_channel(l: u32, grid: &RadialGrid) -> Result<LaplacianChannel> {
    if grid.scheme != Scheme::Uniform {
        return Err(Error::Config("the Hankel-side √(−Δ) needs a uniform grid".into()));
    }
    let freq = grid.dual()?;
    let t = hankel_matrix(l, grid, &freq);
    let scaled = Mat::from_fn(t.nrows(), t.ncols(), |j, i| freq.nodes[j] * t.read(j, i));
    let m = symmetrize(&(t.transpose() * &scaled));
    Ok(LaplacianChannel { matrix: m, l, grid: grid.clone(), frequencies: freq })
}

impl LaplacianChannel {
    /// Action on samples `ψ(r_i)`, returned as samples.
    pub fn apply(&self, psi: &[f64]) -> Vec<f64> {
        let h = self.grid.step.sqrt();
        let n = psi.len();
        (0..n).map(|i| (0..n).map(|j| self.matrix.read(i, j) * psi[j] * h).sum::<f64>() / h).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        SymEigen::new(self.matrix.as_ref()).values[0]
    }
}
