//! Furry-picture operator `P₊(|D^ν| − v)P₊` of a channel.

use super::channel::{channel_operator, RadialOperatorMatrix};
use super::grid::RadialGrid;
use super::linalg::SymEigen;
use super::potential::PotentialProfile;
use crate::constants::clr_constant;
use crate::error::Result;
use crate::special::ChannelIndex;
use faer::Mat;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct FurrySpectrum {
    pub nu: f64,
    pub l: u32,
    pub s: f64,
    pub n: usize,
    /// Dimension of the non-negative spectral subspace.
    pub positive_dim: usize,
    pub eigenvalues: Vec<f64>,
    pub negatives: usize,
    /// `C^Δ_{1/2}C_ν^{−3}∫tr(V₊)³`, absent at `ν = 1`.
    pub clr_bound: Option<f64>,
}

/// Log grid on `[1e−6, 1e6]`. Weak binding at `ν = 1` needs a box wider than
/// `1/|E|`, while the eigensolver's absolute accuracy degrades like
/// `1/(r₀Δt)`; this range keeps both under control for `c ≥ 0.05`.
pub fn virtual_level_grid(n: usize) -> Result<RadialGrid> {
    RadialGrid::log_uniform(n, 1e-6, 1e6)
}

/// `U₊ᵀ(|D| − v)U₊` where `U₊` spans the eigenvectors with eigenvalue ≥ 0.
pub fn furry_matrix(op: &RadialOperatorMatrix, v: &PotentialProfile) -> (Mat<f64>, SymEigen) {
    let e = op.eigen();
    let (u, vals) = e.subspace(|l| l >= 0.0);
    let pot: Vec<f64> = op.points().iter().map(|&r| v.eval(r)).collect();
    let vu = Mat::from_fn(u.nrows(), u.ncols(), |r, c| pot[r] * u.read(r, c));
    let mut m = u.transpose() * &vu;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let d = if i == j { vals[i] } else { 0.0 };
            m.write(i, j, d - m.read(i, j));
        }
    }
    (super::linalg::symmetrize(&m), e)
}

/// Massless channel operator at coupling `ν`, projected and perturbed by `−v`.
pub fn furry_operator(nu: f64, ch: ChannelIndex, v: &PotentialProfile, grid: &RadialGrid) -> Result<FurrySpectrum> {
    let op = channel_operator(nu, ch, 0.0, grid)?;
    let (m, _) = furry_matrix(&op, v);
    let eig = SymEigen::new(m.as_ref());
    let negatives = eig.values.iter().filter(|&&l| l < 0.0).count();
    let clr_bound = if nu < 1.0 {
        let wide = RadialGrid::log_uniform(2048, grid.rmin(), grid.rmax().max(200.0))?;
        Some(clr_constant(nu)? * v.integrability(&wide, 0.0).integral)
    } else {
        None
    };
    Ok(FurrySpectrum {
        nu,
        l: ch.l,
        s: ch.s.value(),
        n: grid.len(),
        positive_dim: m.nrows(),
        eigenvalues: eig.values,
        negatives,
        clr_bound,
    })
}
