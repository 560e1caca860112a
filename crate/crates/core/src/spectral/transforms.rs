//! Quadrature Mellin and Hankel transforms on radial grids.

use super::bessel::{bessel_j_half, riccati_kernel};
use super::grid::{RadialGrid, Scheme};
use crate::error::{Error, Result};
use crate::special::xi;
use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// A quadrature value with an optional accuracy warning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    pub warning: Option<Warning>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Warning {
    /// Fraction of absolute mass on the outer 5% of the nodes.
    TailMass(f64),
    /// Nodes per Bessel period at the coarsest relevant spacing.
    Unresolved(f64),
}

const TAIL_LIMIT: f64 = 1e-6;

fn check_len(grid: &RadialGrid, psi: &[f64]) -> Result<()> {
    if psi.len() != grid.len() {
        return Err(Error::Input(format!("{} samples on a {}-node grid", psi.len(), grid.len())));
    }
    Ok(())
}

fn tail_fraction(grid: &RadialGrid, mass: &[f64]) -> f64 {
    let total: f64 = mass.iter().sum();
    let start = grid.len() - (grid.len() / 20).max(1);
    let tail: f64 = mass[start..].iter().sum();
    if total > 0.0 {
        tail / total
    } else {
        0.0
    }
}

/// `(1/√(2π)) ∫₀^∞ r^{−1/2−iτ} ψ(r) dr`.
///
/// Trapezoid in the natural variable of the grid; the piece `[0, r₀]` is
/// integrated exactly with `ψ` frozen at `ψ(r₀)`.
pub fn mellin_numeric(grid: &RadialGrid, psi: &[f64], tau: f64) -> Result<Quadrature<Complex64>> {
    check_len(grid, psi)?;
    let s = Complex64::new(0.5, -tau);
    let n = grid.len();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mass = Vec::with_capacity(n);
    for (i, (&r, &p)) in grid.nodes.iter().zip(psi).enumerate() {
        let w = match grid.scheme {
            Scheme::LogUniform => r * grid.step,
            Scheme::Uniform => grid.step,
        } * if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        sum += (-s.conj() * r.ln()).exp() * (w * p);
        mass.push((w * p).abs() / r.sqrt());
    }
    let r0 = grid.rmin();
    sum += (s * r0.ln()).exp() / s * psi[0];
    let frac = tail_fraction(grid, &mass);
    let warning = (frac > TAIL_LIMIT).then_some(Warning::TailMass(frac));
    Ok(Quadrature { value: sum / (2.0 * PI).sqrt(), warning })
}

fn resolution(grid: &RadialGrid, psi: &[f64], varrho: f64) -> Option<Warning> {
    let peak = psi.iter().fold(0.0f64, |a, p| a.max(p.abs()));
    let coarsest = (1..grid.len())
        .filter(|&i| psi[i].abs().max(psi[i - 1].abs()) > 1e-12 * peak)
        .map(|i| grid.nodes[i] - grid.nodes[i - 1])
        .fold(0.0f64, f64::max);
    let per_period = 2.0 * PI / (varrho * coarsest);
    (per_period < 8.0).then_some(Warning::Unresolved(per_period))
}

/// `∫₀^∞ √(ρ/ϱ) J_{l+1/2}(ρϱ) ψ(ρ) dρ`, the radial part of the Fourier
/// transform of `ρ^{−1}ψ(ρ)Ω(θ,φ)` without the `(−i)^l` phase.
pub fn hankel_channel(l: u32, grid: &RadialGrid, psi: &[f64], varrho: f64) -> Result<Quadrature<f64>> {
    check_len(grid, psi)?;
    if varrho <= 0.0 {
        return Err(Error::Domain(format!("ϱ = {varrho} must be positive")));
    }
    let value = grid
        .nodes
        .iter()
        .zip(&grid.weights)
        .zip(psi)
        .map(|((&r, &w), &p)| w * (r / varrho).sqrt() * bessel_j_half(l, r * varrho) * p)
        .sum();
    Ok(Quadrature { value, warning: resolution(grid, psi, varrho) })
}

/// `∫₀^∞ √(ρϱ) J_{l+1/2}(ρϱ) ψ(ρ) dρ`, unitary on `L²(ℝ₊)` and an involution.
pub fn hankel_unitary(l: u32, grid: &RadialGrid, psi: &[f64], varrho: f64) -> Result<Quadrature<f64>> {
    check_len(grid, psi)?;
    if varrho < 0.0 {
        return Err(Error::Domain(format!("ϱ = {varrho} must be non-negative")));
    }
    let value = grid
        .nodes
        .iter()
        .zip(&grid.weights)
        .zip(psi)
        .map(|((&r, &w), &p)| w * riccati_kernel(l, r * varrho) * p)
        .sum();
    let warning = if varrho > 0.0 { resolution(grid, psi, varrho) } else { None };
    Ok(Quadrature { value, warning })
}

/// Unitary transform sampled at every node of `target`; warns with the
/// worst resolution seen.
pub fn hankel_unitary_on(l: u32, grid: &RadialGrid, psi: &[f64], target: &RadialGrid) -> Result<(Vec<f64>, Option<Warning>)> {
    let out: Result<Vec<Quadrature<f64>>> = target.nodes.par_iter().map(|&k| hankel_unitary(l, grid, psi, k)).collect();
    let out = out?;
    let warning = out
        .iter()
        .filter_map(|q| q.warning)
        .min_by(|a, b| match (a, b) {
            (Warning::Unresolved(x), Warning::Unresolved(y)) => x.total_cmp(y),
            _ => std::cmp::Ordering::Equal,
        });
    Ok((out.into_iter().map(|q| q.value).collect(), warning))
}

/// Matrix of the unitary transform from `from` to `to` in orthonormal
/// coordinates `√w_i ψ_i`.
pub fn hankel_matrix(l: u32, from: &RadialGrid, to: &RadialGrid) -> Mat<f64> {
    Mat::from_fn(to.len(), from.len(), |j, i| {
        (to.weights[j] * from.weights[i]).sqrt() * riccati_kernel(l, to.nodes[j] * from.nodes[i])
    })
}

/// Worst `|𝓜(i^{−l}Uψ)(τ) − Ξ_l(τ)(𝓜ψ)(−τ)|` over `taus`.
///
/// `U` is evaluated on a fine uniform grid up to `ρ = 40` and sampled on a
/// log grid in `ϱ` up to 400; past that the transform of the test
/// functions is below the tolerance.
pub fn mellin_bessel_residual(l: u32, psi: impl Fn(f64) -> f64 + Sync, taus: &[f64]) -> Result<f64> {
    let fine = RadialGrid::uniform(16_000, 40.0)?;
    let samples = fine.sample(&psi);
    let freq = RadialGrid::log_uniform(1200, 1e-7, 400.0)?;
    let (u, _) = hankel_unitary_on(l, &fine, &samples, &freq)?;
    let space = RadialGrid::log_uniform(2048, 1e-9, 60.0)?;
    let direct = space.sample(&psi);
    let phase = Complex64::new(0.0, -1.0).powu(l);
    let mut worst = 0.0f64;
    for &t in taus {
        let lhs = mellin_numeric(&freq, &u, t)?.value * phase;
        let rhs = xi(l, t) * mellin_numeric(&space, &direct, -t)?.value;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}
