//! Radial grids on the half line.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    LogUniform,
    Uniform,
}

/// Nodes `r₀ < … < r_{N−1}` with quadrature weights for `∫₀^∞ f dr`.
///
/// The staggered channel operator additionally uses a Dirichlet node one
/// step beyond the last node and the cell midpoints, both derived from the
/// scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub scheme: Scheme,
    /// `Δt = Δ ln r` for log grids, `h` for uniform ones.
    pub step: f64,
}

impl RadialGrid {
    /// `r_i = r_min e^{iΔt}`, trapezoid in `t = ln r` plus `r₀f(r₀)` for `[0, r₀]`.
    pub fn log_uniform(n: usize, rmin: f64, rmax: f64) -> Result<Self> {
        check(n, rmin, rmax)?;
        let dt = (rmax / rmin).ln() / (n - 1) as f64;
        let nodes: Vec<f64> = (0..n).map(|i| rmin * (i as f64 * dt).exp()).collect();
        let mut weights: Vec<f64> = nodes.iter().map(|r| r * dt).collect();
        weights[0] = weights[0] / 2.0 + nodes[0];
        weights[n - 1] /= 2.0;
        Ok(RadialGrid { nodes, weights, scheme: Scheme::LogUniform, step: dt })
    }

    /// `r_i = ih`, `i = 1..N`, with `h = r_max/(N+1)` so that `r_max` is the
    /// first node left out.
    pub fn uniform(n: usize, rmax: f64) -> Result<Self> {
        check(n, rmax / (n as f64 + 1.0), rmax)?;
        let h = rmax / (n as f64 + 1.0);
        let nodes = (1..=n).map(|i| i as f64 * h).collect();
        Ok(RadialGrid { nodes, weights: vec![h; n], scheme: Scheme::Uniform, step: h })
    }

    /// Frequency grid `ϱ_j = jπ/r_max` dual to a uniform grid; the discrete
    /// sine transform between the two is orthogonal.
    pub fn dual(&self) -> Result<Self> {
        match self.scheme {
            Scheme::Uniform => RadialGrid::uniform(self.len(), std::f64::consts::PI / self.step),
            Scheme::LogUniform => Err(Error::Config("dual grid needs a uniform grid".into())),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn rmin(&self) -> f64 {
        self.nodes[0]
    }

    pub fn rmax(&self) -> f64 {
        self.nodes[self.len() - 1]
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&r, &w)| w * f(r)).sum()
    }

    pub fn integrate_samples(&self, v: &[f64]) -> f64 {
        v.iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&r| f(r)).collect()
    }

    /// Node `N`, where the outer Dirichlet condition sits.
    pub fn outer_node(&self) -> f64 {
        self.shifted(self.len() as f64)
    }

    /// Point with fractional index `x`, e.g. `−1/2` for the ghost midpoint.
    pub fn shifted(&self, x: f64) -> f64 {
        match self.scheme {
            Scheme::LogUniform => self.nodes[0] * (x * self.step).exp(),
            Scheme::Uniform => (x + 1.0) * self.step,
        }
    }

    /// Distance between consecutive grid nodes at fractional index `x − 1/2 → x + 1/2`.
    pub fn spacing(&self, x: f64) -> f64 {
        self.shifted(x + 0.5) - self.shifted(x - 0.5)
    }
}

fn check(n: usize, rmin: f64, rmax: f64) -> Result<()> {
    if n < 8 {
        return Err(Error::Config(format!("grid needs N ≥ 8, got {n}")));
    }
    if !(rmin > 0.0 && rmax > rmin && rmax.is_finite()) {
        return Err(Error::Config(format!("bad grid range [{rmin}, {rmax}]")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_quadrature_of_exponential() {
        let g = RadialGrid::log_uniform(512, 1e-6, 60.0).unwrap();
        assert!((g.integrate(|r| (-r).exp()) - 1.0).abs() < 1e-6);
        assert!(g.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!((g.rmax() - 60.0).abs() < 1e-9);
    }

    #[test]
    fn uniform_and_dual() {
        let g = RadialGrid::uniform(1024, 20.0).unwrap();
        assert!((g.integrate(|r| r * (-r).exp()) - 1.0).abs() < 1e-4);
        let d = g.dual().unwrap();
        assert!((d.step - std::f64::consts::PI / 20.0).abs() < 1e-15);
        assert!((g.outer_node() - 20.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_small_grids() {
        assert!(RadialGrid::log_uniform(4, 1e-6, 1.0).is_err());
        assert!(RadialGrid::log_uniform(16, 1.0, 0.5).is_err());
        assert!(RadialGrid::uniform(8, 1.0).unwrap().dual().unwrap().dual().is_ok());
    }
}
