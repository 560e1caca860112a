//! Staggered finite-difference matrix of a radial Dirac channel.
//!
//! The channel acts on pairs `(F, G)` of functions of `r` as
//!
//! ```text
//!   [ M − ν/r      A*     ]        A = d/dr + a/r,   a = −ϰ,
//!   [   A       −M − ν/r  ]        ϰ = 2sl + s + 1/2,
//! ```
//!
//! so that `A*A = −d² + l(l+1)/r²` on the upper and `AA*` the same with the
//! lower orbital number. `F` lives on the grid nodes and `G` on the cell
//! midpoints, which gives a difference operator free of spurious doublers;
//! `F` vanishes one node past the grid.
//!
//! The inner end leaves `F` free and puts `G = 0` half a cell below the first
//! node, which matches `a < 0`, where `F` is the less regular component. For
//! `a > 0` the pair `(G, −F)` solves the same system with `(−a, −M)`, so
//! those channels are assembled in that form with `G` on the nodes.
//!
//! On critical channels the value of `G` below the first node is not set to
//! zero but continued with the small-`r` ratio of the regular solution,
//! `G = (Υ + a)/ν · F · (r'/r)^Υ`. This Robin closure picks the
//! distinguished extension for `ν > √3/2`, where both power solutions are
//! square integrable near the origin.

use super::grid::RadialGrid;
use super::linalg::{asymmetry, SymEigen};
use crate::constants::SQRT3_HALF;
use crate::error::{Error, Result};
use crate::special::{upsilon, ChannelIndex};
use faer::Mat;

pub const MAX_RMIN: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct RadialOperatorMatrix {
    /// Symmetric `2N × 2N` matrix in orthonormal coordinates, node values
    /// first: `(√w F, √ω G)`, or `(√w G, −√ω F)` when swapped.
    pub matrix: Mat<f64>,
    pub n: usize,
    pub f_points: Vec<f64>,
    pub f_weights: Vec<f64>,
    pub g_points: Vec<f64>,
    pub g_weights: Vec<f64>,
    pub channel: ChannelIndex,
    pub nu: f64,
    pub mass: f64,
    /// The distinguished extension differs from the closure of `C₀^∞`.
    pub extended: bool,
    /// Ghost ratio of the Robin closure, when one is used.
    pub robin: Option<f64>,
    /// Nodes carry `G` and midpoints `−F`.
    pub swapped: bool,
}

/// The first-order block `Ã = W_G^{1/2} A W_F^{−1/2}` (rows midpoints,
/// columns nodes) with the point and weight vectors.
pub struct FirstOrder {
    pub a: Mat<f64>,
    pub f_points: Vec<f64>,
    pub f_weights: Vec<f64>,
    pub g_points: Vec<f64>,
    pub g_weights: Vec<f64>,
}

pub fn first_order(grid: &RadialGrid, a: f64) -> FirstOrder {
    let n = grid.len();
    let x = |i: f64| grid.shifted(i);
    let f_points: Vec<f64> = (0..n).map(|i| x(i as f64)).collect();
    let f_weights: Vec<f64> = (0..n).map(|i| x(i as f64 + 0.5) - x(i as f64 - 0.5)).collect();
    let g_points: Vec<f64> = (0..n).map(|k| x(k as f64 + 0.5)).collect();
    let g_weights: Vec<f64> = (0..n).map(|k| x(k as f64 + 1.0) - x(k as f64)).collect();
    let mut m = Mat::zeros(n, n);
    for k in 0..n {
        let (o, rho) = (g_weights[k], g_points[k]);
        let s = o.sqrt();
        m.write(k, k, s * (-1.0 / o + a / (2.0 * rho)) / f_weights[k].sqrt());
        if k + 1 < n {
            m.write(k, k + 1, s * (1.0 / o + a / (2.0 * rho)) / f_weights[k + 1].sqrt());
        }
    }
    FirstOrder { a: m, f_points, f_weights, g_points, g_weights }
}

/// `a = −ϰ` in the convention `A = d/dr + a/r`.
pub fn channel_a(ch: &ChannelIndex) -> f64 {
    -(ch.kappa() as f64)
}

pub fn channel_operator(nu: f64, ch: ChannelIndex, mass: f64, grid: &RadialGrid) -> Result<RadialOperatorMatrix> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::Domain(format!("coupling ν = {nu} outside [0, 1]")));
    }
    if grid.rmin() > MAX_RMIN {
        return Err(Error::Config(format!("smallest node {} does not resolve r^Υ near 0 (need ≤ {MAX_RMIN})", grid.rmin())));
    }
    let (a, mass, swapped) = match channel_a(&ch) {
        a if a > 0.0 => (-a, -mass, true),
        a => (a, mass, false),
    };
    let fo = first_order(grid, a);
    let n = grid.len();
    let mut h = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        h.write(i, i, mass - nu / fo.f_points[i]);
        h.write(n + i, n + i, -mass - nu / fo.g_points[i]);
    }
    for k in 0..n {
        for i in k..(k + 2).min(n) {
            let v = fo.a.read(k, i);
            h.write(n + k, i, v);
            h.write(i, n + k, v);
        }
    }
    let critical = ch.is_critical();
    let robin = if critical && nu > 0.0 {
        let ups = upsilon(nu)?;
        let beta = (ups + a) / nu;
        let gp = grid.shifted(-0.5);
        let go = grid.shifted(0.0) - grid.shifted(-1.0);
        let ghost = go * (1.0 / go + a / (2.0 * gp)) * beta * (gp / fo.f_points[0]).powf(ups) / fo.f_weights[0];
        h.write(0, 0, h.read(0, 0) + ghost);
        Some(beta)
    } else {
        None
    };
    debug_assert!(asymmetry(h.as_ref()) < 1e-10);
    Ok(RadialOperatorMatrix {
        matrix: h,
        n,
        f_points: fo.f_points,
        f_weights: fo.f_weights,
        g_points: fo.g_points,
        g_weights: fo.g_weights,
        channel: ch,
        nu,
        mass: if swapped { -mass } else { mass },
        extended: critical && nu > SQRT3_HALF,
        robin,
        swapped,
    })
}

impl RadialOperatorMatrix {
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn eigen(&self) -> SymEigen {
        SymEigen::new(self.matrix.as_ref())
    }

    /// Radii of the `2N` coordinates, `F` first.
    pub fn points(&self) -> Vec<f64> {
        self.f_points.iter().chain(&self.g_points).copied().collect()
    }

    /// Orthonormal-coordinate vector of sampled upper and lower components.
    pub fn coordinates(&self, upper: impl Fn(f64) -> f64, lower: impl Fn(f64) -> f64) -> Vec<f64> {
        let node = |r: f64| if self.swapped { lower(r) } else { upper(r) };
        let mid = |r: f64| if self.swapped { -upper(r) } else { lower(r) };
        let fs = self.f_points.iter().zip(&self.f_weights).map(|(&r, &w)| w.sqrt() * node(r));
        let gs = self.g_points.iter().zip(&self.g_weights).map(|(&r, &w)| w.sqrt() * mid(r));
        fs.chain(gs).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> RadialGrid {
        RadialGrid::log_uniform(n, 1e-8, 100.0).unwrap()
    }

    fn ch(l: u32, s: f64) -> ChannelIndex {
        ChannelIndex::new(l, 0.5, s).unwrap()
    }

    #[test]
    fn free_massless_spectrum_is_symmetric() {
        let op = channel_operator(0.0, ch(0, 0.5), 0.0, &grid(256)).unwrap();
        let e = op.eigen();
        let n = e.len();
        for i in 0..n {
            // eigenvalues reach 1/(r₀Δt), so the comparison is relative
            assert!((e.values[i] + e.values[n - 1 - i]).abs() < 1e-8 * (1.0 + e.values[i].abs()));
        }
    }

    #[test]
    fn free_massive_gap() {
        let op = channel_operator(0.0, ch(0, 0.5), 1.0, &grid(1024)).unwrap();
        let m = op.eigen().min_abs();
        assert!((0.995..=1.001).contains(&m), "{m}");
    }

    #[test]
    fn coulomb_ground_state() {
        for nu in [0.5, 0.8] {
            let op = channel_operator(nu, ch(0, 0.5), 1.0, &grid(1024)).unwrap();
            let m = op.eigen().min_abs();
            let bound = (1.0 - nu * nu).sqrt();
            assert!(m >= bound - 5e-3, "ν={nu}: {m} vs {bound}");
            assert!(m <= bound + 5e-3, "ν={nu}: {m} vs {bound}");
        }
    }

    #[test]
    fn rejects_coarse_origin() {
        let g = RadialGrid::log_uniform(64, 1e-2, 10.0).unwrap();
        assert!(matches!(channel_operator(0.3, ch(0, 0.5), 1.0, &g), Err(Error::Config(_))));
        assert!(channel_operator(1.2, ch(0, 0.5), 1.0, &grid(16)).is_err());
    }

    #[test]
    fn swapped_channel_keeps_spectrum() {
        // the l = 1, s = −1/2 and l = 0, s = 1/2 channels share ϰ² = 1 and, at
        // ν = 0, the spectrum {±√(M² + k²)}
        let g = grid(512);
        let up = channel_operator(0.0, ch(0, 0.5), 1.0, &g).unwrap();
        let down = channel_operator(0.0, ch(1, -0.5), 1.0, &g).unwrap();
        assert!(down.swapped && !up.swapped);
        let (a, b) = (up.eigen(), down.eigen());
        assert!((a.min_abs() - b.min_abs()).abs() < 1e-3);
        assert!(b.values.iter().all(|l| l.abs() >= 1.0 - 1e-12));
    }

    #[test]
    fn extended_flag() {
        let g = grid(32);
        assert!(channel_operator(0.9, ch(0, 0.5), 1.0, &g).unwrap().extended);
        assert!(channel_operator(0.9, ch(1, -0.5), 1.0, &g).unwrap().extended);
        assert!(!channel_operator(0.8, ch(0, 0.5), 1.0, &g).unwrap().extended);
        assert!(!channel_operator(0.9, ch(1, 0.5), 1.0, &g).unwrap().extended);
    }
}
