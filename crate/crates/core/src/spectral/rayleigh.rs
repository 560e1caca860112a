//! Rayleigh quotients `⟨x, |D^ν|x⟩ / ⟨x, √(−Δ)x⟩` on a channel.
//!
//! The denominator is `|D⁰|` of the massless free channel on the same grid.
//! In the continuum `(D⁰)² = −Δ` on each component, so this is `√(−Δ)`
//! discretized consistently with the numerator, and the ratio is exactly 1
//! at `ν = 0`.

use super::channel::{channel_operator, RadialOperatorMatrix};
use super::grid::RadialGrid;
use super::linalg::{symmetrize, SymEigen};
use crate::constants::{k_lambda, LLambdaTable};
use crate::error::{Error, Result};
use crate::special::ChannelIndex;
use faer::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Denominator eigenvalues below this are treated as unresolved.
pub const RESOLUTION_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct RayleighReport {
    pub nu: f64,
    pub l: u32,
    pub s: f64,
    pub n: usize,
    /// Smallest generalized eigenvalue on the resolved subspace.
    pub generalized_min: f64,
    /// Smallest ratio among the random trial vectors.
    pub trial_min: f64,
    pub worst_ratio: f64,
    pub trials: usize,
    /// Trial vectors dropped for a tiny denominator.
    pub excluded: usize,
    /// Directions dropped from the generalized problem.
    pub unresolved: usize,
}

/// `U f(Λ) Uᵀ` kept in factored form.
struct Weighted<'a> {
    eig: &'a SymEigen,
    f: Vec<f64>,
}

impl<'a> Weighted<'a> {
    fn new(eig: &'a SymEigen, f: impl Fn(f64) -> f64) -> Self {
        Weighted { eig, f: eig.values.iter().map(|&l| f(l)).collect() }
    }

    /// `Σ f_k (u_kᵀx)²`.
    fn quad(&self, x: &[f64]) -> f64 {
        let u = &self.eig.vectors;
        (0..u.ncols())
            .map(|k| {
                let c: f64 = (0..u.nrows()).map(|r| u.read(r, k) * x[r]).sum();
                self.f[k] * c * c
            })
            .sum()
    }
}

/// `min ⟨x,Px⟩/⟨x,Qx⟩` over the span of eigenvectors of `Q` above the floor.
fn generalized_min(p: &Weighted, q: &Weighted) -> (f64, usize) {
    let idx: Vec<usize> = (0..q.f.len()).filter(|&k| q.f[k] > RESOLUTION_FLOOR).collect();
    let unresolved = q.f.len() - idx.len();
    let v = &q.eig.vectors;
    let scaled = Mat::from_fn(v.nrows(), idx.len(), |r, c| v.read(r, idx[c]) / q.f[idx[c]].sqrt());
    let w = p.eig.vectors.transpose() * &scaled;
    let fw = Mat::from_fn(w.nrows(), w.ncols(), |r, c| p.f[r] * w.read(r, c));
    let c = symmetrize(&(w.transpose() * &fw));
    let e = SymEigen::new(c.as_ref());
    (e.values[0], unresolved)
}

/// Random smooth `(F, G)`: a few Gaussian bumps in `ln r`.
fn trial_vector(op: &RadialOperatorMatrix, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let (lo, hi) = (op.f_points[0].ln(), op.f_points[op.n - 1].ln());
    let bumps: Vec<(f64, f64, f64, f64)> = (0..4)
        .map(|_| {
            let c = rng.gen_range(lo + 0.2 * (hi - lo)..hi - 0.2 * (hi - lo));
            let w = rng.gen_range(0.3..3.0);
            (c, w, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
        .collect();
    let f = |r: f64, upper: bool| -> f64 {
        bumps
            .iter()
            .map(|&(c, w, a, b)| (if upper { a } else { b }) * (-((r.ln() - c) / w).powi(2) / 2.0).exp())
            .sum()
    };
    op.coordinates(|r| f(r, true), |r| f(r, false))
}

fn trial_min(num: &Weighted, den: &Weighted, op: &RadialOperatorMatrix, trials: usize, seed: u64) -> (f64, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let mut excluded = 0;
    for _ in 0..trials {
        let x = trial_vector(op, &mut rng);
        let norm: f64 = x.iter().map(|v| v * v).sum();
        let d = den.quad(&x);
        if d < RESOLUTION_FLOOR * norm {
            excluded += 1;
            continue;
        }
        worst = worst.min(num.quad(&x) / d);
    }
    (worst, excluded)
}

/// Free massless reference `|D⁰|` on the channel.
pub fn reference(ch: ChannelIndex, grid: &RadialGrid) -> Result<SymEigen> {
    let e = channel_operator(0.0, ch, 0.0, grid)?.eigen();
    Ok(SymEigen { values: e.values.iter().map(|l| l.abs()).collect(), vectors: e.vectors })
}

/// Worst `⟨x,|D^ν|x⟩/⟨x,√(−Δ)x⟩` for the massless channel operator.
pub fn rayleigh_check(nu: f64, ch: ChannelIndex, grid: &RadialGrid, trials: usize, seed: u64) -> Result<RayleighReport> {
    rayleigh_check_against(nu, ch, grid, &reference(ch, grid)?, trials, seed)
}

/// As [`rayleigh_check`] with a precomputed [`reference`] for the same
/// channel and grid, so sweeps over `ν` decompose it once.
pub fn rayleigh_check_against(
    nu: f64,
    ch: ChannelIndex,
    grid: &RadialGrid,
    refe: &SymEigen,
    trials: usize,
    seed: u64,
) -> Result<RayleighReport> {
    let op = channel_operator(nu, ch, 0.0, grid)?;
    if refe.len() != op.dim() {
        return Err(Error::Config("reference decomposition does not match the grid".into()));
    }
    let eig = op.eigen();
    let num = Weighted::new(&eig, f64::abs);
    let den = Weighted::new(refe, |l| l);
    let (gmin, unresolved) = generalized_min(&num, &den);
    let (tmin, excluded) = trial_min(&num, &den, &op, trials, seed);
    Ok(RayleighReport {
        nu,
        l: ch.l,
        s: ch.s.value(),
        n: grid.len(),
        generalized_min: gmin,
        trial_min: tmin,
        worst_ratio: gmin.min(tmin),
        trials,
        excluded,
        unresolved,
    })
}

/// The `ν = 1` family `|D¹| + a^{−1} ≥ K_λ a^{λ−1}(−Δ)^{λ/2}`: returns the
/// worst `⟨x,(|D¹| + 1/a)x⟩ / ⟨x, K_λ a^{λ−1}|D⁰|^λ x⟩`, to be compared with 1.
pub fn rayleigh_check_family(
    ch: ChannelIndex,
    grid: &RadialGrid,
    lam: f64,
    a: f64,
    table: &LLambdaTable,
    trials: usize,
    seed: u64,
) -> Result<RayleighReport> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("scale a = {a} must be positive")));
    }
    let k = k_lambda(lam, table)?;
    let op = channel_operator(1.0, ch, 0.0, grid)?;
    let eig = op.eigen();
    let num = Weighted::new(&eig, |l| l.abs() + 1.0 / a);
    let refe = reference(ch, grid)?;
    let c = k * a.powf(lam - 1.0);
    let den = Weighted::new(&refe, |l| c * l.powf(lam));
    let (gmin, unresolved) = generalized_min(&num, &den);
    let (tmin, excluded) = trial_min(&num, &den, &op, trials, seed);
    Ok(RayleighReport {
        nu: 1.0,
        l: ch.l,
        s: ch.s.value(),
        n: grid.len(),
        generalized_min: gmin,
        trial_min: tmin,
        worst_ratio: gmin.min(tmin),
        trials,
        excluded,
        unresolved,
    })
}
