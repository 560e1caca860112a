//! Angular reduction `W_j(ρ)` of a 4×4 matrix potential and the sufficient
//! condition for a negative eigenvalue at critical coupling.

use super::grid::{RadialGrid, Scheme};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

pub type C2 = [[Complex64; 2]; 2];
pub type C4 = [[Complex64; 4]; 4];

/// The four sign pairs `j ∈ {−1, 1}²`.
pub const JS: [(i8, i8); 4] = [(-1, -1), (1, -1), (-1, 1), (1, 1)];

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngularOrders {
    pub theta: usize,
    pub phi: usize,
}

impl Default for AngularOrders {
    fn default() -> Self {
        AngularOrders { theta: 64, phi: 64 }
    }
}

#[derive(Debug, Clone)]
pub struct WProfile {
    pub j: (i8, i8),
    pub grid: RadialGrid,
    pub w: Vec<C2>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `⟨x, B y⟩` for the 2×2 block of `v` at `(row, col)`, conjugate-linear in `x`.
fn sandwich(v: &C4, row: usize, col: usize, x: [Complex64; 2], y: [Complex64; 2]) -> Complex64 {
    let mut s = c(0.0, 0.0);
    for a in 0..2 {
        for b in 0..2 {
            s += x[a].conj() * v[2 * row + a][2 * col + b] * y[b];
        }
    }
    s
}

/// `A_j(ρ, θ, φ)` as the four spinor sandwiches of the blocks of `V`.
pub fn a_matrix(v: &C4, j: (i8, i8), theta: f64, phi: f64) -> C2 {
    let (st, ct) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    let b = [e.conj() * st, c(-ct, 0.0)];
    let cc = [c(ct, 0.0), e * st];
    let (x1, y1, x2, y2) = match j {
        (-1, -1) => ([c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)], b, b),
        (1, -1) => ([c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 1.0), c(0.0, 0.0)], cc, cc),
        (-1, 1) => (b, b, [c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]),
        _ => (cc, cc, [c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, -1.0), c(0.0, 0.0)]),
    };
    [[sandwich(v, 0, 0, x1, x1), sandwich(v, 0, 1, y1, y2)], [sandwich(v, 1, 0, y2, y1), sandwich(v, 1, 1, x2, x2)]]
}

fn hermitian_defect(v: &C4) -> f64 {
    let mut d = 0.0f64;
    let mut scale = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            d = d.max((v[a][b] - v[b][a].conj()).norm());
            scale = scale.max(v[a][b].norm());
        }
    }
    d / (1.0 + scale)
}

/// `W_j(ρ) = ∫₀^π∫₀^{2π} A_j dφ sinθ dθ`: Gauss–Legendre in `cos θ`,
/// trapezoid in `φ`.
pub fn w_profile(
    v: impl Fn(f64, f64, f64) -> C4 + Sync,
    j: (i8, i8),
    grid: &RadialGrid,
    orders: AngularOrders,
) -> Result<WProfile> {
    if !JS.contains(&j) {
        return Err(Error::Input(format!("j = {j:?} not in {{−1, 1}}²")));
    }
    let (xs, ws) = gauss_legendre(orders.theta);
    let dphi = 2.0 * PI / orders.phi as f64;
    let out = grid
        .nodes
        .par_iter()
        .map(|&rho| {
            let mut acc = [[c(0.0, 0.0); 2]; 2];
            for (&x, &wt) in xs.iter().zip(&ws) {
                let theta = x.acos();
                for k in 0..orders.phi {
                    let phi = k as f64 * dphi;
                    let sample = v(rho, theta, phi);
                    if hermitian_defect(&sample) > 1e-12 {
                        return Err(Error::Input(format!("potential not Hermitian at (ρ, θ, φ) = ({rho}, {theta}, {phi})")));
                    }
                    let a = a_matrix(&sample, j, theta, phi);
                    for p in 0..2 {
                        for q in 0..2 {
                            acc[p][q] += a[p][q] * (wt * dphi);
                        }
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<C2>>>()?;
    Ok(WProfile { j, grid: grid.clone(), w: out })
}

/// `v(ρ)·I₄`.
pub fn scalar_sampler(v: impl Fn(f64) -> f64 + Sync) -> impl Fn(f64, f64, f64) -> C4 + Sync {
    move |rho, _, _| {
        let mut m = [[c(0.0, 0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = c(v(rho), 0.0);
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NegativeEigenvalueGuaranteed,
    NotGuaranteed,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct VirtualLevelRecord {
    pub j: (i8, i8),
    /// `∫‖W_j‖ρ²dρ`.
    pub norm_integral: f64,
    /// `∫⟨e, |W_j| e⟩dρ`, `e = (1, j₂)`.
    pub abs_integral: f64,
    /// `∫⟨e, W_j e⟩dρ`.
    pub sign_integral: f64,
    pub error_estimate: f64,
    pub tail_fraction: f64,
    pub norm_integrable: bool,
    pub abs_integrable: bool,
    pub verdict: Verdict,
}

/// Eigenvalues and `|W|` of a Hermitian 2×2 matrix.
fn abs_hermitian(w: &C2) -> (f64, f64, C2) {
    let a = w[0][0].re;
    let d = w[1][1].re;
    let b = w[0][1];
    let m = (a + d) / 2.0;
    let r = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
    let (l1, l2) = (m + r, m - r);
    if r <= 1e-14 * (a.abs() + d.abs()) {
        return (l1, l2, [[c(l1.abs(), 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(l2.abs(), 0.0)]]);
    }
    // |W| = α I + β W with α + βl = |l| at both eigenvalues
    let beta = (l1.abs() - l2.abs()) / (l1 - l2);
    let alpha = l1.abs() - beta * l1;
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for p in 0..2 {
        for q in 0..2 {
            out[p][q] = w[p][q] * beta + if p == q { c(alpha, 0.0) } else { c(0.0, 0.0) };
        }
    }
    (l1, l2, out)
}

fn form(w: &C2, j2: i8) -> f64 {
    let e = [1.0, j2 as f64];
    let mut s = c(0.0, 0.0);
    for p in 0..2 {
        for q in 0..2 {
            s += w[p][q] * (e[p] * e[q]);
        }
    }
    s.re
}

/// Grid quadrature, or the same rule on every other node for the error
/// estimate.
fn integrate(grid: &RadialGrid, f: &[f64], halved: bool) -> f64 {
    if !halved {
        return grid.integrate_samples(f);
    }
    let idx: Vec<usize> = (0..grid.len()).step_by(2).collect();
    let x = &grid.nodes;
    let t = |i: usize| match grid.scheme {
        Scheme::LogUniform => x[i].ln(),
        Scheme::Uniform => x[i],
    };
    let jac = |i: usize| match grid.scheme {
        Scheme::LogUniform => x[i],
        Scheme::Uniform => 1.0,
    };
    let mut s = x[0] * f[0];
    for w in idx.windows(2) {
        s += (t(w[1]) - t(w[0])) * (jac(w[0]) * f[w[0]] + jac(w[1]) * f[w[1]]) / 2.0;
    }
    s
}

pub fn virtual_level_predicate(w: &WProfile) -> VirtualLevelRecord {
    let x = &w.grid.nodes;
    let n = x.len();
    let mut norm = Vec::with_capacity(n);
    let mut absf = Vec::with_capacity(n);
    let mut sign = Vec::with_capacity(n);
    let mut tail_w = Vec::with_capacity(n);
    for (m, &rho) in w.w.iter().zip(x) {
        let (l1, l2, a) = abs_hermitian(m);
        let op = l1.abs().max(l2.abs());
        norm.push(op * rho * rho);
        absf.push(form(&a, w.j.1));
        sign.push(form(m, w.j.1));
        tail_w.push(op * (1.0 + rho * rho));
    }
    let g = &w.grid;
    let norm_integral = integrate(g, &norm, false);
    let abs_integral = integrate(g, &absf, false);
    let sign_integral = integrate(g, &sign, false);
    let coarse = integrate(g, &sign, true);
    let error_estimate = (sign_integral - coarse).abs() + 1e-13 * abs_integral;
    let total = integrate(g, &tail_w, false);
    let start = n - (n / 20).max(2);
    let tail: f64 = (start..n).map(|i| g.weights[i] * tail_w[i]).sum();
    let tail_fraction = if total > 0.0 { tail / total } else { 0.0 };
    let norm_integrable = norm_integral.is_finite();
    let abs_integrable = abs_integral.is_finite();
    let verdict = if tail_fraction > 1e-8 || !norm_integrable || !abs_integrable {
        Verdict::Inconclusive
    } else if sign_integral > error_estimate {
        Verdict::NegativeEigenvalueGuaranteed
    } else {
        Verdict::NotGuaranteed
    };
    VirtualLevelRecord {
        j: w.j,
        norm_integral,
        abs_integral,
        sign_integral,
        error_estimate,
        tail_fraction,
        norm_integrable,
        abs_integrable,
        verdict,
    }
}
