//! Closed-form spectral constants: η_ν, C_ν, the non-critical coefficient,
//! massive coefficients, stability thresholds, critical couplings and the
//! CLR / Lieb-Thirring constants.

use crate::error::{domain, Error, Result};
use crate::special::{gamma_real, upsilon, ups_cot, v_l};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::Write;

pub const SQRT3_HALF: f64 = 0.866_025_403_784_438_6;
/// Half-width of the window around √3/2 where η_ν is interpolated.
pub const ETA_WINDOW: f64 = 1e-4;

fn check_coupling(nu: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&nu) {
        return domain(format!("coupling {nu} outside [0,1]"));
    }
    Ok(())
}

/// Exact value of η at ν = √3/2.
pub fn eta_at_sqrt3_half() -> f64 {
    1.0 / (3f64.sqrt() * (PI - 2.0))
}

/// Exact value of η at ν = 1.
pub fn eta_at_one() -> f64 {
    PI * (4.0 - 13f64.sqrt()) / (3.0 * (4.0 - PI))
}

fn eta_generic(nu: f64) -> f64 {
    let num = (9.0 + 4.0 * nu * nu).sqrt() - 4.0 * nu;
    let y = (1.0 - nu * nu).max(0.0).sqrt();
    num / (3.0 * (1.0 - 2.0 * crate::special::y_cot(y)))
}

fn lagrange(xs: &[f64; 4], ys: &[f64; 4], x: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        let mut w = ys[i];
        for j in 0..4 {
            if i != j {
                w *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        acc += w;
    }
    acc
}

pub fn eta(nu: f64) -> Result<f64> {
    check_coupling(nu)?;
    if nu == 1.0 {
        return Ok(eta_at_one());
    }
    let d = nu - SQRT3_HALF;
    if d.abs() >= ETA_WINDOW {
        return Ok(eta_generic(nu));
    }
    let (c, h) = (SQRT3_HALF, ETA_WINDOW);
    let xs = if d < 0.0 {
        [c - 2.0 * h, c - h, c, c + h]
    } else {
        [c - h, c, c + h, c + 2.0 * h]
    };
    let ys = xs.map(|x| if x == c { eta_at_sqrt3_half() } else { eta_generic(x) });
    Ok(lagrange(&xs, &ys, nu))
}

/// `C_ν = (1 − πΥ cot(πΥ/2)/2) η_ν`.
pub fn c_nu(nu: f64) -> Result<f64> {
    check_coupling(nu)?;
    if nu == 1.0 {
        return Ok(0.0);
    }
    Ok((1.0 - PI * ups_cot(nu)? / 2.0) * eta(nu)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinBranch {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreliminaryMin {
    pub first: f64,
    pub second: f64,
    pub value: f64,
    pub branch: MinBranch,
}

/// `V₀(0)/V₀(iΥ_ν)` evaluated through the Gamma quotient. At ν = 0 the
/// denominator has a pole and the ratio is 0.
pub fn v0_ratio(nu: f64) -> Result<f64> {
    let y = upsilon(nu)?;
    if y == 1.0 {
        return Ok(0.0);
    }
    let num = v_l(0, Complex64::new(0.0, 0.0))?.re;
    let den = v_l(0, Complex64::new(0.0, y))?.re;
    Ok(num / den)
}

/// Both entries of the minimum defining the preliminary constant.
pub fn c_nu_preliminary(nu: f64) -> Result<PreliminaryMin> {
    check_coupling(nu)?;
    let first = eta(nu)? * (1.0 - v0_ratio(nu)?);
    let second = non_critical_coeff(nu)?;
    let (value, branch) = if first <= second {
        (first, MinBranch::First)
    } else {
        (second, MinBranch::Second)
    };
    Ok(PreliminaryMin { first, second, value, branch })
}

/// `(√(225+4ν²) − 8ν)/15`.
pub fn non_critical_coeff(nu: f64) -> Result<f64> {
    check_coupling(nu)?;
    Ok(((225.0 + 4.0 * nu * nu).sqrt() - 8.0 * nu) / 15.0)
}

/// Table of the constants `L_λ`, supplied externally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LLambdaTable {
    entries: Vec<(f64, f64)>,
    pub provenance: String,
}

impl LLambdaTable {
    pub fn new(entries: Vec<(f64, f64)>, provenance: impl Into<String>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Input("empty L_lambda table".into()));
        }
        for (k, &(lam, l)) in entries.iter().enumerate() {
            if !(lam > 0.0 && lam < 1.0) || !(l > 0.0) || !l.is_finite() {
                return Err(Error::Input(format!("bad table entry ({lam}, {l})")));
            }
            if k > 0 && lam <= entries[k - 1].0 {
                return Err(Error::Input("lambda values must increase strictly".into()));
            }
        }
        Ok(LLambdaTable { entries, provenance: provenance.into() })
    }

    /// Placeholder table with `L_λ = 1` everywhere. Not the true constant.
    pub fn synthetic_unit() -> Self {
        let mut e = vec![(1e-9, 1.0)];
        e.extend((1..1000).map(|k| (k as f64 / 1000.0, 1.0)));
        e.push((1.0 - 1e-9, 1.0));
        LLambdaTable { entries: e, provenance: "synthetic: L_lambda = 1 (plumbing only)".into() }
    }

    pub fn entries(&self) -> &[(f64, f64)] {
        &self.entries
    }

    pub fn range(&self) -> (f64, f64) {
        (self.entries[0].0, self.entries[self.entries.len() - 1].0)
    }

    /// Value at λ, linearly interpolated between bracketing entries.
    pub fn lookup(&self, lam: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        if !(lam >= lo && lam <= hi) {
            return Err(Error::Unavailable(format!("L_lambda not tabulated at {lam}")));
        }
        let k = self.entries.partition_point(|e| e.0 < lam);
        let (l1, v1) = self.entries[k];
        if l1 == lam || k == 0 {
            return Ok(v1);
        }
        let (l0, v0) = self.entries[k - 1];
        Ok(v0 + (v1 - v0) * (lam - l0) / (l1 - l0))
    }
}

fn entropy_factor(lam: f64) -> f64 {
    (-lam * lam.ln() - (1.0 - lam) * (1.0 - lam).ln()).exp()
}

/// The two entries of the minimum defining `K_λ`.
pub fn k_lambda_entries(lam: f64, table: &LLambdaTable) -> Result<(f64, f64)> {
    if !(lam > 0.0 && lam < 1.0) {
        return domain(format!("lambda {lam} outside (0,1)"));
    }
    let l = table.lookup(lam)?;
    let first = l * eta_at_one().powf(lam);
    let second = entropy_factor(lam) * non_critical_coeff(1.0)?.powf(lam);
    Ok((first, second))
}

pub fn k_lambda(lam: f64, table: &LLambdaTable) -> Result<f64> {
    let (a, b) = k_lambda_entries(lam, table)?;
    Ok(a.min(b))
}

fn massive_raw(nu: f64) -> Result<(f64, f64)> {
    let yc = upsilon(nu)? * c_nu(nu)?;
    let c = c_nu(nu)?;
    Ok((yc, (yc / (1.0 + c)).max(1.0 - 2.0 * nu)))
}

/// `(Υ_ν C_ν, max{Υ_ν C_ν/(1+C_ν), 1 − 2ν})` for ν < 1.
pub fn massive_coeffs(nu: f64) -> Result<(f64, f64)> {
    check_coupling(nu)?;
    if nu == 1.0 {
        return domain("massive estimates exclude nu = 1");
    }
    massive_raw(nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMode {
    New,
    Old,
}

/// `4Υ_ν C_ν/π`.
pub fn alpha_threshold(nu: f64) -> Result<f64> {
    Ok(4.0 * upsilon(nu)? * c_nu(nu)? / PI)
}

/// The earlier threshold `(4/π)Υ_ν(√(4ν²+9) − 4ν)/3`.
pub fn alpha_threshold_old(nu: f64) -> Result<f64> {
    Ok(4.0 / PI * upsilon(nu)? * ((4.0 * nu * nu + 9.0).sqrt() - 4.0 * nu) / 3.0)
}

/// Largest Z with α below the threshold at ν = Zα.
pub fn max_atomic_number(alpha: f64, mode: ThresholdMode) -> Result<u32> {
    if !(alpha > 0.0) {
        return domain(format!("alpha {alpha} must be positive"));
    }
    if alpha >= 4.0 / PI {
        return Ok(0);
    }
    let thr = |nu: f64| match mode {
        ThresholdMode::New => alpha_threshold(nu),
        ThresholdMode::Old => alpha_threshold_old(nu),
    };
    let mut z = 0u32;
    loop {
        let nu = (z + 1) as f64 * alpha;
        if nu > 1.0 || alpha > thr(nu)? {
            return Ok(z);
        }
        z += 1;
    }
}

/// `α_l = 1/V_l(0) = 2Γ²((l+2)/2)/Γ²((l+1)/2)`.
pub fn alpha_l(l: u32) -> f64 {
    let a = gamma_real((l as f64 + 2.0) / 2.0);
    let b = gamma_real((l as f64 + 1.0) / 2.0);
    2.0 * (a / b).powi(2)
}

/// `C_t^Δ = (1/(4π²t))(3/(3−2t))^{(3−t)/t}`.
pub fn clr_delta(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.5) {
        return domain(format!("t = {t} outside (0, 3/2)"));
    }
    Ok((3.0 / (3.0 - 2.0 * t)).powf((3.0 - t) / t) / (4.0 * PI * PI * t))
}

/// `C_{1/2}^Δ C_ν^{−3}`.
pub fn clr_constant(nu: f64) -> Result<f64> {
    check_coupling(nu)?;
    if nu == 1.0 {
        return domain("no CLR bound at nu = 1 (virtual level)");
    }
    Ok(clr_delta(0.5)? / c_nu(nu)?.powi(3))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LtConstant {
    pub value: f64,
    /// Minimizing λ in the critical case.
    pub argmin: Option<f64>,
}

fn ln_gamma_pos(x: f64) -> f64 {
    crate::special::log_gamma(Complex64::new(x, 0.0)).map(|z| z.re).unwrap_or(f64::INFINITY)
}

/// Logarithm of the critical-case objective at λ.
fn lt_critical_ln(lam: f64, g: f64, table: &LLambdaTable) -> Result<f64> {
    let x = 3.0 + g - 3.0 / lam;
    let k = k_lambda(lam, table)?;
    let v = (1.0 + g) * g.ln() + g * lam.ln() + ln_gamma_pos(1.0 + 3.0 / lam) + ln_gamma_pos(x)
        + clr_delta(lam / 2.0)?.ln()
        - 3.0 / lam * k.ln()
        - ln_gamma_pos(4.0 + g)
        - 3.0 * (1.0 - lam) / lam * (3.0 - 3.0 * lam).ln()
        - x * ((3.0 + g) * lam - 3.0).ln();
    Ok(v)
}

/// Lieb-Thirring constant `C^LT_{ν,γ}`.
pub fn lt_constant(nu: f64, g: f64, table: &LLambdaTable) -> Result<LtConstant> {
    check_coupling(nu)?;
    if !(g > 0.0) {
        return domain(format!("gamma {g} must be positive"));
    }
    if nu < 1.0 {
        let value = 6.0 * clr_constant(nu)? / ((g + 1.0) * (g + 2.0) * (g + 3.0));
        return Ok(LtConstant { value, argmin: None });
    }
    let (tlo, thi) = table.range();
    let lo = (3.0 / (3.0 + g)).max(tlo);
    let hi = thi.min(1.0);
    if !(lo < hi) {
        return Err(Error::Unavailable("L_lambda table misses the critical window".into()));
    }
    const COARSE: usize = 1000;
    let step = (hi - lo) / (COARSE + 1) as f64;
    let pts: Vec<f64> = (1..=COARSE).map(|k| lo + k as f64 * step).collect();
    let mut best = (f64::INFINITY, 0usize);
    for (k, &lam) in pts.iter().enumerate() {
        let v = lt_critical_ln(lam, g, table)?;
        if v < best.0 {
            best = (v, k);
        }
    }
    if !best.0.is_finite() {
        return Err(Error::Unavailable("critical LT objective not finite".into()));
    }
    let k = best.1;
    let mut a = if k == 0 { lo + step * 1e-6 } else { pts[k - 1] };
    let mut b = if k + 1 == COARSE { hi - step * 1e-6 } else { pts[k + 1] };
    let f = |l: f64| lt_critical_ln(l, g, table).unwrap_or(f64::INFINITY);
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-10 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let mut lam = 0.5 * (a + b);
    let mut v = f(lam);
    if best.0 < v {
        lam = pts[k];
        v = best.0;
    }
    Ok(LtConstant { value: v.exp(), argmin: Some(lam) })
}

/// `n` equally spaced samples of `(ν, C_ν)` on [0,1].
pub fn curve_samples(n: usize) -> Result<Vec<(f64, f64)>> {
    if n < 2 {
        return domain("curve needs at least two samples");
    }
    (0..n)
        .map(|k| {
            let nu = if k == n - 1 { 1.0 } else { k as f64 / (n - 1) as f64 };
            Ok((nu, c_nu(nu)?))
        })
        .collect()
}

pub fn write_curve_csv<W: Write>(samples: &[(f64, f64)], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["nu", "c_nu"])?;
    for &(nu, c) in samples {
        wr.write_record([format!("{nu}"), format!("{c}")])?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub nu: f64,
    pub upsilon: f64,
    pub eta: f64,
    pub c_nu: f64,
    pub non_critical: f64,
    pub massive_1: f64,
    pub massive_2: f64,
    pub alpha_threshold: f64,
}

impl ConstantsReport {
    /// At ν = 1 the massive entries are reported as their limiting values.
    pub fn new(nu: f64) -> Result<Self> {
        check_coupling(nu)?;
        let (m1, m2) = massive_raw(nu)?;
        Ok(ConstantsReport {
            nu,
            upsilon: upsilon(nu)?,
            eta: eta(nu)?,
            c_nu: c_nu(nu)?,
            non_critical: non_critical_coeff(nu)?,
            massive_1: m1,
            massive_2: m2,
            alpha_threshold: alpha_threshold(nu)?,
        })
    }
}
