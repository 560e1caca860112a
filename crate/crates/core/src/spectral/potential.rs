//! Radial scalar potentials `v(r) ≥ 0`, from a named family or a CSV table.

use super::grid::RadialGrid;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::Read;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Zero,
    /// `c e^{−r}`
    Exp,
    /// `c e^{−r}/r`
    Yukawa,
    /// `c e^{−r²}`
    Gaussian,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(Family::Zero),
            "exp" => Ok(Family::Exp),
            "yukawa" => Ok(Family::Yukawa),
            "gaussian" => Ok(Family::Gaussian),
            _ => Err(Error::Input(format!("unknown potential family '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PotentialProfile {
    Family { family: Family, strength: f64 },
    /// Linear interpolation of `(r, v)` rows, zero past the last row.
    Sampled { r: Vec<f64>, v: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Integrability {
    /// `∫ tr(V₊^{3+γ}) d³x = 16π ∫ v^{3+γ} r² dr`.
    pub integral: f64,
    /// Share of the integral carried by the outer 5% of the grid.
    pub tail_fraction: f64,
    pub integrable: bool,
}

impl PotentialProfile {
    pub fn family(family: Family, strength: f64) -> Result<Self> {
        if !(strength >= 0.0 && strength.is_finite()) {
            return Err(Error::Input(format!("strength {strength} must be finite and non-negative")));
        }
        Ok(PotentialProfile::Family { family, strength })
    }

    pub fn sampled(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() != v.len() || r.len() < 2 {
            return Err(Error::Input("potential table needs at least two (r, v) rows".into()));
        }
        if r.windows(2).any(|w| !(w[0] < w[1])) || r[0] < 0.0 {
            return Err(Error::Input("potential radii must be non-negative and increasing".into()));
        }
        if v.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::Input("potential values must be finite and non-negative".into()));
        }
        Ok(PotentialProfile::Sampled { r, v })
    }

    /// CSV with header `r,v`.
    pub fn from_csv_reader<R: Read>(rd: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(rd);
        let headers = rdr.headers()?.clone();
        let col = |name: &str| headers.iter().position(|h| h.trim() == name);
        let (ir, iv) = match (col("r"), col("v")) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Input("potential CSV needs columns r,v".into())),
        };
        let (mut r, mut v) = (Vec::new(), Vec::new());
        for rec in rdr.records() {
            let rec = rec?;
            let parse = |i: usize| -> Result<f64> {
                rec.get(i).unwrap_or("").trim().parse().map_err(|_| Error::Input(format!("bad number in row {rec:?}")))
            };
            r.push(parse(ir)?);
            v.push(parse(iv)?);
        }
        Self::sampled(r, v)
    }

    pub fn from_csv(path: &Path) -> Result<Self> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            PotentialProfile::Family { family, strength: c } => match family {
                Family::Zero => 0.0,
                Family::Exp => c * (-x).exp(),
                Family::Yukawa => c * (-x).exp() / x,
                Family::Gaussian => c * (-x * x).exp(),
            },
            PotentialProfile::Sampled { r, v } => {
                if x <= r[0] {
                    return v[0];
                }
                let n = r.len();
                if x >= r[n - 1] {
                    return 0.0;
                }
                let k = r.partition_point(|&t| t <= x) - 1;
                let t = (x - r[k]) / (r[k + 1] - r[k]);
                v[k] * (1.0 - t) + v[k + 1] * t
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PotentialProfile::Family { family, strength } => *family == Family::Zero || *strength == 0.0,
            PotentialProfile::Sampled { v, .. } => v.iter().all(|&x| x == 0.0),
        }
    }

    /// `∫ tr(V₊^{3+γ}) d³x` with a tail check on `grid`.
    pub fn integrability(&self, grid: &RadialGrid, gamma: f64) -> Integrability {
        let p = 3.0 + gamma;
        let terms: Vec<f64> =
            grid.nodes.iter().zip(&grid.weights).map(|(&r, &w)| w * 16.0 * PI * self.eval(r).max(0.0).powf(p) * r * r).collect();
        let integral: f64 = terms.iter().sum();
        let start = grid.len() - (grid.len() / 20).max(1);
        let tail: f64 = terms[start..].iter().sum();
        let tail_fraction = if integral > 0.0 { tail / integral } else { 0.0 };
        Integrability { integral, tail_fraction, integrable: integral.is_finite() && tail_fraction < 1e-6 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_and_parsing() {
        let p = PotentialProfile::family("exp".parse().unwrap(), 2.0).unwrap();
        assert!((p.eval(1.0) - 2.0 / std::f64::consts::E).abs() < 1e-15);
        assert!("cubic".parse::<Family>().is_err());
        assert!(PotentialProfile::family(Family::Exp, -1.0).is_err());
        assert!(PotentialProfile::family(Family::Zero, 1.0).unwrap().is_zero());
    }

    #[test]
    fn csv_round_trip() {
        let text = "r,v\n0,1\n1,0.5\n2,0\n";
        let p = PotentialProfile::from_csv_reader(text.as_bytes()).unwrap();
        assert!((p.eval(0.5) - 0.75).abs() < 1e-15);
        assert_eq!(p.eval(3.0), 0.0);
        assert!(PotentialProfile::from_csv_reader("x,y\n1,2\n2,3\n".as_bytes()).is_err());
        assert!(PotentialProfile::from_csv_reader("r,v\n0,-1\n1,0\n".as_bytes()).is_err());
    }

    #[test]
    fn cube_integral_of_exponential() {
        // 16π c³ ∫ r² e^{−3r} dr = 32π c³/27
        let g = RadialGrid::log_uniform(1024, 1e-8, 60.0).unwrap();
        let p = PotentialProfile::family(Family::Exp, 0.5).unwrap();
        let i = p.integrability(&g, 0.0);
        assert!((i.integral - 32.0 * PI * 0.125 / 27.0).abs() < 1e-8);
        assert!(i.integrable);
        let slow = PotentialProfile::sampled(vec![0.0, 1e9], vec![1.0, 1.0]).unwrap();
        assert!(!slow.integrability(&g, 0.0).integrable);
    }
}
