//! Complex Gamma quotients and the scalar symbols built from them.
//!
//! `log_gamma` uses the Lanczos approximation with g = 7 and nine
//! coefficients (relative error about 1e-15 on Re z >= 1/4), and the
//! reflection formula below that.

use crate::error::{domain, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type ComplexValue = Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn lanczos_log_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + a.ln()
}

/// Logarithm of the Gamma function.
///
/// For Re z >= 1/4 this is the analytic branch that is real on the positive
/// axis. Below that the reflection formula is used, which reproduces Γ(z)
/// exactly but fixes the imaginary part only modulo 2π.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) || !z.re.is_finite() || !z.im.is_finite() {
        return domain(format!("log_gamma pole or non-finite argument {z}"));
    }
    if z.re >= 0.25 {
        return Ok(lanczos_log_gamma(z));
    }
    let s = (Complex64::new(PI, 0.0) * z).sin();
    Ok(PI.ln() - s.ln() - lanczos_log_gamma(1.0 - z))
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(|l| l.exp())
}

/// Real Gamma function on the positive axis.
pub fn gamma_real(x: f64) -> f64 {
    lanczos_log_gamma(Complex64::new(x, 0.0)).re.exp()
}

/// `Ξ_l(τ) = (−i)^l 2^{−iτ} Γ((l+3/2−iτ)/2) / Γ((l+3/2+iτ)/2)`.
pub fn xi(l: u32, tau: f64) -> ComplexValue {
    let a = Complex64::new((l as f64 + 1.5) / 2.0, -tau / 2.0);
    let ratio = lanczos_log_gamma(a) - lanczos_log_gamma(a.conj());
    let phase = Complex64::new(0.0, -tau * std::f64::consts::LN_2);
    minus_i_pow(l) * (ratio + phase).exp()
}

fn minus_i_pow(l: u32) -> Complex64 {
    match l % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// The Coulomb symbol `V_l(z)`.
pub fn v_l(l: u32, z: Complex64) -> Result<ComplexValue> {
    let iz = Complex64::new(0.0, 1.0) * z;
    let lf = l as f64;
    let args = [
        (lf + 1.0 + iz) / 2.0,
        (lf + 1.0 - iz) / 2.0,
        (lf + 2.0 + iz) / 2.0,
        (lf + 2.0 - iz) / 2.0,
    ];
    if args[..2].iter().any(|&a| is_pole(a)) {
        return domain(format!("v_l pole at z = {z}"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, a) in args.iter().enumerate() {
        let lg = log_gamma(*a)?;
        if k < 2 {
            acc += lg;
        } else {
            acc -= lg;
        }
    }
    Ok(acc.exp() / 2.0)
}

/// `P(τ) = sech(πτ) − i tanh(πτ)`.
pub fn p_phase(tau: f64) -> ComplexValue {
    let x = PI * tau;
    Complex64::new(1.0 / x.cosh(), -x.tanh())
}

/// The Gamma-quotient form of `P`, kept as an independent cross-check.
pub fn p_phase_gamma(tau: f64) -> ComplexValue {
    let a = Complex64::new(0.75, -tau / 2.0);
    let b = Complex64::new(0.25, tau / 2.0);
    (lanczos_log_gamma(a) + lanczos_log_gamma(b)
        - lanczos_log_gamma(a.conj())
        - lanczos_log_gamma(b.conj()))
    .exp()
}

pub fn upsilon(nu: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&nu) {
        return domain(format!("coupling {nu} outside [0,1]"));
    }
    Ok((1.0 - nu * nu).max(0.0).sqrt())
}

/// `Υ_ν cot(πΥ_ν/2)`, continuous at ν = 1 with value 2/π.
pub fn ups_cot(nu: f64) -> Result<f64> {
    let y = upsilon(nu)?;
    Ok(y_cot(y))
}

/// `y cot(πy/2)` for y in [0, 1].
pub(crate) fn y_cot(y: f64) -> f64 {
    if y < 1e-3 {
        let w2 = (PI * y / 2.0).powi(2);
        return (2.0 / PI) * (1.0 - w2 / 3.0 - w2 * w2 / 45.0 - 2.0 * w2 * w2 * w2 / 945.0);
    }
    y / (PI * y / 2.0).tan()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinHalf {
    Down,
    Up,
}

impl SpinHalf {
    pub fn value(self) -> f64 {
        match self {
            SpinHalf::Down => -0.5,
            SpinHalf::Up => 0.5,
        }
    }

    pub fn from_value(s: f64) -> Result<Self> {
        if s == 0.5 {
            Ok(SpinHalf::Up)
        } else if s == -0.5 {
            Ok(SpinHalf::Down)
        } else {
            domain(format!("spin label {s} not in {{-1/2, 1/2}}"))
        }
    }
}

/// A partial-wave label `(l, m, s)` with a non-vanishing spherical spinor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChannelIndex {
    pub l: u32,
    /// Twice the magnetic quantum number.
    pub m2: i32,
    pub s: SpinHalf,
}

impl ChannelIndex {
    pub fn new(l: u32, m: f64, s: f64) -> Result<Self> {
        let s = SpinHalf::from_value(s)?;
        let m2f = 2.0 * m;
        if m2f != m2f.round() || (m2f as i64) % 2 == 0 {
            return domain(format!("m = {m} is not a half-integer"));
        }
        let m2 = m2f as i32;
        // total angular momentum j = l + s
        let j2 = 2 * l as i32 + if s == SpinHalf::Up { 1 } else { -1 };
        if j2 < 0 || m2.abs() > j2 {
            return domain(format!("(l, m, s) = ({l}, {m}, {}) has vanishing spinor", s.value()));
        }
        Ok(ChannelIndex { l, m2, s })
    }

    pub fn m(&self) -> f64 {
        self.m2 as f64 / 2.0
    }

    /// `ϰ = 2sl + s + 1/2`.
    pub fn kappa(&self) -> i64 {
        match self.s {
            SpinHalf::Up => self.l as i64 + 1,
            SpinHalf::Down => -(self.l as i64),
        }
    }

    /// Orbital number of the lower component, `l + 2s`.
    pub fn lower_l(&self) -> u32 {
        match self.s {
            SpinHalf::Up => self.l + 1,
            SpinHalf::Down => self.l - 1,
        }
    }

    pub fn is_critical(&self) -> bool {
        matches!((self.l, self.s), (0, SpinHalf::Up) | (1, SpinHalf::Down))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_reference_points() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert_relative_eq!(log_gamma(c(3.0, 0.0)).unwrap().re, 2f64.ln(), max_relative = 1e-13);
        assert_relative_eq!(
            log_gamma(c(0.5, 0.0)).unwrap().re,
            0.572_364_942_924_700_087,
            max_relative = 1e-13
        );
        // mpmath loggamma at 30 digits
        let cases = [
            (c(0.3, 2.0), c(-2.359_449_355_937_571, -0.916_907_613_518_669_8)),
            (c(5.0, -3.0), c(2.244_246_717_020_217_7, -4.714_089_538_904_929)),
            (c(20.0, 40.0), c(10.742_622_165_868_498, 133.605_782_515_607_2)),
            (c(0.25, 0.1), c(1.207_837_423_685_761_8, -0.403_031_135_375_008_6)),
        ];
        for (z, want) in cases {
            let got = log_gamma(z).unwrap();
            assert!((got - want).norm() <= 1e-13 * want.norm(), "{z}: {got} vs {want}");
        }
    }

    #[test]
    fn log_gamma_poles_rejected() {
        assert!(log_gamma(c(0.0, 0.0)).is_err());
        assert!(log_gamma(c(-3.0, 0.0)).is_err());
        assert!(log_gamma(c(-2.5, 0.0)).is_ok());
    }

    #[test]
    fn reflection_matches_gamma() {
        let z = c(-1.3, 0.7);
        let g = gamma(z).unwrap();
        let g1 = gamma(z + 1.0).unwrap();
        assert!((g1 - z * g).norm() < 1e-12 * g1.norm());
    }

    #[test]
    fn xi_values() {
        assert!((xi(0, 0.0) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((xi(1, 0.0) - c(0.0, -1.0)).norm() < 1e-14);
        assert!((xi(0, 1.0) - c(0.977_444_109_954_667_9, 0.211_194_251_614_306_87)).norm() < 1e-12);
        assert!((xi(3, 2.5) - c(-0.197_251_469_733_034_44, -0.980_352_925_067_374_8)).norm() < 1e-12);
    }

    #[test]
    fn v_l_values() {
        assert_relative_eq!(v_l(0, c(0.0, 0.0)).unwrap().re, PI / 2.0, max_relative = 1e-13);
        assert_relative_eq!(v_l(1, c(0.0, 0.0)).unwrap().re, 2.0 / PI, max_relative = 1e-13);
        assert!((v_l(0, c(0.0, 0.5)).unwrap() - c(2.0, 0.0)).norm() < 1e-13);
        let v0 = v_l(0, c(1.0, 0.0)).unwrap().re;
        let v1 = v_l(1, c(1.0, 0.0)).unwrap().re;
        assert_relative_eq!(v0, 0.917_152_335_667_274_3, max_relative = 1e-13);
        assert_relative_eq!(2.0 * v0 * v1, 1.0, max_relative = 1e-12);
        let w = v_l(2, c(0.7, 0.2)).unwrap();
        assert!((w - c(0.380_256_450_916_382_8, -0.007_281_120_807_164_414)).norm() < 1e-13);
        assert!(v_l(0, c(0.0, 1.0)).is_err());
    }

    #[test]
    fn p_phase_forms() {
        assert_eq!(p_phase(0.0), c(1.0, 0.0));
        assert!((p_phase(40.0) - c(0.0, -1.0)).norm() < 1e-12);
        assert!((p_phase(0.5).norm() - 1.0).abs() < 1e-15);
        for k in -40..=40 {
            let t = k as f64 * 0.5;
            assert!((p_phase(t) - p_phase_gamma(t)).norm() < 1e-12, "tau {t}");
        }
    }

    #[test]
    fn upsilon_and_ups_cot() {
        assert_eq!(upsilon(0.0).unwrap(), 1.0);
        assert_eq!(upsilon(1.0).unwrap(), 0.0);
        assert_relative_eq!(upsilon(3f64.sqrt() / 2.0).unwrap(), 0.5, max_relative = 1e-15);
        assert!(upsilon(1.01).is_err());
        assert!(ups_cot(0.0).unwrap().abs() < 1e-16);
        assert_relative_eq!(ups_cot(3f64.sqrt() / 2.0).unwrap(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(ups_cot(1.0).unwrap(), 2.0 / PI, max_relative = 1e-15);
        assert_relative_eq!(ups_cot(0.5).unwrap(), 0.184_991_332_017_165_45, max_relative = 1e-13);
        // both sides of the series switch
        let y0 = 1e-3;
        assert_relative_eq!(y_cot(y0 * (1.0 - 1e-9)), y_cot(y0 * (1.0 + 1e-9)), max_relative = 1e-12);
    }

    #[test]
    fn channel_index_membership() {
        assert!(ChannelIndex::new(0, 0.5, 0.5).is_ok());
        assert!(ChannelIndex::new(0, 0.5, -0.5).is_err());
        assert!(ChannelIndex::new(1, 1.5, -0.5).is_err());
        assert!(ChannelIndex::new(1, 0.5, -0.5).is_ok());
        assert!(ChannelIndex::new(2, 2.5, 0.5).is_ok());
        assert!(ChannelIndex::new(2, 1.0, 0.5).is_err());
        let ch = ChannelIndex::new(1, -0.5, -0.5).unwrap();
        assert_eq!(ch.kappa(), -1);
        assert!(ch.is_critical());
        for l in 0..=20u32 {
            for s in [0.5, -0.5] {
                if let Ok(ch) = ChannelIndex::new(l, 0.5, s) {
                    if !ch.is_critical() {
                        assert!(ch.kappa().abs() >= 2);
                    }
                }
            }
        }
    }
}
