//! Mellin-side symbols of the critical channels: the matrix `M_s^ν(τ)`, its
//! Gram matrix, the comparison weight `K^ν`, the smallest eigenvalue `λ(τ)`,
//! the polynomial-hyperbolic function `p(τ,ν)` and its τ²-coefficients, and
//! the non-critical function `a_{ϰ,−}`.

use crate::constants::eta;
use crate::error::{domain, Result};
use crate::special::{p_phase, upsilon, ups_cot, v_l, ComplexValue, SpinHalf};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a11: ComplexValue,
    pub a12: ComplexValue,
    pub a21: ComplexValue,
    pub a22: ComplexValue,
}

impl Matrix2 {
    pub fn new(a11: ComplexValue, a12: ComplexValue, a21: ComplexValue, a22: ComplexValue) -> Self {
        Matrix2 { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Matrix2::new(o, z, z, o)
    }

    pub fn adjoint(&self) -> Self {
        Matrix2::new(self.a11.conj(), self.a21.conj(), self.a12.conj(), self.a22.conj())
    }

    pub fn mul(&self, o: &Matrix2) -> Self {
        Matrix2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }

    /// Conjugation by the first Pauli matrix (swaps both indices).
    pub fn sigma1_conj(&self) -> Self {
        Matrix2::new(self.a22, self.a21, self.a12, self.a11)
    }

    pub fn max_abs_diff(&self, o: &Matrix2) -> f64 {
        [self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue_hermitian(&self) -> f64 {
        let a = self.a11.re;
        let d = self.a22.re;
        let b = 0.5 * (self.a12 + self.a21.conj());
        0.5 * (a + d) - (0.25 * (a - d).powi(2) + b.norm_sqr()).sqrt()
    }
}

/// `M_s^ν(τ)`; diagonal entries are `−νV_{1/2∓s}(τ + i/2)`.
pub fn m_matrix(nu: f64, s: SpinHalf, tau: f64) -> Result<Matrix2> {
    upsilon(nu)?;
    let z = Complex64::new(tau, 0.5);
    let (l1, l2) = match s {
        SpinHalf::Up => (0, 1),
        SpinHalf::Down => (1, 0),
    };
    let one = Complex64::new(1.0, 0.0);
    Ok(Matrix2::new(-nu * v_l(l1, z)?, one, one, -nu * v_l(l2, z)?))
}

/// Closed form of `(M_{1/2}^ν)^* M_{1/2}^ν` at τ.
pub fn gram_closed_form(nu: f64, tau: f64) -> Result<Matrix2> {
    upsilon(nu)?;
    let i = Complex64::new(0.0, 1.0);
    let p = p_phase(tau);
    let t2 = tau * tau;
    let a11 = Complex64::new(1.0 + 4.0 * nu * nu / (1.0 + 4.0 * t2), 0.0);
    let a22 = Complex64::new(1.0 + 4.0 * nu * nu / (9.0 + 4.0 * t2), 0.0);
    let a12 = -8.0 * nu * (1.0 - i * tau) * p.conj() / ((1.0 + 2.0 * i * tau) * (3.0 - 2.0 * i * tau));
    let a21 = -8.0 * nu * (1.0 + i * tau) * p / ((1.0 - 2.0 * i * tau) * (3.0 + 2.0 * i * tau));
    Ok(Matrix2::new(a11, a12, a21, a22))
}

/// The Gram matrix obtained by multiplying `m_matrix` out.
pub fn gram_product(nu: f64, s: SpinHalf, tau: f64) -> Result<Matrix2> {
    let m = m_matrix(nu, s, tau)?;
    Ok(m.adjoint().mul(&m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KForm {
    Definition,
    Trig,
}

/// `sech(πτ) + 2τ tanh(πτ)`.
pub fn hyperbolic_term(tau: f64) -> f64 {
    let x = PI * tau;
    1.0 / x.cosh() + 2.0 * tau * x.tanh()
}

/// The weight `K^ν(τ)`.
pub fn k_weight(nu: f64, tau: f64, form: KForm) -> Result<f64> {
    let y = upsilon(nu)?;
    match form {
        KForm::Definition => {
            let inv = if y == 1.0 {
                Complex64::new(0.0, 0.0)
            } else {
                1.0 / v_l(0, Complex64::new(0.0, y))?
            };
            let w = 1.0 - inv * v_l(0, Complex64::new(tau, 0.5))?;
            Ok(w.norm_sqr())
        }
        KForm::Trig => {
            let u = ups_cot(nu)?;
            let t2 = 4.0 * tau * tau;
            Ok((1.0 + t2 + 4.0 * u * u - 4.0 * u * hyperbolic_term(tau)) / (1.0 + t2))
        }
    }
}

fn sqrt_term(nu: f64, tau: f64) -> f64 {
    let t2 = tau * tau;
    (4.0 * nu * nu + (1.0 + t2) * (1.0 + 4.0 * t2) * (9.0 + 4.0 * t2)).sqrt()
}

/// Closed form of the smallest eigenvalue of `M*M − η²K·1`.
pub fn min_eigenvalue(nu: f64, tau: f64) -> Result<f64> {
    let e = eta(nu)?;
    let k = k_weight(nu, tau, KForm::Trig)?;
    let t2 = tau * tau;
    let den = (1.0 + 4.0 * t2) * (9.0 + 4.0 * t2);
    Ok(1.0 - e * e * k + (4.0 * nu * nu * (5.0 + 4.0 * t2) - 8.0 * nu * sqrt_term(nu, tau)) / den)
}

/// The same eigenvalue by diagonalizing the closed-form Gram matrix.
pub fn min_eigenvalue_direct(nu: f64, tau: f64) -> Result<f64> {
    let e = eta(nu)?;
    let k = k_weight(nu, tau, KForm::Trig)?;
    let g = gram_closed_form(nu, tau)?;
    Ok(g.min_eigenvalue_hermitian() - e * e * k)
}

/// `p(τ,ν)`, equal to `(1+4τ²)(9+4τ²)λ(τ)`.
pub fn p_value(nu: f64, tau: f64) -> Result<f64> {
    let e2 = eta(nu)?.powi(2);
    let u = ups_cot(nu)?;
    let t2 = tau * tau;
    Ok((1.0 - e2) * (1.0 + 4.0 * t2) * (9.0 + 4.0 * t2)
        + 4.0 * nu * nu * (5.0 + 4.0 * t2)
        + 4.0 * e2 * (9.0 + 4.0 * t2) * hyperbolic_term(tau) * u
        - 4.0 * u * u * e2 * (9.0 + 4.0 * t2)
        - 8.0 * nu * sqrt_term(nu, tau))
}

/// `4 + 18π − 9π²/2`.
pub fn taylor_constant() -> f64 {
    4.0 + 18.0 * PI - 4.5 * PI * PI
}

/// `p₊(τ,ν)`, obtained from `p` by the polynomial lower bound on the
/// hyperbolic term.
pub fn p_plus(nu: f64, tau: f64) -> Result<f64> {
    let e2 = eta(nu)?.powi(2);
    let u = ups_cot(nu)?;
    let t2 = tau * tau;
    Ok((1.0 - e2) * (1.0 + 4.0 * t2) * (9.0 + 4.0 * t2)
        + 4.0 * nu * nu * (5.0 + 4.0 * t2)
        + 4.0 * e2 * (9.0 + taylor_constant() * t2) * u
        - 4.0 * u * u * e2 * (9.0 + 4.0 * t2))
}

pub fn p_minus(nu: f64, tau: f64) -> Result<f64> {
    upsilon(nu)?;
    Ok(8.0 * nu * sqrt_term(nu, tau))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CCoefficients {
    pub c2: f64,
    pub c4: f64,
    pub c6: f64,
    pub c8: f64,
}

impl CCoefficients {
    /// `c₂τ² + c₄τ⁴ + c₆τ⁶ + c₈τ⁸`.
    pub fn eval(&self, tau: f64) -> f64 {
        let t2 = tau * tau;
        t2 * (self.c2 + t2 * (self.c4 + t2 * (self.c6 + t2 * self.c8)))
    }
}

/// `c₂ … c₈` such that `p₊² − p₋²` is their τ² polynomial.
///
/// The squared bracket in `c₂` is written with η_ν in place of the quotient
/// by `1 − 2Υ cot(πΥ/2)`, so the formula stays finite at ν = √3/2.
pub fn c_coefficients(nu: f64) -> Result<CCoefficients> {
    let e = eta(nu)?;
    let c8 = 256.0 * (1.0 - e * e).powi(2);
    if nu == 0.0 {
        return Ok(CCoefficients { c2: 0.0, c4: 0.0, c6: 0.0, c8 });
    }
    let s = (9.0 + 4.0 * nu * nu).sqrt();
    let n = s - 4.0 * nu;
    let b = 3.0 * PI * (4.0 - PI) / (2.0 * (PI - 2.0));
    let bracket = 72.0 * (5.0 + 2.0 * nu * nu) - 1764.0 * nu / s + n * n * (b * b - 4.0)
        - (n * b + 9.0 * (PI - 2.0) * e).powi(2);
    let c2 = 16.0 * nu * s / 9.0 * bracket;
    let q = c2 + 3136.0 * nu * nu;
    let c4 = q * q / (256.0 * nu * nu * s * s) - 3584.0 * nu * nu + 256.0 * nu * s * (1.0 - e * e);
    let c6 = 2.0 * q / (nu * s) * (1.0 - e * e) - 1024.0 * nu * nu;
    Ok(CCoefficients { c2, c4, c6, c8 })
}

/// `a^ν_{ϰ,−}(b, τ)` for non-critical ϰ.
pub fn a_noncritical(nu: f64, kappa: i64, b: f64, tau: f64) -> Result<f64> {
    if kappa.abs() <= 1 {
        return domain(format!("kappa = {kappa} is critical or excluded"));
    }
    upsilon(nu)?;
    if !(0.0..=1.0).contains(&b) {
        return domain(format!("b = {b} outside [0,1]"));
    }
    let k2 = (kappa * kappa) as f64;
    let n2 = nu * nu;
    Ok(n2 + b / 4.0 + k2 * b + tau * tau * b
        - (4.0 * k2 * n2 + 4.0 * n2 * tau * tau + k2 * b * b).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{non_critical_coeff, SQRT3_HALF};
    use approx::assert_relative_eq;

    #[test]
    fn m_matrix_structure() {
        let m = m_matrix(0.0, SpinHalf::Up, 1.3).unwrap();
        assert_eq!(m.a11.norm(), 0.0);
        assert_eq!(m.a12, Complex64::new(1.0, 0.0));
        for tau in [-2.0, 0.0, 0.7] {
            let up = m_matrix(0.6, SpinHalf::Up, tau).unwrap();
            let dn = m_matrix(0.6, SpinHalf::Down, tau).unwrap();
            assert!(dn.max_abs_diff(&up.sigma1_conj()) < 1e-15);
        }
        let m = m_matrix(0.5, SpinHalf::Up, 0.0).unwrap();
        assert!((m.a11 - Complex64::new(-1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn gram_closed_form_matches_product() {
        assert!(gram_closed_form(0.0, 2.0).unwrap().max_abs_diff(&Matrix2::identity()) < 1e-15);
        let g = gram_closed_form(1.0, 0.0).unwrap();
        assert_relative_eq!(g.a11.re, 5.0, max_relative = 1e-15);
        assert_relative_eq!(g.a22.re, 1.0 + 4.0 / 9.0, max_relative = 1e-15);
        assert_relative_eq!(g.a12.norm(), 8.0 / 3.0, max_relative = 1e-15);
        let mut worst: f64 = 0.0;
        for i in 0..=20 {
            for j in 0..=40 {
                let nu = i as f64 / 20.0;
                let tau = -10.0 + j as f64 / 2.0;
                let c = gram_closed_form(nu, tau).unwrap();
                worst = worst.max(c.max_abs_diff(&gram_product(nu, SpinHalf::Up, tau).unwrap()));
                assert!(c.hermiticity_defect() < 1e-13);
            }
        }
        assert!(worst < 1e-11, "{worst}");
    }

    #[test]
    fn k_weight_forms() {
        assert_relative_eq!(k_weight(0.0, 0.0, KForm::Trig).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(k_weight(0.0, 0.0, KForm::Definition).unwrap(), 1.0, max_relative = 1e-15);
        for nu in [0.0, 0.3, 0.6, SQRT3_HALF, 0.9, 1.0] {
            let u = ups_cot(nu).unwrap();
            assert_relative_eq!(
                k_weight(nu, 0.0, KForm::Trig).unwrap(),
                (1.0 - 2.0 * u).powi(2),
                epsilon = 1e-12
            );
            assert!((k_weight(nu, 1e6, KForm::Trig).unwrap() - 1.0).abs() < 1e-5);
            for tau in [0.0, 0.4, 2.0, 7.5] {
                let a = k_weight(nu, tau, KForm::Trig).unwrap();
                let b = k_weight(nu, tau, KForm::Definition).unwrap();
                assert!((a - b).abs() < 1e-10, "{nu} {tau}: {a} {b}");
                assert!(a >= 0.0);
            }
        }
    }

    #[test]
    fn lambda_closed_vs_direct() {
        for i in 0..=40 {
            let nu = i as f64 / 40.0;
            for j in 0..=40 {
                let tau = j as f64 / 4.0;
                let a = min_eigenvalue(nu, tau).unwrap();
                let b = min_eigenvalue_direct(nu, tau).unwrap();
                assert!((a - b).abs() < 1e-10, "{nu} {tau}");
                assert!((a - min_eigenvalue(nu, -tau).unwrap()).abs() < 1e-15);
                assert!(a >= -1e-9);
            }
        }
        for nu in [0.1, 0.5, SQRT3_HALF, 0.99, 1.0] {
            assert!(min_eigenvalue(nu, 0.0).unwrap().abs() < 1e-9);
        }
        assert!(min_eigenvalue(1.0, 2.0).unwrap() > 0.0);
    }

    #[test]
    fn p_is_scaled_lambda() {
        for nu in [0.0, 0.2, 0.5, 0.8, 1.0] {
            for tau in [0.0, 0.3, 1.0, 4.0] {
                let t2 = tau * tau;
                let want = min_eigenvalue(nu, tau).unwrap() * (1.0 + 4.0 * t2) * (9.0 + 4.0 * t2);
                let got = p_value(nu, tau).unwrap();
                assert!((got - want).abs() <= 1e-8 * (1.0 + want.abs()), "{nu} {tau}");
            }
        }
        assert!(p_value(0.0, 3.0).unwrap().abs() < 1e-12);
        assert!(p_value(0.5, 1.0).unwrap() > 0.0);
    }

    #[test]
    fn c_coefficients_reassemble() {
        let c = c_coefficients(0.0).unwrap();
        assert!(c.c8 < 1e-25);
        assert!(c_coefficients(SQRT3_HALF).unwrap().c2.abs() < 1e-8);
        assert!(c_coefficients(0.3).unwrap().c2 > 0.0);
        for nu in [0.05, 0.31, 0.5, 0.77, SQRT3_HALF, 0.93, 1.0] {
            let c = c_coefficients(nu).unwrap();
            for tau in [0.1, 0.5, 1.7, 3.0] {
                let pp = p_plus(nu, tau).unwrap();
                let pm = p_minus(nu, tau).unwrap();
                let direct = pp * pp - pm * pm;
                let scale = pp * pp + pm * pm;
                assert!((direct - c.eval(tau)).abs() <= 1e-12 * scale, "{nu} {tau}");
            }
        }
    }

    #[test]
    fn noncritical_function() {
        assert!(a_noncritical(0.3, 1, 0.5, 0.0).is_err());
        for k in [2, -3, 5] {
            assert!(a_noncritical(0.0, k, 0.0, 1.2).unwrap().abs() < 1e-15);
            assert_eq!(a_noncritical(0.4, k, 0.3, 1.1).unwrap(), a_noncritical(0.4, -k, 0.3, -1.1).unwrap());
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if a_noncritical(1.0, 2, mid, 0.0).unwrap() < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert_relative_eq!(1.0 - hi, non_critical_coeff(1.0).unwrap().powi(2), max_relative = 1e-12);
        let mut prev = f64::NEG_INFINITY;
        for k in 2..=6 {
            let v = a_noncritical(0.5, k, 0.5, 0.7).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }
}
