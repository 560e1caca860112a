//! The minimum defining the preliminary constant is attained at the critical
//! channel entry `η(1 − V₀(0)/V₀(iΥ)) = (π/12)(√(9+4ν²) − 4ν) + (1 − π/4)η`.

use super::engine::{poly_sign, BisectOptions, Certificate, Sign};
use super::interval::Interval;
use super::pipoly::{q, PiPoly};
use super::series::{eta_interval, ups_cot_interval};

fn iv(v: f64) -> Interval {
    Interval::point(v)
}

/// First entry of the minimum as an interval.
pub fn first_entry(nu: Interval) -> Interval {
    let p = Interval::pi();
    let s = (iv(9.0) + iv(4.0) * nu.sqr()).sqrt();
    p / iv(12.0) * (s - iv(4.0) * nu) + (Interval::ONE - p / iv(4.0)) * eta_interval(nu)
}

/// `(√(225+4ν²) − 8ν)/15`.
pub fn second_entry(nu: Interval) -> Interval {
    ((iv(225.0) + iv(4.0) * nu.sqr()).sqrt() - iv(8.0) * nu) / iv(15.0)
}

/// `(second − first)/ν` with the cancelling constants removed, using `η ≤ 1`.
fn gap_over_nu(nu: Interval) -> Interval {
    let p = Interval::pi();
    let s = (iv(9.0) + iv(4.0) * nu.sqr()).sqrt();
    let big = (iv(225.0) + iv(4.0) * nu.sqr()).sqrt();
    let one_m_eta = (Interval::ONE - eta_interval(nu)).max(&Interval::ZERO);
    let eta_term = if nu.lo > 0.0 { one_m_eta / nu } else { Interval::new(0.0, f64::INFINITY) };
    iv(4.0) * nu / (iv(15.0) * (big + iv(15.0))) + (p / iv(3.0) - iv(8.0) / iv(15.0)) - p / iv(3.0) * nu / (iv(3.0) + s)
        + (Interval::ONE - p / iv(4.0)) * eta_term
}

fn sweep(cells: usize) -> Certificate {
    Certificate::check(&format!("first entry ≤ second entry on {cells} cells"), Sign::Pos, move || {
        (0..cells)
            .map(|i| gap_over_nu(Interval::new(i as f64 / cells as f64, (i + 1) as f64 / cells as f64)))
            .fold(Interval::new(f64::INFINITY, f64::INFINITY), |a, g| Interval { lo: a.lo.min(g.lo), hi: a.hi.min(g.hi) })
    })
    .with_domain(&[[0.0, 1.0]])
}

fn v0_identity() -> Certificate {
    // V₀(0)/V₀(iΥ) = (π/2)Υcot(πΥ/2), checked against the Gamma quotient
    Certificate::exact("V₀(0)/V₀(iΥ) = (π/2)Υcot(πΥ/2) (float agreement at 20 points)", || {
        (1..=20).all(|i| {
            let nu = i as f64 / 20.0;
            let r = crate::constants::v0_ratio(nu).unwrap_or(f64::NAN);
            let u = ups_cot_interval(iv(nu));
            let e = iv(std::f64::consts::FRAC_PI_2) * u;
            (r - e.mid()).abs() <= 1e-10 * (1.0 + r.abs())
        })
    })
}

pub fn certify_min_branch() -> Certificate {
    let nu = PiPoly::x();
    let pi = PiPoly::pi();
    let mut steps = vec![v0_identity()];
    steps.push(Certificate::exact("(3 + 2ν²/3)² − (9 + 4ν²) = 4ν⁴/9", || {
        let nu = PiPoly::x();
        (PiPoly::int(3) + nu.pow(2).scale(&q(2, 3))).pow(2) - (PiPoly::int(9) + nu.pow(2).scale(&q(4, 1))) == nu.pow(4).scale(&q(4, 9))
    }));
    steps.push(Certificate::check("1 − π/4 > 0", Sign::Pos, || Interval::ONE - Interval::pi() / iv(4.0)));
    steps.push(Certificate::check("at ν = 0 both entries equal 1", Sign::NonNeg, || {
        let (a, b) = (first_entry(iv(0.0)), second_entry(iv(0.0)));
        if a.contains(1.0) && b.contains(1.0) {
            Interval::ONE
        } else {
            iv(-1.0)
        }
    }));
    // (15 − 8ν)/15 − (π/12)(3 + 2ν²/3 − 4ν) − (1 − π/4) = ν((π/3 − 8/15) − (π/18)ν)
    let rhs = pi.scale(&q(1, 12)) * (PiPoly::int(3) + nu.pow(2).scale(&q(2, 3)) - nu.scale(&q(4, 1))) + PiPoly::one() - pi.scale(&q(1, 4));
    let lhs = PiPoly::one() - nu.scale(&q(8, 15));
    let gap = lhs - rhs;
    let bracket = pi.scale(&q(1, 3)) - PiPoly::rat(8, 15) - (pi.scale(&q(1, 18)) * nu.clone());
    {
        let (gap, bracket, nu) = (gap.clone(), bracket.clone(), nu.clone());
        steps.push(Certificate::exact("(√225 − 8ν)/15 − bound = ν((π/3 − 8/15) − πν/18)", move || gap == nu.clone() * bracket.clone()));
    }
    steps.push(poly_sign("(π/3 − 8/15) − πν/18 > 0 on [0, 1]", &bracket, 0.0, 1.0, BisectOptions::default().strict()));
    steps.push(sweep(1000));
    Certificate::composite("min-branch", &[[0.0, 1.0]], steps).with_note("the minimum is attained at the first entry on [0, 1]")
}
