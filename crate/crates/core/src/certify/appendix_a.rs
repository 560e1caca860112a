//! Monotonicity of η: the two trigonometric inequalities in `z = πΥ/2 ∈ [0, π/2]`
//! reduced to polynomial facts.

use super::engine::{poly_sign, poly_sign_factored, BisectOptions, Certificate, Sign};
use super::interval::Interval;
use super::pipoly::{q, qi, PiPoly, Q};
use num_traits::Zero;

fn z() -> PiPoly {
    PiPoly::x()
}

fn zp(k: u32) -> PiPoly {
    PiPoly::x().pow(k)
}

fn mono(n: i64, d: i64, k: u32) -> PiPoly {
    PiPoly::monomial(q(n, d), 0, k)
}

fn poly(terms: &[(i64, i64, u32)]) -> PiPoly {
    terms.iter().fold(PiPoly::zero(), |a, &(n, d, k)| a + mono(n, d, k))
}

/// `p(πt/2)` as a polynomial in `t ∈ [0, 1]`.
fn on_unit(p: &PiPoly) -> PiPoly {
    p.compose(&PiPoly::monomial(q(1, 2), 1, 1))
}

/// `p > 0` on `z ∈ [0, π/2]`.
fn positive_on_quarter_period(name: &str, p: &PiPoly, depth: u32) -> Certificate {
    poly_sign(name, &on_unit(p), 0.0, 1.0, BisectOptions::default().depth(depth).strict())
}

/// Alternating Taylor tail: the remainder after the term of degree `m−2`
/// has the sign of its first term once `w² < (m+1)(m+2)` on the range.
fn tail_check(name: &str, m: u32, w_max_sq: Interval) -> Certificate {
    let bound = ((m + 1) * (m + 2)) as f64;
    Certificate::check(name, Sign::Pos, move || Interval::point(bound) - w_max_sq)
}

fn identity(name: &str, lhs: PiPoly, rhs: PiPoly) -> Certificate {
    Certificate::exact(name, move || lhs == rhs)
}

/// `(1/12 − π²/864)`.
fn bottom_c() -> PiPoly {
    &PiPoly::rat(1, 12) - &PiPoly::monomial(q(1, 864), 2, 0)
}

fn sin_ub() -> PiPoly {
    poly(&[(1, 1, 1), (-1, 6, 3), (1, 120, 5)])
}

fn cos_lb() -> PiPoly {
    poly(&[(1, 1, 0), (-1, 2, 2), (1, 24, 4), (-1, 720, 6)])
}

fn cos_ub() -> PiPoly {
    poly(&[(1, 1, 0), (-1, 2, 2), (1, 24, 4)])
}

fn one_minus_cos_ub() -> PiPoly {
    poly(&[(1, 2, 2), (-1, 24, 4), (1, 720, 6)])
}

fn sin_lb() -> PiPoly {
    poly(&[(1, 1, 1), (-1, 6, 3)])
}

/// The inequality `f₁ < 2` after clearing denominators.
fn f1_chain(depth: u32) -> Certificate {
    let two_z = z().scale(&qi(2));
    let quarter_sq = Interval::pi().sqr() / Interval::point(4.0);
    let pi_sq = Interval::pi().sqr();
    let mut steps = vec![
        tail_check("sin z ≤ z − z³/6 + z⁵/120", 7, quarter_sq),
        tail_check("cos z ≥ 1 − z²/2 + z⁴/24 − z⁶/720", 8, quarter_sq),
        tail_check("cos z ≤ 1 − z²/2 + z⁴/24", 6, quarter_sq),
        tail_check("1 − cos w ≤ w²/2 − w⁴/24 + w⁶/720 for w ≤ π", 8, pi_sq),
        tail_check("sin z ≥ z − z³/6", 5, quarter_sq),
    ];
    let a = cos_ub();
    let b = one_minus_cos_ub().compose(&two_z);
    steps.push(positive_on_quarter_period("1 − z²/2 + z⁴/24 > 0", &a, depth));
    let b_over = b.div_var_pow(2).expect("b has a double zero at 0");
    steps.push(positive_on_quarter_period("2 − 2z²/3 + 4z⁴/45 > 0", &b_over, depth));
    let e1 = &two_z * &sin_ub();
    steps.push(identity("2z sin z ≤ 2z² − z⁴/3 + z⁶/60", e1.clone(), poly(&[(2, 1, 2), (-1, 3, 4), (1, 60, 6)])));
    let e2 = &zp(2).scale(&qi(-4)) * &cos_lb();
    steps.push(identity("−4z² cos z ≤ −4z² + 2z⁴ − z⁶/6 + z⁸/180", e2.clone(), poly(&[(-4, 1, 2), (2, 1, 4), (-1, 6, 6), (1, 180, 8)])));
    steps.push(identity("2 cos z sin² z ≤ (1 − z²/2 + z⁴/24)(2z² − 2z⁴/3 + 4z⁶/45)", b.clone(), poly(&[(2, 1, 2), (-2, 3, 4), (4, 45, 6)])));
    let e3 = &a * &b;
    let top = poly(&[(16, 45, 6), (-1, 15, 8), (1, 270, 10)]);
    steps.push(identity("top: sum of the three bounds", &(&e1 + &e2) + &e3, top.clone()));
    steps.push(positive_on_quarter_period("1/15 − z²/270 > 0", &poly(&[(1, 15, 0), (-1, 270, 2)]), depth));
    steps.push(Certificate::check("top: −1/15 + π²/1080 < 0", Sign::Pos, || {
        Interval::ratio(1, 15) - Interval::pi().sqr() / Interval::point(1080.0)
    }));
    steps.push(positive_on_quarter_period("z − z³/6 ≥ 0", &poly(&[(1, 1, 0), (-1, 6, 2)]), depth));
    let c = bottom_c();
    let bottom = &poly(&[(1, 1, 3), (-1, 2, 5)]) + &(&c * &zp(7));
    let gap = on_unit(&(&sin_lb().pow(3) - &bottom));
    steps.push(poly_sign_factored(
        "bottom: (z − z³/6)³ ≥ z³ − z⁵/2 + (1/12 − π²/864)z⁷",
        &gap,
        &Q::zero(),
        &qi(1),
        &[(Q::zero(), 7), (qi(1), 1)],
        BisectOptions::default().depth(depth),
    ));
    steps.push(positive_on_quarter_period("1 − z²/2 + (1/12 − π²/864)z⁴ > 0", &(&poly(&[(1, 1, 0), (-1, 2, 2)]) + &(&c * &zp(4))), depth));
    // 16z³·bottom − (π³ − 4πz²)·16z⁶/45 = 16z⁶·F(z)
    let pi = PiPoly::pi();
    let f = &(&(&PiPoly::one() - &pi.pow(3).scale(&q(1, 45))) + &(&(&pi.scale(&q(4, 45)) - &PiPoly::rat(1, 2)) * &zp(2))) + &(&c * &zp(4));
    let lhs = &(&zp(3).scale(&qi(16)) * &bottom) - &(&(&pi.pow(3) - &(&pi * &zp(2)).scale(&qi(4))) * &zp(6).scale(&q(16, 45)));
    steps.push(identity("f₁ reduction: 16z³·bottom − π³ν²·16z⁶/45 = 16z⁶F", lhs, &zp(6).scale(&qi(16)) * &f));
    steps.push(positive_on_quarter_period("F(z) > 0", &f, depth));
    Certificate::composite("f1 < 2", &[], steps)
}

/// The inequality `f₂ > 2` after clearing denominators.
fn f2_chain(depth: u32) -> Certificate {
    let two_z = z().scale(&qi(2));
    let pi = PiPoly::pi();
    let mut steps = vec![
        tail_check("sin w ≤ w − w³/6 + w⁵/120 for w ≤ π", 7, Interval::pi().sqr()),
        tail_check("1 − cos w ≤ w²/2 − w⁴/24 + w⁶/720 for w ≤ π", 8, Interval::pi().sqr()),
    ];
    let lower = &two_z - &sin_ub().compose(&two_z);
    let l_expect = poly(&[(4, 3, 3), (-4, 15, 5)]);
    steps.push(identity("2z − sin 2z ≥ 4z³/3 − 4z⁵/15", lower, l_expect.clone()));
    let upper = one_minus_cos_ub().compose(&two_z).scale(&q(1, 2));
    let u_expect = poly(&[(1, 1, 2), (-1, 3, 4), (2, 45, 6)]);
    steps.push(identity("sin² z ≤ z² − z⁴/3 + 2z⁶/45", upper, u_expect.clone()));
    let g = &(&(&pi.scale(&q(4, 3)) - &PiPoly::int(4)) - &(&(&pi.scale(&q(4, 15)) - &PiPoly::rat(4, 3)) * &zp(2))) - &zp(4).scale(&q(8, 45));
    let lhs = &(&pi * &l_expect) - &(&z().scale(&qi(4)) * &u_expect);
    steps.push(identity("f₂ reduction: π·(4z³/3 − 4z⁵/15) − 4z·(z² − z⁴/3 + 2z⁶/45) = z³G", lhs, &zp(3) * &g));
    steps.push(positive_on_quarter_period("G(z) > 0", &g, depth));
    steps.push(positive_on_quarter_period("4/3 − 4z²/15 > 0", &poly(&[(4, 3, 0), (-4, 15, 2)]), depth));
    steps.push(Certificate::exact("f₂(1/2) > 2 (float shadow)", || f2_float(0.5) > 2.0));
    Certificate::composite("f2 > 2", &[], steps)
}

/// `(πΥ − sin πΥ)/(Υ sin²(πΥ/2))` in floating point.
pub fn f2_float(nu: f64) -> f64 {
    let y = (1.0 - nu * nu).sqrt();
    let p = std::f64::consts::PI * y;
    (p - p.sin()) / (y * (p / 2.0).sin().powi(2))
}

/// `g″ = 36(9+4ν²)^{−3/2}` for `g = √(9+4ν²)`, from `4(9+4ν²) − 16ν² = 36`.
fn convexity() -> Certificate {
    let s2 = poly(&[(9, 1, 0), (4, 1, 2)]);
    let lhs = &s2.scale(&qi(4)) - &zp(2).scale(&qi(16));
    identity("g″ = 36(9+4ν²)^(−3/2) > 0", lhs, PiPoly::int(36))
}

pub fn certify_appendix_a() -> Certificate {
    certify_appendix_a_with(40)
}

pub fn certify_appendix_a_with(depth: u32) -> Certificate {
    let steps = vec![convexity(), f1_chain(depth), f2_chain(depth)];
    Certificate::composite("appendix-a", &[[0.0, 1.0]], steps).with_note("η decreasing on [0, 1]")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certified_and_reverifies() {
        let c = certify_appendix_a();
        assert!(c.status.is_certified(), "{:#?}", c);
        assert!(c.reverify());
        assert!(c.find("2z sin z ≤ 2z² − z⁴/3 + z⁶/60").unwrap().status.is_certified());
        assert!(c.find("top: −1/15 + π²/1080 < 0").unwrap().status.is_certified());
    }

    #[test]
    fn f2_shadow() {
        assert!(f2_float(0.5) > 2.0);
        for i in 1..100 {
            assert!(f2_float(i as f64 / 100.0) > 2.0);
        }
    }

    #[test]
    fn wrong_bound_is_rejected() {
        // dropping the z⁶ term makes the top inequality false
        let wrong = &poly(&[(2, 1, 2), (-1, 3, 4)]) - &(&z().scale(&qi(2)) * &sin_ub());
        let c = positive_on_quarter_period("wrong", &wrong.div_var_pow(6).unwrap(), 30);
        assert!(!c.status.is_certified());
    }
}
