//! Non-negativity of `c₄`, `c₆`, `c₈` on `[0, 1]`, given `c₂ ≥ 0` and the
//! monotonicity of η.

use super::appendix_a::certify_appendix_a_with;
use super::c2::certify_c2_with;
use super::engine::{poly_sign, poly_sign_factored, BisectOptions, Certificate, Sign};
use super::interval::Interval;
use super::pipoly::{q, qi, PiPoly};
use super::series::eta_interval;

fn x() -> PiPoly {
    PiPoly::x()
}

fn int(n: i64) -> PiPoly {
    PiPoly::int(n)
}

fn pi_pow(n: i64, k: u32) -> PiPoly {
    PiPoly::monomial(qi(n), k, 0)
}

fn iv(v: f64) -> Interval {
    Interval::point(v)
}

/// Enclosure of the c₄ split point `√(55/128) = √110/16`.
pub fn c4_split() -> Interval {
    Interval::point(110.0).sqrt() / iv(16.0)
}

/// `16ν(−224ν + 2401ν/(9+4ν²) + 16√(9+4ν²)(1−η²))`, the bound obtained from
/// `c₂ ≥ 0`.
pub fn c4_lower_bound(nu: Interval) -> Interval {
    let s2 = iv(9.0) + iv(4.0) * nu.sqr();
    let e = eta_interval(nu);
    let one_m = Interval::ONE - e.sqr();
    iv(16.0) * nu * (iv(-224.0) * nu + iv(2401.0) * nu / s2 + iv(16.0) * s2.sqrt() * one_m)
}

fn c4_chain(depth: u32) -> Certificate {
    let nu = x();
    let s2 = int(9) + nu.pow(2).scale(&qi(4));
    let mut steps = vec![Certificate::exact("c4: 3136²/256 = 16·2401 and 3584 = 16·224", || {
        3136 * 3136 / 256 == 16 * 2401 && 3136 * 3136 % 256 == 0 && 3584 == 16 * 224
    })];
    // −224ν + 2401ν/(9+4ν²) = ν(385 − 896ν²)/(9+4ν²)
    {
        let (nu, s2) = (nu.clone(), s2.clone());
        steps.push(Certificate::exact("c4: −224ν(9+4ν²) + 2401ν = ν(385 − 896ν²)", move || {
            nu.scale(&qi(-224)) * s2.clone() + nu.scale(&qi(2401)) == nu.clone() * (int(385) - nu.pow(2).scale(&qi(896)))
        }));
    }
    steps.push(poly_sign_factored(
        "c4: 385 − 896w ≥ 0 for w = ν² ∈ [0, 55/128]",
        &(int(385) - x().scale(&qi(896))),
        &qi(0),
        &q(55, 128),
        &[(q(55, 128), 1)],
        BisectOptions::default().depth(depth),
    ));
    steps.push(Certificate::exact("c4: 55/128 = (√110/16)²", || q(110, 256) == q(55, 128)));
    // concavity: (ν/(9+4ν²))″ = −8ν(27 − 4ν²)/(9+4ν²)³
    {
        let (nu, s2) = (nu.clone(), s2.clone());
        steps.push(Certificate::exact("c4: (ν/(9+4ν²))″ numerator is −8ν(27 − 4ν²)", move || {
            // g′ = (9 − 4ν²)/(9+4ν²)², g″·(9+4ν²)³ = −8ν(9+4ν²) − 16ν(9 − 4ν²)
            let g2 = nu.scale(&qi(-8)) * s2.clone() - nu.scale(&qi(16)) * (int(9) - nu.pow(2).scale(&qi(4)));
            g2 == nu.scale(&qi(-8)) * (int(27) - nu.pow(2).scale(&qi(4)))
        }));
    }
    steps.push(poly_sign("c4: 27 − 4ν² > 0 on [0, 1]", &(int(27) - x().pow(2).scale(&qi(4))), 0.0, 1.0, BisectOptions::default().depth(depth).strict()));
    steps.push(Certificate::exact("c4: chord (7/26)(16+√110)(√110−16ν) vanishes at √110/16 and equals −511/13 at 1", || {
        // (16+√110)(√110−16) = 110 − 256
        q(7, 26) * qi(110 - 256) == q(-511, 13) && qi(-224) + q(2401, 13) == q(-511, 13)
    }));
    {
        let nu = nu.clone();
        steps.push(Certificate::exact("c4: 13(9+4ν²) − (9+4ν)² = 36(ν−1)²", move || {
            s2.scale(&qi(13)) - (int(9) + nu.scale(&qi(4))).pow(2) == (nu.clone() - int(1)).pow(2).scale(&qi(36))
        }));
    }
    let lin = |nu: Interval| {
        let r = Interval::point(110.0).sqrt();
        let e = eta_interval(c4_split());
        iv(7.0) / iv(26.0) * (iv(16.0) + r) * (r - iv(16.0) * nu) + iv(16.0) * (iv(9.0) + iv(4.0) * nu) / iv(13.0).sqrt() * (Interval::ONE - e.sqr())
    };
    steps.push(Certificate::check("c4: linear lower bound is decreasing", Sign::Pos, move || lin(iv(0.0)) - lin(iv(1.0))));
    steps.push(Certificate::check("c4: linear lower bound positive at ν = 1", Sign::Pos, move || lin(iv(1.0))));
    steps.push(Certificate::check("c4: 1 − η²_{√(55/128)} ≥ 0", Sign::NonNeg, || Interval::ONE - eta_interval(c4_split()).sqr()));
    Certificate::composite("c4 ≥ 0", &[[0.0, 1.0]], steps)
}

/// `p₇(ν) = (1280 + 288πν² − 72π²ν⁴)²(4ν²+9) − (441π²ν² − 1764π − 3920)²ν²`.
pub fn p7() -> PiPoly {
    let nu = x();
    let a = int(1280) + pi_pow(288, 1) * nu.pow(2) - pi_pow(72, 2) * nu.pow(4);
    let b = pi_pow(441, 2) * nu.pow(2) - pi_pow(1764, 1) - int(3920);
    a.pow(2) * (int(9) + nu.pow(2).scale(&qi(4))) - b.pow(2) * nu.pow(2)
}

/// `Φ = 49(9X² − N²) − 72νsX²` with `X = 1 − πν²/2`, `s = √(9+4ν²)`, `N = s − 4ν`.
/// `Φ ≥ 0` is `1 − (N/(3X))² ≥ (8/49)νs`.
fn phi_identity() -> Certificate {
    use super::pipoly::Surd;
    Certificate::exact("c6: 4(49(9X² − N²) − 72νsX²) = ν((1280 + 288πν² − 72π²ν⁴)s − (3920 + 1764π)ν + 441π²ν³)", || {
        let nu = x();
        let r = int(9) + nu.pow(2).scale(&qi(4));
        let xx = int(1) - PiPoly::monomial(q(1, 2), 1, 2);
        let s = Surd::radical(&r);
        let n = s.sub(&Surd::rational(nu.scale(&qi(4)), &r));
        let nine_x2 = Surd::rational(xx.pow(2).scale(&qi(9)), &r);
        let lhs = nine_x2.sub(&n.mul(&n)).scale(&int(49)).sub(&s.scale(&(nu.scale(&qi(72)) * xx.pow(2)))).scale(&int(4));
        let a = int(1280) + pi_pow(288, 1) * nu.pow(2) - pi_pow(72, 2) * nu.pow(4);
        let b = (pi_pow(441, 2) * nu.pow(3) - (pi_pow(1764, 1) + int(3920)) * nu.clone()) * nu.clone();
        lhs.a == b && lhs.b == a * nu
    })
}

fn c6_chain(depth: u32) -> Certificate {
    let mut steps = vec![Certificate::exact("c6: 2·3136 = 6272 and 1024/6272 = 8/49", || q(1024, 6272) == q(8, 49) && 2 * 3136 == 6272)];
    steps.push(Certificate::check("c6: 1 − η²_{1/2} > (8/49)√13", Sign::Pos, || {
        let e = eta_interval(iv(0.5));
        Interval::ONE - e.sqr() - iv(8.0) / iv(49.0) * iv(13.0).sqrt()
    }));
    let half = Interval::ratio(1, 2).hi;
    let opts = || BisectOptions::default().depth(depth).strict();
    steps.push(poly_sign("c6: 9 − 12ν² > 0 on [0, 1/2]", &(int(9) - x().pow(2).scale(&qi(12))), 0.0, half, opts()));
    steps.push(poly_sign("c6: 1 − πν²/2 > 0 on [0, 1/2]", &(int(1) - PiPoly::monomial(q(1, 2), 1, 2)), 0.0, half, opts()));
    steps.push(phi_identity());
    let lead = int(1280) + pi_pow(288, 1) * x().pow(2) - pi_pow(72, 2) * x().pow(4);
    steps.push(poly_sign("c6: 1280 + 288πν² − 72π²ν⁴ > 0 on [0, 1/2]", &lead, 0.0, half, opts()));
    let p = p7();
    let a = |k: u32| p.coeff(k);
    {
        let p = p.clone();
        steps.push(Certificate::exact("c6: p7 even of degree 10, a10 ≥ 0, a8 < 0, a6 < 0", move || {
            let odd = (1..=9).step_by(2).all(|k| p.coeff(k).is_zero());
            odd && p.degree() == 10 && p.coeff(10).constant_sign() == Some(1) && p.coeff(8).constant_sign() == Some(-1) && p.coeff(6).constant_sign() == Some(-1)
        }));
    }
    let reduced = a(0) + a(2) * x().pow(2) + (a(4) + a(8).scale(&q(1, 16)) + a(6).scale(&q(1, 4))) * x().pow(4);
    steps.push(poly_sign("c6: a0 + a2ν² + (a4 + a8/16 + a6/4)ν⁴ > 0 on [0, 1/2]", &reduced, 0.0, half, opts()));
    Certificate::composite("c6 ≥ 0", &[[0.0, 1.0]], steps)
        .with_note("1 − η² ≥ (8/49)ν√(9+4ν²) on [0, 1/2] from the cot bound, on [1/2, 1] by monotonicity")
}

fn c8_chain() -> Certificate {
    Certificate::check("c8 = 256(1 − η²)² ≥ 0", Sign::NonNeg, || {
        let e = eta_interval(Interval::new(0.0, 1.0));
        iv(256.0) * (Interval::ONE - e.sqr()).sqr()
    })
}

pub fn certify_c4_c6_c8() -> Certificate {
    let a = certify_appendix_a_with(40);
    let c2 = certify_c2_with(40);
    certify_c4_c6_c8_with(40, &[&a, &c2])
}

/// Uses the given certificates (η monotonicity and `c₂ ≥ 0`) as prerequisites.
pub fn certify_c4_c6_c8_with(depth: u32, prereq: &[&Certificate]) -> Certificate {
    let steps = vec![c4_chain(depth), c6_chain(depth), c8_chain()];
    Certificate::composite("c4c6c8", &[[0.0, 1.0]], steps).requires(prereq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::c_coefficients;

    #[test]
    fn certified() {
        let c = certify_c4_c6_c8();
        assert!(c.status.is_certified(), "{:#?}", c);
        assert!(c.reverify());
        assert!(c.find("c6: 1 − η²_{1/2} > (8/49)√13").unwrap().status.is_certified());
        assert!(c.find("c8 = 256(1 − η²)² ≥ 0").unwrap().status.is_certified());
    }

    #[test]
    fn split_point_encloses_both_regimes() {
        let a = c4_split();
        assert!(a.lo < a.hi);
        assert!(a.lo * a.lo <= 55.0 / 128.0 && a.hi * a.hi >= 55.0 / 128.0);
        let f = |nu: f64| -224.0 * nu + 2401.0 * nu / (9.0 + 4.0 * nu * nu);
        assert!(f(a.lo) >= -1e-12 && f(a.hi) <= 1e-12);
    }

    #[test]
    fn lower_bound_below_c4() {
        for i in 1..=100 {
            let nu = i as f64 / 100.0;
            let c = c_coefficients(nu).unwrap();
            let lb = c4_lower_bound(iv(nu));
            assert!(lb.lo <= c.c4 * (1.0 + 1e-9) + 1e-9, "{nu}");
            assert!(lb.hi >= -1e-12, "{nu}");
        }
    }

    #[test]
    fn prerequisite_missing() {
        let bad = Certificate::exact("bad", || false);
        let c = certify_c4_c6_c8_with(30, &[&bad]);
        assert!(!c.status.is_certified());
    }

    #[test]
    fn p7_matches_squared_sides() {
        for nu in [0.0, 0.1, 0.3, 0.5] {
            let p = std::f64::consts::PI;
            let a = 1280.0 + 288.0 * p * nu * nu - 72.0 * p * p * nu.powi(4);
            let b = 441.0 * p * p * nu * nu - 1764.0 * p - 3920.0;
            let v = a * a * (9.0 + 4.0 * nu * nu) - b * b * nu * nu;
            let w = p7().interval_poly().eval(iv(nu));
            assert!(w.contains(v) || (w.mid() - v).abs() < 1e-9 * v.abs(), "{nu}");
        }
    }
}
