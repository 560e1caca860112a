//! Taylor coefficients of `(9+4τ²)(1+2τ sinh πτ) − (9+Aτ²)cosh πτ`,
//! `A = 4 + 18π − 9π²/2`, at τ = 0.
//!
//! The coefficient of `τ^{2n}` is
//! `18π^{2n−1}/(2n−1)! + 8π^{2n−3}/(2n−3)! − 9π^{2n}/(2n)! − Aπ^{2n−2}/(2n−2)!`
//! (plus `4` at n = 1). Those of `τ⁰` and `τ²` vanish; the others are positive.
//! Factoring `π^{2n−3}/(2n−3)!` leaves
//! `8 − Aπ/(2n−2) + 18π²/((2n−2)(2n−1))·(1 − π/(4n))`, which is positive for
//! every `n ≥ n₀` once `8 − Aπ/(2n₀−2) > 0` and `π < 4n₀`.

use super::engine::{Certificate, Sign};
use super::interval::Interval;
use super::pipoly::{q, PiPoly, Q};
use num_bigint::BigInt;
use num_traits::One;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn pi_over_fact(k: i64) -> PiPoly {
    if k < 0 {
        return PiPoly::zero();
    }
    let c = Q::new(BigInt::one(), factorial(k as u32));
    PiPoly::monomial(c, k as u32, 0)
}

/// `4 + 18π − 9π²/2`.
pub fn a_const() -> PiPoly {
    PiPoly::int(4) + PiPoly::monomial(q(18, 1), 1, 0) - PiPoly::monomial(q(9, 2), 2, 0)
}

/// Exact coefficient of `τ^{2n}`.
pub fn taylor_coefficient(n: u32) -> PiPoly {
    let n = n as i64;
    let mut c = pi_over_fact(2 * n - 1).scale(&q(18, 1)) + pi_over_fact(2 * n - 3).scale(&q(8, 1))
        - pi_over_fact(2 * n).scale(&q(9, 1))
        - a_const() * pi_over_fact(2 * n - 2);
    if n == 0 {
        c = c + PiPoly::int(9);
    }
    if n == 1 {
        c = c + PiPoly::int(4);
    }
    c
}

/// The function itself in floating point.
pub fn taylor_function(tau: f64) -> f64 {
    let p = std::f64::consts::PI;
    let a = 4.0 + 18.0 * p - 4.5 * p * p;
    (9.0 + 4.0 * tau * tau) * (1.0 + 2.0 * tau * (p * tau).sinh()) - (9.0 + a * tau * tau) * (p * tau).cosh()
}

fn tail_bracket(n0: u32) -> Interval {
    let p = Interval::pi();
    let a = Interval::point(4.0) + Interval::point(18.0) * p - Interval::point(4.5) * p.sqr();
    Interval::point(8.0) - a * p / Interval::point((2 * n0 - 2) as f64)
}

/// First index from which the tail bracket is certified positive.
pub fn tail_start(limit: u32) -> Option<u32> {
    (2..=limit).find(|&n| tail_bracket(n).is_pos() && Interval::point(4.0 * n as f64).lo > Interval::pi().hi)
}

pub fn certify_taylor_positivity(order: u32) -> Certificate {
    let domain = [[0.0, f64::INFINITY]];
    if order < 10 {
        return Certificate::composite("taylor", &domain, vec![Certificate::exact("order ≥ 10", || false)])
            .with_note("order below 10");
    }
    let mut steps = vec![Certificate::exact("taylor: coefficients of τ⁰ and τ² vanish", || {
        taylor_coefficient(0).is_zero() && taylor_coefficient(1).is_zero()
    })];
    for n in 2..=order {
        let c = taylor_coefficient(n);
        steps.push(Certificate::check(&format!("taylor: a_{} > 0", 2 * n), Sign::Pos, move || c.constant_interval()));
    }
    match tail_start(order + 1) {
        Some(n0) => {
            steps.push(Certificate::check(&format!("taylor tail: 8 − Aπ/{} > 0", 2 * n0 - 2), Sign::Pos, move || tail_bracket(n0)));
            steps.push(Certificate::check(&format!("taylor tail: 4·{n0} − π > 0"), Sign::Pos, move || Interval::point(4.0 * n0 as f64) - Interval::pi()));
            Certificate::composite("taylor", &domain, steps)
                .with_note(&format!("coefficients exact up to τ^{}; tail bracket decreasing in Aπ/(2n−2) from n = {n0}", 2 * order))
        }
        None => {
            let mut c = Certificate::composite("taylor", &domain, steps);
            c.status = super::engine::Status::Inconclusive;
            c.with_note(&format!("tail not closed; first unverified index {}", order + 1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients() {
        assert!(taylor_coefficient(0).is_zero());
        assert!(taylor_coefficient(1).is_zero());
        let a4 = taylor_coefficient(2).constant_interval();
        let p = std::f64::consts::PI;
        let expect = 15.0 / 8.0 * p.powi(4) - 6.0 * p.powi(3) - 2.0 * p * p + 8.0 * p;
        assert!((a4.mid() - expect).abs() < 1e-12, "{a4:?}");
        assert!(a4.lo > 1.9 && a4.hi < 2.1);
    }

    #[test]
    fn series_matches_function() {
        for tau in [0.1, 0.4, 0.9] {
            let s: f64 = (0..40).map(|n| taylor_coefficient(n).constant_interval().mid() * f64::powi(tau, 2 * n as i32)).sum();
            let f = taylor_function(tau);
            assert!((s - f).abs() < 1e-10 * (1.0 + f.abs()), "{tau}: {s} {f}");
        }
    }

    #[test]
    fn order_fifty_certified() {
        let c = certify_taylor_positivity(50);
        assert!(c.status.is_certified(), "{:#?}", c.note);
        assert!(c.reverify());
        assert!(tail_start(100).unwrap() <= 10);
    }

    #[test]
    fn low_order_rejected() {
        assert!(!certify_taylor_positivity(5).status.is_certified());
    }
}
