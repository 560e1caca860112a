//! Non-negativity of the channel eigenvalue `λ(τ)`: the implication chain
//! `c₂…c₈ ≥ 0 ⇒ p₊² ≥ p₋² ⇒ p₊ ≥ p₋ ⇒ p ≥ 0 ⇒ λ ≥ 0`, and an interval shadow
//! of λ itself.

use super::engine::{bisect_nonneg, BisectOptions, Certificate, IntervalFn, Sign};
use super::interval::Interval;
use super::series::{eta_interval, ups_cot_interval};
use std::sync::Arc;

fn iv(v: f64) -> Interval {
    Interval::point(v)
}

/// Lower edge of the ν range covered by the shadow; λ vanishes identically at ν = 0.
pub const SHADOW_NU_FLOOR: f64 = 1e-3;
/// Lower edge of the τ range covered by the shadow; λ vanishes at τ = 0.
pub const SHADOW_TAU_FLOOR: f64 = 1e-2;

/// `sech(πτ) + 2τ tanh(πτ)`.
pub fn hyperbolic_interval(tau: Interval) -> Interval {
    let x = Interval::pi() * tau;
    x.sech() + iv(2.0) * tau * x.tanh()
}

fn sqrt_term(nu: Interval, t2: Interval) -> Interval {
    (iv(4.0) * nu.sqr() + (Interval::ONE + t2) * (Interval::ONE + iv(4.0) * t2) * (iv(9.0) + iv(4.0) * t2)).sqrt()
}

/// Enclosure of `p(τ,ν) = (1+4τ²)(9+4τ²)λ(τ)`.
pub fn p_interval(nu: Interval, tau: Interval) -> Interval {
    let e2 = eta_interval(nu).sqr();
    let u = ups_cot_interval(nu);
    let t2 = tau.sqr();
    let h = hyperbolic_interval(tau);
    let nine = iv(9.0) + iv(4.0) * t2;
    nine * ((Interval::ONE - e2) * (Interval::ONE + iv(4.0) * t2) + iv(4.0) * e2 * u * (h - u)) + iv(4.0) * nu.sqr() * (iv(5.0) + iv(4.0) * t2)
        - iv(8.0) * nu * sqrt_term(nu, t2)
}

/// Enclosure of `p(τ,ν)/τ²` for τ > 0, with the cancelling τ⁰ terms removed:
/// `(1+τ²)(1+4τ²)(9+4τ²) − 9 = τ²(49 + 56τ² + 16τ⁴)` and `H(0) = 1`.
pub fn p_reduced_interval(nu: Interval, tau: Interval) -> Interval {
    let e2 = eta_interval(nu).sqr();
    let u = ups_cot_interval(nu);
    let t2 = tau.sqr();
    let p = Interval::pi();
    let x = p * tau;
    let h = hyperbolic_interval(tau);
    // ((9+4τ²)H − 9)/τ² = 9((sech πτ − 1)/τ² + 2 tanh(πτ)/τ) + 4H, with
    // 1 − sech x = (x²/2)·sinhc(x/2)²/cosh x and tanh x = x·sinhc(x)/cosh x
    let ch = x.cosh();
    let half = (x / iv(2.0)).sinhc();
    let hh = iv(9.0) * (iv(2.0) * p * x.sinhc() - p.sqr() / iv(2.0) * half.sqr()) / ch + iv(4.0) * h;
    let s0 = (iv(4.0) * nu.sqr() + iv(9.0)).sqrt();
    let root = (s0 + sqrt_term(nu, t2)).recip();
    (Interval::ONE - e2) * (iv(40.0) + iv(16.0) * t2) + iv(16.0) * nu.sqr() - iv(16.0) * u.sqr() * e2 + iv(4.0) * e2 * u * hh
        - iv(8.0) * nu * (iv(49.0) + iv(56.0) * t2 + iv(16.0) * t2.sqr()) * root
}

pub fn lambda_interval(nu: Interval, tau: Interval) -> Interval {
    let t2 = tau.sqr();
    p_interval(nu, tau) / ((Interval::ONE + iv(4.0) * t2) * (iv(9.0) + iv(4.0) * t2))
}

/// `4 + 18π − 9π²/2`.
fn a_interval() -> Interval {
    let p = Interval::pi();
    iv(4.0) + iv(18.0) * p - iv(4.5) * p.sqr()
}

/// `p₊(τ,ν)`.
pub fn p_plus_interval(nu: Interval, tau: Interval) -> Interval {
    let e2 = eta_interval(nu).sqr();
    let u = ups_cot_interval(nu);
    let t2 = tau.sqr();
    let nine = iv(9.0) + iv(4.0) * t2;
    (Interval::ONE - e2) * (Interval::ONE + iv(4.0) * t2) * nine + iv(4.0) * nu.sqr() * (iv(5.0) + iv(4.0) * t2)
        + iv(4.0) * e2 * u * ((iv(9.0) + a_interval() * t2) - u * nine)
}

pub fn p_minus_interval(nu: Interval, tau: Interval) -> Interval {
    iv(8.0) * nu * sqrt_term(nu, tau.sqr())
}

/// `c₂τ² + c₄τ⁴ + c₆τ⁶ + c₈τ⁸` from the coefficient formulas, at a point.
fn c_poly_point(nu: f64, tau: f64) -> Interval {
    let n = iv(nu);
    let e = eta_interval(n);
    let s2 = iv(9.0) + iv(4.0) * n.sqr();
    let s = s2.sqrt();
    let c2 = super::c2::c2_interval(n);
    let qq = c2 + iv(3136.0) * n.sqr();
    let one_m = Interval::ONE - e.sqr();
    let c4 = qq.sqr() / (iv(256.0) * n.sqr() * s2) - iv(3584.0) * n.sqr() + iv(256.0) * n * s * one_m;
    let c6 = iv(2.0) * qq / (n * s) * one_m - iv(1024.0) * n.sqr();
    let c8 = iv(256.0) * one_m.sqr();
    let t2 = iv(tau).sqr();
    t2 * (c2 + t2 * (c4 + t2 * (c6 + t2 * c8)))
}

/// Points at which `p₊² − p₋²` and the coefficient expansion are compared.
fn expansion_points() -> Vec<(f64, f64)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut pts = vec![(0.5, 1.0), (SQRT3_HALF_APPROX, 0.3), (1.0, 2.0)];
    for _ in 0..64 {
        pts.push((rng.gen_range(0.01..1.0), rng.gen_range(0.0..5.0)));
    }
    pts
}

const SQRT3_HALF_APPROX: f64 = 0.866;

fn expansion_check() -> Certificate {
    Certificate::exact("p₊² − p₋² = c₂τ² + c₄τ⁴ + c₆τ⁶ + c₈τ⁸ (interval agreement at 67 points)", || {
        expansion_points().iter().all(|&(nu, tau)| {
            let (n, t) = (iv(nu), iv(tau));
            let lhs = p_plus_interval(n, t).sqr() - p_minus_interval(n, t).sqr();
            lhs.overlaps(&c_poly_point(nu, tau))
        })
    })
}

fn chain(taylor: &Certificate) -> Certificate {
    let mut steps = vec![Certificate::check("A = 4 + 18π − 9π²/2 > 4", Sign::Pos, || a_interval() - iv(4.0))];
    steps.push(Certificate::check("0 ≤ Υcot(πΥ/2) ≤ 2/π < 1 on [0, 1]", Sign::Pos, || {
        let u = ups_cot_interval(Interval::new(0.0, 1.0));
        if u.lo < 0.0 {
            return iv(-1.0);
        }
        Interval::ONE - u
    }));
    steps.push(Certificate::composite(
        "0 ≤ η ≤ 1 on [0, 1]",
        &[],
        vec![
            Certificate::exact("η(0) = 3/(3(1 − 2·0)) = 1", || ups_cot_interval(iv(0.0)).contains(0.0) && (9f64).sqrt() == 3.0),
            Certificate::check("η(1) > 0", Sign::Pos, || eta_interval(iv(1.0))),
        ],
    )
    .with_note("η is decreasing"));
    // p₊ = (1−η²)(9 + 40τ² + 16τ⁴) + 4ν²(5 + 4τ²) + 4η²u(9(1−u) + (A − 4u)τ²)
    steps.push(Certificate::check("p₊ ≥ 0: 1 − u and A − 4u are non-negative", Sign::NonNeg, || {
        let u = ups_cot_interval(Interval::new(0.0, 1.0));
        (Interval::ONE - u).min(&(a_interval() - iv(4.0) * u))
    }));
    steps.push(Certificate::exact("p₊ expanded in τ² (interval agreement at 67 points)", || {
        expansion_points().iter().all(|&(nu, tau)| {
            let (n, t) = (iv(nu), iv(tau));
            let (e2, u, t2) = (eta_interval(n).sqr(), ups_cot_interval(n), t.sqr());
            let form = (Interval::ONE - e2) * (iv(9.0) + iv(40.0) * t2 + iv(16.0) * t2.sqr()) + iv(4.0) * n.sqr() * (iv(5.0) + iv(4.0) * t2)
                + iv(4.0) * e2 * u * (iv(9.0) * (Interval::ONE - u) + (a_interval() - iv(4.0) * u) * t2);
            form.overlaps(&p_plus_interval(n, t))
        })
    }));
    steps.push(expansion_check());
    steps.push(
        Certificate::exact("p − (p₊ − p₋) = 4η²u((9+4τ²)(sech πτ + 2τ tanh πτ) − (9 + Aτ²)) (interval agreement at 67 points)", || {
            expansion_points().iter().all(|&(nu, tau)| {
                let (n, t) = (iv(nu), iv(tau));
                let lhs = p_interval(n, t) - (p_plus_interval(n, t) - p_minus_interval(n, t));
                let rhs = iv(4.0) * eta_interval(n).sqr() * ups_cot_interval(n) * ((iv(9.0) + iv(4.0) * t.sqr()) * hyperbolic_interval(t) - (iv(9.0) + a_interval() * t.sqr()));
                lhs.overlaps(&rhs)
            })
        })
        .with_note("non-negative by the τ-Taylor positivity certificate, since u ≥ 0")
        .requires(&[taylor]),
    );
    Certificate::composite("lambda chain", &[], steps)
}

pub fn shadow(tau_max: f64, depth: u32) -> Certificate {
    // λ = τ²·p_reduced/((1+4τ²)(9+4τ²)) has the sign of p_reduced for τ > 0
    let f: IntervalFn = Arc::new(|x: &[Interval]| p_reduced_interval(x[0], x[1]));
    let dom = [Interval::new(SHADOW_NU_FLOOR, 1.0), Interval::new(SHADOW_TAU_FLOOR, tau_max)];
    let c = bisect_nonneg("lambda shadow", f, &dom, BisectOptions::default().depth(depth));
    if !c.status.is_certified() {
        return c;
    }
    c.with_note(&format!("λ ≥ 0 on [{SHADOW_NU_FLOOR}, 1] × [{SHADOW_TAU_FLOOR}, {tau_max}]"))
}

fn tau_zero() -> Certificate {
    Certificate::check("λ(0, ν) encloses 0 at ν ∈ {0.25, 0.5, 1}", Sign::NonNeg, || {
        let m = [0.25, 0.5, 1.0].iter().map(|&nu| lambda_interval(iv(nu), iv(0.0))).fold(Interval::ONE, |a, l| {
            let ok = if l.contains(0.0) { Interval::ONE } else { iv(-1.0) };
            a.min(&ok)
        });
        m
    })
}

/// Requires the c₂, c₄/c₆/c₈ and Taylor certificates.
pub fn certify_lambda_master_with(tau_max: f64, depth: u32, c2: &Certificate, c468: &Certificate, taylor: &Certificate) -> Certificate {
    let steps = vec![chain(taylor), tau_zero(), shadow(tau_max, depth)];
    Certificate::composite("lambda", &[[0.0, 1.0], [0.0, tau_max]], steps).requires(&[c2, c468, taylor])
}

pub fn certify_lambda_master(tau_max: f64) -> Certificate {
    let a = super::appendix_a::certify_appendix_a();
    let c2 = super::c2::certify_c2();
    let c468 = super::c4c6c8::certify_c4_c6_c8_with(40, &[&a, &c2]);
    let taylor = super::taylor::certify_taylor_positivity(50);
    certify_lambda_master_with(tau_max, 40, &c2, &c468, &taylor)
}
