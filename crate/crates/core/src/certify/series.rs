//! Interval enclosures of `Υ cot(πΥ/2)`, `η_ν` and the sec/tan Taylor
//! coefficients.
//!
//! With `x = ν²`,
//! `Υ cot(πΥ/2) = Σ_{k≥1} (−1)^{k+1} c_k x^k`, `c_k = Σ_{j≥1} 16j²/(π(4j²−1)^{k+1})`,
//! an alternating series with decreasing terms on `[0, 1]` (`c_{k+1} ≤ c_k/3`).

use super::interval::Interval;
use super::pipoly::{q, PiPoly, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

/// Number of series terms used for point enclosures.
pub const SERIES_TERMS: usize = 40;
const TAIL_TARGET: f64 = 1e-19;

fn compute_c(k: usize) -> Interval {
    let pi = Interval::pi();
    if k == 1 {
        return pi / Interval::point(4.0);
    }
    let kk = k as u32;
    let tail_est = |j: f64| 16.0 / (std::f64::consts::PI * 4f64.powi(kk as i32 + 1) * (2.0 * k as f64 - 1.0) * j.powi(2 * kk as i32 - 1));
    let mut big_j = 4u64;
    while tail_est(big_j as f64) > TAIL_TARGET {
        big_j *= 2;
    }
    let mut sum = Interval::ZERO;
    for j in (1..=big_j).rev() {
        let jj = Interval::point(j as f64);
        let a = Interval::point(4.0 * (j as f64) * (j as f64) - 1.0);
        sum = sum + jj.sqr() / a.powi(kk + 1);
    }
    // Σ_{j>J} 16j²/(π(4j²−1)^{k+1}) ≤ 16/(π 4^{k+1} (1−1/(4J²))^{k+1} (2k−1) J^{2k−1})
    let jf = Interval::point(big_j as f64);
    let shrink = (Interval::ONE - Interval::ONE / (Interval::point(4.0) * jf.sqr())).powi(kk + 1);
    let tail = Interval::point(16.0)
        / (pi * Interval::point(4.0).powi(kk + 1) * shrink * Interval::point(2.0 * k as f64 - 1.0) * jf.powi(2 * kk - 1));
    Interval::point(16.0) * sum / pi + Interval::new(0.0, tail.hi)
}

/// Enclosures of `c_1 … c_{SERIES_TERMS+1}` (index 0 holds `c_1`).
pub fn cot_series_coeffs() -> &'static [Interval] {
    static C: OnceLock<Vec<Interval>> = OnceLock::new();
    C.get_or_init(|| (1..=SERIES_TERMS + 1).map(compute_c).collect())
}

fn horner(coeffs: &[Interval], x: Interval) -> Interval {
    coeffs.iter().rev().fold(Interval::ZERO, |h, c| h * x + *c)
}

/// `F_n` at a point, evaluated in `x = ν²`.
fn f_partial(n: usize, nu: f64) -> Interval {
    let c = cot_series_coeffs();
    let x = Interval::point(nu).sqr();
    let mut coeffs = vec![Interval::ZERO];
    for k in 1..=n {
        let ck = if k <= c.len() { c[k - 1] } else { compute_c(k) };
        coeffs.push(if k % 2 == 1 { ck } else { -ck });
    }
    horner(&coeffs, x)
}

/// `[F_{2n}(ν.lo), F_{2n−1}(ν.hi)]`, which contains `Υ cot(πΥ/2)` on ν by the
/// alternating bracket and monotonicity in ν.
pub fn cot_enclosure(nu: Interval, n: usize) -> Interval {
    assert!(n >= 1);
    let lo = f_partial(2 * n, nu.lo.max(0.0)).lo;
    let hi = f_partial(2 * n - 1, nu.hi.min(1.0)).hi;
    Interval { lo, hi }
}

fn ups_cot_point(nu: f64) -> Interval {
    let c = cot_series_coeffs();
    let x = Interval::point(nu).sqr();
    let mut coeffs = vec![Interval::ZERO];
    for (k, ck) in c.iter().take(SERIES_TERMS).enumerate() {
        coeffs.push(if k % 2 == 0 { *ck } else { -*ck });
    }
    let r = c[SERIES_TERMS].hi * x.hi.powi(SERIES_TERMS as i32 + 1);
    horner(&coeffs, x) + Interval::new(-r, r)
}

/// Tight enclosure of `Υ cot(πΥ/2)` over ν ⊆ [0, 1]; the map is increasing
/// in ν since `y cot y` decreases on `(0, π/2]`.
pub fn ups_cot_interval(nu: Interval) -> Interval {
    let lo = ups_cot_point(nu.lo.max(0.0)).lo.max(0.0);
    let hi = ups_cot_point(nu.hi.min(1.0)).hi;
    Interval { lo, hi }
}

/// Coefficients `d_i` of the divided difference
/// `D(x) = (Υcot(πΥ/2) − 1/2)/(x − 3/4) = Σ_{k≥1} (−1)^{k+1} c_k Σ_{i<k} x^i (3/4)^{k−1−i}`.
fn divided_coeffs() -> &'static [Interval] {
    static D: OnceLock<Vec<Interval>> = OnceLock::new();
    D.get_or_init(|| {
        let c = cot_series_coeffs();
        let x0 = Interval::ratio(3, 4);
        (0..SERIES_TERMS)
            .map(|i| {
                let mut s = Interval::ZERO;
                for k in (i + 1..=SERIES_TERMS).rev() {
                    let t = c[k - 1] * x0.powi((k - 1 - i) as u32);
                    s = if k % 2 == 1 { s + t } else { s - t };
                }
                s
            })
            .collect()
    })
}

fn divided_point(nu: f64) -> Interval {
    let x = Interval::point(nu).sqr();
    let c = cot_series_coeffs();
    // next term bounded by c_{N+1}(N+1)max(x, 3/4)^N
    let m = x.hi.max(0.75);
    let r = c[SERIES_TERMS].hi * (SERIES_TERMS as f64 + 1.0) * m.powi(SERIES_TERMS as i32) * (1.0 + 1e-12);
    horner(divided_coeffs(), x) + Interval::new(-r, r)
}

/// `η` at a single coupling, via `η = 2/((√(9+4ν²) + 4ν) D(ν²))`, which has
/// no removable singularity at ν = √3/2.
pub fn eta_point(nu: f64) -> Interval {
    let n = Interval::point(nu);
    let s = (Interval::point(9.0) + Interval::point(4.0) * n.sqr()).sqrt();
    Interval::point(2.0) / ((s + Interval::point(4.0) * n) * divided_point(nu))
}

/// Enclosure of η over ν ⊆ [0, 1] using that η is decreasing.
pub fn eta_interval(nu: Interval) -> Interval {
    let hi = eta_point(nu.lo.max(0.0)).hi;
    let lo = eta_point(nu.hi.min(1.0)).lo;
    Interval { lo, hi }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Bernoulli numbers `B_0 … B_m` (with `B_1 = −1/2`).
pub fn bernoulli(m: usize) -> Vec<Q> {
    let mut b: Vec<Q> = vec![Q::one()];
    for n in 1..=m {
        let mut s = Q::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Q::from_integer(binomial(n + 1, k)) * bk;
        }
        b.push(-s / Q::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Euler numbers `E_0, E_2, …, E_{2m}`.
pub fn euler_even(m: usize) -> Vec<BigInt> {
    let mut e: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=m {
        let mut s = BigInt::zero();
        for (k, ek) in e.iter().enumerate() {
            s += binomial(2 * n, 2 * k) * ek;
        }
        e.push(-s);
    }
    e
}

/// Exact `S_n = |E_{2n}| π^{2n}/(2n)!`, the Taylor coefficients of `sec(πx)`.
pub fn s_exact(n: usize) -> PiPoly {
    let e = &euler_even(n)[n];
    PiPoly::monomial(Q::new(e.abs(), factorial(2 * n)), 2 * n as u32, 0)
}

/// Exact `T_n = 2^{2n}(2^{2n}−1)|B_{2n}| π^{2n−1}/(2n)!`, the Taylor
/// coefficients of `tan(πx)`.
pub fn t_exact(n: usize) -> PiPoly {
    assert!(n >= 1);
    let b = bernoulli(2 * n)[2 * n].abs();
    let p = BigInt::from(4).pow(n as u32);
    let c = b * Q::from_integer(&p * (&p - 1)) / Q::from_integer(factorial(2 * n));
    PiPoly::monomial(c, 2 * n as u32 - 1, 0)
}

const SERIES_K: u64 = 4000;

/// `S_n` from its defining alternating series, bracketed by consecutive
/// partial sums.
fn s_series(n: usize) -> Interval {
    let p = 2 * n as u32 + 1;
    let mut sum = Interval::ZERO;
    for k in (0..SERIES_K).rev() {
        let t = Interval::ONE / Interval::point((2 * k + 1) as f64).powi(p);
        sum = if k % 2 == 0 { sum + t } else { sum - t };
    }
    // SERIES_K even: the next term is positive
    let next = Interval::ONE / Interval::point((2 * SERIES_K + 1) as f64).powi(p);
    let beta = sum + Interval::new(0.0, next.hi);
    Interval::point(2f64.powi(2 * n as i32 + 2)) * beta / Interval::pi()
}

/// `T_n` from its defining series; the convex tail satisfies
/// `∫_{K}^∞ f ≤ Σ_{k≥K} f(k) ≤ ∫_{K−1/2}^∞ f` with `f(k) = (2k+1)^{−2n}`.
fn t_series(n: usize) -> Interval {
    let p = 2 * n as u32;
    let mut sum = Interval::ZERO;
    for k in (0..SERIES_K).rev() {
        sum = sum + Interval::ONE / Interval::point((2 * k + 1) as f64).powi(p);
    }
    let tail = |m: f64| Interval::ONE / (Interval::point(2.0 * (p as f64 - 1.0)) * Interval::point(m).powi(p - 1));
    let lo = tail((2 * SERIES_K + 1) as f64);
    let hi = tail(2.0 * SERIES_K as f64);
    let lam = sum + Interval::new(lo.lo, hi.hi);
    Interval::point(2f64.powi(2 * n as i32 + 1)) * lam / Interval::pi()
}

fn intersect(a: Interval, b: Interval) -> Interval {
    let lo = a.lo.max(b.lo);
    let hi = a.hi.min(b.hi);
    assert!(lo <= hi, "disjoint enclosures {a:?} {b:?}");
    Interval { lo, hi }
}

/// Enclosures `S_0 … S_n` and `T_1 … T_n` (the latter at index `j − 1`).
pub fn sec_tan_coeffs(n: usize) -> (Vec<Interval>, Vec<Interval>) {
    assert!(n >= 1);
    let s = (0..=n).map(|j| intersect(s_series(j), s_exact(j).constant_interval())).collect();
    let t = (1..=n).map(|j| intersect(t_series(j), t_exact(j).constant_interval())).collect();
    (s, t)
}

/// Exact polynomial `h(x) = 1 + 2Σ_{j≤2} [(S_j/2 − T_j)x^{2j} + (S_{j−1} − T_j/2)x^{2j−1}]`.
pub fn h_poly() -> PiPoly {
    let x = PiPoly::x();
    let half = q(1, 2);
    let mut h = PiPoly::one();
    for j in 1..=2usize {
        let a = &s_exact(j).scale(&half) - &t_exact(j);
        let b = &s_exact(j - 1) - &t_exact(j).scale(&half);
        h = &h + &(&(&a * &x.pow(2 * j as u32)) + &(&b * &x.pow(2 * j as u32 - 1))).scale(&Q::from_integer(2.into()));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{eta, SQRT3_HALF};
    use crate::special::ups_cot;

    #[test]
    fn first_coefficients() {
        let c = cot_series_coeffs();
        assert!(c[0].contains(std::f64::consts::PI / 4.0));
        for k in 1..10 {
            assert!(c[k].hi <= c[k - 1].lo / 3.0 * (1.0 + 1e-12), "{k}");
            assert!(c[k].width() < 1e-15);
        }
        // c_2 = (16/π)Σ j²/(4j²−1)³ = π/16 − π³/384 + ... checked by float partial sum
        let direct: f64 = (1..200_000).rev().map(|j| {
            let j = j as f64;
            16.0 * j * j / (std::f64::consts::PI * (4.0 * j * j - 1.0).powi(3))
        }).sum();
        assert!((c[1].mid() - direct).abs() < 1e-15);
    }

    #[test]
    fn cot_enclosure_examples() {
        let z = cot_enclosure(Interval::point(0.0), 3);
        assert!(z.contains(0.0) && z.width() <= 1e-12);
        let c = cot_enclosure(Interval::point(SQRT3_HALF), 3);
        assert!(c.contains(0.5));
        // bound 1 on [0, 3/5]
        for i in 0..=60 {
            let nu = 0.6 * i as f64 / 60.0;
            let u = cot_enclosure(Interval::point(nu), 1);
            let lhs = Interval::ONE - Interval::point(2.0) * u;
            let rhs = Interval::ONE - Interval::pi() * Interval::point(nu).sqr() / Interval::point(2.0);
            assert!(lhs.lo >= rhs.lo - 1e-15, "{nu}");
        }
    }

    #[test]
    fn ups_cot_and_eta_contain_float_values() {
        for i in 0..=200 {
            let nu = i as f64 / 200.0;
            let u = ups_cot_interval(Interval::point(nu));
            let f = ups_cot(nu).unwrap();
            assert!((u.lo - 1e-15..=u.hi + 1e-15).contains(&f), "{nu}: {u:?} {f}");
            assert!(u.width() < 1e-14, "{nu}");
            let e = eta_point(nu);
            let ef = eta(nu).unwrap();
            assert!((e.mid() - ef).abs() < 1e-11, "{nu}: {e:?} {ef}");
            assert!(e.width() < 1e-13);
        }
        let e = eta_point(SQRT3_HALF);
        assert!((e.mid() - 0.505741051656315374).abs() < 1e-14);
        let e1 = eta_point(1.0);
        assert!(e1.contains(0.481200143654572361) || (e1.mid() - 0.481200143654572361).abs() < 1e-15);
        let w = eta_interval(Interval::new(0.86, 0.87));
        assert!(w.lo < eta(0.87).unwrap() + 1e-12 && w.hi > eta(0.86).unwrap() - 1e-12);
        assert!(w.width() < 2.1e-3);
    }

    #[test]
    fn sec_tan_examples() {
        let (s, t) = sec_tan_coeffs(8);
        assert!(s[0].contains(1.0));
        assert!(t[0].contains(std::f64::consts::PI) || t[0].overlaps(&Interval::pi()));
        for j in 1..=8 {
            assert!((s[j] / Interval::point(2.0) - t[j - 1]).is_neg());
            assert!((s[j - 1] - t[j - 1] / Interval::point(2.0)).is_neg());
            assert!(s[j].width() < 1e-13 * s[j].mid().max(1.0));
        }
        // series enclosures agree with the exact Euler/Bernoulli forms
        for j in 1..=6 {
            assert!(s_series(j).overlaps(&s_exact(j).constant_interval()));
            assert!(t_series(j).overlaps(&t_exact(j).constant_interval()));
        }
        assert_eq!(t_exact(2), PiPoly::monomial(q(1, 3), 3, 0));
        assert_eq!(s_exact(2), PiPoly::monomial(q(5, 24), 4, 0));
    }

    #[test]
    fn h_matches_closed_form() {
        let pi = PiPoly::pi();
        let x = PiPoly::x();
        let expect = PiPoly::one()
            + (&PiPoly::int(2) - &pi) * x.clone()
            + (pi.pow(2).scale(&q(1, 2)) - pi.scale(&q(2, 1))) * x.pow(2)
            + (pi.pow(2) - pi.pow(3).scale(&q(1, 3))) * x.pow(3)
            + (pi.pow(4).scale(&q(5, 24)) - pi.pow(3).scale(&q(2, 3))) * x.pow(4);
        assert_eq!(h_poly(), expect);
    }
}
