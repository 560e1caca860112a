//! Non-negativity of the τ² coefficient `c₂` on `[0, 1]`.
//!
//! On `[0, 3/5]` the cot term is replaced by its first series bound and the
//! resulting surd `p₁ + q₁` is handled by squaring. On `[3/5, 1]` the
//! substitution `Υ = y` and a quartic bound on the cot term reduce the claim
//! to two explicit polynomials `p₄`, `p₆` in `y`.

use super::engine::{poly_sign, BisectOptions, Certificate, Sign};
use super::interval::Interval;
use super::pipoly::{q, qi, PiPoly, Surd, Surd2};
use super::series::{cot_series_coeffs, eta_interval, h_poly, sec_tan_coeffs, t_exact};

fn pi() -> PiPoly {
    PiPoly::pi()
}

fn x() -> PiPoly {
    PiPoly::x()
}

fn int(n: i64) -> PiPoly {
    PiPoly::int(n)
}

fn pi_pow(n: i64, d: i64, k: u32) -> PiPoly {
    PiPoly::monomial(q(n, d), k, 0)
}

/// `3π(4−π)/2`, which is `(π−2)` times the constant `B` in `c₂`.
fn b_num() -> PiPoly {
    (pi().scale(&q(3, 2))) * (int(4) - pi())
}

/// `−4X² − 9π(4−π)X − 9(π−2)²` at `X = arg`.
fn reduced_bracket(arg: &PiPoly) -> PiPoly {
    let pm2 = pi() - int(2);
    arg.pow(2).scale(&qi(-4)) - (pi() * (int(4) - pi())).scale(&qi(9)) * arg.clone() - pm2.pow(2).scale(&qi(9))
}

/// `(π−2)²(QX² − (BX + 3(π−2))²) = (π−2)²·(−4X² − 9π(4−π)X − 9(π−2)²)` with
/// `Q = B² − 4`, checked as a polynomial identity in `X`.
fn bracket_identity() -> Certificate {
    Certificate::exact("c2: X²(Q − (B + 3(π−2)/X)²) = −4X² − 9π(4−π)X − 9(π−2)²", || {
        let xx = x();
        let pm2 = pi() - int(2);
        let bn = b_num();
        let lhs = bn.pow(2) * xx.pow(2) - pm2.pow(2).scale(&qi(4)) * xx.pow(2) - (bn * xx.clone() + pm2.pow(2).scale(&qi(3))).pow(2);
        lhs == pm2.pow(2) * reduced_bracket(&xx)
    })
}

fn s_sq() -> PiPoly {
    int(9) + x().pow(2).scale(&qi(4))
}

/// `(p₁, q̃₁)` with `9(πν²−2)² b₁/(32ν²) = p₁ + q̃₁√(9+4ν²)`, computed as
/// `(2/ν)(72(5+2ν²)X₁²s − 1764νX₁² + N²s·R(X₁))`, `X₁ = 1 − πν²/2`, `N = s − 4ν`.
pub fn p1_q1() -> (PiPoly, PiPoly) {
    let r = s_sq();
    let nu = x();
    let x1 = int(1) - pi().scale(&q(1, 2)) * nu.pow(2);
    let s = Surd::radical(&r);
    let n = s.sub(&Surd::rational(nu.scale(&qi(4)), &r));
    let n2s = n.mul(&n).mul(&s);
    let t1 = s.scale(&((int(5) + nu.pow(2).scale(&qi(2))).scale(&qi(72)) * x1.pow(2)));
    let t2 = Surd::rational(nu.scale(&qi(-1764)) * x1.pow(2), &r);
    let t3 = n2s.scale(&reduced_bracket(&x1));
    let sum = t1.add(&t2).add(&t3).scale(&int(2));
    let out = sum.div_var_pow(1).expect("divisible by ν");
    (out.a, out.b)
}

/// The polynomials as displayed in the literature.
pub fn p1_displayed() -> PiPoly {
    let nu = x();
    int(2232)
        + (int(2560) + pi_pow(2952, 1, 1) - pi_pow(2592, 1, 2) + pi_pow(648, 1, 3)) * nu.pow(2)
        + (pi_pow(288, 1, 3) - pi_pow(256, 1, 1) - pi_pow(1890, 1, 2)) * nu.pow(4)
        + pi_pow(64, 1, 2) * nu.pow(6)
}

pub fn q1_displayed() -> PiPoly {
    let nu = x();
    (pi_pow(324, 1, 2) - int(1312) - pi_pow(648, 1, 1) - pi_pow(81, 1, 3)) * nu.clone()
        + (pi_pow(882, 1, 2) - pi_pow(128, 1, 1) - pi_pow(180, 1, 3)) * nu.pow(3)
        + pi_pow(32, 1, 2) * nu.pow(5)
}

/// `p₂ = p₁² − q̃₁²(9+4ν²)` in the variable ν.
pub fn p2() -> PiPoly {
    let (p1, q1) = p1_q1();
    p1.pow(2) - q1.pow(2) * s_sq()
}

/// Even polynomial `p(ν)` rewritten in `w = ν²`.
fn in_square(p: &PiPoly) -> PiPoly {
    let d = p.degree();
    let mut out = PiPoly::zero();
    for j in (0..=d).step_by(2) {
        out = out + p.coeff(j) * x().pow(j / 2);
    }
    out
}

/// `p₃(y) = p₂(√(9/25 − y))`.
pub fn p3() -> PiPoly {
    in_square(&p2()).compose(&(PiPoly::rat(9, 25) - x()))
}

fn is_even(p: &PiPoly) -> bool {
    (0..=p.degree()).step_by(2).fold(p.clone(), |acc, j| acc - p.coeff(j) * x().pow(j)).is_zero()
}

fn three_fifths_hi() -> f64 {
    Interval::from_rational(&q(3, 5)).hi
}

fn lower_half(depth: u32) -> Certificate {
    let nu_hi = three_fifths_hi();
    let x1 = int(1) - pi().scale(&q(1, 2)) * x().pow(2);
    let mut steps = vec![poly_sign("c2 low: 1 − πν²/2 > 0 on [0, 3/5]", &x1, 0.0, nu_hi, BisectOptions::default().depth(depth).strict())];
    steps.push(bound_one());
    steps.push(bracket_identity());
    let (p1, q1) = p1_q1();
    {
        let (a, b) = (p1.clone(), q1.clone());
        steps.push(Certificate::exact("c2 low: p1 and q1 agree with the displayed polynomials", move || {
            a == p1_displayed() && b == q1_displayed()
        }));
    }
    steps.push(poly_sign("c2 low: p1 ≥ 0 on [0, 3/5]", &p1, 0.0, nu_hi, BisectOptions::default().depth(depth)));
    steps.push(Certificate::exact("c2 low: p2 has degree 5 in ν²", || {
        let p = p2();
        p.degree() == 10 && is_even(&p)
    }));
    steps.push(poly_sign("c2 low: p3 > 0 on [0, 9/25]", &p3(), 0.0, Interval::ratio(9, 25).hi, BisectOptions::default().depth(depth).strict()));
    Certificate::composite("c2 on [0, 3/5]", &[[0.0, nu_hi]], steps)
        .with_note("p1 ≥ 0 and p1² − q1² > 0 give p1 + q1 ≥ 0, hence b1 ≥ 0 and c2 ≥ b1")
}

/// `Υcot(πΥ/2) ≤ F₁(ν) = πν²/4` from the alternating series with
/// `c₁ = π/4` and `c_{k+1} ≤ c_k/3`.
fn bound_one() -> Certificate {
    let decreasing = Certificate::check("bound 1: c_{k+1} < c_k/3·(1+1e−12), k ≤ 40", Sign::Pos, || {
        let c = cot_series_coeffs();
        let margin = c.windows(2).map(|w| w[0].lo / 3.0 * (1.0 + 1e-12) - w[1].hi).fold(f64::INFINITY, f64::min);
        Interval::point(margin)
    });
    let c1 = Certificate::check("bound 1: series for c_1 is consistent with π/4", Sign::Pos, || {
        // Σ_{j≤J} 16j²/(π(4j²−1)²) with the tail bound 1/(π(1−1/(4J²))²J)
        let jmax = 100_000u64;
        let mut s = Interval::ZERO;
        for j in (1..=jmax).rev() {
            let jj = Interval::point(j as f64);
            s = s + jj.sqr() / Interval::point(4.0 * (j * j) as f64 - 1.0).sqr();
        }
        let p = Interval::pi();
        let part = Interval::point(16.0) * s / p;
        let jf = Interval::point(jmax as f64);
        let tail = Interval::ONE / (p * (Interval::ONE - Interval::ONE / (Interval::point(4.0) * jf.sqr())).sqr() * jf);
        let enc = part + Interval::new(0.0, tail.hi);
        let target = p / Interval::point(4.0);
        // positive iff the enclosure meets π/4
        Interval::point(if enc.overlaps(&target) { 1.0 } else { -1.0 })
    });
    Certificate::composite("bound 1", &[], vec![decreasing, c1]).with_note("every inner term is divided by 4j²−1 ≥ 3 when k increases")
}

/// `S_j/2 − T_j < 0`, `S_{j−1} − T_j/2 < 0` and `S_{j−1} − S_j/4 < 0`.
///
/// For every `j` the first follows from `Σ(−1)^k/(2k+1)^{2j+1} ≤ 1 < Σ1/(2k+1)^{2j}`,
/// the second from `1 − 3^{1−2j} + 5^{1−2j} − 1 − 3^{−2j} < 0`, the third from an
/// alternating sum with decreasing terms since `m²(1−2j) + 2j + 1 ≤ 10 − 16j < 0`.
fn st_differences(n: usize) -> Certificate {
    let (s, t) = sec_tan_coeffs(n);
    let mut steps = Vec::new();
    for j in 1..=n {
        let (sj, sj1, tj) = (s[j], s[j - 1], t[j - 1]);
        steps.push(Certificate::check(&format!("S_{j}/2 − T_{j} < 0"), Sign::Pos, move || tj - sj / Interval::point(2.0)));
        steps.push(Certificate::check(&format!("S_{} − T_{j}/2 < 0", j - 1), Sign::Pos, move || tj / Interval::point(2.0) - sj1));
        steps.push(Certificate::check(&format!("S_{} − S_{j}/4 < 0", j - 1), Sign::Pos, move || sj / Interval::point(4.0) - sj1));
    }
    steps.push(Certificate::exact("ST differences: general j", || {
        (1..200).all(|j: i32| 5f64.powi(1 - 2 * j) < 3f64.powi(1 - 2 * j) && 10 - 16 * j < 0)
    }));
    Certificate::composite("ST differences", &[], steps)
}

/// `D(x) = 1 − h(x)`.
pub fn d_poly() -> PiPoly {
    int(1) - h_poly()
}

/// The cubic `E(y)` with `192² D(y−1/2)² = (1−2y)²E(y)²/4`.
pub fn e_displayed() -> PiPoly {
    let y = x();
    (int(384) - pi_pow(5, 1, 4))
        + (pi_pow(30, 1, 4) - pi_pow(384, 1, 1) - pi_pow(96, 1, 2) - pi_pow(32, 1, 3)) * y.clone()
        + (pi_pow(192, 1, 2) + pi_pow(128, 1, 3) - pi_pow(60, 1, 4)) * y.pow(2)
        + (pi_pow(40, 1, 4) - pi_pow(128, 1, 3)) * y.pow(3)
}

fn shift_half() -> PiPoly {
    x() - PiPoly::rat(1, 2)
}

/// `(p₄, p₅)` with `g₂(y) = p₄(y)√(1−y²) + p₅(y)√(13−4y²)`, and the two
/// remaining surd components (which vanish).
pub fn p4_p5() -> (PiPoly, PiPoly, PiPoly, PiPoly) {
    let y = x();
    let r1 = int(13) - y.pow(2).scale(&qi(4));
    let r2 = int(1) - y.pow(2);
    let d = d_poly().compose(&shift_half());
    let d2 = d.pow(2);
    let big_r1 = Surd2::rad1(&r1, &r2);
    let big_r2 = Surd2::rad2(&r1, &r2);
    let scalar = |p: PiPoly| Surd2::scalar(p, &r1, &r2);
    // D²b₂ = 36(14−4y²)D²R₁ − 1764D²R₂ + R₁(R₁−4R₂)²(−4D² − 9π(4−π)D − 9(π−2)²)
    let a = big_r1.scale(&((int(14) - y.pow(2).scale(&qi(4))).scale(&qi(36)) * d2.clone()));
    let b = big_r2.scale(&d2.scale(&qi(-1764)));
    let diff = big_r1.sub(&big_r2.scale(&int(4)));
    let c = big_r1.mul(&diff.mul(&diff)).mul(&scalar(reduced_bracket(&d)));
    let g2 = a.add(&b).add(&c).scale(&int(192 * 192));
    let [c00, c10, c01, c11] = g2.c;
    (c01, c10, c00, c11)
}

/// `p₆ = (p₄²(1−y²) − p₅²(13−4y²))/(81(1−2y)⁴)` and the division remainder.
pub fn p6() -> (PiPoly, PiPoly) {
    let (p4, p5, _, _) = p4_p5();
    let y = x();
    let num = p4.pow(2) * (int(1) - y.pow(2)) - p5.pow(2) * (int(13) - y.pow(2).scale(&qi(4)));
    let den = (int(1) - y.scale(&qi(2))).pow(4).scale(&qi(81));
    num.div_rem(&den)
}

fn coeff_signs(p: &PiPoly) -> Vec<Option<i8>> {
    (0..=p.degree()).map(|k| p.coeff(k).constant_sign()).collect()
}

/// `p₄ ≥ ṽ₀ + ṽ₂y² > 0` on `[0, 4/5]` by dropping `v₅, v₇, v₉ > 0` and moving
/// the negative `v₁, v₃, v₄, v₆, v₈, v₁₀` to lower powers.
fn p4_positive(p4: &PiPoly, depth: u32) -> Certificate {
    let signs = coeff_signs(p4);
    let pos = [0usize, 2, 5, 7, 9];
    let neg = [1usize, 3, 4, 6, 8, 10];
    let pattern_ok = signs.len() == 11 && pos.iter().all(|&k| signs[k] == Some(1)) && neg.iter().all(|&k| signs[k] == Some(-1));
    if !pattern_ok {
        return poly_sign("p4 > 0 on [0, 4/5] (bisection)", p4, 0.0, Interval::ratio(4, 5).hi, BisectOptions::default().depth(depth).strict())
            .with_note("coefficient sign pattern differs from the stated one");
    }
    let v = |k: u32| p4.coeff(k);
    let f = q(4, 5);
    let v0 = v(0) + v(1).scale(&f);
    let mut v2 = v(2);
    for k in [3u32, 4, 6, 8, 10] {
        v2 = v2 + v(k).scale(&num_traits::pow(f.clone(), (k - 2) as usize));
    }
    let sign_step = {
        let p = p4.clone();
        Certificate::exact("p4: v5, v7, v9 > 0 and v1, v3, v4, v6, v8, v10 < 0", move || {
            let s = coeff_signs(&p);
            pos[2..].iter().all(|&k| s[k] == Some(1)) && neg.iter().all(|&k| s[k] == Some(-1))
        })
    };
    let c0 = Certificate::exact("p4: ṽ0 = v0 + (4/5)v1 > 0", move || v0.constant_sign() == Some(1));
    let c2 = Certificate::exact("p4: ṽ2 > 0", move || v2.constant_sign() == Some(1));
    Certificate::composite("p4 > 0 on [0, 4/5]", &[[0.0, 0.8]], vec![sign_step, c0, c2])
}

/// `p₆ ≥ w₀ + w̃₆y⁶ > 0` on `[0, 4/5]`.
fn p6_positive(p6: &PiPoly, depth: u32) -> Certificate {
    let signs = coeff_signs(p6);
    let expect = |k: usize| -> i8 {
        match k {
            0..=5 | 13 | 15 => 1,
            7..=16 => -1,
            _ => 0,
        }
    };
    let pattern_ok = signs.len() == 17 && (0..=16).filter(|&k| k != 6).all(|k| signs[k] == Some(expect(k)));
    if !pattern_ok {
        return poly_sign("p6 > 0 on [0, 4/5] (bisection)", p6, 0.0, Interval::ratio(4, 5).hi, BisectOptions::default().depth(depth).strict())
            .with_note("coefficient sign pattern differs from the stated one");
    }
    let w = |k: u32| p6.coeff(k);
    let f = q(4, 5);
    let w0 = w(0);
    let mut w6 = w(6);
    for k in 1..=5 {
        w6 = w6 + w(k);
    }
    for k in [7u32, 8, 9, 10, 11, 12, 14, 16] {
        w6 = w6 + w(k).scale(&num_traits::pow(f.clone(), (k - 6) as usize));
    }
    let sign_step = {
        let p = p6.clone();
        Certificate::exact("p6: w1..w5, w13, w15 > 0, other w_k < 0 for k ≥ 7", move || {
            let s = coeff_signs(&p);
            (1..=16).filter(|&k| k != 6).all(|k| s[k] == Some(expect(k)))
        })
    };
    let c0 = Certificate::exact("p6: w0 > 0", move || w0.constant_sign() == Some(1));
    let c6 = Certificate::exact("p6: w̃6 > 0", move || w6.constant_sign() == Some(1));
    Certificate::composite("p6 > 0 on [0, 4/5]", &[[0.0, 0.8]], vec![sign_step, c0, c6])
}

fn upper_half(depth: u32) -> Certificate {
    let mut steps = vec![st_differences(12)];
    steps.push(Certificate::exact("1 − h = (π−2)x + (2π−π²/2)x² + (π³/3−π²)x³ + (2π³/3−5π⁴/24)x⁴", || {
        let xx = x();
        let d = (pi() - int(2)) * xx.clone()
            + (pi().scale(&qi(2)) - pi_pow(1, 2, 2)) * xx.pow(2)
            + (pi_pow(1, 3, 3) - pi_pow(1, 1, 2)) * xx.pow(3)
            + (pi_pow(2, 3, 3) - pi_pow(5, 24, 4)) * xx.pow(4);
        d_poly() == d && t_exact(1) == pi()
    }));
    let d_over_x = d_poly().div_var_pow(1).expect("D(0) = 0");
    steps.push(poly_sign("D(x)/x > 0 on [−1/2, 1/2]", &d_over_x, -0.5, 0.5, BisectOptions::default().depth(depth).strict())
        .with_note("gives 1 − h ≥ 0 on [0, 1/2] and 1 − h ≤ 0 on [−1/2, 0]"));
    steps.push(Certificate::check("B > 0", Sign::Pos, || {
        let p = Interval::pi();
        Interval::point(3.0) * p * (Interval::point(4.0) - p) / (Interval::point(2.0) * (p - Interval::point(2.0)))
    }));
    steps.push(Certificate::check("B + 3(π−2)/(1 − l(−1/2)) < 0, l(−1/2) = 4/π", Sign::Pos, || {
        let p = Interval::pi();
        let b = Interval::point(3.0) * p * (Interval::point(4.0) - p) / (Interval::point(2.0) * (p - Interval::point(2.0)));
        -(b + Interval::point(3.0) * (p - Interval::point(2.0)) / (Interval::ONE - Interval::point(4.0) / p))
    }));
    steps.push(bracket_identity());
    steps.push(Certificate::exact("192²D(y−1/2)² = (1−2y)²E(y)²/4", || {
        let y = x();
        let lhs = d_poly().compose(&shift_half()).pow(2).scale(&qi(192 * 192));
        let rhs = (int(1) - y.scale(&qi(2))).pow(2) * e_displayed().pow(2);
        lhs == rhs.scale(&q(1, 4))
    }));
    let (p4, p5, c00, c11) = p4_p5();
    {
        let (p4, p5) = (p4.clone(), p5.clone());
        steps.push(Certificate::exact("g2 = p4√(1−y²) + p5√(13−4y²), degree 10", move || {
            c00.is_zero() && c11.is_zero() && p4.degree() == 10 && p5.degree() == 10
        }));
    }
    steps.push(p4_positive(&p4, depth));
    let (p6, rem) = p6();
    {
        let p6 = p6.clone();
        steps.push(Certificate::exact("p6: exact division by 81(1−2y)⁴, degree 16", move || rem.is_zero() && p6.degree() == 16));
    }
    steps.push(p6_positive(&p6, depth));
    Certificate::composite("c2 on [3/5, 1]", &[[0.6, 1.0]], steps)
        .with_note("p4 > 0 and p4²(1−y²) − p5²(13−4y²) ≥ 0 give g2 ≥ 0, hence b2 ≥ 0 and c2 ≥ 0")
}

/// Interval enclosure of `c₂(ν)` in the η form, finite at ν = √3/2.
pub fn c2_interval(nu: Interval) -> Interval {
    let p = Interval::pi();
    let two = Interval::point(2.0);
    let s = (Interval::point(9.0) + Interval::point(4.0) * nu.sqr()).sqrt();
    let n = s - Interval::point(4.0) * nu;
    let b = Interval::point(3.0) * p * (Interval::point(4.0) - p) / (two * (p - two));
    let e = eta_interval(nu);
    let bracket = Interval::point(72.0) * (Interval::point(5.0) + two * nu.sqr()) - Interval::point(1764.0) * nu / s
        + n.sqr() * (b.sqr() - Interval::point(4.0))
        - (n * b + Interval::point(9.0) * (p - two) * e).sqr();
    Interval::point(16.0) * nu * s / Interval::point(9.0) * bracket
}

pub fn certify_c2() -> Certificate {
    certify_c2_with(40)
}

pub fn certify_c2_with(depth: u32) -> Certificate {
    let steps = vec![lower_half(depth), upper_half(depth)];
    Certificate::composite("c2", &[[0.0, 1.0]], steps)
}
