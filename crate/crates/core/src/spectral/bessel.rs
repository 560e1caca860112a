//! Half-integer order Bessel functions through spherical `j_l`.

use std::f64::consts::PI;

/// Spherical Bessel function `j_l(x)` for `x ≥ 0`.
///
/// Series below `x = 1`, upward recurrence from `j₀, j₁` when `x > l`
/// (stable there), and Miller's downward recurrence normalized by
/// `Σ(2n+1)j_n² = 1` otherwise.
pub fn spherical_j(l: u32, x: f64) -> f64 {
    let x = x.abs();
    if x < 1.0 {
        return series(l, x);
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if l == 0 {
        return j0;
    }
    let j1 = s / (x * x) - c / x;
    if x > l as f64 {
        let (mut a, mut b) = (j0, j1);
        for n in 1..l {
            let next = (2 * n + 1) as f64 / x * b - a;
            a = b;
            b = next;
        }
        return b;
    }
    miller(l, x, j0, j1)
}

fn series(l: u32, x: f64) -> f64 {
    let mut lead = 1.0;
    for k in 0..l {
        lead *= x / (2 * k + 3) as f64;
    }
    let q = -x * x / 2.0;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..30 {
        term *= q / (k as f64 * (2 * (l + k) + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn miller(l: u32, x: f64, j0: f64, j1: f64) -> f64 {
    let start = l + 20 + (x as u32) + (40.0 * (l as f64).sqrt()) as u32;
    let (mut above, mut cur) = (0.0f64, 1.0f64);
    let mut at_l = 0.0;
    let mut norm = 0.0;
    let mut cur_low = (0.0, 0.0);
    let mut n = start;
    loop {
        norm += (2 * n + 1) as f64 * cur * cur;
        if n == l {
            at_l = cur;
        }
        if n == 1 {
            cur_low.1 = cur;
        }
        if n == 0 {
            cur_low.0 = cur;
            break;
        }
        let below = (2 * n + 1) as f64 / x * cur - above;
        above = cur;
        cur = below;
        n -= 1;
        if cur.abs() > 1e150 {
            cur *= 1e-150;
            above *= 1e-150;
            at_l *= 1e-150;
            norm *= 1e-300;
        }
    }
    let scale = 1.0 / norm.sqrt();
    // sign from the larger of j₀ and j₁
    let sign = if j0.abs() > j1.abs() { (j0 * cur_low.0).signum() } else { (j1 * cur_low.1).signum() };
    sign * at_l * scale
}

/// `J_{l+1/2}(x) = √(2x/π) j_l(x)`.
pub fn bessel_j_half(l: u32, x: f64) -> f64 {
    (2.0 * x / PI).sqrt() * spherical_j(l, x)
}

/// Unitary Hankel kernel `√x J_{l+1/2}(x) = √(2/π) x j_l(x)`.
pub fn riccati_kernel(l: u32, x: f64) -> f64 {
    (2.0 / PI).sqrt() * x * spherical_j(l, x)
}
