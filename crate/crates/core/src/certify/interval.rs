//! Outward-rounded interval arithmetic.
//!
//! Every primitive computes the round-to-nearest result and then steps one
//! ulp outward, which encloses the exact result because IEEE-754 addition,
//! multiplication, division and square root are correctly rounded. The
//! exponential is built from these primitives with an explicit Taylor
//! remainder, never from the platform `exp`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

fn dn(x: f64) -> f64 {
    if x.is_finite() {
        x.next_down()
    } else {
        x
    }
}

fn up(x: f64) -> f64 {
    if x.is_finite() {
        x.next_up()
    } else {
        x
    }
}

impl Interval {
    pub const ENTIRE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Smallest f64 interval containing the decimal or rational `n/d`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Interval::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Interval { lo: rational_down(q), hi: rational_up(q) }
    }

    /// Enclosure of π of width one ulp.
    pub fn pi() -> Self {
        Interval { lo: std::f64::consts::PI, hi: std::f64::consts::PI.next_up() }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }

    pub fn is_nonneg(&self) -> bool {
        self.lo >= 0.0
    }

    pub fn is_pos(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_neg(&self) -> bool {
        self.hi < 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn split(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { lo: self.lo, hi: m }, Interval { lo: m, hi: self.hi })
    }

    pub fn sqr(&self) -> Interval {
        let (a, b) = (self.lo.abs(), self.hi.abs());
        let (mn, mx) = if self.lo <= 0.0 && self.hi >= 0.0 { (0.0, a.max(b)) } else { (a.min(b), a.max(b)) };
        Interval { lo: if mn == 0.0 { 0.0 } else { dn(mn * mn).max(0.0) }, hi: up(mx * mx) }
    }

    pub fn powi(&self, n: u32) -> Interval {
        match n {
            0 => Interval::ONE,
            1 => *self,
            _ if n % 2 == 0 => self.powi(n / 2).sqr(),
            _ => *self * self.powi(n - 1),
        }
    }

    pub fn recip(&self) -> Interval {
        Interval::ONE / *self
    }

    pub fn sqrt(&self) -> Interval {
        if self.hi < 0.0 {
            return Interval { lo: f64::NAN, hi: f64::NAN };
        }
        let lo = if self.lo <= 0.0 { 0.0 } else { dn(self.lo.sqrt()).max(0.0) };
        Interval { lo, hi: up(self.hi.sqrt()) }
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            -*self
        } else {
            Interval { lo: 0.0, hi: self.hi.max(-self.lo) }
        }
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.min(o.lo), hi: self.hi.min(o.hi) }
    }

    pub fn max(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi) }
    }

    pub fn exp(&self) -> Interval {
        Interval { lo: exp_point(self.lo).lo, hi: exp_point(self.hi).hi }
    }

    /// `sech` via `2/(e^x + e^-x)`, even and decreasing on [0, ∞).
    pub fn sech(&self) -> Interval {
        let a = self.abs();
        let f = |x: f64| {
            let e = exp_point(-x);
            Interval::point(2.0) * e / (Interval::ONE + e.sqr())
        };
        Interval { lo: f(a.hi).lo.max(0.0), hi: f(a.lo).hi.min(1.0) }
    }

    /// `tanh`, odd and increasing.
    pub fn tanh(&self) -> Interval {
        let f = |x: f64| {
            let e = exp_point(-2.0 * x.abs());
            let t = (Interval::ONE - e) / (Interval::ONE + e);
            let t = Interval { lo: t.lo.max(0.0), hi: t.hi.min(1.0) };
            if x < 0.0 {
                -t
            } else {
                t
            }
        };
        Interval { lo: f(self.lo).lo, hi: f(self.hi).hi }
    }

    /// `cosh`, even and increasing on [0, ∞).
    pub fn cosh(&self) -> Interval {
        let a = self.abs();
        let f = |x: f64| {
            let e = exp_point(x);
            (e + e.recip()) / Interval::point(2.0)
        };
        Interval { lo: f(a.lo).lo.max(1.0), hi: f(a.hi).hi }
    }

    /// `sinh(x)/x`, even and increasing in |x|, equal to 1 at 0.
    pub fn sinhc(&self) -> Interval {
        let a = self.abs();
        Interval { lo: sinhc_point(a.lo).lo.max(1.0), hi: sinhc_point(a.hi).hi }
    }
}

fn sinhc_point(x: f64) -> Interval {
    if x < 2.0 {
        // Σ x^{2k}/(2k+1)!; the series rounds far tighter than the exp
        // quotient, and after k = 16 the term ratio is below 1/2, so the
        // remainder is below twice its first term
        let x2 = Interval::point(x).sqr();
        let mut term = Interval::ONE;
        let mut sum = Interval::ONE;
        for k in 1..=16u32 {
            term = term * x2 / Interval::point(((2 * k) * (2 * k + 1)) as f64);
            sum = sum + term;
        }
        let next = term * x2 / Interval::point((34 * 35) as f64);
        return sum + Interval::new(0.0, 2.0 * next.hi);
    }
    let e = exp_point(x);
    (e - e.recip()) / (Interval::point(2.0) * Interval::point(x))
}

/// Enclosure of `e^x` for a single float.
fn exp_point(x: f64) -> Interval {
    if x.is_nan() {
        return Interval { lo: f64::NAN, hi: f64::NAN };
    }
    if x > 709.0 {
        return Interval { lo: f64::MAX, hi: f64::INFINITY };
    }
    if x < -745.0 {
        return Interval { lo: 0.0, hi: f64::MIN_POSITIVE };
    }
    if x == 0.0 {
        return Interval::ONE;
    }
    // x = n + y with |y| ≤ 1/2 exact; e^n by binary powering of an enclosure of e
    let n = x.round();
    let y = x - n;
    let v = exp_taylor(y) * e_power(n as i32);
    Interval { lo: v.lo.max(0.0), hi: v.hi }
}

/// `e^n` rounded outward from exact rational bounds on `e`, cached per `n`.
/// Float powering of an `e` enclosure loses a few ulps per product.
fn e_power(n: i32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<i32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache lock").get(&n) {
        return *v;
    }
    // Σ_{k≤25} 1/k! < e < that sum + 2/26!
    let mut fact = BigInt::from(1u32);
    let mut sum = BigRational::zero();
    for k in 0..=25u32 {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        sum += BigRational::new(BigInt::from(1u32), fact.clone());
    }
    let hi = &sum + BigRational::new(BigInt::from(2u32), fact * BigInt::from(26u32));
    let (a, b) = if n >= 0 { (sum, hi) } else { (hi.recip(), sum.recip()) };
    let m = n.unsigned_abs() as i32;
    let v = Interval { lo: rational_down(&num_traits::Pow::pow(&a, m)), hi: rational_up(&num_traits::Pow::pow(&b, m)) };
    cache.lock().expect("cache lock").insert(n, v);
    v
}

/// Degree-20 Taylor polynomial with Lagrange remainder, |y| ≤ 1/2.
fn exp_taylor(y: f64) -> Interval {
    let yi = Interval::point(y);
    let mut sum = Interval::ONE;
    let mut term = Interval::ONE;
    for n in 1..=20 {
        term = term * yi / Interval::point(n as f64);
        sum = sum + term;
    }
    // |R| ≤ e^{1/2} |y|^{21}/21! ≤ 2 |term| |y| / 21
    let r = up(2.0 * up(term.hi.abs().max(term.lo.abs()) * y.abs()) / 21.0);
    sum + Interval { lo: -r, hi: r }
}

fn rational_down(q: &BigRational) -> f64 {
    let f = num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN);
    if !f.is_finite() {
        return if q.is_negative() { f64::NEG_INFINITY } else { f64::MAX };
    }
    let mut f = f;
    while BigRational::from_f64(f).map_or(false, |r| &r > q) {
        f = f.next_down();
    }
    f
}

fn rational_up(q: &BigRational) -> f64 {
    let f = num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN);
    if !f.is_finite() {
        return if q.is_negative() { f64::MIN } else { f64::INFINITY };
    }
    let mut f = f;
    while BigRational::from_f64(f).map_or(false, |r| &r < q) {
        f = f.next_up();
    }
    f
}

/// True if the rational is exactly zero.
pub fn rational_is_zero(q: &BigRational) -> bool {
    q.is_zero()
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval { lo: dn(self.lo + o.lo), hi: up(self.hi + o.hi) }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval { lo: dn(self.lo - o.hi), hi: up(self.hi - o.lo) }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

fn mul_lo(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        dn(a * b)
    }
}

fn mul_hi(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        up(a * b)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let (a, b, c, d) = (self.lo, self.hi, o.lo, o.hi);
        let lo = mul_lo(a, c).min(mul_lo(a, d)).min(mul_lo(b, c)).min(mul_lo(b, d));
        let hi = mul_hi(a, c).max(mul_hi(a, d)).max(mul_hi(b, c)).max(mul_hi(b, d));
        Interval { lo, hi }
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return Interval::ENTIRE;
        }
        let (a, b, c, d) = (self.lo, self.hi, o.lo, o.hi);
        let q = |x: f64, y: f64| (x / y, x / y);
        let cands = [q(a, c), q(a, d), q(b, c), q(b, d)];
        let lo = cands.iter().map(|c| if c.0 == 0.0 { 0.0 } else { dn(c.0) }).fold(f64::INFINITY, f64::min);
        let hi = cands.iter().map(|c| if c.1 == 0.0 { 0.0 } else { up(c.1) }).fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for Interval {
            type Output = Interval;
            fn $m(self, o: f64) -> Interval { self.$m(Interval::point(o)) }
        }
        impl $tr<Interval> for f64 {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval { Interval::point(self).$m(o) }
        }
    )*};
}
scalar_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosh_and_sinhc() {
        for x in [0.0, 1e-8, 0.3, 0.49, 0.5, 1.0, 7.0, -2.0] {
            let c = Interval::point(x).cosh();
            assert!(c.contains(f64::cosh(x)) || (c.mid() / x.cosh() - 1.0).abs() < 1e-15, "{x}");
            let s = Interval::point(x).sinhc();
            let f = if x == 0.0 { 1.0 } else { x.sinh() / x };
            assert!(s.lo <= f * (1.0 + 1e-15) && f <= s.hi * (1.0 + 1e-15), "{x} {s:?} {f}");
            assert!(s.width() < 1e-14 * s.hi, "{x} {s:?} width {}", s.width());
        }
    }
    use proptest::prelude::*;

    #[test]
    fn pi_enclosure() {
        let p = Interval::pi();
        assert!(p.width() <= 1e-15);
        let q = BigRational::new(
            BigInt::parse_bytes(b"314159265358979323846264338327950288", 10).unwrap(),
            BigInt::from(10u64).pow(35),
        );
        assert!(BigRational::from_f64(p.lo).unwrap() < q);
        assert!(BigRational::from_f64(p.hi).unwrap() > q);
    }

    #[test]
    fn rational_enclosure_is_tight_and_sound() {
        let third = Interval::ratio(1, 3);
        assert!(third.lo < third.hi && third.hi == third.lo.next_up());
        let exact = Interval::ratio(3, 4);
        assert_eq!(exact.lo, 0.75);
        assert_eq!(exact.hi, 0.75);
    }

    #[test]
    fn exp_and_hyperbolic() {
        for x in [-30.0, -1.0, -0.1, 0.3, 1.0, 2.5, 50.0, 150.0] {
            let e = Interval::point(x).exp();
            let f = f64::exp(x);
            assert!(e.contains(f) || (e.lo - f).abs() <= 2e-16 * f, "{x}");
            assert!(e.width() <= 1e-13 * f, "{x}: {:?}", e);
        }
        let e1 = Interval::ONE.exp();
        assert!(e1.contains(std::f64::consts::E));
        let s = Interval::point(0.0).sech();
        assert!(s.contains(1.0));
        assert!(Interval::point(0.0).tanh().contains(0.0));
        let t = Interval::new(-1.0, 2.0).tanh();
        assert!(t.lo <= (-1f64).tanh() && t.hi >= 2f64.tanh());
        let big = Interval::point(200.0).sech();
        assert!(big.lo >= 0.0 && big.hi < 1e-80);
    }

    #[test]
    fn division_by_zero_straddle() {
        let d = Interval::ONE / Interval::new(-1.0, 1.0);
        assert_eq!(d, Interval::ENTIRE);
    }

    fn ival() -> impl Strategy<Value = (Interval, Interval)> {
        (-50.0f64..50.0, 0.0f64..10.0, 0.0f64..1.0, 0.0f64..1.0).prop_map(|(c, w, a, b)| {
            let outer = Interval::new(c - w, c + w);
            let lo = c - w + a * w;
            let hi = lo + b * (c + w - lo);
            (Interval::new(lo, hi), outer)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2500))]
        #[test]
        fn inclusion_isotonic((x, y) in ival(), (u, v) in ival(), t in 0.0f64..1.0) {
            let pick = |i: &Interval| i.lo + t * (i.hi - i.lo);
            let (px, pu) = (pick(&x), pick(&u));
            let ops: [(Interval, Interval, f64); 4] = [
                (x + u, y + v, px + pu),
                (x - u, y - v, px - pu),
                (x * u, y * v, px * pu),
                (x.sqr(), y.sqr(), px * px),
            ];
            for (inner, outer, p) in ops {
                prop_assert!(outer.contains_interval(&inner));
                prop_assert!(inner.contains(p));
            }
            if !v.contains(0.0) {
                prop_assert!((y / v).contains_interval(&(x / u)));
                prop_assert!((x / u).contains(px / pu));
            }
            let (ax, ay) = (x.abs(), y.abs());
            prop_assert!(ay.sqrt().contains_interval(&ax.sqrt()));
            prop_assert!(ax.sqrt().contains(pick(&ax).sqrt()) || (pick(&ax).sqrt() - ax.sqrt().hi).abs() < 1e-15);
            let (sx, sy) = (x * 0.1, y * 0.1);
            prop_assert!(sy.exp().contains_interval(&sx.exp()));
            prop_assert!(sy.tanh().contains_interval(&sx.tanh()));
            prop_assert!(sy.sech().contains_interval(&sx.sech()));
        }
    }
}
