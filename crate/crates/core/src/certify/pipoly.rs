//! Exact polynomials in one real variable whose coefficients are rational
//! linear combinations of powers of π, plus quadratic surd extensions.

use super::interval::Interval;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

pub type Q = BigRational;

const PI_DIGITS: &str = "31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Number of decimal digits of π used for coefficient enclosures, taken
/// from `DIRAC_BOUNDS_PRECISION` (clamped to 20..=100, default 40).
pub fn pi_precision() -> usize {
    static P: OnceLock<usize> = OnceLock::new();
    *P.get_or_init(|| {
        std::env::var("DIRAC_BOUNDS_PRECISION")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .map(|d| d.clamp(20, 100))
            .unwrap_or(40)
    })
}

/// Rational bounds `lo < π < hi` with `hi − lo = 10^{-(digits-1)}`.
pub fn pi_rational_bounds(digits: usize) -> (Q, Q) {
    let digits = digits.clamp(2, PI_DIGITS.len());
    let num = BigInt::parse_bytes(PI_DIGITS[..digits].as_bytes(), 10).unwrap();
    let den = BigInt::from(10u32).pow(digits as u32 - 1);
    let lo = Q::new(num.clone(), den.clone());
    let hi = Q::new(num + 1, den);
    (lo, hi)
}

fn pi_bounds() -> &'static (Q, Q) {
    static B: OnceLock<(Q, Q)> = OnceLock::new();
    B.get_or_init(|| pi_rational_bounds(pi_precision()))
}

/// Rational enclosure `[lo, hi]` of `Σ c_k π^k`.
pub fn enclose_pi_sum(coeffs: &BTreeMap<u32, Q>) -> (Q, Q) {
    let (plo, phi) = pi_bounds();
    let mut lo = Q::zero();
    let mut hi = Q::zero();
    for (&k, c) in coeffs {
        let a = num_traits::pow(plo.clone(), k as usize);
        let b = num_traits::pow(phi.clone(), k as usize);
        if c.is_positive() {
            lo += c * &a;
            hi += c * &b;
        } else {
            lo += c * &b;
            hi += c * &a;
        }
    }
    (lo, hi)
}

/// Polynomial `Σ c_{k,j} π^k x^j` with exact rational `c`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PiPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((p, v), c)| format!("({c})·π^{p}·x^{v}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl PiPoly {
    pub fn zero() -> Self {
        PiPoly::default()
    }

    pub fn one() -> Self {
        PiPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        PiPoly::monomial(c, 0, 0)
    }

    pub fn int(n: i64) -> Self {
        PiPoly::constant(qi(n))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        PiPoly::constant(q(n, d))
    }

    /// `c π^pi x^var`.
    pub fn monomial(c: Q, pi: u32, var: u32) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((pi, var), c);
        }
        PiPoly { terms: t }
    }

    pub fn pi() -> Self {
        PiPoly::monomial(Q::one(), 1, 0)
    }

    pub fn x() -> Self {
        PiPoly::monomial(Q::one(), 0, 1)
    }

    /// Builds `Σ c_j x^j` from a list of π-only coefficients.
    pub fn from_coeffs(cs: &[PiPoly]) -> Self {
        let mut out = PiPoly::zero();
        for (j, c) in cs.iter().enumerate() {
            out = out + c.clone() * PiPoly::monomial(Q::one(), 0, j as u32);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.terms.iter()
    }

    /// Degree in the variable (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn is_pi_free(&self) -> bool {
        self.terms.keys().all(|k| k.0 == 0)
    }

    /// Coefficient of `x^j` as a π-only polynomial.
    pub fn coeff(&self, j: u32) -> PiPoly {
        let mut t = BTreeMap::new();
        for (&(p, v), c) in &self.terms {
            if v == j {
                t.insert((p, 0), c.clone());
            }
        }
        PiPoly { terms: t }
    }

    fn pi_map(&self) -> BTreeMap<u32, Q> {
        self.terms.iter().map(|(&(p, _), c)| (p, c.clone())).collect()
    }

    /// Rational enclosure of a π-only polynomial.
    pub fn enclose_constant(&self) -> (Q, Q) {
        debug_assert!(self.degree() == 0);
        enclose_pi_sum(&self.pi_map())
    }

    /// Float enclosure of a π-only polynomial.
    pub fn constant_interval(&self) -> Interval {
        let (lo, hi) = self.enclose_constant();
        Interval::new(Interval::from_rational(&lo).lo, Interval::from_rational(&hi).hi)
    }

    /// Exact sign of a π-only polynomial when the enclosure decides it.
    pub fn constant_sign(&self) -> Option<i8> {
        if self.is_zero() {
            return Some(0);
        }
        let (lo, hi) = self.enclose_constant();
        if lo.is_positive() {
            Some(1)
        } else if hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Q) -> PiPoly {
        if c.is_zero() {
            return PiPoly::zero();
        }
        PiPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> PiPoly {
        let mut out = PiPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitutes `x ↦ g(x)`.
    pub fn compose(&self, g: &PiPoly) -> PiPoly {
        let d = self.degree();
        let mut out = PiPoly::zero();
        for j in (0..=d).rev() {
            out = &(&out * g) + &self.coeff(j);
        }
        out
    }

    /// Exact division by `x^k`; `None` if a lower term is present.
    pub fn div_var_pow(&self, k: u32) -> Option<PiPoly> {
        let mut t = BTreeMap::new();
        for (&(p, v), c) in &self.terms {
            if v < k {
                return None;
            }
            t.insert((p, v - k), c.clone());
        }
        Some(PiPoly { terms: t })
    }

    /// Long division by a π-free divisor; returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &PiPoly) -> (PiPoly, PiPoly) {
        assert!(divisor.is_pi_free() && !divisor.is_zero());
        let dd = divisor.degree();
        let lead = divisor.coeff(dd).terms.get(&(0, 0)).cloned().unwrap();
        let mut rem = self.clone();
        let mut quo = PiPoly::zero();
        while !rem.is_zero() && rem.degree() >= dd {
            let r = rem.degree();
            let c = rem.coeff(r).scale(&(Q::one() / &lead));
            let t = &c * &PiPoly::monomial(Q::one(), 0, r - dd);
            rem = &rem - &(&t * divisor);
            quo = &quo + &t;
        }
        (quo, rem)
    }

    /// Coefficient enclosures for each power of the variable.
    pub fn interval_poly(&self) -> IntervalPoly {
        let d = self.degree() as usize;
        IntervalPoly { coeffs: (0..=d).map(|j| self.coeff(j as u32).constant_interval()).collect() }
    }
}

impl Add for &PiPoly {
    type Output = PiPoly;
    fn add(self, o: &PiPoly) -> PiPoly {
        let mut t = self.terms.clone();
        for (k, c) in &o.terms {
            let e = t.entry(*k).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                t.remove(k);
            }
        }
        PiPoly { terms: t }
    }
}

impl Sub for &PiPoly {
    type Output = PiPoly;
    fn sub(self, o: &PiPoly) -> PiPoly {
        self + &(-o)
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Mul for &PiPoly {
    type Output = PiPoly;
    fn mul(self, o: &PiPoly) -> PiPoly {
        let mut t: BTreeMap<(u32, u32), Q> = BTreeMap::new();
        for (&(p1, v1), c1) in &self.terms {
            for (&(p2, v2), c2) in &o.terms {
                *t.entry((p1 + p2, v1 + v2)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        t.retain(|_, c| !c.is_zero());
        PiPoly { terms: t }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for PiPoly {
            type Output = PiPoly;
            fn $m(self, o: PiPoly) -> PiPoly { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        -&self
    }
}

/// Polynomial with interval coefficients.
#[derive(Clone, Debug)]
pub struct IntervalPoly {
    pub coeffs: Vec<Interval>,
}

impl IntervalPoly {
    /// Horner evaluation, intersected with the monomial bound when x ≥ 0.
    pub fn eval(&self, x: Interval) -> Interval {
        let mut h = Interval::ZERO;
        for c in self.coeffs.iter().rev() {
            h = h * x + *c;
        }
        if x.lo >= 0.0 {
            let mut lo = Interval::ZERO;
            let mut hi = Interval::ZERO;
            let (a, b) = (Interval::point(x.lo), Interval::point(x.hi));
            let (mut pa, mut pb) = (Interval::ONE, Interval::ONE);
            for c in &self.coeffs {
                let ta = *c * pa;
                let tb = *c * pb;
                lo = lo + Interval::point(ta.lo.min(tb.lo));
                hi = hi + Interval::point(ta.hi.max(tb.hi));
                pa = pa * a;
                pb = pb * b;
            }
            let m = Interval { lo: lo.lo, hi: hi.hi };
            let l = h.lo.max(m.lo);
            let u = h.hi.min(m.hi);
            if l <= u {
                return Interval { lo: l, hi: u };
            }
        }
        h
    }

    /// Coefficients whose enclosure is not strictly positive.
    pub fn non_positive_indices(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_pos()).map(|(i, _)| i).collect()
    }
}

/// `a + b√r` with `r` fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct Surd {
    pub a: PiPoly,
    pub b: PiPoly,
    pub r: PiPoly,
}

impl Surd {
    pub fn new(a: PiPoly, b: PiPoly, r: &PiPoly) -> Self {
        Surd { a, b, r: r.clone() }
    }

    pub fn rational(a: PiPoly, r: &PiPoly) -> Self {
        Surd::new(a, PiPoly::zero(), r)
    }

    pub fn radical(r: &PiPoly) -> Self {
        Surd::new(PiPoly::zero(), PiPoly::one(), r)
    }

    pub fn add(&self, o: &Surd) -> Surd {
        Surd::new(&self.a + &o.a, &self.b + &o.b, &self.r)
    }

    pub fn sub(&self, o: &Surd) -> Surd {
        Surd::new(&self.a - &o.a, &self.b - &o.b, &self.r)
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        let a = &(&self.a * &o.a) + &(&(&self.b * &o.b) * &self.r);
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        Surd::new(a, b, &self.r)
    }

    pub fn scale(&self, c: &PiPoly) -> Surd {
        Surd::new(&self.a * c, &self.b * c, &self.r)
    }

    pub fn div_var_pow(&self, k: u32) -> Option<Surd> {
        Some(Surd::new(self.a.div_var_pow(k)?, self.b.div_var_pow(k)?, &self.r))
    }
}

/// `c00 + c10 R1 + c01 R2 + c11 R1 R2` with `R1² = r1`, `R2² = r2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Surd2 {
    pub c: [PiPoly; 4],
    pub r1: PiPoly,
    pub r2: PiPoly,
}

impl Surd2 {
    pub fn from_parts(c00: PiPoly, c10: PiPoly, c01: PiPoly, c11: PiPoly, r1: &PiPoly, r2: &PiPoly) -> Self {
        Surd2 { c: [c00, c10, c01, c11], r1: r1.clone(), r2: r2.clone() }
    }

    pub fn scalar(p: PiPoly, r1: &PiPoly, r2: &PiPoly) -> Self {
        Surd2::from_parts(p, PiPoly::zero(), PiPoly::zero(), PiPoly::zero(), r1, r2)
    }

    pub fn rad1(r1: &PiPoly, r2: &PiPoly) -> Self {
        Surd2::from_parts(PiPoly::zero(), PiPoly::one(), PiPoly::zero(), PiPoly::zero(), r1, r2)
    }

    pub fn rad2(r1: &PiPoly, r2: &PiPoly) -> Self {
        Surd2::from_parts(PiPoly::zero(), PiPoly::zero(), PiPoly::one(), PiPoly::zero(), r1, r2)
    }

    pub fn add(&self, o: &Surd2) -> Surd2 {
        let c = [0, 1, 2, 3].map(|i| &self.c[i] + &o.c[i]);
        Surd2 { c, r1: self.r1.clone(), r2: self.r2.clone() }
    }

    pub fn sub(&self, o: &Surd2) -> Surd2 {
        let c = [0, 1, 2, 3].map(|i| &self.c[i] - &o.c[i]);
        Surd2 { c, r1: self.r1.clone(), r2: self.r2.clone() }
    }

    pub fn scale(&self, p: &PiPoly) -> Surd2 {
        let c = [0, 1, 2, 3].map(|i| &self.c[i] * p);
        Surd2 { c, r1: self.r1.clone(), r2: self.r2.clone() }
    }

    pub fn mul(&self, o: &Surd2) -> Surd2 {
        let (a, b) = (&self.c, &o.c);
        let (r1, r2) = (&self.r1, &self.r2);
        let r12 = r1 * r2;
        let c00 = &(&(&a[0] * &b[0]) + &(&(&a[1] * &b[1]) * r1)) + &(&(&(&a[2] * &b[2]) * r2) + &(&(&a[3] * &b[3]) * &r12));
        let c10 = &(&(&a[0] * &b[1]) + &(&a[1] * &b[0])) + &(&(&(&a[2] * &b[3]) + &(&a[3] * &b[2])) * r2);
        let c01 = &(&(&a[0] * &b[2]) + &(&a[2] * &b[0])) + &(&(&(&a[1] * &b[3]) + &(&a[3] * &b[1])) * r1);
        let c11 = &(&(&a[0] * &b[3]) + &(&a[3] * &b[0])) + &(&(&a[1] * &b[2]) + &(&a[2] * &b[1]));
        Surd2 { c: [c00, c10, c01, c11], r1: r1.clone(), r2: r2.clone() }
    }

    pub fn compose(&self, g: &PiPoly) -> Surd2 {
        Surd2 {
            c: [0, 1, 2, 3].map(|i| self.c[i].compose(g)),
            r1: self.r1.compose(g),
            r2: self.r2.compose(g),
        }
    }
}
