//! Recursive bisection over boxes and the certificate record it produces.

use super::interval::Interval;
use super::pipoly::{IntervalPoly, PiPoly, Q};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

pub type IntervalFn = Arc<dyn Fn(&[Interval]) -> Interval + Send + Sync>;
type Verifier = Arc<dyn Fn() -> bool + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Failed,
    Inconclusive,
}

impl Status {
    /// Conjunction: any failure dominates, then any inconclusive step.
    pub fn and(self, o: Status) -> Status {
        use Status::*;
        match (self, o) {
            (Failed, _) | (_, Failed) => Failed,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Certified,
        }
    }

    pub fn is_certified(self) -> bool {
        self == Status::Certified
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Certified => "certified",
            Status::Failed => "failed",
            Status::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

/// Required sign of the target function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    NonNeg,
    Pos,
}

impl Sign {
    fn holds(self, v: Interval) -> bool {
        match self {
            Sign::NonNeg => v.lo >= 0.0,
            Sign::Pos => v.lo > 0.0,
        }
    }

    fn violated(self, v: Interval) -> bool {
        match self {
            Sign::NonNeg => v.hi < 0.0,
            Sign::Pos => v.hi <= 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroKind {
    /// `f = factor · g` with a sign-definite factor; the check encloses `g`.
    Factor,
    /// `f(x₀) = 0`; the check encloses a one-sided derivative on the cell.
    Derivative,
}

/// A point where the target vanishes, with the local argument that covers
/// any cell containing it. The check must be non-negative on such a cell.
#[derive(Clone)]
pub struct DeclaredZero {
    pub point: Vec<f64>,
    pub kind: ZeroKind,
    pub check: IntervalFn,
}

impl DeclaredZero {
    pub fn new(point: Vec<f64>, kind: ZeroKind, check: IntervalFn) -> Self {
        DeclaredZero { point, kind, check }
    }

    fn in_cell(&self, cell: &[Interval]) -> bool {
        self.point.iter().zip(cell).all(|(p, c)| c.contains(*p))
    }
}

#[derive(Clone)]
pub struct BisectOptions {
    pub max_depth: u32,
    pub sign: Sign,
    pub zeros: Vec<DeclaredZero>,
    pub max_cells: usize,
}

impl Default for BisectOptions {
    fn default() -> Self {
        BisectOptions { max_depth: 40, sign: Sign::NonNeg, zeros: Vec::new(), max_cells: 4_000_000 }
    }
}

impl BisectOptions {
    pub fn depth(mut self, d: u32) -> Self {
        self.max_depth = d;
        self
    }

    pub fn strict(mut self) -> Self {
        self.sign = Sign::Pos;
        self
    }

    pub fn zero(mut self, z: DeclaredZero) -> Self {
        self.zeros.push(z);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LeafKind {
    Enclosure,
    Zero(usize),
}

struct Outcome {
    status: Status,
    leaves: Vec<(Vec<Interval>, LeafKind)>,
    worst: Interval,
    depth: u32,
    failing: Option<Vec<Interval>>,
}

impl Outcome {
    fn merge(mut self, o: Outcome) -> Outcome {
        self.status = self.status.and(o.status);
        self.leaves.extend(o.leaves);
        self.worst = Interval { lo: self.worst.lo.min(o.worst.lo), hi: self.worst.hi.min(o.worst.hi) };
        self.depth = self.depth.max(o.depth);
        if self.failing.is_none() {
            self.failing = o.failing;
        }
        self
    }
}

fn split_dim(cell: &[Interval], domain: &[Interval]) -> usize {
    let mut best = 0;
    let mut bw = -1.0;
    for (i, (c, d)) in cell.iter().zip(domain).enumerate() {
        let dw = d.width();
        let rel = if dw > 0.0 { c.width() / dw } else { 0.0 };
        if rel > bw {
            bw = rel;
            best = i;
        }
    }
    best
}

fn recurse(f: &IntervalFn, cell: Vec<Interval>, domain: &[Interval], opts: &BisectOptions, depth: u32, budget: &AtomicUsize) -> Outcome {
    if budget.fetch_add(1, Ordering::Relaxed) >= opts.max_cells {
        return Outcome { status: Status::Inconclusive, leaves: vec![], worst: Interval::ENTIRE, depth, failing: Some(cell) };
    }
    let mid: Vec<Interval> = cell.iter().map(|c| Interval::point(c.mid())).collect();
    let at_mid = f(&mid);
    if opts.sign.violated(at_mid) && !opts.zeros.iter().any(|z| z.in_cell(&mid)) {
        return Outcome { status: Status::Failed, leaves: vec![], worst: at_mid, depth, failing: Some(mid) };
    }
    let v = f(&cell);
    if opts.sign.holds(v) {
        return Outcome { status: Status::Certified, leaves: vec![(cell, LeafKind::Enclosure)], worst: v, depth, failing: None };
    }
    if opts.sign.violated(v) {
        return Outcome { status: Status::Failed, leaves: vec![], worst: v, depth, failing: Some(cell) };
    }
    for (k, z) in opts.zeros.iter().enumerate() {
        if z.in_cell(&cell) && (z.check)(&cell).lo >= 0.0 {
            let worst = Interval { lo: v.lo.max(0.0).min(at_mid.lo), hi: at_mid.hi };
            return Outcome { status: Status::Certified, leaves: vec![(cell, LeafKind::Zero(k))], worst, depth, failing: None };
        }
    }
    if depth >= opts.max_depth {
        return Outcome { status: Status::Inconclusive, leaves: vec![], worst: v, depth, failing: Some(cell) };
    }
    let d = split_dim(&cell, domain);
    let (a, b) = cell[d].split();
    let mut left = cell.clone();
    left[d] = a;
    let mut right = cell;
    right[d] = b;
    let (l, r) = if depth < 10 {
        rayon::join(|| recurse(f, left, domain, opts, depth + 1, budget), || recurse(f, right, domain, opts, depth + 1, budget))
    } else {
        let l = recurse(f, left, domain, opts, depth + 1, budget);
        if l.status == Status::Failed {
            return l;
        }
        (l, recurse(f, right, domain, opts, depth + 1, budget))
    };
    l.merge(r)
}

/// Proves `f ≥ 0` (or `> 0`) on `domain` by recursive bisection.
pub fn bisect_nonneg(target: &str, f: IntervalFn, domain: &[Interval], opts: BisectOptions) -> Certificate {
    let budget = AtomicUsize::new(0);
    let out = recurse(&f, domain.to_vec(), domain, &opts, 0, &budget);
    let status = out.status;
    let note = out.failing.as_ref().map(|c| {
        let parts: Vec<String> = c.iter().map(|i| format!("[{:.6e}, {:.6e}]", i.lo, i.hi)).collect();
        format!("{} at {}", status, parts.join(" × "))
    });
    let leaves = Arc::new(out.leaves);
    let cells = leaves.len();
    let verifier: Verifier = {
        let leaves = leaves.clone();
        let sign = opts.sign;
        let zeros = opts.zeros.clone();
        Arc::new(move || {
            leaves.iter().all(|(c, kind)| match kind {
                LeafKind::Enclosure => sign.holds(f(c)),
                LeafKind::Zero(k) => zeros[*k].in_cell(c) && (zeros[*k].check)(c).lo >= 0.0,
            })
        })
    };
    Certificate {
        target: target.to_string(),
        domain: domain.iter().map(|i| [i.lo, i.hi]).collect(),
        status,
        worst: [out.worst.lo, out.worst.hi],
        cells,
        depth: out.depth,
        note,
        steps: vec![],
        verifier: Some(verifier),
    }
}

/// Univariate polynomial positivity on `[lo, hi]`, `lo ≥ 0`, with the
/// positive-coefficient short-circuit.
pub fn poly_sign(target: &str, p: &PiPoly, lo: f64, hi: f64, opts: BisectOptions) -> Certificate {
    let ip: IntervalPoly = p.interval_poly();
    let dom = [Interval::new(lo, hi)];
    if lo >= 0.0 && !p.is_zero() {
        let all_pos = ip.coeffs.iter().all(|c| c.lo >= 0.0);
        let c0 = ip.coeffs[0];
        let strict_ok = opts.sign == Sign::NonNeg || c0.lo > 0.0 || (lo > 0.0 && ip.coeffs.iter().any(|c| c.lo > 0.0));
        if all_pos && strict_ok {
            let pp = p.clone();
            let sign = opts.sign;
            let verifier: Verifier = Arc::new(move || {
                let ip = pp.interval_poly();
                ip.coeffs.iter().all(|c| c.lo >= 0.0) && (sign == Sign::NonNeg || ip.eval(Interval::new(lo, hi)).lo > 0.0 || ip.coeffs[0].lo > 0.0)
            });
            let w = ip.eval(dom[0]);
            return Certificate {
                target: target.to_string(),
                domain: vec![[lo, hi]],
                status: Status::Certified,
                worst: [w.lo, w.hi],
                cells: 0,
                depth: 0,
                note: Some("all coefficients non-negative".into()),
                steps: vec![],
                verifier: Some(verifier),
            };
        }
    }
    let f: IntervalFn = Arc::new(move |x: &[Interval]| ip.eval(x[0]));
    bisect_nonneg(target, f, &dom, opts)
}

/// Sign of `p` on `[lo, hi]` after dividing out `Π (x − r)^m` exactly. The
/// divisor must keep one sign on the open interval.
pub fn poly_sign_factored(target: &str, p: &PiPoly, lo: &Q, hi: &Q, roots: &[(Q, u32)], opts: BisectOptions) -> Certificate {
    let x = PiPoly::x();
    let mut divisor = PiPoly::one();
    for (r, m) in roots {
        assert!(r == lo || r == hi || m % 2 == 0, "root inside the domain must have even multiplicity");
        divisor = &divisor * &(&x - &PiPoly::constant(r.clone())).pow(*m);
    }
    let (quo, rem) = p.div_rem(&divisor);
    let exact = {
        let (p, divisor, quo) = (p.clone(), divisor.clone(), quo.clone());
        Certificate::exact(&format!("{target}: exact factorization"), move || &quo * &divisor == p)
    };
    if !rem.is_zero() {
        return Certificate::composite(target, &[], vec![exact]);
    }
    let mid = (lo + hi) / Q::from_integer(2.into());
    let sd: Q = divisor.terms().fold(Q::zero(), |a, (&(_, v), c)| a + c * num_traits::pow(mid.clone(), v as usize));
    let oriented = if sd.is_negative() { -&quo } else { quo };
    let (flo, fhi) = (Interval::from_rational(lo).lo, Interval::from_rational(hi).hi);
    let step = poly_sign(&format!("{target}: cofactor"), &oriented, flo, fhi, opts);
    Certificate::composite(target, &[[flo, fhi]], vec![exact, step])
}

/// Record of a certification attempt; composite records carry their steps.
#[derive(Clone, Serialize)]
pub struct Certificate {
    pub target: String,
    pub domain: Vec<[f64; 2]>,
    pub status: Status,
    pub worst: [f64; 2],
    pub cells: usize,
    pub depth: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<Certificate>,
    #[serde(skip)]
    verifier: Option<Verifier>,
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Certificate")
            .field("target", &self.target)
            .field("status", &self.status)
            .field("worst", &self.worst)
            .field("cells", &self.cells)
            .field("note", &self.note)
            .field("steps", &self.steps)
            .finish()
    }
}

impl Certificate {
    /// A single interval fact, re-evaluated on verification.
    pub fn check(target: &str, sign: Sign, value: impl Fn() -> Interval + Send + Sync + 'static) -> Certificate {
        let v = value();
        let status = if sign.holds(v) {
            Status::Certified
        } else if sign.violated(v) {
            Status::Failed
        } else {
            Status::Inconclusive
        };
        Certificate {
            target: target.to_string(),
            domain: vec![],
            status,
            worst: [v.lo, v.hi],
            cells: 1,
            depth: 0,
            note: None,
            steps: vec![],
            verifier: Some(Arc::new(move || sign.holds(value()))),
        }
    }

    /// An exact fact (rational identity, degree, sign of an exact number).
    pub fn exact(target: &str, fact: impl Fn() -> bool + Send + Sync + 'static) -> Certificate {
        let ok = fact();
        Certificate {
            target: target.to_string(),
            domain: vec![],
            status: if ok { Status::Certified } else { Status::Failed },
            worst: [0.0, 0.0],
            cells: 0,
            depth: 0,
            note: None,
            steps: vec![],
            verifier: Some(Arc::new(fact)),
        }
    }

    /// Conjunction of steps.
    pub fn composite(target: &str, domain: &[[f64; 2]], steps: Vec<Certificate>) -> Certificate {
        let status = steps.iter().fold(Status::Certified, |s, c| s.and(c.status));
        let cells = steps.iter().map(|c| c.cells).sum();
        let depth = steps.iter().map(|c| c.depth).max().unwrap_or(0);
        let worst = steps.iter().filter(|c| !c.domain.is_empty()).fold([f64::INFINITY, f64::INFINITY], |w, c| {
            [w[0].min(c.worst[0]), w[1].min(c.worst[1])]
        });
        let worst = if worst[0].is_finite() { worst } else { [0.0, 0.0] };
        let note = steps.iter().find(|c| c.status != Status::Certified).map(|c| format!("{} step: {}", c.status, c.target));
        Certificate {
            target: target.to_string(),
            domain: domain.to_vec(),
            status,
            worst,
            cells,
            depth,
            note,
            steps,
            verifier: None,
        }
    }

    pub fn with_note(mut self, note: &str) -> Certificate {
        self.note = Some(note.to_string());
        self
    }

    pub fn with_domain(mut self, d: &[[f64; 2]]) -> Certificate {
        self.domain = d.to_vec();
        self
    }

    /// Marks a certificate inconclusive when a prerequisite is missing.
    pub fn requires(mut self, prereq: &[&Certificate]) -> Certificate {
        if let Some(p) = prereq.iter().find(|p| !p.status.is_certified()) {
            if self.status == Status::Certified {
                self.status = Status::Inconclusive;
            }
            self.note = Some(format!("prerequisite {} is {}", p.target, p.status));
        }
        self
    }

    /// Re-runs every stored check; true iff all of them still hold.
    pub fn reverify(&self) -> bool {
        self.verifier.as_ref().map_or(true, |v| v()) && self.steps.iter().all(Certificate::reverify)
    }

    /// Depth-first search for a step by target name.
    pub fn find(&self, target: &str) -> Option<&Certificate> {
        if self.target == target {
            return Some(self);
        }
        self.steps.iter().find_map(|s| s.find(target))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}
