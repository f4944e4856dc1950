//! Implication candidates: residual operators, the generated families
//! `I^g` and `I^g_N`, (S,N)-implications, Φ-conjugates and a few closed
//! forms.
//!
//! Candidates are not assumed to be fuzzy implications. Whether a given
//! operator satisfies the implication axioms is decided by
//! [`crate::properties`].

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::connectives::{BinaryConnective, BinaryFn, Negation, UnaryFn};
use crate::error::{Error, Result};
use crate::generators::{Direction, Generator};
use crate::interp::PiecewiseLinear;
use crate::scalar::Scalar;

/// Bisection steps for the numeric residual.
pub const RESIDUAL_MAX_ITER: usize = 100;
/// Scan resolution used when `C(x, .)` turns out not to be monotone.
const PROBE_POINTS: usize = 33;
pub const RESIDUAL_SCAN_POINTS: usize = 4097;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ImplicationOrigin {
    ResidualOf { of: String },
    Ig { g: String },
    IgN { g: String, n: String },
    SN { s: String, n: String },
    PhiConjugate { of: String, phi: String },
    ClosedForm,
}

/// A map `[0,1]² -> [0,1]` to be checked against the implication axioms.
#[derive(Clone)]
pub struct ImplicationCandidate<S> {
    eval: BinaryFn<S>,
    label: String,
    origin: ImplicationOrigin,
    critical_triples: Vec<[S; 3]>,
}

impl<S: Scalar> fmt::Debug for ImplicationCandidate<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ImplicationCandidate").field("label", &self.label).field("origin", &self.origin).finish()
    }
}

fn require_increasing<S: Scalar>(g: &Generator<S>) -> Result<()> {
    if g.direction() == Direction::Increasing {
        Ok(())
    } else {
        Err(Error::Direction { expected: "increasing", found: g.direction().name() })
    }
}

impl<S: Scalar> ImplicationCandidate<S> {
    pub fn new<F>(label: impl Into<String>, origin: ImplicationOrigin, f: F) -> Self
    where
        F: Fn(S, S) -> S + Send + Sync + 'static,
    {
        ImplicationCandidate { eval: Arc::new(f), label: label.into(), origin, critical_triples: Vec::new() }
    }

    pub fn closed_form<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(S, S) -> S + Send + Sync + 'static,
    {
        Self::new(label, ImplicationOrigin::ClosedForm, f)
    }

    /// Triples that exchange-principle checks look at before the samples.
    pub fn with_critical_triples(mut self, triples: Vec<[S; 3]>) -> Self {
        self.critical_triples = triples;
        self
    }

    pub fn critical_triples(&self) -> &[[S; 3]] {
        &self.critical_triples
    }

    pub fn eval(&self, x: S, y: S) -> S {
        (self.eval)(x, y).clamp_unit()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn origin(&self) -> &ImplicationOrigin {
        &self.origin
    }

    /// `R_C(x,y) = sup{t | C(x,t) <= y}` computed numerically.
    pub fn residual_of(c: &BinaryConnective<S>) -> Self {
        let c = c.clone();
        Self::new(
            format!("R[{}]", c.label()),
            ImplicationOrigin::ResidualOf { of: c.label().to_string() },
            move |x, y| residual_numeric(&c, x, y),
        )
    }

    /// Closed-form residual of the Yager t-norm.
    pub fn yager_residual(p: S) -> Result<Self> {
        if !(p > S::zero() && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("Yager residual needs p in (0, inf), got {p}")));
        }
        Ok(Self::new(
            format!("I_T^Y_{p}"),
            ImplicationOrigin::ResidualOf { of: format!("T^Y_{p}") },
            move |x, y| yager_residual(p, x, y),
        ))
    }

    /// `I^g(x,y) = g⁽⁻¹⁾(g(1-x) + g(y))`.
    pub fn ig(g: &Generator<S>) -> Result<Self> {
        require_increasing(g)?;
        let g = g.clone();
        Ok(Self::new(format!("I^[{}]", g.label()), ImplicationOrigin::Ig { g: g.label() }, move |x, y| {
            generated(&g, S::one() - x, y)
        }))
    }

    /// `I^g_N(x,y) = g⁽⁻¹⁾(g(N(x)) + g(y))`.
    pub fn ign(g: &Generator<S>, n: &Negation<S>) -> Result<Self> {
        require_increasing(g)?;
        let g = g.clone();
        let n = n.clone();
        let origin = ImplicationOrigin::IgN { g: g.label(), n: n.label().to_string() };
        Ok(Self::new(format!("I^[{}]_{}", g.label(), n.label()), origin, move |x, y| {
            generated(&g, n.eval(x), y)
        }))
    }

    /// `I(x,y) = S(N(x), y)`.
    pub fn sn(s: &BinaryConnective<S>, n: &Negation<S>) -> Self {
        let s = s.clone();
        let n = n.clone();
        let origin = ImplicationOrigin::SN { s: s.label().to_string(), n: n.label().to_string() };
        Self::new(format!("({},{})", s.label(), n.label()), origin, move |x, y| sn_implication(&s, &n, x, y))
    }

    /// `φ⁻¹(I(φ(x), φ(y)))`.
    pub fn phi_conjugate(&self, phi: &Bijection<S>) -> Self {
        let inner = self.clone();
        let phi = phi.clone();
        let origin = ImplicationOrigin::PhiConjugate { of: self.label.clone(), phi: phi.label().to_string() };
        Self::new(format!("({})_{}", self.label, phi.label()), origin, move |x, y| phi_conjugate(&inner, &phi, x, y))
    }

    pub fn lukasiewicz() -> Self {
        Self::closed_form("I_LK", lukasiewicz_implication)
    }

    pub fn mean_residual() -> Self {
        Self::new("M_r", ImplicationOrigin::ResidualOf { of: "M".into() }, mean_residual)
    }

    /// `I^f` for the piecewise generator, as a six-branch closed form.
    /// Pinned with the exchange-principle counterexample `(0.7, 0.65, 0.2)`.
    pub fn piecewise_f() -> Self {
        Self::new("I^f", ImplicationOrigin::Ig { g: Generator::<S>::piecewise().label() }, piecewise_f_implication)
            .with_critical_triples(vec![[S::lit(0.7), S::lit(0.65), S::lit(0.2)]])
    }

    /// `N_I(x) = I(x, 0)`.
    pub fn natural_negation(&self) -> Negation<S> {
        let inner = self.clone();
        Negation::custom(format!("N[{}]", self.label), move |x| inner.eval(x, S::zero()))
    }
}

fn generated<S: Scalar>(g: &Generator<S>, a: S, b: S) -> S {
    g.pseudo_inverse(g.value(a.clamp_unit()) + g.value(b.clamp_unit()))
}

/// Outcome of a numeric residual evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualEval<S> {
    pub value: S,
    /// `false` when `C(x, .)` was caught decreasing and the scan fallback ran.
    pub monotone: bool,
}

/// `sup{t ∈ [0,1] | C(x,t) <= y}` with `sup ∅ = 0`.
pub fn residual_numeric<S: Scalar>(c: &BinaryConnective<S>, x: S, y: S) -> S {
    residual_numeric_detailed(c, x, y).value
}

pub fn residual_numeric_detailed<S: Scalar>(c: &BinaryConnective<S>, x: S, y: S) -> ResidualEval<S> {
    let f = |t: S| c.eval(x, t);
    let (zero, one) = (S::zero(), S::one());
    let (f0, f1) = (f(zero), f(one));
    if f1 <= y {
        return ResidualEval { value: one, monotone: f0 <= f1 };
    }
    if f0 > f1 {
        return residual_scan(&f, y);
    }
    if f0 > y {
        // cheap sanity check before trusting an empty down-set
        let denom = S::from_count(PROBE_POINTS - 1);
        let mut prev = f0;
        for k in 1..PROBE_POINTS {
            let v = f(S::from_count(k) / denom);
            if v < prev || v <= y {
                return residual_scan(&f, y);
            }
            prev = v;
        }
        return ResidualEval { value: zero, monotone: true };
    }
    // f(lo) <= y < f(hi) throughout; ties on plateaus move lo right
    let (mut lo, mut hi) = (zero, one);
    let (mut flo, mut fhi) = (f0, f1);
    let two = S::lit(2.0);
    for _ in 0..RESIDUAL_MAX_ITER {
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm < flo || fm > fhi {
            return residual_scan(&f, y);
        }
        if fm <= y {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    ResidualEval { value: lo, monotone: true }
}

fn residual_scan<S: Scalar, F: Fn(S) -> S>(f: &F, y: S) -> ResidualEval<S> {
    let last = RESIDUAL_SCAN_POINTS - 1;
    let denom = S::from_count(last);
    let best = (0..=last).rev().find(|&k| f(S::from_count(k) / denom) <= y);
    let value = match best {
        None => S::zero(),
        Some(k) if k == last => S::one(),
        Some(k) => {
            let (mut lo, mut hi) = (S::from_count(k) / denom, S::from_count(k + 1) / denom);
            let two = S::lit(2.0);
            for _ in 0..64 {
                let mid = lo + (hi - lo) / two;
                if mid <= lo || mid >= hi {
                    break;
                }
                if f(mid) <= y {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        }
    };
    ResidualEval { value, monotone: false }
}

/// `1 - max{(1-y)^p - (1-x)^p, 0}^(1/p)`.
///
/// Arguments within a few ulps of `x <= y` give exactly 1; the difference
/// of powers is otherwise pure round-off and its root would not be.
pub fn yager_residual<S: Scalar>(p: S, x: S, y: S) -> S {
    let one = S::one();
    if x - y <= S::roundoff() {
        return one;
    }
    let d = (one - y).powf(p) - (one - x).powf(p);
    if d <= S::zero() {
        return one;
    }
    (one - d.powf(p.recip())).clamp_unit()
}

pub fn ig_implication<S: Scalar>(g: &Generator<S>, x: S, y: S) -> Result<S> {
    require_increasing(g)?;
    Ok(generated(g, S::one() - x, y))
}

pub fn ign_implication<S: Scalar>(g: &Generator<S>, n: &Negation<S>, x: S, y: S) -> Result<S> {
    require_increasing(g)?;
    Ok(generated(g, n.eval(x), y))
}

pub fn sn_implication<S: Scalar>(s: &BinaryConnective<S>, n: &Negation<S>, x: S, y: S) -> S {
    s.eval(n.eval(x), y)
}

pub fn phi_conjugate<S: Scalar>(i: &ImplicationCandidate<S>, phi: &Bijection<S>, x: S, y: S) -> S {
    phi.inverse(i.eval(phi.forward(x), phi.forward(y)))
}

/// `min{1 - x + y, 1}`.
pub fn lukasiewicz_implication<S: Scalar>(x: S, y: S) -> S {
    (S::one() - x + y).min(S::one()).clamp_unit()
}

/// Residual of the quadratic mean: `min{max{2y² - x², 0}, 1}^(1/2)`.
pub fn mean_residual<S: Scalar>(x: S, y: S) -> S {
    let two = S::lit(2.0);
    (two * y * y - x * x).max(S::zero()).min(S::one()).sqrt()
}

/// The implication generated by the piecewise generator, branch by branch.
pub fn piecewise_f_implication<S: Scalar>(x: S, y: S) -> S {
    let one = S::one();
    let two = S::lit(2.0);
    let half = S::lit(0.5);
    let quarter = S::lit(0.25);
    let v = if x >= half && y <= half {
        let d = x - y;
        if d >= half {
            one - x + y
        } else if d >= quarter {
            half
        } else {
            one - two * x + two * y
        }
    } else if x < half && y <= half {
        (one - x + two * y).min(one)
    } else if x >= half && y > half {
        (two - two * x + y).min(one)
    } else {
        one
    };
    v.clamp_unit()
}

pub fn natural_negation<S: Scalar>(i: &ImplicationCandidate<S>, x: S) -> S {
    i.eval(x, S::zero())
}

/// An increasing bijection of `[0,1]` given as a forward/inverse pair.
#[derive(Clone)]
pub struct Bijection<S> {
    forward: UnaryFn<S>,
    inverse: UnaryFn<S>,
    label: String,
}

impl<S: Scalar> fmt::Debug for Bijection<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Bijection").field(&self.label).finish()
    }
}

impl<S: Scalar> Bijection<S> {
    pub fn custom<F, G>(label: impl Into<String>, forward: F, inverse: G) -> Self
    where
        F: Fn(S) -> S + Send + Sync + 'static,
        G: Fn(S) -> S + Send + Sync + 'static,
    {
        Bijection { forward: Arc::new(forward), inverse: Arc::new(inverse), label: label.into() }
    }

    pub fn identity() -> Self {
        Self::custom("id", |x| x, |x| x)
    }

    /// `x^a` for `a > 0`.
    pub fn power(a: S) -> Result<Self> {
        if !(a > S::zero() && a.is_finite()) {
            return Err(Error::InvalidParameter(format!("power bijection needs a in (0, inf), got {a}")));
        }
        let inv = a.recip();
        Ok(Self::custom(format!("x^{a}"), move |x: S| x.powf(a), move |y: S| y.powf(inv)))
    }

    /// `(1 - cos(πx)) / 2`, which satisfies `φ(x) + φ(1-x) = 1`.
    pub fn cosine() -> Self {
        let two = S::lit(2.0);
        Self::custom(
            "(1-cos(pi x))/2",
            move |x: S| (S::one() - (S::PI() * x).cos()) / two,
            move |y: S| (S::one() - two * y).acos() / S::PI(),
        )
    }

    /// Piecewise-linear bijection through strictly increasing knots from
    /// `(0,0)` to `(1,1)`; the inverse swaps the coordinates.
    pub fn table(points: &[(S, S)]) -> Result<Self> {
        let forward = PiecewiseLinear::new(points)?;
        if forward.first() != S::zero() || forward.last() != S::one() {
            return Err(Error::InvalidTable("bijection must map 0 to 0 and 1 to 1".into()));
        }
        let inverse = forward.swapped()?;
        Ok(Self::custom("table", move |x| forward.eval(x), move |y| inverse.eval(y)))
    }

    pub fn forward(&self, x: S) -> S {
        (self.forward)(x.clamp_unit()).clamp_unit()
    }

    pub fn inverse(&self, y: S) -> S {
        (self.inverse)(y.clamp_unit()).clamp_unit()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Checks endpoints, strict increase and `forward ∘ inverse = id` on a
    /// uniform grid.
    pub fn validate(&self, samples: usize, tol: S) -> Result<()> {
        let grid = crate::properties::uniform_grid::<S>(samples);
        if self.forward(S::zero()) != S::zero() || (self.forward(S::one()) - S::one()).abs() > tol {
            return Err(Error::InvalidParameter(format!("{} does not fix the endpoints", self.label)));
        }
        let vals: Vec<S> = grid.iter().map(|&x| self.forward(x)).collect();
        if let Some(k) = (1..vals.len()).find(|&k| vals[k] <= vals[k - 1]) {
            return Err(Error::InvalidParameter(format!(
                "{} is not strictly increasing near {}",
                self.label, grid[k]
            )));
        }
        if let Some(&y) = grid.iter().find(|&&y| (self.forward(self.inverse(y)) - y).abs() > tol) {
            return Err(Error::InvalidParameter(format!("{} inverse mismatch at {y}", self.label)));
        }
        Ok(())
    }
}
