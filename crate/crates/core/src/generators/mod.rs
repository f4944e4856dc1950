//! Additive generators of t-norms (decreasing) and t-conorms (increasing)
//! together with their pseudo-inverses.
//!
//! A decreasing generator `f` has pseudo-inverse
//! `f⁽⁻¹⁾(y) = sup{x ∈ [0,1] | f(x) > y}` and an increasing generator `g`
//! has `g⁽⁻¹⁾(y) = sup{x ∈ [0,1] | g(x) < y}`, both with `sup ∅ = 0`.
//! The built-in catalog ships hand-derived closed forms; tables and custom
//! closures fall back to bisection.

mod extended;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use extended::{ExtendedNonNegative, Finite, Infinity};

use crate::error::{Error, Result};
use crate::implications::Bijection;
use crate::interp::PiecewiseLinear;
use crate::properties::{PropertyReport, ReportSet, SampleSpec, Tracker};
use crate::scalar::Scalar;

/// Maximum number of bisection steps for the numeric pseudo-inverse.
pub const BISECTION_MAX_ITER: usize = 100;
/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// t-norm generator, `f(1) = 0`
    Decreasing,
    /// t-conorm generator, `g(0) = 0`
    Increasing,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Decreasing => "decreasing",
            Direction::Increasing => "increasing",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InverseForm {
    ClosedForm,
    Numeric,
}

type GeneratorFn<S> = Arc<dyn Fn(S) -> ExtendedNonNegative<S> + Send + Sync>;

#[derive(Clone)]
enum Kind<S> {
    /// `(1-x)^p`, the Yager t-norm generator.
    YagerDecreasing(S),
    /// `x^p`, generator of the dual Yager t-conorm.
    YagerIncreasing(S),
    /// `1-(1-x)^p`.
    PowerComplement(S),
    /// `-ln(1-x)`, generator of the probabilistic sum.
    NegLog,
    /// `x` on `[0, 0.5]`, `0.5 + 0.5x` above; jumps at 0.5.
    Piecewise,
    /// An increasing bijection `φ` of `[0,1]` used as a t-conorm generator.
    Bijection(Bijection<S>),
    Table(Direction, PiecewiseLinear<S>),
    Custom(Direction, String, GeneratorFn<S>),
}

/// A strictly monotone map `[0,1] -> [0, +inf]`.
#[derive(Clone)]
pub struct Generator<S> {
    kind: Kind<S>,
}

impl<S: Scalar> fmt::Debug for Generator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Generator")
            .field("label", &self.label())
            .field("direction", &self.direction())
            .finish()
    }
}

fn positive<S: Scalar>(name: &str, p: S) -> Result<S> {
    if p > S::zero() && p.is_finite() {
        Ok(p)
    } else {
        Err(Error::InvalidParameter(format!("{name} must be in (0, inf), got {p}")))
    }
}

impl<S: Scalar> Generator<S> {
    /// Yager t-norm generator `f(x) = (1-x)^p`.
    pub fn yager(p: S) -> Result<Self> {
        Ok(Generator { kind: Kind::YagerDecreasing(positive("p", p)?) })
    }

    /// Yager t-conorm generator `g(x) = x^p`, i.e. `f(1-x)`.
    pub fn yager_conorm(p: S) -> Result<Self> {
        Ok(Generator { kind: Kind::YagerIncreasing(positive("p", p)?) })
    }

    /// `g_p(x) = 1 - (1-x)^p`.
    pub fn power_complement(p: S) -> Result<Self> {
        Ok(Generator { kind: Kind::PowerComplement(positive("p", p)?) })
    }

    /// `g(x) = -ln(1-x)`.
    pub fn neg_log() -> Self {
        Generator { kind: Kind::NegLog }
    }

    /// The discontinuous increasing generator `x` for `x <= 0.5`,
    /// `0.5 + 0.5x` otherwise.
    pub fn piecewise() -> Self {
        Generator { kind: Kind::Piecewise }
    }

    /// An increasing bijection as generator; its inverse is `φ⁻¹(min(y, 1))`.
    pub fn from_bijection(phi: &Bijection<S>) -> Self {
        Generator { kind: Kind::Bijection(phi.clone()) }
    }

    /// Linear interpolation through `points`. Values must be non-negative;
    /// monotonicity is not enforced here (see [`Generator::verify`]).
    pub fn table(direction: Direction, points: &[(S, S)]) -> Result<Self> {
        let table = PiecewiseLinear::new(points)?;
        if table.points().any(|(_, y)| y < S::zero()) {
            return Err(Error::InvalidTable("generator values must be non-negative".into()));
        }
        Ok(Generator { kind: Kind::Table(direction, table) })
    }

    /// Arbitrary closure; its pseudo-inverse is computed numerically.
    pub fn custom<F>(direction: Direction, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(S) -> ExtendedNonNegative<S> + Send + Sync + 'static,
    {
        Generator { kind: Kind::Custom(direction, label.into(), Arc::new(f)) }
    }

    pub fn direction(&self) -> Direction {
        match &self.kind {
            Kind::YagerDecreasing(_) => Direction::Decreasing,
            Kind::YagerIncreasing(_)
            | Kind::PowerComplement(_)
            | Kind::NegLog
            | Kind::Piecewise
            | Kind::Bijection(_) => Direction::Increasing,
            Kind::Table(d, _) | Kind::Custom(d, _, _) => *d,
        }
    }

    pub fn inverse_form(&self) -> InverseForm {
        match self.kind {
            Kind::Table(..) | Kind::Custom(..) => InverseForm::Numeric,
            _ => InverseForm::ClosedForm,
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            Kind::YagerDecreasing(p) => format!("(1-x)^{p}"),
            Kind::YagerIncreasing(p) => format!("x^{p}"),
            Kind::PowerComplement(p) => format!("1-(1-x)^{p}"),
            Kind::NegLog => "-ln(1-x)".into(),
            Kind::Piecewise => "piecewise(x | 0.5+0.5x)".into(),
            Kind::Bijection(phi) => phi.label().to_string(),
            Kind::Table(d, _) => format!("table({})", d.name()),
            Kind::Custom(_, label, _) => label.clone(),
        }
    }

    /// Checked evaluation; errors when `x` is outside `[0, 1]`.
    pub fn eval(&self, x: S) -> Result<ExtendedNonNegative<S>> {
        if !x.is_unit() {
            return Err(Error::Domain(x.as_f64()));
        }
        Ok(self.value(x))
    }

    /// Evaluation on an argument already known to lie in `[0, 1]`.
    pub(crate) fn value(&self, x: S) -> ExtendedNonNegative<S> {
        let one = S::one();
        let finite = |v: S| ExtendedNonNegative::new(v.max(S::zero())).unwrap_or(Infinity);
        match &self.kind {
            Kind::YagerDecreasing(p) => finite((one - x).powf(*p)),
            Kind::YagerIncreasing(p) => finite(x.powf(*p)),
            Kind::PowerComplement(p) => finite(one - (one - x).powf(*p)),
            Kind::NegLog => {
                if x >= one {
                    Infinity
                } else {
                    finite(-(-x).ln_1p())
                }
            }
            Kind::Piecewise => {
                let half = S::lit(0.5);
                if x <= half {
                    finite(x)
                } else {
                    finite(half + half * x)
                }
            }
            Kind::Bijection(phi) => finite(phi.forward(x)),
            Kind::Table(_, t) => finite(t.eval(x)),
            Kind::Custom(_, _, f) => f(x),
        }
    }

    /// `f(0⁺)` for decreasing generators, `g(1⁻)` for increasing ones.
    pub fn endpoint_limit(&self) -> ExtendedNonNegative<S> {
        match &self.kind {
            Kind::YagerDecreasing(_) => Finite(S::one()),
            Kind::YagerIncreasing(_) | Kind::PowerComplement(_) | Kind::Piecewise | Kind::Bijection(_) => {
                Finite(S::one())
            }
            Kind::NegLog => Infinity,
            Kind::Table(Direction::Decreasing, t) => Finite(t.first()),
            Kind::Table(Direction::Increasing, t) => Finite(t.last()),
            Kind::Custom(Direction::Decreasing, _, f) => f(S::zero()),
            Kind::Custom(Direction::Increasing, _, f) => f(S::one()),
        }
    }

    /// Pseudo-inverse, closed form where the catalog has one and bisection
    /// otherwise. Always lands in `[0, 1]`.
    pub fn pseudo_inverse(&self, y: ExtendedNonNegative<S>) -> S {
        if let Some(v) = self.saturated(y) {
            return v;
        }
        match self.closed_inverse(y) {
            Some(v) => v.clamp_unit(),
            None => self.bisect(y),
        }
    }

    /// Pseudo-inverse by bisection regardless of any closed form.
    pub fn pseudo_inverse_numeric(&self, y: ExtendedNonNegative<S>) -> S {
        self.saturated(y).unwrap_or_else(|| self.bisect(y))
    }

    /// Sums landing within round-off of a finite `g(1⁻)` saturate to 1;
    /// otherwise a fractional root would turn a few ulps into ~1e-8.
    fn saturated(&self, y: ExtendedNonNegative<S>) -> Option<S> {
        if self.direction() != Direction::Increasing {
            return None;
        }
        match (self.endpoint_limit(), y) {
            (Finite(top), Finite(v)) if top > S::zero() && v >= top - S::roundoff() * top => Some(S::one()),
            (Finite(_), Infinity) => Some(S::one()),
            _ => None,
        }
    }

    fn closed_inverse(&self, y: ExtendedNonNegative<S>) -> Option<S> {
        let zero = S::zero();
        let one = S::one();
        let half = S::lit(0.5);
        let v = match (&self.kind, y) {
            (Kind::YagerDecreasing(_), Infinity) => zero,
            (Kind::YagerDecreasing(p), Finite(y)) => {
                if y >= one {
                    zero
                } else {
                    one - y.powf(p.recip())
                }
            }
            (Kind::YagerIncreasing(_), Infinity) => one,
            (Kind::YagerIncreasing(p), Finite(y)) => {
                if y >= one {
                    one
                } else {
                    y.powf(p.recip())
                }
            }
            (Kind::PowerComplement(_), Infinity) => one,
            (Kind::PowerComplement(p), Finite(y)) => {
                if y >= one {
                    one
                } else {
                    one - (one - y).powf(p.recip())
                }
            }
            (Kind::NegLog, Infinity) => one,
            (Kind::NegLog, Finite(y)) => -(-y).exp_m1(),
            (Kind::Piecewise, Infinity) => one,
            (Kind::Piecewise, Finite(y)) => {
                if y <= half {
                    y
                } else if y <= S::lit(0.75) {
                    half
                } else if y <= one {
                    y + y - one
                } else {
                    one
                }
            }
            (Kind::Bijection(_), Infinity) => one,
            (Kind::Bijection(phi), Finite(y)) => phi.inverse(y.min(one)),
            (Kind::Table(..), _) | (Kind::Custom(..), _) => return None,
        };
        Some(v)
    }

    fn bisect(&self, y: ExtendedNonNegative<S>) -> S {
        let zero = S::zero();
        let one = S::one();
        // `inside(x)` is the membership test of the set whose sup we want;
        // it is a down-set of [0,1] for a strictly monotone generator.
        let inside = |x: S| match self.direction() {
            Direction::Decreasing => self.value(x) > y,
            Direction::Increasing => self.value(x) < y,
        };
        if !inside(zero) {
            return zero;
        }
        if inside(one) {
            return one;
        }
        let (mut lo, mut hi) = (zero, one);
        let width = S::lit(BISECTION_WIDTH);
        let two = S::lit(2.0);
        for _ in 0..BISECTION_MAX_ITER {
            if hi - lo < width {
                break;
            }
            let mid = lo + (hi - lo) / two;
            if mid <= lo || mid >= hi {
                break;
            }
            if inside(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + (hi - lo) / two).clamp_unit()
    }

    /// Checks strict monotonicity on a uniform grid of `samples` points
    /// and the endpoint condition `f(1) = 0` / `g(0) = 0`.
    pub fn verify(&self, samples: usize) -> ReportSet<S> {
        let samples = samples.max(2);
        let spec = SampleSpec::grid_only(samples);
        let xs = spec.grid::<S>();
        let values: Vec<S> = xs.iter().map(|&x| self.value(x).to_scalar()).collect();

        let mut mono = Tracker::new(format!("strictly-{}", self.direction().name()), S::zero());
        for k in 1..xs.len() {
            let (a, b) = (values[k - 1], values[k]);
            let ok = match self.direction() {
                Direction::Decreasing => a > b,
                Direction::Increasing => a < b,
            };
            // violation size: how far the pair is from the required order
            let gap = match self.direction() {
                Direction::Decreasing => b - a,
                Direction::Increasing => a - b,
            };
            let gap = if gap.is_nan() { S::infinity() } else { gap.max(S::zero()) };
            mono.record(&[xs[k - 1], xs[k]], a, b, gap, !ok);
        }

        let tol = S::lit(spec.tolerance);
        let (name, at) = match self.direction() {
            Direction::Decreasing => ("endpoint f(1)=0", S::one()),
            Direction::Increasing => ("endpoint g(0)=0", S::zero()),
        };
        let mut endpoint = Tracker::new(name, tol);
        endpoint.compare(&[at], self.value(at).to_scalar(), S::zero());

        ReportSet::new(vec![mono.finish(&spec), endpoint.finish(&spec)])
    }
}

/// Evaluates `g` at `x`; domain error outside `[0, 1]`.
pub fn eval_generator<S: Scalar>(g: &Generator<S>, x: S) -> Result<ExtendedNonNegative<S>> {
    g.eval(x)
}

pub fn pseudo_inverse<S: Scalar>(g: &Generator<S>, y: ExtendedNonNegative<S>) -> S {
    g.pseudo_inverse(y)
}

pub fn verify_generator<S: Scalar>(g: &Generator<S>, samples: usize) -> PropertyReport<S> {
    g.verify(samples).combined("generator")
}
