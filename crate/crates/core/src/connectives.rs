//! t-norms, t-conorms, the quadratic mean and fuzzy negations.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{Direction, Generator};
use crate::implications::{Bijection, ImplicationCandidate};
use crate::interp::{BilinearGrid, PiecewiseLinear};
use crate::scalar::Scalar;

pub(crate) type BinaryFn<S> = Arc<dyn Fn(S, S) -> S + Send + Sync>;
pub(crate) type UnaryFn<S> = Arc<dyn Fn(S) -> S + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasicTNorm {
    #[serde(alias = "minimum")]
    Min,
    Product,
    Lukasiewicz,
    Drastic,
}

impl BasicTNorm {
    pub const ALL: [BasicTNorm; 4] = [BasicTNorm::Min, BasicTNorm::Product, BasicTNorm::Lukasiewicz, BasicTNorm::Drastic];

    pub fn name(self) -> &'static str {
        match self {
            BasicTNorm::Min => "T_M",
            BasicTNorm::Product => "T_P",
            BasicTNorm::Lukasiewicz => "T_L",
            BasicTNorm::Drastic => "T_D",
        }
    }
}

/// Where a connective came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConnectiveOrigin {
    Basic,
    Yager,
    Generated { generator: String },
    DualOf { of: String },
    Mean,
    UserTable,
    FromImplication { of: String },
    Custom,
}

/// A map `[0,1]² -> [0,1]`. Outputs are clamped into the unit interval.
#[derive(Clone)]
pub struct BinaryConnective<S> {
    eval: BinaryFn<S>,
    label: String,
    origin: ConnectiveOrigin,
    critical_triples: Vec<[S; 3]>,
}

impl<S: Scalar> fmt::Debug for BinaryConnective<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryConnective").field("label", &self.label).field("origin", &self.origin).finish()
    }
}

impl<S: Scalar> BinaryConnective<S> {
    pub fn new<F>(label: impl Into<String>, origin: ConnectiveOrigin, f: F) -> Self
    where
        F: Fn(S, S) -> S + Send + Sync + 'static,
    {
        BinaryConnective { eval: Arc::new(f), label: label.into(), origin, critical_triples: Vec::new() }
    }

    pub fn custom<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(S, S) -> S + Send + Sync + 'static,
    {
        Self::new(label, ConnectiveOrigin::Custom, f)
    }

    /// Triples that associativity searches check before the sample set.
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

    pub fn origin(&self) -> &ConnectiveOrigin {
        &self.origin
    }

    pub fn basic(kind: BasicTNorm) -> Self {
        Self::new(kind.name(), ConnectiveOrigin::Basic, move |x, y| basic_tnorm(kind, x, y))
    }

    /// Yager t-norm; `p = 0` is the drastic product, `p = +inf` the minimum.
    pub fn yager(p: S) -> Result<Self> {
        if p.is_nan() || p < S::zero() {
            return Err(Error::InvalidParameter(format!("Yager p must be in [0, inf], got {p}")));
        }
        Ok(Self::new(format!("T^Y_{p}"), ConnectiveOrigin::Yager, move |x, y| yager_tnorm(p, x, y)))
    }

    pub fn generated_tnorm(f: &Generator<S>) -> Result<Self> {
        expect_direction(f, Direction::Decreasing)?;
        let f = f.clone();
        let label = format!("T[{}]", f.label());
        Ok(Self::new(label, ConnectiveOrigin::Generated { generator: f.label() }, move |x, y| generate(&f, x, y)))
    }

    pub fn generated_tconorm(g: &Generator<S>) -> Result<Self> {
        expect_direction(g, Direction::Increasing)?;
        let g = g.clone();
        let label = format!("S[{}]", g.label());
        Ok(Self::new(label, ConnectiveOrigin::Generated { generator: g.label() }, move |x, y| generate(&g, x, y)))
    }

    pub fn mean() -> Self {
        Self::new("M", ConnectiveOrigin::Mean, quasi_arithmetic_mean)
    }

    /// `S(x,y) = 1 - T(1-x, 1-y)`.
    pub fn dual(&self) -> Self {
        let inner = self.clone();
        let one = S::one();
        Self::new(
            format!("dual({})", self.label),
            ConnectiveOrigin::DualOf { of: self.label.clone() },
            move |x, y| one - inner.eval(one - x, one - y),
        )
    }

    /// Bilinear interpolation of values sampled on a uniform grid.
    pub fn table(grid: BilinearGrid<S>) -> Self {
        let n = grid.resolution();
        Self::new(format!("table({n}x{n})"), ConnectiveOrigin::UserTable, move |x, y| grid.eval(x, y))
    }

    /// `C(x,y) = I(1-x, y)`; for an (S,N)-implication with the standard
    /// negation this recovers the t-conorm.
    pub fn from_implication(i: &ImplicationCandidate<S>) -> Self {
        let inner = i.clone();
        Self::new(
            format!("{}(1-x,y)", i.label()),
            ConnectiveOrigin::FromImplication { of: i.label().to_string() },
            move |x, y| inner.eval(S::one() - x, y),
        )
    }

    /// The candidate t-conorm `S(x,y) = I^f(1-x, y)` built from the
    /// piecewise generator, pinned with its known non-associative triple
    /// `(0.3, 0.35, 0.2)`.
    pub fn piecewise_conorm() -> Self {
        let i = ImplicationCandidate::piecewise_f();
        Self::from_implication(&i).with_critical_triples(vec![[S::lit(0.3), S::lit(0.35), S::lit(0.2)]])
    }
}

fn expect_direction<S: Scalar>(g: &Generator<S>, expected: Direction) -> Result<()> {
    if g.direction() == expected {
        Ok(())
    } else {
        Err(Error::Direction { expected: expected.name(), found: g.direction().name() })
    }
}

fn generate<S: Scalar>(g: &Generator<S>, x: S, y: S) -> S {
    let (x, y) = (x.clamp_unit(), y.clamp_unit());
    g.pseudo_inverse(g.value(x) + g.value(y))
}

pub fn basic_tnorm<S: Scalar>(kind: BasicTNorm, x: S, y: S) -> S {
    let (zero, one) = (S::zero(), S::one());
    let v = match kind {
        BasicTNorm::Min => x.min(y),
        BasicTNorm::Product => x * y,
        // 1 is neutral; x + 1 - 1 need not round back to x
        BasicTNorm::Lukasiewicz if x >= one || y >= one => x.min(y),
        BasicTNorm::Lukasiewicz => (x + y - one).max(zero),
        BasicTNorm::Drastic => {
            if x.max(y) < one {
                zero
            } else {
                x.min(y)
            }
        }
    };
    v.clamp_unit()
}

/// `f⁽⁻¹⁾(f(x) + f(y))` for a decreasing generator.
pub fn generated_tnorm<S: Scalar>(f: &Generator<S>, x: S, y: S) -> Result<S> {
    expect_direction(f, Direction::Decreasing)?;
    Ok(generate(f, x, y))
}

/// `g⁽⁻¹⁾(g(x) + g(y))` for an increasing generator.
pub fn generated_tconorm<S: Scalar>(g: &Generator<S>, x: S, y: S) -> Result<S> {
    expect_direction(g, Direction::Increasing)?;
    Ok(generate(g, x, y))
}

pub fn dual_of<S: Scalar>(t: &BinaryConnective<S>) -> BinaryConnective<S> {
    t.dual()
}

pub fn yager_tnorm<S: Scalar>(p: S, x: S, y: S) -> S {
    if p == S::zero() {
        return basic_tnorm(BasicTNorm::Drastic, x, y);
    }
    if p.is_infinite() {
        return basic_tnorm(BasicTNorm::Min, x, y);
    }
    let one = S::one();
    // 1 is neutral; the power sum would leave an ulp behind
    if x >= one || y >= one {
        return x.min(y).clamp_unit();
    }
    let s = (one - x).powf(p) + (one - y).powf(p);
    (one - s.powf(p.recip())).max(S::zero()).clamp_unit()
}

/// `x_T^(n)`: `x` for `n = 1`, `T(x, x_T^(n-1))` afterwards.
pub fn n_ary_power<S: Scalar>(t: &BinaryConnective<S>, x: S, n: usize) -> S {
    let mut acc = x;
    for _ in 1..n {
        acc = t.eval(x, acc);
    }
    acc
}

/// Smallest `n <= n_max` with `x_T^(n) <= y`.
pub fn archimedean_witness<S: Scalar>(t: &BinaryConnective<S>, x: S, y: S, n_max: usize) -> Option<usize> {
    let mut acc = x;
    for n in 1..=n_max {
        if n > 1 {
            acc = t.eval(x, acc);
        }
        if acc <= y {
            return Some(n);
        }
    }
    None
}

/// `sqrt((x² + y²) / 2)`.
pub fn quasi_arithmetic_mean<S: Scalar>(x: S, y: S) -> S {
    ((x * x + y * y) / S::lit(2.0)).sqrt().clamp_unit()
}

/// A non-increasing map `[0,1] -> [0,1]` with `N(0) = 1`, `N(1) = 0`.
/// Construction does not check these; see [`crate::properties::probe_continuity`].
#[derive(Clone)]
pub struct Negation<S> {
    eval: UnaryFn<S>,
    label: String,
}

impl<S: Scalar> fmt::Debug for Negation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Negation").field(&self.label).finish()
    }
}

impl<S: Scalar> Negation<S> {
    pub fn custom<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(S) -> S + Send + Sync + 'static,
    {
        Negation { eval: Arc::new(f), label: label.into() }
    }

    pub fn eval(&self, x: S) -> S {
        (self.eval)(x).clamp_unit()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `N_S(x) = 1 - x`.
    pub fn standard() -> Self {
        Self::custom("N_S", |x: S| S::one() - x)
    }

    /// `N_p(x) = 1 - (1 - (1-x)^p)^(1/p)`, the natural negation of the
    /// Yager residual.
    pub fn yager(p: S) -> Result<Self> {
        if !(p > S::zero() && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("N_p needs p in (0, inf), got {p}")));
        }
        Ok(Self::custom(format!("N_{p}"), move |x: S| {
            let one = S::one();
            let inner = (one - (one - x).powf(p)).max(S::zero());
            one - inner.powf(p.recip())
        }))
    }

    /// `N_φ(x) = φ⁻¹(1 - φ(x))`.
    pub fn phi_conjugate(phi: &Bijection<S>) -> Self {
        let phi = phi.clone();
        Self::custom(format!("N_{}", phi.label()), move |x: S| phi.inverse(S::one() - phi.forward(x)))
    }

    /// `N^d(x) = 1 - N(1-x)`.
    pub fn dual(&self) -> Self {
        let inner = self.clone();
        Self::custom(format!("dual({})", self.label), move |x: S| S::one() - inner.eval(S::one() - x))
    }

    pub fn table(points: &[(S, S)]) -> Result<Self> {
        let t = PiecewiseLinear::new(points)?;
        Ok(Self::custom("table", move |x: S| t.eval(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid() -> Vec<f64> {
        (0..=100).map(|i| i as f64 / 100.0).collect()
    }

    #[test]
    fn basic_tnorm_examples() {
        assert!(f64::abs(basic_tnorm(BasicTNorm::Lukasiewicz, 0.7, 0.5) - 0.2) < 1e-15);
        assert_eq!(basic_tnorm(BasicTNorm::Drastic, 0.9, 0.9), 0.0);
        for kind in BasicTNorm::ALL {
            for x in grid() {
                assert_eq!(basic_tnorm(kind, x, 1.0), x, "{kind:?} at {x}");
            }
        }
    }

    #[test]
    fn generated_tnorm_examples() {
        let f2 = Generator::yager(2.0).unwrap();
        let v = generated_tnorm(&f2, 0.5, 0.5).unwrap();
        assert!((v - (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
        assert!((v - 0.29289).abs() < 1e-5);
        let f1 = Generator::yager(1.0).unwrap();
        assert!(f64::abs(generated_tnorm(&f1, 0.7, 0.5).unwrap() - 0.2) < 1e-12);
        for f in [f1, f2, Generator::yager(0.5).unwrap()] {
            for x in grid() {
                assert!((generated_tnorm(&f, x, 1.0).unwrap() - x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn direction_errors() {
        let g = Generator::<f64>::neg_log();
        assert!(matches!(generated_tnorm(&g, 0.5, 0.5), Err(Error::Direction { .. })));
        assert!(BinaryConnective::generated_tnorm(&g).is_err());
        let f = Generator::yager(2.0).unwrap();
        assert!(matches!(generated_tconorm(&f, 0.5, 0.5), Err(Error::Direction { .. })));
    }

    #[test]
    fn generated_tconorm_examples() {
        let g = Generator::<f64>::neg_log();
        assert!((generated_tconorm(&g, 0.5, 0.5).unwrap() - 0.75).abs() < 1e-12);
        let gp = Generator::power_complement(2.0).unwrap();
        for x in grid() {
            assert!((generated_tconorm(&g, x, 0.0).unwrap() - x).abs() < 1e-12);
            assert!((generated_tconorm(&gp, x, 0.0).unwrap() - x).abs() < 1e-12);
            assert_eq!(generated_tconorm(&gp, 1.0, x).unwrap(), 1.0);
        }
    }

    #[test]
    fn dual_examples() {
        let tm = BinaryConnective::<f64>::basic(BasicTNorm::Min);
        assert!((tm.dual().eval(0.3, 0.8) - 0.8).abs() < 1e-15);
        let tp = BinaryConnective::<f64>::basic(BasicTNorm::Product);
        assert_eq!(dual_of(&tp).eval(0.5, 0.5), 0.75);
        for t in [tm, tp, BinaryConnective::yager(2.0).unwrap()] {
            let dd = t.dual().dual();
            for x in grid().into_iter().step_by(5) {
                for y in grid().into_iter().step_by(5) {
                    assert!((dd.eval(x, y) - t.eval(x, y)).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn dual_of_yager_matches_generated_conorm() {
        for p in [0.5, 1.0, 2.0, 3.0] {
            let s = BinaryConnective::generated_tnorm(&Generator::yager(p).unwrap()).unwrap().dual();
            let g = Generator::yager_conorm(p).unwrap();
            for x in grid() {
                for y in grid() {
                    let d = (s.eval(x, y) - generated_tconorm(&g, x, y).unwrap()).abs();
                    assert!(d <= 1e-9, "p={p} ({x},{y}) diff {d}");
                }
            }
        }
    }

    #[test]
    fn yager_examples() {
        assert!(f64::abs(yager_tnorm(2.0, 0.5, 0.5) - 0.29289) < 1e-5);
        assert_eq!(yager_tnorm(0.0, 0.9, 0.9), 0.0);
        assert_eq!(yager_tnorm(f64::INFINITY, 0.3, 0.8), 0.3);
        assert!(BinaryConnective::yager(-1.0f64).is_err());
    }

    #[test]
    fn yager_matches_generated_on_grid() {
        for p in [0.5, 1.0, 2.0, 3.0] {
            let f = Generator::yager(p).unwrap();
            for x in grid() {
                for y in grid() {
                    let d = (yager_tnorm(p, x, y) - generated_tnorm(&f, x, y).unwrap()).abs();
                    assert!(d <= 1e-9, "p={p} ({x},{y}) diff {d}");
                }
            }
        }
    }

    #[test]
    fn powers_and_archimedean_witness() {
        let tl = BinaryConnective::basic(BasicTNorm::Lukasiewicz);
        assert!(f64::abs(n_ary_power(&tl, 0.9, 2) - 0.8) < 1e-12);
        assert_eq!(n_ary_power(&tl, 0.37, 1), 0.37);
        let tm = BinaryConnective::basic(BasicTNorm::Min);
        assert_eq!(n_ary_power(&tm, 0.4, 10), 0.4);
        assert_eq!(archimedean_witness(&tm, 0.6, 0.5, 1000), None);
        let tp = BinaryConnective::basic(BasicTNorm::Product);
        assert_eq!(archimedean_witness(&tp, 0.5, 0.5, 10), Some(1));
    }

    #[test]
    fn archimedean_witness_agrees_with_brute_force() {
        // brute force: recompute the whole power from scratch for each n
        fn brute(x: f64, y: f64, n_max: usize) -> Option<usize> {
            (1..=n_max).find(|&n| {
                let mut acc = x;
                for _ in 1..n {
                    acc = (x + acc - 1.0).max(0.0);
                }
                acc <= y
            })
        }
        let tl = BinaryConnective::basic(BasicTNorm::Lukasiewicz);
        for (x, y) in [(0.9, 0.5), (0.95, 0.1), (0.5, 0.49), (0.99, 0.01)] {
            assert_eq!(archimedean_witness(&tl, x, y, 200), brute(x, y, 200), "({x},{y})");
        }
        // exact arithmetic in hundredths: 90, 80, 70, 60, 50
        let exact = (1..=100).find(|&n: &i64| 90 - 10 * (n - 1) <= 50);
        assert_eq!(exact, Some(5));
        assert_eq!(archimedean_witness(&tl, 0.9, 0.5, 100), Some(5));
    }

    #[test]
    fn mean_examples() {
        assert_eq!(quasi_arithmetic_mean(0.0, 0.0), 0.0);
        assert_eq!(quasi_arithmetic_mean(1.0, 1.0), 1.0);
        assert!((quasi_arithmetic_mean(0.6, 0.8) - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn negation_examples() {
        let n2 = Negation::yager(2.0).unwrap();
        assert!((n2.eval(0.5) - (1.0 - 0.75f64.sqrt())).abs() < 1e-15);
        assert!((n2.eval(0.5) - 0.13397).abs() < 1e-5);
        assert!(f64::abs(Negation::standard().eval(0.3) - 0.7) < 1e-15);
        let phi = Bijection::power(2.0).unwrap();
        assert!(f64::abs(Negation::phi_conjugate(&phi).eval(0.6) - 0.8) < 1e-15);
        let d = Negation::yager(2.0).unwrap().dual();
        assert!((d.eval(0.5) - (1.0 - n2.eval(0.5))).abs() < 1e-15);
    }

    #[test]
    fn yager_negations_are_negations() {
        for p in [0.5, 1.0, 2.0, 3.0] {
            let n = Negation::yager(p).unwrap();
            assert_eq!(n.eval(0.0), 1.0);
            assert_eq!(n.eval(1.0), 0.0);
            let vals: Vec<f64> = grid().into_iter().map(|x| n.eval(x)).collect();
            assert!(vals.windows(2).all(|w| w[1] <= w[0]), "p={p}");
        }
        let n1 = Negation::yager(1.0).unwrap();
        for x in grid() {
            assert!((n1.eval(x) - (1.0 - x)).abs() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn powers_never_increase(x in 0.0f64..=1.0, n in 1usize..20) {
            for t in [BasicTNorm::Min, BasicTNorm::Product, BasicTNorm::Lukasiewicz, BasicTNorm::Drastic] {
                let t = BinaryConnective::basic(t);
                prop_assert!(n_ary_power(&t, x, n + 1) <= n_ary_power(&t, x, n));
            }
            let y = BinaryConnective::yager(2.0).unwrap();
            prop_assert!(n_ary_power(&y, x, n + 1) <= n_ary_power(&y, x, n));
        }

        #[test]
        fn outputs_stay_in_unit_interval(x in 0.0f64..=1.0, y in 0.0f64..=1.0, p in 0.01f64..10.0) {
            let v = yager_tnorm(p, x, y);
            prop_assert!((0.0..=1.0).contains(&v));
            let m = quasi_arithmetic_mean(x, y);
            prop_assert!((0.0..=1.0).contains(&m));
        }
    }
}
