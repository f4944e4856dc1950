//! Sampling-based verification of t-norm axioms, implication axioms and
//! the usual implication properties.
//!
//! Every check runs on the deterministic point set of a [`SampleSpec`].
//! A `fails` verdict comes with a concrete witness that reproduces the
//! discrepancy when re-evaluated; `holds-on-samples` only means no sampled
//! point violated the law.

mod report;
mod sample;

use serde::Serialize;

pub use report::{PropertyReport, ReportSet, Verdict, Witness};
pub(crate) use report::Tracker;
pub use sample::{uniform_grid, SampleSpec, CLOSED_FORM_TOL, DEFAULT_SEED, NUMERIC_TOL};

use crate::connectives::{BinaryConnective, Negation};
use crate::implications::ImplicationCandidate;
use crate::scalar::Scalar;

/// Multiplier on the tolerance for the `I(x,y) = 1 ⟹ x <= y` half of OP.
pub const OP_REVERSE_FACTOR: f64 = 10.0;
/// Adjacent-point jumps above `CONTINUITY_JUMP_SCALE / grid_n` are refined
/// before a discontinuity is reported.
pub const CONTINUITY_JUMP_SCALE: f64 = 5.0;
/// Offsets used to probe right-continuity of `I(x, .)`.
pub const RIGHT_CONTINUITY_OFFSETS: [f64; 3] = [1e-3, 1e-5, 1e-7];
const REFINE_STEPS: usize = 80;

/// Anything evaluable on `[0,1]²`.
pub trait BinaryOperator<S>: Send + Sync {
    fn apply(&self, x: S, y: S) -> S;
    fn name(&self) -> &str;
}

impl<S: Scalar> BinaryOperator<S> for BinaryConnective<S> {
    fn apply(&self, x: S, y: S) -> S {
        self.eval(x, y)
    }

    fn name(&self) -> &str {
        self.label()
    }
}

impl<S: Scalar> BinaryOperator<S> for ImplicationCandidate<S> {
    fn apply(&self, x: S, y: S) -> S {
        self.eval(x, y)
    }

    fn name(&self) -> &str {
        self.label()
    }
}

/// Implication properties.
#[derive(Clone)]
pub enum Property<S> {
    /// `I(1,y) = y`
    NP,
    /// `I(x,I(y,z)) = I(y,I(x,z))`
    EP,
    /// `I(x,x) = 1`
    IP,
    /// `x <= y ⟺ I(x,y) = 1`
    OP,
    /// `I(x,y) = I(N(y),N(x))`
    CP(Negation<S>),
}

impl<S: Scalar> std::fmt::Debug for Property<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

impl<S: Scalar> Property<S> {
    pub fn name(&self) -> String {
        match self {
            Property::NP => "NP".into(),
            Property::EP => "EP".into(),
            Property::IP => "IP".into(),
            Property::OP => "OP".into(),
            Property::CP(n) => format!("CP({})", n.label()),
        }
    }
}

fn grid_values<S: Scalar, F: BinaryOperator<S> + ?Sized>(f: &F, grid: &[S]) -> Vec<Vec<S>> {
    grid.iter().map(|&x| grid.iter().map(|&y| f.apply(x, y)).collect()).collect()
}

/// Non-increasing in the first argument on every sampled `x1 <= x2`.
fn check_first_nonincreasing<S: Scalar, F: BinaryOperator<S> + ?Sized>(
    f: &F,
    s: &SampleSpec,
    name: &str,
) -> PropertyReport<S> {
    let grid = s.grid::<S>();
    let v = grid_values(f, &grid);
    let mut t = Tracker::new(name, S::lit(s.tolerance));
    for j in 0..grid.len() {
        let mut lowest = 0;
        for i in 1..grid.len() {
            t.at_most(&[grid[lowest], grid[i], grid[j]], v[i][j], v[lowest][j]);
            if v[i][j] < v[lowest][j] {
                lowest = i;
            }
        }
    }
    for [a, b, c] in s.monotone_triples::<S>() {
        let (x1, x2) = if a <= b { (a, b) } else { (b, a) };
        t.at_most(&[x1, x2, c], f.apply(x2, c), f.apply(x1, c));
    }
    t.finish(s)
}

/// Non-decreasing in the second argument on every sampled `y1 <= y2`.
fn check_second_nondecreasing<S: Scalar, F: BinaryOperator<S> + ?Sized>(
    f: &F,
    s: &SampleSpec,
    name: &str,
) -> PropertyReport<S> {
    let grid = s.grid::<S>();
    let v = grid_values(f, &grid);
    let mut t = Tracker::new(name, S::lit(s.tolerance));
    for i in 0..grid.len() {
        let mut highest = 0;
        for j in 1..grid.len() {
            t.at_most(&[grid[i], grid[highest], grid[j]], v[i][highest], v[i][j]);
            if v[i][j] > v[i][highest] {
                highest = j;
            }
        }
    }
    for [a, b, c] in s.monotone_triples::<S>() {
        let (y1, y2) = if a <= b { (a, b) } else { (b, a) };
        t.at_most(&[c, y1, y2], f.apply(c, y1), f.apply(c, y2));
    }
    t.finish(s)
}

/// I1 (non-increasing in `x`), I2 (non-decreasing in `y`) and the corner
/// values of I3, checked in the order `I(1,0)=0`, `I(0,0)=1`, `I(1,1)=1`.
pub fn check_implication_axioms<S: Scalar>(i: &ImplicationCandidate<S>, s: &SampleSpec) -> ReportSet<S> {
    let i1 = check_first_nonincreasing(i, s, "I1");
    let i2 = check_second_nondecreasing(i, s, "I2");
    let (zero, one) = (S::zero(), S::one());
    let mut i3 = Tracker::new("I3", S::lit(s.tolerance));
    for (x, y, expected) in [(one, zero, zero), (zero, zero, one), (one, one, one)] {
        i3.compare(&[x, y], i.eval(x, y), expected);
    }
    ReportSet::new(vec![i1, i2, i3.finish(s)])
}

pub fn check_property<S: Scalar>(i: &ImplicationCandidate<S>, prop: &Property<S>, s: &SampleSpec) -> PropertyReport<S> {
    let tol = S::lit(s.tolerance);
    let one = S::one();
    let mut t = Tracker::new(prop.name(), tol);
    match prop {
        Property::NP => {
            for y in s.units::<S>() {
                t.compare(&[one, y], i.eval(one, y), y);
            }
        }
        Property::IP => {
            for x in s.units::<S>() {
                t.compare(&[x, x], i.eval(x, x), one);
            }
        }
        Property::EP => {
            for &[x, y, z] in i.critical_triples() {
                t.compare_pinned(&[x, y, z], i.eval(x, i.eval(y, z)), i.eval(y, i.eval(x, z)));
            }
            for [x, y, z] in s.triples::<S>() {
                t.compare(&[x, y, z], i.eval(x, i.eval(y, z)), i.eval(y, i.eval(x, z)));
            }
        }
        Property::OP => {
            let slack = tol * S::lit(OP_REVERSE_FACTOR);
            t.note("x<=y witnesses carry (I(x,y), 1); I(x,y)=1 witnesses carry (x, y)");
            for [x, y] in s.pairs::<S>() {
                let v = i.eval(x, y);
                if x <= y {
                    t.compare(&[x, y], v, one);
                } else if v >= one - tol {
                    let gap = x - y;
                    t.record(&[x, y], x, y, gap, gap > slack);
                } else {
                    t.record(&[x, y], v, one, S::zero(), false);
                }
            }
        }
        Property::CP(n) => {
            for [x, y] in s.pairs::<S>() {
                t.compare(&[x, y], i.eval(x, y), i.eval(n.eval(y), n.eval(x)));
            }
        }
    }
    t.finish(s)
}

/// T1 commutativity, T2 associativity, T3 monotonicity, T4 `T(x,1) = x`.
pub fn check_tnorm_axioms<S: Scalar>(c: &BinaryConnective<S>, s: &SampleSpec) -> ReportSet<S> {
    let tol = S::lit(s.tolerance);
    let one = S::one();
    let mut t1 = Tracker::new("T1", tol);
    for [x, y] in s.pairs::<S>() {
        t1.compare(&[x, y], c.eval(x, y), c.eval(y, x));
    }
    let mut t2 = associativity_tracker(c, s, "T2");
    t2.note("lhs = T(T(x,y),z), rhs = T(x,T(y,z))");
    let t3 = check_second_nondecreasing(c, s, "T3");
    let mut t4 = Tracker::new("T4", tol);
    for x in s.units::<S>() {
        t4.compare(&[x, one], c.eval(x, one), x);
    }
    ReportSet::new(vec![t1.finish(s), t2.finish(s), t3, t4.finish(s)])
}

fn associativity_tracker<S: Scalar>(c: &BinaryConnective<S>, s: &SampleSpec, name: &str) -> Tracker<S> {
    let mut t = Tracker::new(name, S::lit(s.tolerance));
    for &[a, b, d] in c.critical_triples() {
        t.compare_pinned(&[a, b, d], c.eval(c.eval(a, b), d), c.eval(a, c.eval(b, d)));
    }
    for [a, b, d] in s.triples::<S>() {
        t.compare(&[a, b, d], c.eval(c.eval(a, b), d), c.eval(a, c.eval(b, d)));
    }
    t
}

/// Searches for `C(a, C(b,c)) != C(C(a,b), c)`. Pinned triples of the
/// connective are tried first.
pub fn find_associativity_counterexample<S: Scalar>(c: &BinaryConnective<S>, s: &SampleSpec) -> PropertyReport<S> {
    let mut t = Tracker::new("associativity", S::lit(s.tolerance));
    t.note("lhs = C(a,C(b,c)), rhs = C(C(a,b),c)");
    for &[a, b, d] in c.critical_triples() {
        t.compare_pinned(&[a, b, d], c.eval(a, c.eval(b, d)), c.eval(c.eval(a, b), d));
    }
    for [a, b, d] in s.triples::<S>() {
        t.compare(&[a, b, d], c.eval(a, c.eval(b, d)), c.eval(c.eval(a, b), d));
    }
    t.finish(s)
}

/// Largest pointwise gap between two operators over the sampled pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceComparison<S> {
    pub left: String,
    pub right: String,
    pub max_abs_diff: S,
    pub argmax: [S; 2],
    pub left_value: S,
    pub right_value: S,
    pub sample_spec: SampleSpec,
}

pub fn compare_surfaces<S, F, G>(f: &F, g: &G, s: &SampleSpec) -> SurfaceComparison<S>
where
    S: Scalar,
    F: BinaryOperator<S> + ?Sized,
    G: BinaryOperator<S> + ?Sized,
{
    let mut best = SurfaceComparison {
        left: f.name().to_string(),
        right: g.name().to_string(),
        max_abs_diff: S::zero(),
        argmax: [S::zero(), S::zero()],
        left_value: f.apply(S::zero(), S::zero()),
        right_value: g.apply(S::zero(), S::zero()),
        sample_spec: s.clone(),
    };
    for [x, y] in s.pairs::<S>() {
        let (a, b) = (f.apply(x, y), g.apply(x, y));
        let d = report::discrepancy(a, b);
        if d > best.max_abs_diff {
            best.max_abs_diff = d;
            best.argmax = [x, y];
            best.left_value = a;
            best.right_value = b;
        }
    }
    best
}

/// Narrows `[a, b]` onto its steepest half repeatedly; returns the final
/// bracket. A jump that survives the refinement is a discontinuity.
fn refine_jump<S: Scalar, F: Fn(S) -> S>(f: &F, mut a: S, mut b: S) -> (S, S, S, S) {
    let two = S::lit(2.0);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..REFINE_STEPS {
        let m = a + (b - a) / two;
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if report::discrepancy(fm, fa) >= report::discrepancy(fb, fm) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    (a, b, fa, fb)
}

fn jump_threshold<S: Scalar>(s: &SampleSpec) -> S {
    S::lit(CONTINUITY_JUMP_SCALE) / S::from_count(s.grid_n)
}

/// Probes a unary map: whether it is a fuzzy negation (endpoints and
/// non-increasing), continuity (grid jumps refined by bisection), strictness
/// and involutivity. Report names: `negation`, `continuity`, `strict`,
/// `strong`.
pub fn probe_continuity<S: Scalar>(n: &Negation<S>, s: &SampleSpec) -> ReportSet<S> {
    let tol = S::lit(s.tolerance);
    let (zero, one) = (S::zero(), S::one());
    let mut xs = s.units::<S>();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("sample points are finite"));
    xs.dedup();
    let vals: Vec<S> = xs.iter().map(|&x| n.eval(x)).collect();

    let mut neg = Tracker::new("negation", tol);
    neg.compare(&[zero], n.eval(zero), one);
    neg.compare(&[one], n.eval(one), zero);
    for k in 1..xs.len() {
        neg.at_most(&[xs[k - 1], xs[k]], vals[k], vals[k - 1]);
    }

    let mut strict = Tracker::new("strict", S::zero());
    for k in 1..xs.len() {
        let ok = vals[k] < vals[k - 1];
        let gap = (vals[k] - vals[k - 1]).max(S::zero());
        strict.record(&[xs[k - 1], xs[k]], vals[k - 1], vals[k], gap, !ok);
    }

    let threshold = jump_threshold::<S>(s);
    let mut cont = Tracker::new("continuity", threshold);
    cont.note(format!("jumps above {} between grid neighbours are refined", threshold));
    let grid = s.grid::<S>();
    let f = |x: S| n.eval(x);
    for w in grid.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (f(a), f(b));
        if report::discrepancy(fa, fb) <= threshold {
            cont.record(&[a, b], fa, fb, report::discrepancy(fa, fb), false);
            continue;
        }
        let (ra, rb, rfa, rfb) = refine_jump(&f, a, b);
        let jump = report::discrepancy(rfa, rfb);
        cont.record(&[ra, rb], rfa, rfb, jump, jump > threshold);
    }

    let mut strong = Tracker::new("strong", tol);
    for &x in &xs {
        strong.compare(&[x], n.eval(n.eval(x)), x);
    }

    ReportSet::new(vec![neg.finish(s), cont.finish(s), strict.finish(s), strong.finish(s)])
}

/// Continuity of a binary operator along grid rows and columns, with the
/// same refine-the-jump heuristic as [`probe_continuity`].
pub fn probe_surface_continuity<S, F>(f: &F, s: &SampleSpec) -> PropertyReport<S>
where
    S: Scalar,
    F: BinaryOperator<S> + ?Sized,
{
    let grid = s.grid::<S>();
    let v = grid_values(f, &grid);
    let threshold = jump_threshold::<S>(s);
    let mut t = Tracker::new("continuity", threshold);
    let n = grid.len();
    for i in 0..n {
        for j in 0..n {
            // along y at fixed x, then along x at fixed y
            if j + 1 < n {
                let x = grid[i];
                let d = report::discrepancy(v[i][j], v[i][j + 1]);
                if d <= threshold {
                    t.record(&[x, grid[j], x, grid[j + 1]], v[i][j], v[i][j + 1], d, false);
                } else {
                    let (a, b, fa, fb) = refine_jump(&|y| f.apply(x, y), grid[j], grid[j + 1]);
                    let jump = report::discrepancy(fa, fb);
                    t.record(&[x, a, x, b], fa, fb, jump, jump > threshold);
                }
            }
            if i + 1 < n {
                let y = grid[j];
                let d = report::discrepancy(v[i][j], v[i + 1][j]);
                if d <= threshold {
                    t.record(&[grid[i], y, grid[i + 1], y], v[i][j], v[i + 1][j], d, false);
                } else {
                    let (a, b, fa, fb) = refine_jump(&|x| f.apply(x, y), grid[i], grid[i + 1]);
                    let jump = report::discrepancy(fa, fb);
                    t.record(&[a, y, b, y], fa, fb, jump, jump > threshold);
                }
            }
        }
    }
    t.finish(s)
}

/// Right-continuity of `I(x, .)`: at every sampled `(x, y)` the increments
/// `|I(x, y+h) - I(x, y)|` for `h = 1e-3, 1e-5, 1e-7` must shrink. The
/// point is flagged when the smallest offset still shows at least half of
/// the largest increment and exceeds the tolerance.
pub fn probe_right_continuity<S, F>(f: &F, s: &SampleSpec) -> PropertyReport<S>
where
    S: Scalar,
    F: BinaryOperator<S> + ?Sized,
{
    let tol = S::lit(s.tolerance);
    let floor = tol * S::lit(10.0);
    let half = S::lit(0.5);
    let one = S::one();
    let offsets: Vec<S> = RIGHT_CONTINUITY_OFFSETS.iter().map(|&h| S::lit(h)).collect();
    let mut t = Tracker::new("right-continuity", floor);
    t.note("witness carries (I(x, y+1e-7), I(x, y))");
    for [x, y] in s.pairs::<S>() {
        if y + offsets[0] > one {
            continue;
        }
        let base = f.apply(x, y);
        let incs: Vec<S> = offsets.iter().map(|&h| report::discrepancy(f.apply(x, y + h), base)).collect();
        let last = incs[incs.len() - 1];
        let stuck = last > floor && last >= half * incs[0];
        let near = f.apply(x, y + offsets[offsets.len() - 1]);
        t.record(&[x, y], near, base, if stuck { last } else { S::zero() }, stuck);
    }
    t.finish(s)
}
