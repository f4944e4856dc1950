use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Default tolerance for comparisons between closed forms.
pub const CLOSED_FORM_TOL: f64 = 1e-9;
/// Default tolerance when a numeric residual is part of the comparison.
pub const NUMERIC_TOL: f64 = 1e-6;
pub const DEFAULT_SEED: u64 = 42;

/// Deterministic description of the points a check runs on.
///
/// Pairs are the `grid_n x grid_n` uniform grid in row-major order followed
/// by `random_count` seeded random pairs. Triples are the
/// `triple_grid_n³` grid followed by `random_triple_count` random triples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub grid_n: usize,
    pub random_count: usize,
    pub triple_grid_n: usize,
    pub random_triple_count: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            grid_n: 101,
            random_count: 1000,
            triple_grid_n: 21,
            random_triple_count: 2000,
            seed: DEFAULT_SEED,
            tolerance: CLOSED_FORM_TOL,
        }
    }
}

// independent random streams so that changing one count never shifts
// the points of another family
const PAIR_STREAM: u64 = 1;
const TRIPLE_STREAM: u64 = 2;
const MONOTONE_STREAM: u64 = 3;

impl SampleSpec {
    /// Uniform grid only, no random points.
    pub fn grid_only(grid_n: usize) -> Self {
        SampleSpec { grid_n: grid_n.max(2), random_count: 0, random_triple_count: 0, ..Default::default() }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_grid(mut self, grid_n: usize) -> Self {
        self.grid_n = grid_n.max(2);
        self
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// `{i/(n-1)}` for `i = 0..n`.
    pub fn grid<S: Scalar>(&self) -> Vec<S> {
        uniform_grid(self.grid_n)
    }

    pub fn pairs<S: Scalar>(&self) -> Vec<[S; 2]> {
        let g = self.grid::<S>();
        let mut out = Vec::with_capacity(g.len() * g.len() + self.random_count);
        for &x in &g {
            for &y in &g {
                out.push([x, y]);
            }
        }
        let mut rng = self.rng(PAIR_STREAM);
        for _ in 0..self.random_count {
            out.push([unit(&mut rng), unit(&mut rng)]);
        }
        out
    }

    pub fn triples<S: Scalar>(&self) -> Vec<[S; 3]> {
        let g = uniform_grid::<S>(self.triple_grid_n);
        let mut out = Vec::with_capacity(g.len().pow(3) + self.random_triple_count);
        for &x in &g {
            for &y in &g {
                for &z in &g {
                    out.push([x, y, z]);
                }
            }
        }
        let mut rng = self.rng(TRIPLE_STREAM);
        for _ in 0..self.random_triple_count {
            out.push([unit(&mut rng), unit(&mut rng), unit(&mut rng)]);
        }
        out
    }

    /// Random `(a, b, c)` used for monotonicity checks beyond the grid:
    /// `a, b` are compared in one argument while `c` fixes the other.
    pub fn monotone_triples<S: Scalar>(&self) -> Vec<[S; 3]> {
        let mut rng = self.rng(MONOTONE_STREAM);
        (0..self.random_count).map(|_| [unit(&mut rng), unit(&mut rng), unit(&mut rng)]).collect()
    }

    /// Grid coordinates followed by random coordinates, for unary checks.
    pub fn units<S: Scalar>(&self) -> Vec<S> {
        let mut out = self.grid::<S>();
        let mut rng = self.rng(PAIR_STREAM);
        out.extend((0..self.random_count).map(|_| unit::<S>(&mut rng)));
        out
    }
}

pub fn uniform_grid<S: Scalar>(n: usize) -> Vec<S> {
    let n = n.max(2);
    let last = S::from_count(n - 1);
    (0..n).map(|i| S::from_count(i) / last).collect()
}

fn unit<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    S::lit(rng.gen::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_spec_same_points() {
        let s = SampleSpec::default();
        assert_eq!(s.pairs::<f64>(), s.pairs::<f64>());
        assert_eq!(s.triples::<f64>(), s.triples::<f64>());
        let other = s.clone().with_seed(7);
        assert_ne!(s.pairs::<f64>()[10201..], other.pairs::<f64>()[10201..]);
    }

    #[test]
    fn sizes_follow_spec() {
        let s = SampleSpec::default();
        assert_eq!(s.pairs::<f64>().len(), 101 * 101 + 1000);
        assert_eq!(s.triples::<f64>().len(), 21 * 21 * 21 + 2000);
        assert_eq!(s.units::<f64>().len(), 1101);
    }

    #[test]
    fn grid_hits_decimal_points_exactly() {
        let g = uniform_grid::<f64>(21);
        assert_eq!(g[14], 0.7);
        assert_eq!(g[13], 0.65);
        assert_eq!(g[4], 0.2);
        let g = uniform_grid::<f64>(101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], 1.0);
        assert_eq!(g[50], 0.5);
    }
}
