//! Interpolated tables backing user-supplied generators, negations,
//! bijections and connectives.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Piecewise-linear function through `(x, y)` knots with strictly
/// increasing abscissae spanning `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear<S> {
    xs: Vec<S>,
    ys: Vec<S>,
}

impl<S: Scalar> PiecewiseLinear<S> {
    pub fn new(points: &[(S, S)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidTable("need at least two points".into()));
        }
        let xs: Vec<S> = points.iter().map(|p| p.0).collect();
        let ys: Vec<S> = points.iter().map(|p| p.1).collect();
        if xs[0] != S::zero() || xs[xs.len() - 1] != S::one() {
            return Err(Error::InvalidTable("abscissae must start at 0 and end at 1".into()));
        }
        if xs.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
            return Err(Error::InvalidTable("abscissae must be strictly increasing".into()));
        }
        if ys.iter().any(|y| !y.is_finite()) {
            return Err(Error::InvalidTable("ordinates must be finite".into()));
        }
        Ok(PiecewiseLinear { xs, ys })
    }

    pub fn points(&self) -> impl Iterator<Item = (S, S)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    pub fn first(&self) -> S {
        self.ys[0]
    }

    pub fn last(&self) -> S {
        self.ys[self.ys.len() - 1]
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.ys.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.ys.windows(2).all(|w| w[0] > w[1])
    }

    pub fn eval(&self, x: S) -> S {
        let x = x.clamp_unit();
        // index of the first knot strictly greater than x
        let hi = self.xs.partition_point(|&k| k <= x);
        if hi == 0 {
            return self.ys[0];
        }
        if hi >= self.xs.len() {
            return self.last();
        }
        let lo = hi - 1;
        let t = (x - self.xs[lo]) / (self.xs[hi] - self.xs[lo]);
        self.ys[lo] + t * (self.ys[hi] - self.ys[lo])
    }

    /// Inverse of a strictly increasing table mapping `[0,1]` onto `[0,1]`,
    /// obtained by swapping the coordinates of every knot.
    pub fn swapped(&self) -> Result<Self> {
        if !self.is_strictly_increasing() {
            return Err(Error::InvalidTable("table is not strictly increasing".into()));
        }
        let pts: Vec<(S, S)> = self.points().map(|(x, y)| (y, x)).collect();
        PiecewiseLinear::new(&pts)
    }
}

/// Values on the uniform grid `{i/(n-1)} x {j/(n-1)}` with bilinear
/// interpolation in between. `values[i][j]` is the value at `(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearGrid<S> {
    n: usize,
    values: Vec<S>,
}

impl<S: Scalar> BilinearGrid<S> {
    pub fn new(values: Vec<Vec<S>>) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::InvalidTable("grid needs at least 2x2 values".into()));
        }
        if values.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable("grid must be square".into()));
        }
        let flat: Vec<S> = values.into_iter().flatten().collect();
        if flat.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTable("grid values must be finite".into()));
        }
        Ok(BilinearGrid { n, values: flat })
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    fn at(&self, i: usize, j: usize) -> S {
        self.values[i * self.n + j]
    }

    pub fn eval(&self, x: S, y: S) -> S {
        let last = S::from_count(self.n - 1);
        let locate = |v: S| -> (usize, S) {
            let pos = v.clamp_unit() * last;
            let i = pos.floor().to_usize().unwrap_or(0).min(self.n - 2);
            (i, pos - S::from_count(i))
        };
        let (i, tx) = locate(x);
        let (j, ty) = locate(y);
        let one = S::one();
        let v00 = self.at(i, j);
        let v01 = self.at(i, j + 1);
        let v10 = self.at(i + 1, j);
        let v11 = self.at(i + 1, j + 1);
        (one - tx) * ((one - ty) * v00 + ty * v01) + tx * ((one - ty) * v10 + ty * v11)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_interpolation_between_knots() {
        let t = PiecewiseLinear::new(&[(0.0, 0.0), (0.5, 1.0), (1.0, 3.0)]).unwrap();
        assert_eq!(t.eval(0.25), 0.5);
        assert_eq!(t.eval(0.75), 2.0);
        assert_eq!(t.eval(1.0), 3.0);
        assert_eq!(t.eval(0.0), 0.0);
    }

    #[test]
    fn rejects_tables_not_spanning_unit_interval() {
        assert!(PiecewiseLinear::new(&[(0.1, 0.0), (1.0, 1.0)]).is_err());
        assert!(PiecewiseLinear::new(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)]).is_err());
        assert!(PiecewiseLinear::<f64>::new(&[(0.0, 0.0)]).is_err());
    }

    #[test]
    fn swapped_inverts_increasing_table() {
        let t = PiecewiseLinear::new(&[(0.0, 0.0), (0.5, 0.25), (1.0, 1.0)]).unwrap();
        let inv = t.swapped().unwrap();
        for k in 0..=20 {
            let x = k as f64 / 20.0;
            assert!((inv.eval(t.eval(x)) - x).abs() < 1e-12);
        }
    }

    #[test]
    fn bilinear_reproduces_bilinear_functions() {
        let n = 5;
        let f = |x: f64, y: f64| 0.2 + 0.3 * x + 0.1 * y + 0.4 * x * y;
        let values: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| f(i as f64 / 4.0, j as f64 / 4.0)).collect())
            .collect();
        let g = BilinearGrid::new(values).unwrap();
        for (x, y) in [(0.1, 0.9), (0.33, 0.5), (1.0, 1.0), (0.0, 0.7)] {
            assert!((g.eval(x, y) - f(x, y)).abs() < 1e-12);
        }
    }
}
