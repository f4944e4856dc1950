//! Sampled surfaces `(x, y, value)` on a uniform grid, written as CSV for
//! plotting and readable back as table connectives.

use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::connectives::BinaryConnective;
use crate::error::{Error, Result};
use crate::interp::BilinearGrid;
use crate::properties::{uniform_grid, BinaryOperator};
use crate::scalar::Scalar;

pub const CSV_HEADER: [&str; 3] = ["x", "y", "value"];

/// `n²` rows in row-major order: `x` is the slow index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceGrid<S> {
    pub n: usize,
    pub rows: Vec<[S; 3]>,
}

impl<S: Scalar> SurfaceGrid<S> {
    pub fn sample<F: BinaryOperator<S> + ?Sized>(f: &F, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("surface resolution must be at least 2, got {n}")));
        }
        let grid = uniform_grid::<S>(n);
        let rows = grid.iter().flat_map(|&x| grid.iter().map(move |&y| [x, y, f.apply(x, y)])).collect();
        Ok(SurfaceGrid { n, rows })
    }

    pub fn value(&self, i: usize, j: usize) -> S {
        self.rows[i * self.n + j][2]
    }

    pub fn to_writer<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(CSV_HEADER)?;
        for r in &self.rows {
            out.write_record(r.iter().map(|v| format!("{:.16e}", v.as_f64())))?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        self.to_writer(std::io::BufWriter::new(file))
    }

    /// Parses a surface; the row count must be a perfect square and the
    /// coordinates must sit on the uniform grid in row-major order.
    pub fn from_reader<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let header = rdr.headers()?.clone();
        if header.iter().map(str::trim).ne(CSV_HEADER) {
            return Err(Error::InvalidTable(format!("expected header x,y,value, got {:?}", header)));
        }
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            if rec.len() != 3 {
                return Err(Error::InvalidTable(format!("row {} has {} fields", rows.len() + 1, rec.len())));
            }
            let mut row = [S::zero(); 3];
            for (k, field) in rec.iter().enumerate() {
                let v: f64 = field
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidTable(format!("row {}: cannot parse {field:?}", rows.len() + 1)))?;
                row[k] = S::lit(v);
            }
            rows.push(row);
        }
        let n = (rows.len() as f64).sqrt().round() as usize;
        if n < 2 || n * n != rows.len() {
            return Err(Error::InvalidTable(format!("{} rows is not n² for any n >= 2", rows.len())));
        }
        let grid = uniform_grid::<S>(n);
        let slack = S::lit(1e-12);
        for (k, r) in rows.iter().enumerate() {
            let (x, y) = (grid[k / n], grid[k % n]);
            if (r[0] - x).abs() > slack || (r[1] - y).abs() > slack {
                return Err(Error::InvalidTable(format!("row {} is off the grid: ({}, {})", k + 1, r[0], r[1])));
            }
        }
        Ok(SurfaceGrid { n, rows })
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_reader(std::io::BufReader::new(file))
    }

    pub fn to_grid(&self) -> Result<BilinearGrid<S>> {
        let values = (0..self.n).map(|i| (0..self.n).map(|j| self.value(i, j)).collect()).collect();
        BilinearGrid::new(values)
    }

    /// Bilinear interpolation of the sampled values.
    pub fn to_connective(&self) -> Result<BinaryConnective<S>> {
        Ok(BinaryConnective::table(self.to_grid()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectives::BasicTNorm;
    use crate::implications::ImplicationCandidate;

    #[test]
    fn row_count_and_layout() {
        let s = SurfaceGrid::sample(&ImplicationCandidate::<f64>::yager_residual(2.0).unwrap(), 101).unwrap();
        assert_eq!(s.rows.len(), 10201);
        assert_eq!(s.rows[1][..2], [0.0, 0.01]);
        assert_eq!(s.rows[101][..2], [0.01, 0.0]);
    }

    #[test]
    fn csv_round_trip_is_exact_for_sampled_values() {
        let t = BinaryConnective::<f64>::basic(BasicTNorm::Product);
        let s = SurfaceGrid::sample(&t, 11).unwrap();
        let mut buf = Vec::new();
        s.to_writer(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,y,value\n"));
        let back = SurfaceGrid::<f64>::from_reader(&buf[..]).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn table_reproduces_lipschitz_connective() {
        let n = 21;
        let t = BinaryConnective::<f64>::basic(BasicTNorm::Lukasiewicz);
        let table = SurfaceGrid::sample(&t, n).unwrap().to_connective().unwrap();
        let bound = 2.0 / (n as f64 - 1.0);
        for i in 0..=200 {
            for j in 0..=200 {
                let (x, y) = (i as f64 / 200.0, j as f64 / 200.0);
                assert!((table.eval(x, y) - t.eval(x, y)).abs() <= bound);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SurfaceGrid::sample(&ImplicationCandidate::<f64>::lukasiewicz(), 1).is_err());
        assert!(SurfaceGrid::<f64>::from_reader("a,b,c\n".as_bytes()).is_err());
        assert!(SurfaceGrid::<f64>::from_reader("x,y,value\n0,0,1\n0,1,1\n1,0,0\n".as_bytes()).is_err());
        assert!(SurfaceGrid::<f64>::from_reader("x,y,value\n0,0,1\n0,0.5,1\n1,0,0\n1,1,1\n".as_bytes()).is_err());
    }
}
