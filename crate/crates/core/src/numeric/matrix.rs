//! Small dense matrices over either backend: rank, kernel, and linear solves.
//!
//! Exact matrices are reduced with Gaussian elimination over the rationals.
//! Float matrices go through a complex SVD (nalgebra), with rank decided by a
//! relative cutoff against the largest singular value.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{Scalar, Tolerance};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of [`Matrix::solve`].
#[derive(Debug, Clone)]
pub struct LinearSolution<S> {
    /// A solution (minimum-norm least squares on the float backend). `None`
    /// when an exact system is inconsistent.
    pub x: Option<Vec<S>>,
    /// `|A x - b| / |b|` (0 for exact consistent systems).
    pub residual: f64,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::EmptyMatrix);
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows in {r}x{c} matrix"
            )));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c)?;
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch("ragged columns".into()));
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Appends a column on the right.
    pub fn with_column(&self, col: &[S]) -> Result<Self> {
        if col.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} for {} rows",
                col.len(),
                self.rows
            )));
        }
        let mut out = Matrix::zeros(self.rows, self.cols + 1)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            out.set(r, self.cols, col[r].clone());
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(Scalar::is_finite) {
            Ok(())
        } else {
            Err(Error::NonFinite("matrix entry"))
        }
    }

    /// Numerical rank: exact elimination, or singular values above
    /// `tol.rank_rel * sigma_max`.
    pub fn rank(&self, tol: &Tolerance) -> Result<usize> {
        self.check_finite()?;
        if S::is_exact() {
            Ok(self.rref().1.len())
        } else {
            let sv = self.singular_values();
            Ok(float_rank(&sv, tol))
        }
    }

    /// Basis of the right kernel, each vector scaled so its largest entry is 1.
    pub fn nullspace(&self, tol: &Tolerance) -> Result<Vec<Vec<S>>> {
        self.check_finite()?;
        let mut basis = if S::is_exact() {
            self.exact_nullspace()
        } else {
            self.float_nullspace(tol)
        };
        for v in &mut basis {
            normalize_max_abs(v);
        }
        Ok(basis)
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[S]) -> Result<LinearSolution<S>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side".into()));
        }
        self.check_finite()?;
        let bnorm = b
            .iter()
            .map(Scalar::modulus)
            .fold(0.0, f64::max)
            .max(1e-300);
        if S::is_exact() {
            let aug = self.with_column(b)?;
            let (red, pivots) = aug.rref();
            if pivots.contains(&self.cols) {
                let residual = self
                    .to_float()
                    .float_lstsq_residual(&b.iter().map(Scalar::to_c64).collect::<Vec<_>>())
                    / bnorm;
                return Ok(LinearSolution { x: None, residual });
            }
            let mut x = vec![S::zero(); self.cols];
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = red.get(i, self.cols).clone();
            }
            Ok(LinearSolution {
                x: Some(x),
                residual: 0.0,
            })
        } else {
            let a = self.to_nalgebra();
            let bb = DMatrix::from_iterator(b.len(), 1, b.iter().map(Scalar::to_c64));
            let svd = a.clone().svd(true, true);
            let smax = svd.singular_values.max();
            let x = svd
                .solve(&bb, smax * 1e-12)
                .map_err(|e| Error::Linear(e.to_string()))?;
            let r = &a * &x - &bb;
            let residual = r.iter().map(|z| z.norm()).fold(0.0, f64::max) / bnorm;
            let x: Vec<S> = x.iter().map(|z| S::from_c64(*z)).collect();
            Ok(LinearSolution {
                x: Some(x),
                residual,
            })
        }
    }

    /// Singular values in decreasing order (computed in double precision).
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self
            .to_nalgebra()
            .singular_values()
            .iter()
            .copied()
            .collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        sv
    }

    pub fn to_float(&self) -> Matrix<Complex64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::to_c64).collect(),
        }
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).to_c64())
    }

    /// Reduced row echelon form and the pivot columns. Pivot choice is the
    /// entry of largest modulus in the column (exact comparisons on rationals).
    pub fn rref(&self) -> (Matrix<S>, Vec<usize>) {
        let mut m = self.clone();
        let tol = Tolerance::default();
        let scale = self.max_modulus();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let mut best = row;
            for r in row + 1..m.rows {
                if m.get(r, col).cmp_modulus(m.get(best, col)).is_gt() {
                    best = r;
                }
            }
            if tol.is_negligible(m.get(best, col), scale) {
                continue;
            }
            for c in 0..m.cols {
                m.data.swap(row * m.cols + c, best * m.cols + c);
            }
            let p = m.get(row, col).clone();
            for c in 0..m.cols {
                let v = m.get(row, c).clone() / p.clone();
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_exact_zero() {
                    continue;
                }
                for c in 0..m.cols {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(row, c).clone();
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn exact_nullspace(&self) -> Vec<Vec<S>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -red.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    fn float_nullspace(&self, tol: &Tolerance) -> Vec<Vec<S>> {
        // Pad short-wide matrices with zero rows so the SVD returns a full V.
        let n = self.cols;
        let rows = self.rows.max(n);
        let a = DMatrix::from_fn(rows, n, |r, c| {
            if r < self.rows {
                self.get(r, c).to_c64()
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let svd = a.svd(false, true);
        let v_t = svd.v_t.expect("requested V");
        let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
        let rank = float_rank(&sv, tol);
        let mut order: Vec<usize> = (0..sv.len()).collect();
        order.sort_by(|&i, &j| {
            sv[i]
                .partial_cmp(&sv[j])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        order
            .into_iter()
            .take(n - rank)
            .map(|i| (0..n).map(|c| S::from_c64(v_t[(i, c)].conj())).collect())
            .collect()
    }
}

impl Matrix<Complex64> {
    fn float_lstsq_residual(&self, b: &[Complex64]) -> f64 {
        let a = self.to_nalgebra();
        let bb = DMatrix::from_column_slice(b.len(), 1, b);
        let svd = a.clone().svd(true, true);
        let smax = svd.singular_values.max();
        match svd.solve(&bb, smax * 1e-12) {
            Ok(x) => (&a * &x - &bb).iter().map(|z| z.norm()).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        }
    }
}

fn float_rank(sv: &[f64], tol: &Tolerance) -> usize {
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax <= tol.abs {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol.rank_rel * smax).count()
}

/// Divides by the entry of largest modulus (ties: lowest index). No-op on the
/// zero vector.
pub fn normalize_max_abs<S: Scalar>(v: &mut [S]) {
    let Some(idx) = max_abs_index(v) else { return };
    if v[idx].is_exact_zero() {
        return;
    }
    let p = v[idx].clone();
    for x in v.iter_mut() {
        *x = x.clone() / p.clone();
    }
    v[idx] = S::one();
}

pub fn max_abs_index<S: Scalar>(v: &[S]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, x) in v.iter().enumerate() {
        match best {
            None => best = Some(i),
            Some(b) if x.cmp_modulus(&v[b]).is_gt() => best = Some(i),
            _ => {}
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Exact, Float};

    fn ex(rows: &[&[i64]]) -> Matrix<Exact> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Exact::from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn fl(rows: &[&[f64]]) -> Matrix<Float> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Float::new(x, 0.0)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn ranks_of_small_examples() {
        let tol = Tolerance::default();
        assert_eq!(
            ex(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
                .rank(&tol)
                .unwrap(),
            3
        );
        assert_eq!(ex(&[&[1, 2], &[2, 4]]).rank(&tol).unwrap(), 1);
        assert_eq!(fl(&[&[1.0, 2.0], &[2.0, 4.0]]).rank(&tol).unwrap(), 1);
        // Schwarzenberger M(x), n = 3, x = (1:1:1).
        let m = ex(&[&[1, 0], &[1, 1], &[1, 1], &[0, 1]]);
        assert_eq!(m.rank(&tol).unwrap(), 2);
    }

    #[test]
    fn nullspace_examples() {
        let tol = Tolerance::default();
        assert!(ex(&[&[1, 0], &[0, 1]]).nullspace(&tol).unwrap().is_empty());
        let k = ex(&[&[1, 1]]).nullspace(&tol).unwrap();
        assert_eq!(k, vec![vec![Exact::from_i64(1), Exact::from_i64(-1)]]);
        let k = fl(&[&[1.0, 1.0]]).nullspace(&tol).unwrap();
        assert_eq!(k.len(), 1);
        assert!((k[0][0] + k[0][1]).norm() < 1e-14);
        assert_eq!(ex(&[&[1, 2, 3]]).nullspace(&tol).unwrap().len(), 2);
        assert_eq!(fl(&[&[1.0, 2.0, 3.0]]).nullspace(&tol).unwrap().len(), 2);
    }

    #[test]
    fn normalization_ties_take_lowest_index() {
        let mut v = vec![Exact::from_i64(-2), Exact::from_i64(2), Exact::from_i64(1)];
        normalize_max_abs(&mut v);
        assert_eq!(
            v,
            vec![
                Exact::from_i64(1),
                Exact::from_i64(-1),
                Exact::from_ratio(-1, 2)
            ]
        );
    }

    #[test]
    fn non_finite_entries_are_rejected() {
        let m = fl(&[&[1.0, f64::NAN]]);
        assert!(matches!(
            m.rank(&Tolerance::default()),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn exact_solve_detects_inconsistency() {
        let m = ex(&[&[1, 1], &[2, 2]]);
        let sol = m.solve(&[Exact::from_i64(1), Exact::from_i64(3)]).unwrap();
        assert!(sol.x.is_none());
        assert!(sol.residual > 0.1);
        let sol = m.solve(&[Exact::from_i64(1), Exact::from_i64(2)]).unwrap();
        assert_eq!(sol.x.unwrap(), vec![Exact::from_i64(1), Exact::from_i64(0)]);
    }
}
