//! Dense matrices over the rational function field.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Bilinear form `u^T M v`.
    pub fn form(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mv = self.apply(v);
        u.iter()
            .zip(&mv)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Row echelon form by Gaussian elimination; returns pivot columns and
    /// the sign of the row permutation.
    fn echelon(&mut self) -> (Vec<usize>, bool) {
        let mut pivots = Vec::new();
        let mut negated = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Prefer the simplest nonzero pivot to keep fractions small.
            let Some(p) = (r..self.rows)
                .filter(|&i| !self[(i, c)].is_zero())
                .min_by_key(|&i| (self[(i, c)].degree(), i))
            else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
                negated = !negated;
            }
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for i in r + 1..self.rows {
                if self[(i, c)].is_zero() {
                    continue;
                }
                let factor = &self[(i, c)] * &inv;
                for j in c..self.cols {
                    let delta = &factor * &self[(r, j)];
                    if !delta.is_zero() {
                        self[(i, j)] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, negated)
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().0.len()
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let (pivots, negated) = m.echelon();
        if pivots.len() < self.rows {
            return Ok(Scalar::zero());
        }
        let mut d = Scalar::one();
        for i in 0..self.rows {
            d = &d * &m[(i, i)];
        }
        Ok(if negated { -d } else { d })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (pivots, _) = aug.echelon();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::Degenerate("matrix is singular".into()));
        }
        for i in (0..n).rev() {
            let inv = aug[(i, i)].inv()?;
            for j in 0..2 * n {
                if !aug[(i, j)].is_zero() {
                    aug[(i, j)] = &aug[(i, j)] * &inv;
                }
            }
            for k in 0..i {
                if aug[(k, i)].is_zero() {
                    continue;
                }
                let factor = aug[(k, i)].clone();
                for j in 0..2 * n {
                    let delta = &factor * &aug[(i, j)];
                    if !delta.is_zero() {
                        aug[(k, j)] -= delta;
                    }
                }
            }
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(out)
    }

    /// Coefficients `c` with `sum_i c_i * row_i = v`, if `v` lies in the row span.
    pub fn solve_in_row_span(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.cols, "vector length");
        // Columns of the transposed system are the rows of self.
        let t = self.transpose();
        let mut aug = Matrix::zeros(t.rows, t.cols + 1);
        for i in 0..t.rows {
            for j in 0..t.cols {
                aug[(i, j)] = t[(i, j)].clone();
            }
            aug[(i, t.cols)] = v[i].clone();
        }
        let (pivots, _) = aug.echelon();
        if pivots.last() == Some(&t.cols) {
            return None;
        }
        let mut sol = vec![Scalar::zero(); t.cols];
        for (r, &c) in pivots.iter().enumerate().rev() {
            let mut acc = aug[(r, t.cols)].clone();
            for j in c + 1..t.cols {
                if !aug[(r, j)].is_zero() && !sol[j].is_zero() {
                    acc -= &aug[(r, j)] * &sol[j];
                }
            }
            sol[c] = &acc / &aug[(r, c)];
        }
        Some(sol)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}
