//! Dense exact matrices, windowed submatrices and the good / very good
//! predicates.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A dense row-major matrix whose entries all live in one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Result<Matrix> {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone())?;
        }
        Ok(m)
    }

    /// Builds a matrix from rows, checking shape and field.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::MixedFields(field, x.field()));
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            field,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Panics on out-of-range indices.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) -> Result<()> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfRange {
                i,
                j,
                size: self.rows.max(self.cols),
            });
        }
        if value.field() != self.field {
            return Err(Error::MixedFields(self.field, value.field()));
        }
        self.data[i * self.cols + j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = acc + a * other.get(k, j);
                    }
                }
                out.data[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(self.field.zero(), |acc, (a, b)| acc.checked_add(&a.checked_mul(b)?))
            })
            .collect()
    }

    /// The block on the given row and column ranges.
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            data.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            field: self.field,
            data,
        }
    }

    /// The window `A[i,j]`: rows `0..=j-i` and columns `i..=j`.
    pub fn window(&self, i: usize, j: usize) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if i > j || j >= self.rows {
            return Err(Error::IndexOutOfRange { i, j, size: self.rows });
        }
        Ok(self.submatrix(0..j - i + 1, i..j + 1))
    }

    /// Determinant by Gaussian elimination over the field. The empty matrix
    /// has determinant 1.
    ///
    /// Panics if the matrix is not square.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return self.field.zero();
            };
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = det * &p;
            let p_inv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] * &p_inv;
                for k in col..n {
                    let sub = &factor * &a[col * n + k];
                    a[r * n + k] = &a[r * n + k] - sub;
                }
            }
        }
        det
    }

    /// Determinant by cofactor expansion along the bottom row. Exponential
    /// cost; kept as an independent check on [`Matrix::det`].
    pub fn det_laplace(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return self.field.one();
        }
        let last = n - 1;
        let mut acc = self.field.zero();
        for j in 0..n {
            let entry = self.get(last, j);
            if entry.is_zero() {
                continue;
            }
            let minor = self.minor(last, j).det_laplace();
            let term = entry * minor;
            acc = if (last + j) % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    /// The matrix with row `i` and column `j` deleted.
    pub fn minor(&self, i: usize, j: usize) -> Matrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            field: self.field,
            data,
        }
    }

    /// Reduced row-echelon form with zero rows dropped. This is the
    /// canonical representative of the row space.
    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<Scalar>> = self.row_vectors();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&k| !a[k][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inv().expect("pivot is nonzero");
            for x in a[r].iter_mut() {
                *x = &*x * &inv;
            }
            for k in 0..rows {
                if k == r || a[k][c].is_zero() {
                    continue;
                }
                let factor = a[k][c].clone();
                for m in c..cols {
                    let sub = &factor * &a[r][m];
                    a[k][m] = &a[k][m] - sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        let out = Matrix {
            rows: r,
            cols,
            field: self.field,
            data: a.into_iter().flatten().collect(),
        };
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().rows
    }

    /// A basis of the right null space `{x : A x = 0}`, one vector per free
    /// column, read off the reduced row-echelon form.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Solves `A x = b` for square nonsingular `A`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * (n + 1) + j] = self.get(i, j).clone();
            }
            if b[i].field() != self.field {
                return Err(Error::MixedFields(self.field, b[i].field()));
            }
            aug.data[i * (n + 1) + n] = b[i].clone();
        }
        let (r, pivots) = aug.rref_with_pivots();
        if !leading_pivots(&pivots, n) {
            return Err(Error::SingularMatrix);
        }
        Ok((0..n).map(|i| r.get(i, n).clone()).collect())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = self.field.one();
        }
        let (r, pivots) = aug.rref_with_pivots();
        if !leading_pivots(&pivots, n) {
            return Err(Error::SingularMatrix);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    /// `(d+1) - 1` for a square `(d+1)×(d+1)` matrix.
    pub fn diameter(&self) -> usize {
        assert!(self.is_square() && self.rows > 0, "diameter of a non-square or empty matrix");
        self.rows - 1
    }

    /// The first `i` (ascending) with `A[i,d]` singular.
    pub fn first_non_good_window(&self) -> Option<(usize, usize)> {
        let d = self.diameter();
        (0..=d)
            .find(|&i| self.window(i, d).expect("in range").det().is_zero())
            .map(|i| (i, d))
    }

    /// The first `(i,j)` in lexicographic order with `A[i,j]` singular.
    pub fn first_singular_window(&self) -> Option<(usize, usize)> {
        let d = self.diameter();
        (0..=d)
            .flat_map(|i| (i..=d).map(move |j| (i, j)))
            .find(|&(i, j)| self.window(i, j).expect("in range").det().is_zero())
    }

    /// Every right-anchored window `A[i,d]` is invertible.
    pub fn is_good(&self) -> bool {
        self.is_square() && self.rows > 0 && self.first_non_good_window().is_none()
    }

    /// Every window `A[i,j]` is invertible.
    pub fn is_very_good(&self) -> bool {
        self.is_square() && self.rows > 0 && self.first_singular_window().is_none()
    }
}

// Pivots are strictly increasing, so the left n×n block has full rank exactly
// when the n-th pivot sits in column n-1.
fn leading_pivots(pivots: &[usize], n: usize) -> bool {
    n == 0 || pivots.get(n - 1) == Some(&(n - 1))
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
