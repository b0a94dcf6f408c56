//! Dense linear-algebra kernel.
//!
//! Matrices are stored column-major so that a sample (a column of the data
//! matrix) is a contiguous slice. Every public constructor rejects NaN and
//! infinite entries; all operations allocate their outputs and leave their
//! inputs untouched.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

fn check_finite(data: &[f64], what: &str) -> Result<()> {
    match data.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFinite(format!("{what}[{i}]"))),
        None => Ok(()),
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Dense real vector with finite entries.
#[derive(Clone, PartialEq)]
pub struct Vector {
    data: Vec<f64>,
}

impl Vector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        check_finite(&data, "vector")?;
        Ok(Self { data })
    }

    pub fn from_slice(data: &[f64]) -> Result<Self> {
        Self::new(data.to_vec())
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            data: vec![0.0; len],
        }
    }

    /// Unit vector `e_index` of length `len`.
    pub fn basis(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.data[index] = 1.0;
        v
    }

    pub(crate) fn from_vec_unchecked(data: Vec<f64>) -> Self {
        Self { data }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.data.iter()
    }

    pub fn dot(&self, other: &Vector) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "dot of vectors with lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(dot(&self.data, &other.data))
    }

    /// Euclidean norm.
    pub fn norm2(&self) -> f64 {
        norm2(self)
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Vector::from_vec_unchecked(self.data.iter().map(|v| v * factor).collect())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Vector, f: impl Fn(f64, f64) -> f64) -> Result<Vector> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "elementwise op on vectors with lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Vector::from_vec_unchecked(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.data).finish()
    }
}

/// Euclidean norm of `v`. Zero exactly for the zero vector.
pub fn norm2(v: &Vector) -> f64 {
    v.data.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Dense column-major matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    /// Builds a matrix from column-major `data`.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows.saturating_mul(cols),
                data.len()
            )));
        }
        check_finite(&data, "matrix")?;
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_vec_unchecked(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(rows * cols, data.len());
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from a list of rows, which is how literals read naturally.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    /// Builds a matrix from columns of equal length.
    pub fn from_columns<C: AsRef<[f64]>>(columns: &[C]) -> Result<Self> {
        let r = columns.first().map_or(0, |c| c.as_ref().len());
        let mut data = Vec::with_capacity(r * columns.len());
        for (j, col) in columns.iter().enumerate() {
            let col = col.as_ref();
            if col.len() != r {
                return Err(Error::Dimension(format!(
                    "column {j} has {} entries, expected {r}",
                    col.len()
                )));
            }
            data.extend_from_slice(col);
        }
        Self::new(r, columns.len(), data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    /// Column-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[j * self.rows + i] = value;
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub(crate) fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_vec_unchecked(self.col(j).to_vec())
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.rows.max(1)).take(self.cols)
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for (i, &v) in self.col(j).iter().enumerate() {
                out.data[i * self.cols + j] = v;
            }
        }
        out
    }

    /// Copies the listed columns, in the listed order.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Mat> {
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for &j in indices {
            if j >= self.cols {
                return Err(Error::Dimension(format!(
                    "column index {j} out of range for {} columns",
                    self.cols
                )));
            }
            data.extend_from_slice(self.col(j));
        }
        Ok(Mat::from_vec_unchecked(self.rows, indices.len(), data))
    }

    pub fn matmul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            let dst = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for (k, &b) in rhs.col(j).iter().enumerate() {
                if b != 0.0 {
                    axpy(b, self.col(k), dst);
                }
            }
        }
        Ok(out)
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} matrix by vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![0.0; self.rows];
        for (j, &b) in v.iter().enumerate() {
            if b != 0.0 {
                axpy(b, self.col(j), &mut out);
            }
        }
        Ok(Vector::from_vec_unchecked(out))
    }

    /// `selfᵀ · v`, computed column by column without forming the transpose.
    pub fn tr_mul_vec(&self, v: &Vector) -> Result<Vector> {
        if self.rows != v.len() {
            return Err(Error::Dimension(format!(
                "cannot multiply transpose of {}x{} matrix by vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(Vector::from_vec_unchecked(
            self.columns().map(|c| dot(c, v.as_slice())).collect(),
        ))
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, factor: f64, other: &Mat) -> Result<Mat> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        axpy(factor, &other.data, &mut out.data);
        Ok(out)
    }

    pub fn scaled(&self, factor: f64) -> Mat {
        Mat::from_vec_unchecked(
            self.rows,
            self.cols,
            self.data.iter().map(|v| v * factor).collect(),
        )
    }

    /// `self + shift · I` for square matrices.
    pub fn add_diagonal(&self, shift: f64) -> Result<Mat> {
        self.require_square("diagonal shift")?;
        let mut out = self.clone();
        for i in 0..self.rows {
            out.data[i * self.rows + i] += shift;
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Mat) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!(
                "cannot compare {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// True when the matrix equals its transpose bit for bit.
    pub fn is_exactly_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|j| (j + 1..self.rows).all(|i| self.get(i, j) == self.get(j, i)))
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[j * self.rows + i]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<f64> = (0..self.cols).map(|j| self.get(i, j)).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Gram matrix `XᵀX`. Only the upper triangle is computed; the lower one is
/// mirrored, so the result is exactly symmetric.
pub fn gram(x: &Mat) -> Result<Mat> {
    if x.is_empty() {
        return Err(Error::Dimension("gram of an empty matrix".into()));
    }
    let n = x.cols;
    let mut g = Mat::zeros(n, n);
    for q in 0..n {
        let cq = x.col(q);
        for p in 0..=q {
            let v = dot(x.col(p), cq);
            g.data[q * n + p] = v;
            g.data[p * n + q] = v;
        }
    }
    Ok(g)
}

/// Lower-triangular Cholesky factor `A = L·Lᵀ` of a symmetric positive
/// definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: Mat,
}

impl Cholesky {
    /// Factors `a`, reading only its lower triangle.
    pub fn factor(a: &Mat) -> Result<Self> {
        a.require_square("Cholesky factorization")?;
        let n = a.rows;
        let mut l = Mat::zeros(n, n);
        let mut work = vec![0.0; n];
        for j in 0..n {
            let w = &mut work[j..];
            w.copy_from_slice(&a.col(j)[j..]);
            for k in 0..j {
                let ljk = l.data[k * n + j];
                if ljk != 0.0 {
                    axpy(-ljk, &l.col(k)[j..], w);
                }
            }
            let pivot = w[0];
            if !(pivot > 0.0) || !pivot.is_finite() {
                return Err(Error::Singular { pivot: j });
            }
            let d = pivot.sqrt();
            let col = &mut l.col_mut(j)[j..];
            col[0] = d;
            for (dst, src) in col[1..].iter_mut().zip(&w[1..]) {
                *dst = src / d;
            }
        }
        Ok(Self { l })
    }

    pub fn factor_matrix(&self) -> &Mat {
        &self.l
    }

    pub fn dim(&self) -> usize {
        self.l.rows
    }

    fn solve_in_place(&self, x: &mut [f64]) {
        let n = self.l.rows;
        // L z = b
        for j in 0..n {
            let col = self.l.col(j);
            x[j] /= col[j];
            let xj = x[j];
            if xj != 0.0 {
                axpy(-xj, &col[j + 1..], &mut x[j + 1..]);
            }
        }
        // Lᵀ x = z
        for j in (0..n).rev() {
            let col = self.l.col(j);
            let s = dot(&col[j + 1..], &x[j + 1..]);
            x[j] = (x[j] - s) / col[j];
        }
    }

    pub fn solve_vec(&self, b: &Vector) -> Result<Vector> {
        if b.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for a {}x{} system",
                b.len(),
                self.dim(),
                self.dim()
            )));
        }
        let mut x = b.as_slice().to_vec();
        self.solve_in_place(&mut x);
        Ok(Vector::from_vec_unchecked(x))
    }

    pub fn solve_mat(&self, b: &Mat) -> Result<Mat> {
        if b.rows != self.dim() {
            return Err(Error::Dimension(format!(
                "right-hand side with {} rows for a {}x{} system",
                b.rows,
                self.dim(),
                self.dim()
            )));
        }
        let mut x = b.clone();
        for j in 0..x.cols {
            self.solve_in_place(x.col_mut(j));
        }
        Ok(x)
    }
}

/// Solves `A·S = B` for symmetric positive definite `A` by Cholesky
/// factorization. The inverse of `A` is never formed.
pub fn spd_solve(a: &Mat, b: &Mat) -> Result<Mat> {
    a.require_square("spd_solve")?;
    let scale = a.max_abs();
    for j in 0..a.cols {
        for i in j + 1..a.rows {
            if (a.get(i, j) - a.get(j, i)).abs() > 1e-12 * scale {
                return Err(Error::Parameter(format!(
                    "spd_solve needs a symmetric matrix; entries ({i},{j}) and ({j},{i}) differ"
                )));
            }
        }
    }
    Cholesky::factor(a)?.solve_mat(b)
}
