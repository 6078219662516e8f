//! Field-generic dense Gauss elimination: reduced row echelon form, kernel
//! bases, determinants, inverses, and linear solves. Exact fields pivot on
//! the first nonzero entry (deterministic output); the float backend pivots
//! on the largest magnitude and thresholds rank decisions at
//! `eps * max(1, row scale)`.

pub mod bareiss;

use std::fmt;

use thiserror::Error;

use crate::scalar::field::Field;
use crate::scalar::rational::Rational;

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    NoSolution,
}

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Column vectors side by side.
    pub fn from_cols(cols: Vec<Vec<F>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
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

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut F {
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out: Matrix<F> = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).add(&a.mul(rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.get(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut result = Matrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base);
            }
            base = base.matmul(&base);
            e >>= 1;
        }
        result
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        let mut acc = F::zero();
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn to_rational(&self) -> Option<Matrix<Rational>>
    where
        F: crate::scalar::field::RealField,
    {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.as_rational()?);
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let row: Vec<String> =
                    (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Result of reduction to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct EchelonResult<F: Field> {
    pub reduced: Matrix<F>,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
    /// original row index that provided each pivot, in pivot order
    pub pivot_rows: Vec<usize>,
}

/// Reduced row echelon form over the entry field.
pub fn rref<F: Field>(m: &Matrix<F>) -> EchelonResult<F> {
    let mut a = m.clone();
    let rows = a.rows();
    let cols = a.cols();
    // row scales for float thresholding, carried through swaps
    let mut scales: Vec<f64> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| a.get(i, j).approx_abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let mut origin: Vec<usize> = (0..rows).collect();
    let mut pivot_columns = Vec::new();
    let mut pivot_rows = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // select pivot row
        let mut pivot = None;
        let mut best_weight = f64::NEG_INFINITY;
        for i in r..rows {
            let e = a.get(i, c);
            if e.is_negligible(scales[i]) {
                continue;
            }
            match e.pivot_weight() {
                None => {
                    pivot = Some(i);
                    break;
                }
                Some(w) => {
                    if w > best_weight {
                        best_weight = w;
                        pivot = Some(i);
                    }
                }
            }
        }
        let Some(p) = pivot else { continue };
        if p != r {
            for j in 0..cols {
                let tmp = a.get(r, j).clone();
                a.set(r, j, a.get(p, j).clone());
                a.set(p, j, tmp);
            }
            scales.swap(r, p);
            origin.swap(r, p);
        }
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        for j in 0..cols {
            let v = a.get(r, j).mul(&inv);
            a.set(r, j, v);
        }
        a.set(r, c, F::one());
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..cols {
                let v = a.get(i, j).sub(&factor.mul(a.get(r, j)));
                a.set(i, j, v);
            }
            a.set(i, c, F::zero());
        }
        pivot_columns.push(c);
        pivot_rows.push(origin[r]);
        r += 1;
    }
    // zero out sub-threshold residue below the last pivot row (float mode)
    for i in r..rows {
        for j in 0..cols {
            if a.get(i, j).is_negligible(scales[i]) {
                a.set(i, j, F::zero());
            }
        }
    }
    EchelonResult {
        reduced: a,
        rank: pivot_columns.len(),
        pivot_columns,
        pivot_rows,
    }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).rank
}

/// Basis of the right kernel; `cols - rank` vectors, deterministic order.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let ech = rref(m);
    let cols = m.cols();
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (k, &c) in ech.pivot_columns.iter().enumerate() {
            v[c] = Some(k);
        }
        v
    };
    let mut basis = Vec::new();
    for j in 0..cols {
        if pivot_set[j].is_some() {
            continue;
        }
        let mut vec = vec![F::zero(); cols];
        vec[j] = F::one();
        for (k, &pc) in ech.pivot_columns.iter().enumerate() {
            vec[pc] = ech.reduced.get(k, j).neg();
        }
        basis.push(vec);
    }
    basis
}

/// Determinant by elimination with division.
pub fn det<F: Field>(m: &Matrix<F>) -> F {
    assert!(m.is_square(), "determinant of non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let scales: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).approx_abs()).fold(0.0, f64::max))
        .collect();
    let mut acc = F::one();
    for c in 0..n {
        let mut pivot = None;
        let mut best = f64::NEG_INFINITY;
        for i in c..n {
            let e = a.get(i, c);
            if e.is_negligible(scales[i]) {
                continue;
            }
            match e.pivot_weight() {
                None => {
                    pivot = Some(i);
                    break;
                }
                Some(w) => {
                    if w > best {
                        best = w;
                        pivot = Some(i);
                    }
                }
            }
        }
        let Some(p) = pivot else { return F::zero() };
        if p != c {
            for j in 0..n {
                let tmp = a.get(c, j).clone();
                a.set(c, j, a.get(p, j).clone());
                a.set(p, j, tmp);
            }
            acc = acc.neg();
        }
        let d = a.get(c, c).clone();
        acc = acc.mul(&d);
        let inv = d.inv().expect("nonzero pivot");
        for i in c + 1..n {
            let factor = a.get(i, c).mul(&inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(i, j).sub(&factor.mul(a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    acc
}

/// Exact inverse; `Err(Singular)` when rank-deficient.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
    assert!(m.is_square(), "inverse of non-square matrix");
    let n = m.rows();
    let aug = m.hstack(&Matrix::identity(n));
    let ech = rref(&aug);
    if ech.rank < n || ech.pivot_columns.iter().take(n).copied().ne(0..n) {
        return Err(LinalgError::Singular);
    }
    Ok(ech.reduced.submatrix(0..n, n..2 * n))
}

/// Solve `M x = b`; `Err(NoSolution)` for inconsistent systems. For
/// underdetermined systems returns the solution with free variables zero.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Result<Vec<F>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "rhs length {} vs {} rows",
            b.len(),
            m.rows()
        )));
    }
    let rhs = Matrix::from_cols(vec![b.to_vec()]);
    let aug = m.hstack(&rhs);
    let ech = rref(&aug);
    let cols = m.cols();
    if ech.pivot_columns.iter().any(|&c| c == cols) {
        return Err(LinalgError::NoSolution);
    }
    let mut x = vec![F::zero(); cols];
    for (k, &c) in ech.pivot_columns.iter().enumerate() {
        x[c] = ech.reduced.get(k, cols).clone();
    }
    Ok(x)
}

/// Solve `M X = B` columnwise.
pub fn solve_matrix<F: Field>(m: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        cols.push(solve(m, &b.col(j))?);
    }
    Ok(Matrix::from_cols(cols))
}

/// Bring a family of vectors into Gauss-Jordan row echelon form: pivots are
/// 1, each pivot column is zero in the other vectors, and the output spans
/// the same subspace. Zero rows are dropped.
pub fn gauss_jordan_echelon_vectors<F: Field>(vectors: &[Vec<F>]) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let ech = rref(&Matrix::from_rows(vectors.to_vec()));
    (0..ech.rank).map(|i| ech.reduced.row(i)).collect()
}
