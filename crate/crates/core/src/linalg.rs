//! Dense exact linear algebra.
//!
//! Matrices are small here (cosheaf blocks, induced maps, witnesses), so a
//! row-major dense layout is used. Elimination always picks the leftmost
//! column with a nonzero entry and, within it, the topmost available row, so
//! every basis computed downstream is reproducible.

use std::fmt;

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("target vector is not in the span of the generators")]
    NotInSpan,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Build from row vectors. All rows must share a length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Build a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&v| F::from_i64(v)).collect(),
        }
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

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        let mut out = Self::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix<F> {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Matrix<F>) -> Matrix<F> {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                out.set(self.rows + r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &F) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.data[idx].is_zero() {
                self.data[idx] = self.data[idx].mul(s);
            }
        }
    }

    /// `row[target] -= factor * row[source]`
    fn eliminate_row(&mut self, target: usize, source: usize, factor: &F) {
        for c in 0..self.cols {
            let s = self.data[source * self.cols + c].clone();
            if !s.is_zero() {
                self.data[target * self.cols + c].sub_mul_assign(factor, &s);
            }
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.data[r * self.cols..(r + 1) * self.cols]
                .iter()
                .map(|v| format!("{v:?}"))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone)]
pub struct RowReduction<F> {
    /// Reduced row-echelon form of the input.
    pub reduced: Matrix<F>,
    /// Invertible `rows x rows` matrix with `basis_change * m == reduced`.
    pub basis_change: Matrix<F>,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivot_columns: Vec<usize>,
}

pub fn row_reduce<F: Field>(m: &Matrix<F>) -> RowReduction<F> {
    let rows = m.rows();
    let mut work = m.hstack(&Matrix::identity(rows));
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..m.cols() {
        if next_row == rows {
            break;
        }
        let Some(p) = (next_row..rows).find(|&r| !work.get(r, col).is_zero()) else {
            continue;
        };
        work.swap_rows(next_row, p);
        let inv = work.get(next_row, col).inv();
        work.scale_row(next_row, &inv);
        for r in 0..rows {
            if r != next_row {
                let factor = work.get(r, col).clone();
                if !factor.is_zero() {
                    work.eliminate_row(r, next_row, &factor);
                }
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    let left: Vec<usize> = (0..m.cols()).collect();
    let right: Vec<usize> = (m.cols()..m.cols() + rows).collect();
    RowReduction {
        reduced: work.select_columns(&left),
        basis_change: work.select_columns(&right),
        pivot_columns: pivots,
    }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    row_reduce(m).pivot_columns.len()
}

/// Columns span the kernel; one column per free variable, in column order.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let RowReduction {
        reduced,
        pivot_columns,
        ..
    } = row_reduce(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivot_columns.contains(c)).collect();
    let mut basis = Matrix::zeros(n, free.len());
    for (j, &f) in free.iter().enumerate() {
        basis.set(f, j, F::one());
        for (r, &p) in pivot_columns.iter().enumerate() {
            let v = reduced.get(r, f);
            if !v.is_zero() {
                basis.set(p, j, v.neg());
            }
        }
    }
    basis
}

/// A reusable solver for `generators * x = target`.
///
/// Free variables are set to zero, so the returned coefficients depend
/// linearly on the target.
#[derive(Debug, Clone)]
pub struct SpanSolver<F> {
    reduction: RowReduction<F>,
    cols: usize,
}

impl<F: Field> SpanSolver<F> {
    pub fn new(generators: &Matrix<F>) -> Self {
        SpanSolver {
            reduction: row_reduce(generators),
            cols: generators.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.reduction.pivot_columns.len()
    }

    pub fn solve(&self, target: &[F]) -> Result<Vec<F>, LinalgError> {
        let bc = &self.reduction.basis_change;
        if target.len() != bc.cols() {
            return Err(LinalgError::ShapeMismatch(format!(
                "target of length {} for {} rows",
                target.len(),
                bc.cols()
            )));
        }
        let transformed = bc.mul_vec(target);
        let rank = self.rank();
        if transformed[rank..].iter().any(|v| !v.is_zero()) {
            return Err(LinalgError::NotInSpan);
        }
        let mut coeffs = vec![F::zero(); self.cols];
        for (r, &p) in self.reduction.pivot_columns.iter().enumerate() {
            coeffs[p] = transformed[r].clone();
        }
        Ok(coeffs)
    }
}

pub fn solve_in_span<F: Field>(
    generators: &Matrix<F>,
    target: &[F],
) -> Result<Vec<F>, LinalgError> {
    SpanSolver::new(generators).solve(target)
}

/// A basis of `ambient / span(subspace)`.
#[derive(Debug, Clone)]
pub struct Cokernel<F> {
    /// `ambient x q` standard basis vectors whose classes form a basis of the quotient.
    pub representatives: Matrix<F>,
    /// `q x ambient` map sending a vector to its quotient coordinates.
    pub projection: Matrix<F>,
}

impl<F: Field> Cokernel<F> {
    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }
}

pub fn cokernel_basis<F: Field>(subspace: &Matrix<F>, ambient_dim: usize) -> Cokernel<F> {
    assert_eq!(
        subspace.rows(),
        ambient_dim,
        "subspace lives in the wrong ambient space"
    );
    let k = subspace.cols();
    let augmented = subspace.hstack(&Matrix::identity(ambient_dim));
    let pivots = row_reduce(&augmented).pivot_columns;
    let span_cols: Vec<usize> = pivots.iter().copied().filter(|&p| p < k).collect();
    let rep_cols: Vec<usize> = pivots.iter().filter(|&&p| p >= k).map(|&p| p - k).collect();
    let identity = Matrix::identity(ambient_dim);
    let representatives = identity.select_columns(&rep_cols);
    // [span | reps] is a square invertible matrix; its inverse's trailing rows
    // give quotient coordinates.
    let full = subspace.select_columns(&span_cols).hstack(&representatives);
    let inv = inverse(&full).expect("completion of a column space is invertible");
    let tail: Vec<usize> = (span_cols.len()..ambient_dim).collect();
    Cokernel {
        projection: inv.select_rows(&tail),
        representatives,
    }
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
    if m.rows() != m.cols() {
        return Err(LinalgError::ShapeMismatch(format!(
            "inverse of non-square {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let r = row_reduce(m);
    if r.pivot_columns.len() != m.rows() {
        return Err(LinalgError::Singular);
    }
    Ok(r.basis_change)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Rational};

    fn q(rows: usize, cols: usize, e: &[i64]) -> Matrix<Rational> {
        Matrix::from_i64(rows, cols, e)
    }

    fn g(rows: usize, cols: usize, e: &[i64]) -> Matrix<Gf2> {
        Matrix::from_i64(rows, cols, e)
    }

    #[test]
    fn row_reduce_examples() {
        let id = g(2, 2, &[1, 0, 0, 1]);
        let r = row_reduce(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivot_columns, vec![0, 1]);

        let ones = g(2, 2, &[1, 1, 1, 1]);
        let r = row_reduce(&ones);
        assert_eq!(r.reduced, g(2, 2, &[1, 1, 0, 0]));
        assert_eq!(r.pivot_columns, vec![0]);

        let prop = q(2, 2, &[2, 4, 1, 2]);
        let r = row_reduce(&prop);
        assert_eq!(r.reduced, q(2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.pivot_columns, vec![0]);
        assert_eq!(r.basis_change.mul(&prop).unwrap(), r.reduced);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&g(3, 3, &[0; 9])), 0);
        assert_eq!(rank(&Matrix::<Rational>::identity(4)), 4);
        assert_eq!(rank(&g(2, 2, &[1, 1, 1, 1])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::<Gf2>::identity(3)).cols(), 0);
        assert_eq!(kernel_basis(&g(2, 2, &[0; 4])).cols(), 2);
        let k = kernel_basis(&g(1, 2, &[1, 1]));
        assert_eq!(k, g(2, 1, &[1, 1]));
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::<Rational>::identity(3);
        let t: Vec<Rational> = [3, -1, 7].iter().map(|&v| Rational::from_i64(v)).collect();
        assert_eq!(solve_in_span(&id, &t).unwrap(), t);

        let col = g(2, 1, &[1, 1]);
        assert_eq!(
            solve_in_span(&col, &[Gf2::ONE, Gf2::ZERO]),
            Err(LinalgError::NotInSpan)
        );

        // generator columns (1,0) and (1,1)
        let gens = g(2, 2, &[1, 1, 0, 1]);
        let x = solve_in_span(&gens, &[Gf2::ZERO, Gf2::ONE]).unwrap();
        assert_eq!(x, vec![Gf2::ONE, Gf2::ONE]);
        assert_eq!(gens.mul_vec(&x), vec![Gf2::ZERO, Gf2::ONE]);
    }

    #[test]
    fn cokernel_examples() {
        let full = Matrix::<Gf2>::identity(2);
        assert_eq!(cokernel_basis(&full, 2).dim(), 0);

        let zero = Matrix::<Rational>::zeros(3, 0);
        let c = cokernel_basis(&zero, 3);
        assert_eq!(c.dim(), 3);
        assert_eq!(c.projection, Matrix::identity(3));

        let diag = g(2, 1, &[1, 1]);
        let c = cokernel_basis(&diag, 2);
        assert_eq!(c.dim(), 1);
        assert!(c.projection.mul(&diag).unwrap().is_zero());
    }

    #[test]
    fn cokernel_projection_over_q() {
        let s = q(3, 2, &[1, 0, 2, 1, 0, 1]);
        let c = cokernel_basis(&s, 3);
        assert_eq!(c.dim(), 1);
        assert!(c.projection.mul(&s).unwrap().is_zero());
        assert_eq!(rank(&c.projection), 1);
        // projection of a representative is its unit coordinate
        assert_eq!(
            c.projection.mul(&c.representatives).unwrap(),
            Matrix::identity(1)
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let m = q(2, 2, &[2, 1, 1, 1]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(inverse(&q(2, 2, &[1, 2, 2, 4])), Err(LinalgError::Singular));
    }
}
