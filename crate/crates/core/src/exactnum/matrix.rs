//! Dense exact matrices.
//!
//! Ring-level operations (products, powers, characteristic polynomial) work
//! over any `Ring`; elimination-based ones (rank, kernel, subspaces) need a
//! `Field`.

use std::fmt;

use num_traits::Zero;

use super::field::{sign, Field, Rational, Ring};
use super::poly::SparsePoly;
use super::ExactError;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    /// Builds from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    /// Builds from a list of equal-length rows.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<R>]) -> Result<Self, ExactError> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|col| col.len() != r) {
            return Err(ExactError::Dimension("ragged columns".into()));
        }
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn diagonal(entries: &[R]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: R) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entrywise map into another ring.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `self^k` for square matrices.
    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Coefficients of `det(xI − M)`, leading coefficient first, by the
    /// division-free Berkowitz algorithm.
    pub fn char_poly_coeffs(&self) -> Result<Vec<R>, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut vect = vec![R::one()];
        for r in 0..n {
            // Border the leading r×r block S with column C, row Rw and corner a.
            let a = self.get(r, r).clone();
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(R::one());
            toeplitz.push(-a);
            // powers: S^k C for k = 0..r-1
            let mut sc: Vec<R> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let mut dot = R::zero();
                for (j, x) in sc.iter().enumerate() {
                    dot = dot + self.get(r, j).clone() * x.clone();
                }
                toeplitz.push(-dot);
                sc = (0..r)
                    .map(|i| {
                        let mut acc = R::zero();
                        for (j, x) in sc.iter().enumerate() {
                            acc = acc + self.get(i, j).clone() * x.clone();
                        }
                        acc
                    })
                    .collect();
            }
            let mut next = vec![R::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = R::zero();
                for (j, v) in vect.iter().enumerate() {
                    if i >= j {
                        acc = acc + toeplitz[i - j].clone() * v.clone();
                    }
                }
                *slot = acc;
            }
            vect = next;
        }
        Ok(vect)
    }

    /// Characteristic polynomial `det(xI − M)` as a univariate polynomial.
    pub fn char_poly(&self) -> Result<SparsePoly<R>, ExactError> {
        let mut c = self.char_poly_coeffs()?;
        c.reverse();
        Ok(SparsePoly::from_univariate(&c))
    }
}

impl<F: Field> Matrix<F> {
    /// Fraction-free (Bareiss) row echelon form and its pivot columns.
    pub fn echelon(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let piv = m.get(r, c).clone();
            let prev_inv = prev.inv().expect("nonzero previous pivot");
            for i in r + 1..m.rows {
                let f = m.get(i, c).clone();
                for j in c + 1..m.cols {
                    let v = (piv.clone() * m.get(i, j).clone() - f.clone() * m.get(r, j).clone())
                        * prev_inv.clone();
                    m.set(i, j, v);
                }
                m.set(i, c, F::zero());
            }
            // Each update is a nonzero multiple of the plain elimination step.
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        for i in r..m.rows {
            for j in 0..m.cols {
                m.set(i, j, F::zero());
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (u, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![F::zero(); self.cols];
                x[f] = F::one();
                for (k, &pc) in pivots.iter().enumerate().rev() {
                    let mut acc = F::zero();
                    for (j, xj) in x.iter().enumerate().skip(pc + 1) {
                        if !xj.is_zero() {
                            acc = acc + u.get(k, j).clone() * xj.clone();
                        }
                    }
                    let inv = u.get(k, pc).inv().expect("pivot is nonzero");
                    x[pc] = -(acc * inv);
                }
                x
            })
            .collect()
    }

    /// Determinant via elimination.
    pub fn det(&self) -> Result<F, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        let c = self.char_poly_coeffs()?;
        let n = self.rows;
        let last = c[n].clone();
        Ok(if n.is_multiple_of(2) { last } else { -last })
    }

    /// Inverse, or `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (e, piv) = aug.echelon();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let rref = reduce_echelon(&e, &piv);
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, rref.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Turns an echelon form into reduced row echelon form.
fn reduce_echelon<F: Field>(e: &Matrix<F>, pivots: &[usize]) -> Matrix<F> {
    let mut m = e.clone();
    for (k, &pc) in pivots.iter().enumerate() {
        let inv = m.get(k, pc).inv().expect("pivot is nonzero");
        for j in 0..m.cols {
            let v = m.get(k, j).clone() * inv.clone();
            m.set(k, j, v);
        }
    }
    for (k, &pc) in pivots.iter().enumerate().rev() {
        for i in 0..k {
            let f = m.get(i, pc).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..m.cols {
                let v = m.get(i, j).clone() - f.clone() * m.get(k, j).clone();
                m.set(i, j, v);
            }
        }
    }
    m
}

/// Reduced row echelon form.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let (e, p) = m.echelon();
    (reduce_echelon(&e, &p), p)
}

/// Canonical basis (nonzero RREF rows) of the span of `vectors`.
pub fn span_basis<F: Field>(vectors: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec()).expect("equal-length vectors");
    assert_eq!(m.cols(), dim, "vector length mismatch");
    let (r, p) = rref(&m);
    (0..p.len()).map(|i| r.row(i)).collect()
}

/// Basis of `U + V`.
pub fn subspace_sum<F: Field>(u: &[Vec<F>], v: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    let all: Vec<Vec<F>> = u.iter().chain(v).cloned().collect();
    span_basis(&all, dim)
}

/// Basis of `U ∩ V`.
pub fn subspace_intersection<F: Field>(u: &[Vec<F>], v: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    let u = span_basis(u, dim);
    let v = span_basis(v, dim);
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    // Solve Σ a_i u_i − Σ b_j v_j = 0 and map the solutions back through U.
    let mut cols: Vec<Vec<F>> = u.clone();
    cols.extend(v.iter().map(|x| x.iter().map(|c| -c.clone()).collect()));
    let m = Matrix::from_cols(&cols).expect("consistent dimensions");
    let sols = m.kernel_basis();
    let vecs: Vec<Vec<F>> = sols
        .iter()
        .map(|s| {
            let mut x = vec![F::zero(); dim];
            for (a, ui) in s.iter().zip(&u) {
                for (xk, uk) in x.iter_mut().zip(ui) {
                    *xk = xk.clone() + a.clone() * uk.clone();
                }
            }
            x
        })
        .collect();
    span_basis(&vecs, dim)
}

/// True iff `x` lies in the span of `basis`.
pub fn in_span<F: Field>(basis: &[Vec<F>], x: &[F], dim: usize) -> bool {
    let mut all = basis.to_vec();
    let before = span_basis(&all, dim).len();
    all.push(x.to_vec());
    span_basis(&all, dim).len() == before
}

/// Basis of the column space of `m`.
pub fn image_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let cols: Vec<Vec<F>> = (0..m.cols()).map(|j| m.col(j)).collect();
    span_basis(&cols, m.rows())
}

/// Inertia `(n_pos, n_neg, n_zero)` of a symmetric rational matrix, read off
/// the characteristic polynomial by Descartes' rule (exact since all roots
/// are real).
pub fn signature(m: &Matrix<Rational>) -> Result<(usize, usize, usize), ExactError> {
    if !m.is_square() {
        return Err(ExactError::NotSquare(m.rows(), m.cols()));
    }
    if !m.is_symmetric() {
        return Err(ExactError::NotSymmetric);
    }
    let c = m.char_poly_coeffs()?; // leading first
    let n = m.rows();
    let mut zeros = 0;
    while zeros < n && c[n - zeros].is_zero() {
        zeros += 1;
    }
    let trimmed = &c[..=n - zeros];
    let pos = sign_changes(trimmed.iter().map(sign));
    // p(-x): coefficient of x^k picks up (-1)^k; index i has degree n - zeros - i.
    let top = n - zeros;
    let neg = sign_changes(
        trimmed
            .iter()
            .enumerate()
            .map(|(i, x)| if (top - i) % 2 == 1 { -sign(x) } else { sign(x) }),
    );
    Ok((pos, neg, zeros))
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rational matrix from integer rows.
pub fn int_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| super::field::q(x)).collect())
            .collect(),
    )
    .expect("rectangular integer data")
}
