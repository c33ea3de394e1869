//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are plain `Vec<Scalar>` coordinate lists. A [`Subspace`] always
//! stores its basis in reduced row-echelon form, so two subspaces are equal
//! iff their stored bases are equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Scalar>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul_vec(&self, field: &Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| dot(field, self.row(r), v))
            .collect()
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b != 0 {
                        let cur = out.get(r, c);
                        out.set(r, c, field.add(cur, field.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Applies a scalar map to every entry.
    pub fn map(&self, f: impl Fn(Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

pub fn dot(field: &Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| {
        if x == 0 || y == 0 {
            acc
        } else {
            field.add(acc, field.mul(x, y))
        }
    })
}

/// `y += c * x`
pub fn axpy(field: &Field, y: &mut [Scalar], c: Scalar, x: &[Scalar]) {
    if c == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = field.add(*yi, field.mul(c, xi));
        }
    }
}

pub fn scale(field: &Field, c: Scalar, x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|&v| field.mul(c, v)).collect()
}

pub fn sub_vec(field: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn add_vec(field: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Reduced row-echelon form; returns the nonzero rows and the rank.
/// Pivots are chosen as the first nonzero entry in column order.
pub fn rref(field: &Field, m: &Matrix) -> (Matrix, usize) {
    let (r, pivots) = rref_with_pivots(field, m);
    (r, pivots.len())
}

fn rref_with_pivots(field: &Field, m: &Matrix) -> (Matrix, Vec<usize>) {
    let cols = m.cols;
    let mut rows: Vec<Vec<Scalar>> = m.row_vecs();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..cols {
        if lead == rows.len() {
            break;
        }
        let Some(pr) = (lead..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(lead, pr);
        let inv = field.inv(rows[lead][col]);
        if inv != 1 {
            for x in rows[lead].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[lead].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != lead && row[col] != 0 {
                let c = field.neg(row[col]);
                axpy(field, row, c, &pivot_row);
            }
        }
        pivots.push(col);
        lead += 1;
    }
    rows.truncate(lead);
    (Matrix::from_rows(cols, &rows), pivots)
}

/// Right kernel `{x : m·x = 0}`.
pub fn kernel(field: &Field, m: &Matrix) -> Subspace {
    let cols = m.cols;
    let (r, pivots) = rref_with_pivots(field, m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vecs = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(r.get(row, free));
        }
        vecs.push(v);
    }
    Subspace::span(field, cols, &vecs)
}

/// Solves `m·x = b`, returning one solution if the system is consistent.
pub fn solve(field: &Field, m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows, b.len());
    let cols = m.cols;
    let rows: Vec<Vec<Scalar>> = (0..m.rows)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r]);
            row
        })
        .collect();
    let aug = Matrix::from_rows(cols + 1, &rows);
    let (r, pivots) = rref_with_pivots(field, &aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0; cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, cols);
    }
    Some(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A linear subspace of `F^ambient_dim`, basis kept in RREF.
#[derive(Clone)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("field", &self.field)
            .field("ambient_dim", &self.ambient_dim)
            .field("basis", &self.basis.row_vecs())
            .finish()
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.ambient_dim == other.ambient_dim
            && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn zero(field: &Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient_dim: usize) -> Subspace {
        Subspace::from_matrix(field, &Matrix::identity(ambient_dim))
    }

    pub fn span(field: &Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        Subspace::from_matrix(field, &Matrix::from_rows(ambient_dim, vectors))
    }

    /// Row space of `m`.
    pub fn from_matrix(field: &Field, m: &Matrix) -> Subspace {
        let (basis, pivots) = rref_with_pivots(field, m);
        Subspace {
            field: field.clone(),
            ambient_dim: m.cols,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                actual: n,
            });
        }
        Ok(())
    }

    /// Canonical representative of `v` modulo this subspace: zero in every
    /// pivot column. Linear in `v`.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                axpy(&self.field, &mut out, self.field.neg(c), self.basis.row(row));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        self.check_dim(v.len())?;
        Ok(is_zero_vec(&self.reduce(v)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        other.check_dim(self.ambient_dim)?;
        for r in 0..self.dim() {
            if !other.contains(self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_dim(other.ambient_dim)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Ok(Subspace::span(&self.field, self.ambient_dim, &rows))
    }

    /// Annihilator under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(&self.field, self.ambient_dim);
        }
        kernel(&self.field, &self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_dim(other.ambient_dim)?;
        if self.field != other.field {
            return Err(Error::InvariantViolation(
                "intersecting subspaces over different fields".into(),
            ));
        }
        // a ∩ b = ann(ann(a) + ann(b))
        let joint = self.annihilator().sum(&other.annihilator())?;
        Ok(joint.annihilator())
    }

    /// Image under the coordinatewise Frobenius σ^n (forward) or σ^-n (inverse).
    pub fn frobenius_shift(&self, n: u32, direction: Direction) -> Subspace {
        if self.field.is_prime_field() {
            return self.clone();
        }
        let f = &self.field;
        let shifted = match direction {
            Direction::Forward => self.basis.map(|x| f.frobenius(x, n)),
            Direction::Inverse => self.basis.map(|x| f.frobenius_inv(x, n)),
        };
        Subspace::from_matrix(f, &shifted)
    }
}
