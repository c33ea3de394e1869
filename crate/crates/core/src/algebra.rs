//! Products, powers and the structural subspaces of a finite-dimensional algebra.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{kernel, sub_vec, Matrix, Subspace};
use crate::normalform::AlgebraTable;

pub type Element = Vec<Scalar>;

pub fn multiply(a: &AlgebraTable, x: &[Scalar], y: &[Scalar]) -> Element {
    let f = a.field();
    let mut out = vec![0; a.dim()];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for &j in a.right_partners(i) {
            let yj = y[j];
            if yj == 0 {
                continue;
            }
            let c = f.mul(xi, yj);
            for &(k, pc) in a.product(i, j) {
                out[k] = f.add(out[k], f.mul(c, pc));
            }
        }
    }
    out
}

/// `x^k` by square-and-multiply; `k = 0` gives the unit.
pub fn power(a: &AlgebraTable, x: &[Scalar], k: u64) -> Element {
    let mut result = a.unit().to_vec();
    let mut base = x.to_vec();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = multiply(a, &result, &base);
        }
        k >>= 1;
        if k > 0 {
            base = multiply(a, &base, &base);
        }
    }
    result
}

fn arrow_indices(a: &AlgebraTable) -> Vec<usize> {
    (0..a.dim()).filter(|&i| a.length(i) == 1).collect()
}

fn generator_indices(a: &AlgebraTable) -> Vec<usize> {
    (0..a.dim()).filter(|&i| a.length(i) <= 1).collect()
}

fn product_space(a: &AlgebraTable, x: &Subspace, y: &Subspace) -> Subspace {
    let mut vecs = Vec::new();
    for u in x.basis_vectors() {
        for v in y.basis_vectors() {
            vecs.push(multiply(a, &u, &v));
        }
    }
    Subspace::span(a.field(), a.dim(), &vecs)
}

/// Span of all basis words of positive length, checked to be nilpotent.
pub fn radical(a: &AlgebraTable) -> Result<Subspace> {
    let f = a.field();
    let gens: Vec<Element> = (0..a.dim())
        .filter(|&i| a.length(i) >= 1)
        .map(|i| a.basis_vector(i))
        .collect();
    let rad = Subspace::span(f, a.dim(), &gens);
    let mut pow = rad.clone();
    while pow.dim() > 0 {
        let next = product_space(a, &pow, &rad);
        if next.dim() == pow.dim() {
            return Err(Error::NotNilpotent);
        }
        pow = next;
    }
    Ok(rad)
}

/// Smallest `k` with `rad^k = 0`.
pub fn loewy_length(a: &AlgebraTable) -> Result<usize> {
    let rad = radical(a)?;
    let mut pow = rad.clone();
    let mut k = 1;
    while pow.dim() > 0 {
        pow = product_space(a, &pow, &rad);
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone)]
pub struct Socle {
    pub right: Subspace,
    pub left: Subspace,
    pub two_sided_equal: bool,
}

/// Matrix of `x ↦ x·g` (or `g·x`) in basis coordinates, stacked over `gens`.
fn stacked_multiplication(a: &AlgebraTable, gens: &[usize], right: bool) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * gens.len());
    for &g in gens {
        let gv = a.basis_vector(g);
        let mut block = vec![vec![0; n]; n];
        for (col, row) in (0..n).map(|i| (i, a.basis_vector(i))).map(|(i, e)| {
            let p = if right {
                multiply(a, &e, &gv)
            } else {
                multiply(a, &gv, &e)
            };
            (i, p)
        }) {
            for (r, &c) in row.iter().enumerate() {
                block[r][col] = c;
            }
        }
        rows.extend(block);
    }
    rows
}

pub fn socle(a: &AlgebraTable) -> Socle {
    let n = a.dim();
    let f = a.field();
    let arrows = arrow_indices(a);
    if arrows.is_empty() {
        let full = Subspace::full(f, n);
        return Socle {
            right: full.clone(),
            left: full,
            two_sided_equal: true,
        };
    }
    let right = kernel(f, &Matrix::from_rows(n, &stacked_multiplication(a, &arrows, true)));
    let left = kernel(f, &Matrix::from_rows(n, &stacked_multiplication(a, &arrows, false)));
    let two_sided_equal = right == left;
    Socle {
        right,
        left,
        two_sided_equal,
    }
}

/// Elements commuting with every trivial path and every arrow.
pub fn center(a: &AlgebraTable) -> Subspace {
    let n = a.dim();
    let f = a.field();
    let gens = generator_indices(a);
    let r = stacked_multiplication(a, &gens, true);
    let l = stacked_multiplication(a, &gens, false);
    let rows: Vec<Vec<Scalar>> = r.iter().zip(&l).map(|(x, y)| sub_vec(f, x, y)).collect();
    kernel(f, &Matrix::from_rows(n, &rows))
}

/// `K(A)`: span of `b_i b_j - b_j b_i` over basis pairs.
pub fn commutator_space(a: &AlgebraTable) -> Subspace {
    let n = a.dim();
    let f = a.field();
    let mut vecs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let ij: Element = {
                let mut v = vec![0; n];
                for &(k, c) in a.product(i, j) {
                    v[k] = f.add(v[k], c);
                }
                v
            };
            let mut v = ij;
            for &(k, c) in a.product(j, i) {
                v[k] = f.sub(v[k], c);
            }
            if v.iter().any(|&c| c != 0) {
                vecs.push(v);
            }
        }
    }
    Subspace::span(f, n, &vecs)
}
