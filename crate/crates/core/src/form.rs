//! Symmetrizing forms `(x, y) = ψ(xy)` and orthogonal complements.

use crate::algebra::{commutator_space, socle};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{dot, kernel, solve, Matrix, Subspace};
use crate::normalform::AlgebraTable;

#[derive(Debug, Clone)]
pub struct SymmetrizingForm {
    field: Field,
    psi: Vec<Scalar>,
    gram: Matrix,
}

impl SymmetrizingForm {
    pub fn psi(&self) -> &[Scalar] {
        &self.psi
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.psi.len()
    }

    /// `(x, y)`.
    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(&self.field, x, &self.gram.mul_vec(&self.field, y))
    }

    /// `ψ(x)`.
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        dot(&self.field, &self.psi, x)
    }
}

/// Basis words lying in the socle, provided the socle is two-sided and
/// spanned by them.
fn monomial_socle(a: &AlgebraTable) -> Result<Vec<usize>> {
    let s = socle(a);
    if !s.two_sided_equal {
        return Err(Error::SocleMismatch {
            left: s.left.dim(),
            right: s.right.dim(),
        });
    }
    let soc = s.right;
    let words: Vec<usize> = (0..a.dim())
        .filter(|&i| soc.contains(&a.basis_vector(i)).unwrap_or(false))
        .collect();
    if words.len() != soc.dim() {
        return Err(Error::Degenerate(format!(
            "socle of dimension {} is not spanned by basis words ({} found); supply ψ explicitly",
            soc.dim(),
            words.len()
        )));
    }
    Ok(words)
}

/// ψ = 1 on basis words in the socle, 0 elsewhere.
///
/// When that functional does not vanish on `K(A)` (the Gram matrix is not
/// symmetric), ψ is corrected to the deterministic functional that is 1 on
/// socle words, vanishes on `K(A)` and is 0 on as many short words as the
/// constraints allow. The Reynolds ideals do not depend on this choice.
pub fn canonical_form(a: &AlgebraTable) -> Result<SymmetrizingForm> {
    let socle_words = monomial_socle(a)?;
    let mut psi = vec![0; a.dim()];
    for &i in &socle_words {
        psi[i] = 1;
    }
    match form_from_psi(a, psi) {
        Err(Error::NotSymmetric { left, right }) => match corrected_psi(a, &socle_words) {
            Some(psi) => form_from_psi(a, psi),
            None => Err(Error::NotSymmetric { left, right }),
        },
        other => other,
    }
}

/// Solves `ψ(K(A)) = 0`, `ψ(s) = 1` for socle words `s`; long words are
/// eliminated first so short words stay free (and zero) where possible.
fn corrected_psi(a: &AlgebraTable, socle_words: &[usize]) -> Option<Vec<Scalar>> {
    let n = a.dim();
    let f = a.field();
    let rev = |v: &[Scalar]| -> Vec<Scalar> { v.iter().rev().copied().collect() };
    let mut rows: Vec<Vec<Scalar>> = commutator_space(a)
        .basis_vectors()
        .iter()
        .map(|k| rev(k))
        .collect();
    let mut rhs = vec![0; rows.len()];
    for &s in socle_words {
        rows.push(rev(&a.basis_vector(s)));
        rhs.push(1);
    }
    let x = solve(f, &Matrix::from_rows(n, &rows), &rhs)?;
    Some(rev(&x))
}

/// ψ given explicitly on socle basis words (indices into the table basis);
/// every other basis word gets 0.
pub fn custom_form(a: &AlgebraTable, values: &[(usize, Scalar)]) -> Result<SymmetrizingForm> {
    let soc = socle(a);
    if !soc.two_sided_equal {
        return Err(Error::SocleMismatch {
            left: soc.left.dim(),
            right: soc.right.dim(),
        });
    }
    let mut psi = vec![0; a.dim()];
    for &(i, c) in values {
        if i >= a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                actual: i,
            });
        }
        if !soc.right.contains(&a.basis_vector(i))? {
            return Err(Error::BadParameters(format!(
                "ψ is only assigned on socle basis words; `{}` is not one",
                a.format_word(i)
            )));
        }
        if c == 0 {
            return Err(Error::BadParameters(format!(
                "ψ({}) must be nonzero",
                a.format_word(i)
            )));
        }
        psi[i] = c;
    }
    form_from_psi(a, psi)
}

/// Validates the Gram matrix of `ψ` for symmetry and nondegeneracy.
pub fn form_from_psi(a: &AlgebraTable, psi: Vec<Scalar>) -> Result<SymmetrizingForm> {
    let f = a.field();
    let n = a.dim();
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for &j in a.right_partners(i) {
            let mut v = 0;
            for &(k, c) in a.product(i, j) {
                v = f.add(v, f.mul(c, psi[k]));
            }
            gram.set(i, j, v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if gram.get(i, j) != gram.get(j, i) {
                return Err(Error::NotSymmetric {
                    left: a.format_word(i),
                    right: a.format_word(j),
                });
            }
        }
    }
    let ker = kernel(f, &gram);
    if ker.dim() > 0 {
        return Err(Error::Degenerate(format!(
            "Gram matrix is singular; kernel contains {}",
            a.format_element(ker.basis().row(0))
        )));
    }
    Ok(SymmetrizingForm {
        field: f.clone(),
        psi,
        gram,
    })
}

/// `{y : (x, y) = 0 for all x in s}`.
pub fn orthogonal(form: &SymmetrizingForm, s: &Subspace) -> Result<Subspace> {
    if s.ambient_dim() != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            actual: s.ambient_dim(),
        });
    }
    if s.dim() == 0 {
        return Ok(Subspace::full(&form.field, form.dim()));
    }
    Ok(kernel(&form.field, &s.basis().mul(&form.field, &form.gram)))
}
