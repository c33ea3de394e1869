//! Külshammer spaces `T_n(A) = {x : x^{p^n} ∈ K(A)}`, the generalized
//! Reynolds ideals `T_n(A)^⊥` and the derived-invariant sequence they form.

use serde::Serialize;

use crate::algebra::{center, commutator_space, multiply, power, socle, Element};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::form::{orthogonal, SymmetrizingForm};
use crate::linalg::{kernel, solve, Direction, Matrix, Subspace};
use crate::normalform::AlgebraTable;

pub const DEFAULT_MAX_N: u32 = 8;

/// `x^{p^n}` as `n` successive `p`-th powers.
pub fn frobenius_power(a: &AlgebraTable, x: &[Scalar], n: u32) -> Element {
    let p = u64::from(a.field().characteristic());
    let mut y = x.to_vec();
    for _ in 0..n {
        y = power(a, &y, p);
    }
    y
}

/// Semilinear-kernel computation of `T_n(A)` given `K(A)`.
fn kuelshammer_from(a: &AlgebraTable, k: &Subspace, n: u32) -> Subspace {
    if n == 0 {
        return k.clone();
    }
    let dim = a.dim();
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        let r = k.reduce(&frobenius_power(a, &a.basis_vector(i), n));
        for (row, &c) in r.iter().enumerate() {
            m.set(row, i, c);
        }
    }
    kernel(a.field(), &m).frobenius_shift(n, Direction::Inverse)
}

pub fn kuelshammer_space(a: &AlgebraTable, n: u32) -> Subspace {
    kuelshammer_from(a, &commutator_space(a), n)
}

/// Structural subspaces shared by the Reynolds computations.
struct Context<'a> {
    a: &'a AlgebraTable,
    form: &'a SymmetrizingForm,
    commutators: Subspace,
    center: Subspace,
    socle_center: Subspace,
}

impl<'a> Context<'a> {
    fn new(a: &'a AlgebraTable, form: &'a SymmetrizingForm) -> Result<Self> {
        if form.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                actual: form.dim(),
            });
        }
        let center = center(a);
        let socle_center = socle(a).right.intersect(&center)?;
        Ok(Context {
            a,
            form,
            commutators: commutator_space(a),
            center,
            socle_center,
        })
    }

    fn perp(&self, t: &Subspace) -> Result<Subspace> {
        let perp = orthogonal(self.form, t)?;
        let violation = |what: &str| Err(Error::InvariantViolation(format!("T^⊥ {what}")));
        if !perp.is_subspace_of(&self.center)? {
            return violation("is not contained in the center");
        }
        if !self.socle_center.is_subspace_of(&perp)? {
            return violation("does not contain soc(A) ∩ Z(A)");
        }
        for z in self.center.basis_vectors() {
            for t in perp.basis_vectors() {
                if !perp.contains(&multiply(self.a, &z, &t))? {
                    return violation("is not an ideal of the center");
                }
            }
        }
        Ok(perp)
    }
}

/// `T_n(A)^⊥`, checked to be an ideal of `Z(A)` containing `soc(A) ∩ Z(A)`.
pub fn reynolds_ideal(a: &AlgebraTable, form: &SymmetrizingForm, n: u32) -> Result<Subspace> {
    let ctx = Context::new(a, form)?;
    ctx.perp(&kuelshammer_from(a, &ctx.commutators, n))
}

/// The map `ξ_n : Z(A) → Z(A)` given on the basis of `Z(A)`.
#[derive(Debug, Clone)]
pub struct XiMap {
    pub center_basis: Vec<Element>,
    pub images: Vec<Element>,
}

impl XiMap {
    pub fn image(&self, a: &AlgebraTable) -> Subspace {
        Subspace::span(a.field(), a.dim(), &self.images)
    }
}

/// Solves `(ξ_n(z), x)^{p^n} = (z, x^{p^n})` for every basis word `x`.
pub fn xi_map(a: &AlgebraTable, form: &SymmetrizingForm, n: u32) -> Result<XiMap> {
    let ctx = Context::new(a, form)?;
    let f = a.field();
    let dim = a.dim();
    let powers: Vec<Element> = (0..dim)
        .map(|j| frobenius_power(a, &a.basis_vector(j), n))
        .collect();
    let gram_t = form.gram().transpose();
    let center_basis = ctx.center.basis_vectors();
    let mut images = Vec::with_capacity(center_basis.len());
    for z in &center_basis {
        let rhs: Vec<Scalar> = powers
            .iter()
            .map(|xp| f.frobenius_inv(form.pair(z, xp), n))
            .collect();
        let w = solve(f, &gram_t, &rhs).ok_or_else(|| {
            Error::InvariantViolation("ξ system is inconsistent despite a nondegenerate form".into())
        })?;
        if !ctx.center.contains(&w)? {
            return Err(Error::InvariantViolation("ξ(z) lies outside the center".into()));
        }
        for (j, xp) in powers.iter().enumerate() {
            let lhs = f.frobenius(form.pair(&w, &a.basis_vector(j)), n);
            if lhs != form.pair(z, xp) {
                return Err(Error::InvariantViolation(format!(
                    "ξ defining equation fails at {}",
                    a.format_word(j)
                )));
            }
        }
        images.push(w);
    }
    let xi = XiMap {
        center_basis,
        images,
    };
    let perp = ctx.perp(&kuelshammer_from(a, &ctx.commutators, n))?;
    if xi.image(a) != perp {
        return Err(Error::InvariantViolation("image of ξ differs from T^⊥".into()));
    }
    Ok(xi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReynoldsRow {
    pub n: u32,
    pub dim_t: usize,
    pub dim_t_perp: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReynoldsReport {
    pub name: String,
    pub p: u32,
    pub e: u32,
    pub dim: usize,
    pub dim_center: usize,
    pub dim_socle: usize,
    pub dim_commutator: usize,
    pub dim_socle_center: usize,
    pub rows: Vec<ReynoldsRow>,
    /// Least `n` with `T_n = T_{n+1}`; `None` if not reached by `max_n`.
    pub stabilized_at: Option<u32>,
}

impl ReynoldsReport {
    /// `dim T_n^⊥`, extending a stabilized sequence by its terminal value.
    pub fn dim_perp(&self, n: u32) -> Option<usize> {
        match self.rows.iter().find(|r| r.n == n) {
            Some(r) => Some(r.dim_t_perp),
            None if self.stabilized_at.is_some_and(|s| n > s) => {
                self.rows.last().map(|r| r.dim_t_perp)
            }
            None => None,
        }
    }

    /// Codimensions of consecutive members of `Z = T_0^⊥ ⊇ T_1^⊥ ⊇ …`.
    pub fn codimensions(&self) -> Vec<usize> {
        self.rows
            .windows(2)
            .map(|w| w[0].dim_t_perp - w[1].dim_t_perp)
            .collect()
    }
}

pub fn reynolds_sequence(
    a: &AlgebraTable,
    form: &SymmetrizingForm,
    max_n: u32,
) -> Result<ReynoldsReport> {
    let ctx = Context::new(a, form)?;
    let soc = socle(a);
    let mut rows = Vec::new();
    let mut stabilized_at = None;
    let mut current = ctx.commutators.clone();
    for n in 0..=max_n {
        let perp = ctx.perp(&current)?;
        rows.push(ReynoldsRow {
            n,
            dim_t: current.dim(),
            dim_t_perp: perp.dim(),
        });
        let next = kuelshammer_from(a, &ctx.commutators, n + 1);
        if !current.is_subspace_of(&next)? {
            return Err(Error::InvariantViolation(format!("T_{n} ⊄ T_{}", n + 1)));
        }
        if next == current {
            stabilized_at = Some(n);
            break;
        }
        current = next;
    }
    let report = ReynoldsReport {
        name: a.name().to_string(),
        p: a.field().characteristic(),
        e: a.field().degree(),
        dim: a.dim(),
        dim_center: ctx.center.dim(),
        dim_socle: soc.right.dim(),
        dim_commutator: ctx.commutators.dim(),
        dim_socle_center: ctx.socle_center.dim(),
        rows,
        stabilized_at,
    };
    check_report(&report)?;
    Ok(report)
}

fn check_report(r: &ReynoldsReport) -> Result<()> {
    let fail = |m: String| Err(Error::InvariantViolation(m));
    let first = &r.rows[0];
    if first.dim_t != r.dim_commutator {
        return fail("dim T_0 differs from dim K(A)".into());
    }
    if first.dim_t_perp != r.dim_center {
        return fail("dim T_0^⊥ differs from dim Z(A)".into());
    }
    for w in r.rows.windows(2) {
        if w[1].dim_t < w[0].dim_t || w[1].dim_t_perp > w[0].dim_t_perp {
            return fail(format!("sequence is not monotone at n = {}", w[1].n));
        }
    }
    for row in &r.rows {
        if row.dim_t + row.dim_t_perp != r.dim {
            return fail(format!("dim T_{0} + dim T_{0}^⊥ differs from dim A", row.n));
        }
    }
    if r.stabilized_at.is_some() && r.rows.last().unwrap().dim_t_perp != r.dim_socle_center {
        return fail("terminal T^⊥ differs from soc(A) ∩ Z(A)".into());
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Distinguished { witness_n: u32, dims: (usize, usize) },
    Inconclusive,
}

/// Necessary condition for derived equivalence: equal `dim T_n^⊥` for all `n`.
pub fn compare(a: &ReynoldsReport, b: &ReynoldsReport) -> Result<Verdict> {
    if a.p != b.p {
        return Err(Error::CharacteristicMismatch(a.p, b.p));
    }
    if a.dim_center != b.dim_center {
        return Ok(Verdict::Distinguished {
            witness_n: 0,
            dims: (a.dim_center, b.dim_center),
        });
    }
    let last = a.rows.len().max(b.rows.len()) as u32;
    for n in 0..last {
        if let (Some(x), Some(y)) = (a.dim_perp(n), b.dim_perp(n)) {
            if x != y {
                return Ok(Verdict::Distinguished {
                    witness_n: n,
                    dims: (x, y),
                });
            }
        }
    }
    Ok(Verdict::Inconclusive)
}

/// Enumerates every element `x` and keeps those with `x^{p^n} ∈ K(A)`.
pub fn brute_force_kuelshammer(a: &AlgebraTable, n: u32, budget: u128) -> Result<Subspace> {
    let f = a.field();
    let dim = a.dim();
    let q = u128::from(f.order());
    let needed = (0..dim).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let k = commutator_space(a);
    let mut members = Subspace::zero(f, dim);
    let mut count: u128 = 0;
    let mut x = vec![0 as Scalar; dim];
    loop {
        if k.contains(&frobenius_power(a, &x, n))? {
            count += 1;
            if !members.contains(&x)? {
                members = members.sum(&Subspace::span(f, dim, &[x.clone()]))?;
            }
        }
        // odometer over all coordinate vectors
        let mut i = 0;
        loop {
            if i == dim {
                if count != q.pow(members.dim() as u32) {
                    return Err(Error::InvariantViolation(format!(
                        "{count} elements satisfy x^(p^{n}) ∈ K(A) but they span a space of dimension {}",
                        members.dim()
                    )));
                }
                return Ok(members);
            }
            x[i] += 1;
            if x[i] == f.order() {
                x[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::canonical_form;
    use crate::normalform::{build_algebra, DEFAULT_DEGREE_BOUND};
    use crate::presentation::parse_presentation;

    fn table(text: &str) -> AlgebraTable {
        build_algebra(&parse_presentation(text).unwrap(), DEFAULT_DEGREE_BOUND).unwrap()
    }

    const POINT: &str = "algebra K over GF(2) { vertices v; arrows {} relations {} }";
    const DUAL: &str =
        "algebra D over GF(2) { vertices v; arrows { a: v -> v; } relations { a*a; } }";

    #[test]
    fn field_algebra_sequence() {
        let a = table(POINT);
        let form = canonical_form(&a).unwrap();
        let r = reynolds_sequence(&a, &form, DEFAULT_MAX_N).unwrap();
        assert_eq!(r.stabilized_at, Some(0));
        assert_eq!(r.rows, vec![ReynoldsRow { n: 0, dim_t: 0, dim_t_perp: 1 }]);
        assert_eq!(brute_force_kuelshammer(&a, 1, 16).unwrap().dim(), 0);
        let xi = xi_map(&a, &form, 1).unwrap();
        assert_eq!(xi.images, vec![vec![1]]);
    }

    #[test]
    fn dual_numbers_t1() {
        let a = table(DUAL);
        let x = a.element("a").unwrap();
        let span = Subspace::span(a.field(), 2, &[x]);
        assert_eq!(kuelshammer_space(&a, 1), span);
        assert_eq!(brute_force_kuelshammer(&a, 1, 4).unwrap(), span);
        let form = canonical_form(&a).unwrap();
        assert_eq!(xi_map(&a, &form, 1).unwrap().image(&a), span);
        assert_eq!(reynolds_ideal(&a, &form, 1).unwrap(), span);
    }

    #[test]
    fn budget_is_enforced() {
        let a = table(DUAL);
        assert!(matches!(
            brute_force_kuelshammer(&a, 1, 3),
            Err(Error::BudgetExceeded { needed: 4, budget: 3 })
        ));
    }

    #[test]
    fn extension_field_dual_numbers() {
        let a = table("algebra D over GF(2^2) { vertices v; arrows { a: v -> v; } relations { a*a; } }");
        let t = kuelshammer_space(&a, 1);
        assert_eq!(t, brute_force_kuelshammer(&a, 1, 16).unwrap());
        assert_eq!(t.dim(), 1);
    }

    #[test]
    fn compare_characteristics() {
        let a = table(POINT);
        let form = canonical_form(&a).unwrap();
        let r = reynolds_sequence(&a, &form, 4).unwrap();
        let mut s = r.clone();
        s.p = 3;
        assert!(matches!(compare(&r, &s), Err(Error::CharacteristicMismatch(2, 3))));
        assert_eq!(compare(&r, &r).unwrap(), Verdict::Inconclusive);
    }
}
