#![allow(dead_code)]

use kuls_core::algebra::{multiply, Element};
use kuls_core::families::{family, Family, FamilySpec};
use kuls_core::field::{FieldSpec, Scalar};
use kuls_core::form::canonical_form;
use kuls_core::kulshammer::{reynolds_sequence, ReynoldsReport, DEFAULT_MAX_N};
use kuls_core::linalg::Subspace;
use kuls_core::normalform::{build_algebra, AlgebraTable, DEFAULT_DEGREE_BOUND};
use kuls_core::presentation::Presentation;

pub fn spec(f: Family, params: &[(&str, u32)], p: u32) -> FamilySpec {
    FamilySpec::new(f, params, FieldSpec::prime(p).unwrap()).unwrap()
}

pub fn presentation(f: Family, params: &[(&str, u32)], p: u32) -> Presentation {
    family(&spec(f, params, p)).unwrap()
}

pub fn table(f: Family, params: &[(&str, u32)], p: u32) -> AlgebraTable {
    build_algebra(&presentation(f, params, p), DEFAULT_DEGREE_BOUND).unwrap()
}

pub fn report(a: &AlgebraTable) -> ReynoldsReport {
    let form = canonical_form(a).unwrap();
    reynolds_sequence(a, &form, DEFAULT_MAX_N).unwrap()
}

/// `K(A)` spanned directly from all `b_i b_j - b_j b_i` over basis words.
pub fn commutators_by_pairs(a: &AlgebraTable) -> Subspace {
    let f = a.field();
    let mut vs: Vec<Element> = Vec::new();
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            let (x, y) = (a.basis_vector(i), a.basis_vector(j));
            let xy = multiply(a, &x, &y);
            let yx = multiply(a, &y, &x);
            vs.push(xy.iter().zip(&yx).map(|(&u, &v)| f.sub(u, v)).collect());
        }
    }
    Subspace::span(f, a.dim(), &vs)
}

/// `Z(A)` as the elements commuting with every basis word, by brute linear
/// algebra on the full multiplication table.
pub fn center_by_table(a: &AlgebraTable) -> Subspace {
    let f = a.field();
    let n = a.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in 0..n {
        let gv = a.basis_vector(g);
        let cols: Vec<Element> = (0..n)
            .map(|i| {
                let e = a.basis_vector(i);
                let l = multiply(a, &gv, &e);
                let r = multiply(a, &e, &gv);
                l.iter().zip(&r).map(|(&u, &v)| f.sub(u, v)).collect()
            })
            .collect();
        for k in 0..n {
            rows.push(cols.iter().map(|c| c[k]).collect());
        }
    }
    kuls_core::linalg::kernel(f, &kuls_core::linalg::Matrix::from_rows(n, &rows))
}

/// Minimal and minimal+1 parameter instances of every family.
pub fn small_instances() -> Vec<(Family, Vec<(&'static str, u32)>)> {
    use Family::*;
    vec![
        (A, vec![("p", 1), ("q", 1)]),
        (A, vec![("p", 1), ("q", 2)]),
        (A, vec![("p", 2), ("q", 2)]),
        (Lambda, vec![("m", 2)]),
        (Lambda, vec![("m", 3)]),
        (Gamma, vec![("n", 1)]),
        (Gamma, vec![("n", 2)]),
        (Tpqr, vec![("p", 2), ("q", 2), ("r", 2)]),
        (Tpqr, vec![("p", 2), ("q", 2), ("r", 3)]),
        (Tpqr, vec![("p", 2), ("q", 3), ("r", 3)]),
        (Tpq, vec![("p", 1), ("q", 1)]),
        (Tpq, vec![("p", 1), ("q", 2)]),
        (Tpq, vec![("p", 2), ("q", 2)]),
        (Tstar, vec![("r", 2)]),
        (Tstar, vec![("r", 3)]),
        (Omega, vec![("n", 1)]),
        (Omega, vec![("n", 2)]),
        (N, vec![("n", 1), ("m", 1)]),
        (N, vec![("n", 1), ("m", 2)]),
        (N, vec![("n", 2), ("m", 1)]),
        (N, vec![("n", 2), ("m", 2)]),
        (D, vec![("m", 2)]),
        (D, vec![("m", 3)]),
        (Dprime, vec![("m", 2)]),
        (Dprime, vec![("m", 3)]),
    ]
}
