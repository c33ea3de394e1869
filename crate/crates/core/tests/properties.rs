mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use common::{presentation, report, table};
use kuls_core::algebra::{commutator_space, multiply, Element};
use kuls_core::families::{family, Family, FamilySpec};
use kuls_core::form::{canonical_form, orthogonal, SymmetrizingForm};
use kuls_core::kulshammer::frobenius_power;
use kuls_core::linalg::{kernel, rref, Direction, Matrix, Subspace};
use kuls_core::normalform::{build_algebra, AlgebraTable, DEFAULT_DEGREE_BOUND};
use kuls_core::{Field, FieldSpec, Scalar};

fn field_of(order: u32) -> Field {
    let spec = match order {
        4 => FieldSpec::extension(2, 2, None),
        8 => FieldSpec::extension(2, 3, None),
        9 => FieldSpec::extension(3, 2, None),
        p => FieldSpec::prime(p),
    };
    Field::new(spec.unwrap())
}

fn any_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]).prop_map(field_of)
}

fn vec_in(q: u32, len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(0..q, len)
}

fn matrix_in(f: &Field, max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    let q = f.order();
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(vec_in(q, c), r).prop_map(move |rows| Matrix::from_rows(c, &rows))
    })
}

fn field_and_matrix() -> impl Strategy<Value = (Field, Matrix)> {
    any_field().prop_flat_map(|f| {
        let m = matrix_in(&f, 6, 7);
        (Just(f), m)
    })
}

fn field_and_two_spans() -> impl Strategy<Value = (Field, usize, Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)> {
    (any_field(), 1usize..7).prop_flat_map(|(f, n)| {
        let q = f.order();
        let vs = prop::collection::vec(vec_in(q, n), 0..5);
        let ws = prop::collection::vec(vec_in(q, n), 0..5);
        (Just(f), Just(n), vs, ws)
    })
}

proptest! {
    #[test]
    fn field_axioms(f in any_field(), a in 0u32..9, b in 0u32..9, c in 0u32..9) {
        let q = f.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism(f in any_field(), a in 0u32..9, b in 0u32..9, n in 0u32..4) {
        let q = f.order();
        let (a, b) = (a % q, b % q);
        prop_assert_eq!(f.frobenius_inv(f.frobenius(a, n), n), a);
        prop_assert_eq!(f.frobenius(f.add(a, b), n), f.add(f.frobenius(a, n), f.frobenius(b, n)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), n), f.mul(f.frobenius(a, n), f.frobenius(b, n)));
        let p = u64::from(f.characteristic());
        prop_assert_eq!(f.frobenius(a, n), f.pow(a, p.pow(n)));
    }

    #[test]
    fn rref_is_idempotent((f, m) in field_and_matrix()) {
        let (r, rank) = rref(&f, &m);
        let (r2, rank2) = rref(&f, &r);
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(rank, rank2);
    }

    #[test]
    fn rank_plus_nullity((f, m) in field_and_matrix()) {
        let (_, rank) = rref(&f, &m);
        let ker = kernel(&f, &m);
        prop_assert_eq!(rank + ker.dim(), m.cols());
        for v in ker.basis_vectors() {
            prop_assert!(m.mul_vec(&f, &v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn intersection_and_sum((f, n, vs, ws) in field_and_two_spans()) {
        let u = Subspace::span(&f, n, &vs);
        let w = Subspace::span(&f, n, &ws);
        let cap = u.intersect(&w).unwrap();
        let sum = u.sum(&w).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
        prop_assert!(cap.is_subspace_of(&u).unwrap() && cap.is_subspace_of(&w).unwrap());
        prop_assert!(u.is_subspace_of(&sum).unwrap() && w.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn frobenius_shift_round_trip((f, n, vs, _ws) in field_and_two_spans(), k in 0u32..4) {
        let u = Subspace::span(&f, n, &vs);
        let there = u.frobenius_shift(k, Direction::Forward);
        prop_assert_eq!(there.dim(), u.dim());
        prop_assert_eq!(there.frobenius_shift(k, Direction::Inverse), u);
    }

    #[test]
    fn contains_matches_enumeration(
        p in prop::sample::select(vec![2u32, 3]),
        n in 1usize..5,
        seed in prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..4),
    ) {
        let f = field_of(p);
        let vs: Vec<Vec<Scalar>> = seed.iter().map(|v| v[..n].iter().map(|x| x % p).collect()).collect();
        let s = Subspace::span(&f, n, &vs);
        // every combination of the generators, as a set of vectors
        let mut reach = std::collections::BTreeSet::new();
        reach.insert(vec![0; n]);
        for v in &vs {
            let mut next = reach.clone();
            for base in &reach {
                for c in 1..p {
                    let x: Vec<Scalar> = base.iter().zip(v).map(|(&b, &y)| f.add(b, f.mul(c, y))).collect();
                    next.insert(x);
                }
            }
            reach = next;
        }
        prop_assert_eq!(reach.len() as u64, u64::from(p).pow(s.dim() as u32));
        let mut x = vec![0u32; n];
        loop {
            prop_assert_eq!(s.contains(&x).unwrap(), reach.contains(&x));
            let mut i = 0;
            while i < n && x[i] + 1 == p {
                x[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            x[i] += 1;
        }
    }
}

struct Fixture {
    a: AlgebraTable,
    form: SymmetrizingForm,
    k: Subspace,
}

fn fixture_for(f: Family, params: &[(&str, u32)], field: FieldSpec) -> Fixture {
    let spec = FamilySpec::new(f, params, field).unwrap();
    let a = build_algebra(&family(&spec).unwrap(), DEFAULT_DEGREE_BOUND).unwrap();
    let form = canonical_form(&a).unwrap();
    let k = commutator_space(&a);
    Fixture { a, form, k }
}

/// Ω(2) over GF(4), D(2) over GF(2), A(1,2) over GF(3), Λ(2) over GF(5).
fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            fixture_for(Family::Omega, &[("n", 2)], FieldSpec::extension(2, 2, None).unwrap()),
            fixture_for(Family::D, &[("m", 2)], FieldSpec::prime(2).unwrap()),
            fixture_for(Family::A, &[("p", 1), ("q", 2)], FieldSpec::prime(3).unwrap()),
            fixture_for(Family::Lambda, &[("m", 2)], FieldSpec::prime(5).unwrap()),
        ]
    })
}

fn fixture_and_elements(k: usize) -> impl Strategy<Value = (usize, Vec<Element>)> {
    (0..fixtures().len()).prop_flat_map(move |i| {
        let fx = &fixtures()[i];
        let q = fx.a.field().order();
        let dim = fx.a.dim();
        (Just(i), prop::collection::vec(vec_in(q, dim), k))
    })
}

fn sub(f: &Field, x: &[Scalar], y: &[Scalar]) -> Element {
    x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect()
}

fn add(f: &Field, x: &[Scalar], y: &[Scalar]) -> Element {
    x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn frobenius_power_is_additive_mod_commutators((i, xs) in fixture_and_elements(2), n in 1u32..3) {
        let fx = &fixtures()[i];
        let (a, f) = (&fx.a, fx.a.field());
        let lhs = frobenius_power(a, &add(f, &xs[0], &xs[1]), n);
        let rhs = add(f, &frobenius_power(a, &xs[0], n), &frobenius_power(a, &xs[1], n));
        prop_assert!(fx.k.contains(&sub(f, &lhs, &rhs)).unwrap());
    }

    #[test]
    fn frobenius_power_is_semilinear((i, xs) in fixture_and_elements(1), c in 0u32..5, n in 1u32..3) {
        let fx = &fixtures()[i];
        let (a, f) = (&fx.a, fx.a.field());
        let c = c % f.order();
        let cx: Element = xs[0].iter().map(|&v| f.mul(c, v)).collect();
        let lhs = frobenius_power(a, &cx, n);
        let scaled: Element = frobenius_power(a, &xs[0], n)
            .iter()
            .map(|&v| f.mul(f.frobenius(c, n), v))
            .collect();
        prop_assert_eq!(lhs, scaled);
    }

    #[test]
    fn multiplication_is_associative((i, xs) in fixture_and_elements(3)) {
        let a = &fixtures()[i].a;
        let left = multiply(a, &multiply(a, &xs[0], &xs[1]), &xs[2]);
        let right = multiply(a, &xs[0], &multiply(a, &xs[1], &xs[2]));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn form_is_associative_and_symmetric((i, xs) in fixture_and_elements(3)) {
        let fx = &fixtures()[i];
        let (a, form) = (&fx.a, &fx.form);
        prop_assert_eq!(form.pair(&xs[0], &xs[1]), form.pair(&xs[1], &xs[0]));
        prop_assert_eq!(
            form.pair(&multiply(a, &xs[0], &xs[1]), &xs[2]),
            form.pair(&xs[0], &multiply(a, &xs[1], &xs[2]))
        );
        prop_assert_eq!(form.pair(&xs[0], &xs[1]), form.eval(&multiply(a, &xs[0], &xs[1])));
    }

    #[test]
    fn psi_vanishes_on_commutators((i, xs) in fixture_and_elements(2)) {
        let fx = &fixtures()[i];
        let (a, f) = (&fx.a, fx.a.field());
        let c = sub(f, &multiply(a, &xs[0], &xs[1]), &multiply(a, &xs[1], &xs[0]));
        prop_assert_eq!(fx.form.eval(&c), 0);
    }

    #[test]
    fn double_complement((i, xs) in fixture_and_elements(4)) {
        let fx = &fixtures()[i];
        let s = Subspace::span(fx.a.field(), fx.a.dim(), &xs);
        let perp = orthogonal(&fx.form, &s).unwrap();
        prop_assert_eq!(perp.dim() + s.dim(), fx.a.dim());
        prop_assert_eq!(orthogonal(&fx.form, &perp).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reports_ignore_arrow_order(
        which in 0usize..4,
        perm in Just((0..10).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let (fam, params): (Family, Vec<(&str, u32)>) = match which {
            0 => (Family::Omega, vec![("n", 3)]),
            1 => (Family::D, vec![("m", 3)]),
            2 => (Family::Tpq, vec![("p", 1), ("q", 1)]),
            _ => (Family::A, vec![("p", 1), ("q", 3)]),
        };
        let pres = presentation(fam, &params, 2);
        let k = pres.quiver.arrows.len();
        let order: Vec<usize> = perm.iter().copied().filter(|&x| x < k).collect();
        prop_assert_eq!(order.len(), k);
        let base = report(&table(fam, &params, 2));
        let permuted = report(&build_algebra(&pres.with_arrow_order(&order), DEFAULT_DEGREE_BOUND).unwrap());
        prop_assert_eq!(base, permuted);
    }
}
