//! Algebraic laws of the exterior algebra and of the Chevalley–Eilenberg
//! differential.

use acscohom::basis::Mono;
use acscohom::complexstruct::complex_structure_equations;
use acscohom::zoo::catalog;
use acscohom::{AlmostComplexStructure, Form, Gq, Matrix, Scalar, Q};
use proptest::prelude::*;

const DIM: usize = 6;

fn gq() -> impl Strategy<Value = Gq> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| Gq::new(Q::new(a, d), Q::new(b, 1)))
}

fn q() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, d)| Q::new(a, d))
}

fn mono(dim: usize, k: usize) -> impl Strategy<Value = Mono> {
    proptest::sample::subsequence((0..dim).collect::<Vec<_>>(), k)
        .prop_map(|idx| Mono(idx.iter().fold(0, |m, i| m | (1 << i))))
}

/// Sparse homogeneous form of degree `k`.
fn form(dim: usize, k: usize) -> impl Strategy<Value = Form<Gq>> {
    proptest::collection::vec((mono(dim, k), gq()), 0..5).prop_map(move |ts| Form::from_terms(dim, ts))
}

fn any_form(dim: usize) -> impl Strategy<Value = (usize, Form<Gq>)> {
    (0..=dim).prop_flat_map(move |k| (Just(k), form(dim, k)))
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<Gq>> {
    proptest::collection::vec(proptest::collection::vec(gq(), n), n).prop_map(Matrix::from_rows)
}

fn real_matrix(n: usize) -> impl Strategy<Value = Matrix<Q>> {
    proptest::collection::vec(proptest::collection::vec(q(), n), n).prop_map(Matrix::from_rows)
}

fn sign(p: usize, q: usize) -> Gq {
    if (p * q).is_multiple_of(2) {
        Gq::one()
    } else {
        -Gq::one()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutativity((p, a) in any_form(DIM), (r, b) in any_form(DIM)) {
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign(p, r)));
    }

    #[test]
    fn wedge_is_associative((_, a) in any_form(DIM), (_, b) in any_form(DIM), (_, c) in any_form(DIM)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn conjugation_is_multiplicative((_, a) in any_form(DIM), (_, b) in any_form(DIM)) {
        prop_assert_eq!(a.wedge(&b).conjugate(), a.conjugate().wedge(&b.conjugate()));
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn pullback_is_functorial(x in (1usize..=3).prop_flat_map(|k| form(DIM, k)), y in form(DIM, 1),
                              a in matrix(DIM), b in matrix(DIM)) {
        prop_assert_eq!(x.pullback_endo(&Matrix::identity(DIM)), x.clone());
        prop_assert_eq!(x.pullback_endo(&a).pullback_endo(&b), x.pullback_endo(&a.mul(&b)));
        prop_assert_eq!(x.wedge(&y).pullback_endo(&a), x.pullback_endo(&a).wedge(&y.pullback_endo(&a)));
    }

    #[test]
    fn twist_is_a_two_form(alpha in form(DIM, 2), l in matrix(DIM),
                           x in proptest::collection::vec(gq(), DIM), y in proptest::collection::vec(gq(), DIM)) {
        let tw = alpha.twist(&l);
        prop_assert!(tw.is_zero() || tw.is_homogeneous_of(2));
        let xy = tw.evaluate(&[x.clone(), y.clone()]);
        let yx = tw.evaluate(&[y, x]);
        prop_assert!((xy + yx).is_zero());
    }

    #[test]
    fn twist_by_identity_and_linearity(alpha in form(DIM, 2), l in matrix(DIM), c in gq()) {
        prop_assert_eq!(alpha.twist(&Matrix::identity(DIM)), alpha.scale(&Gq::from(Q::from(2))));
        prop_assert_eq!(alpha.twist(&l.scale(&c)), alpha.twist(&l).scale(&c));
    }

    #[test]
    fn d_squares_to_zero((entry, a) in zoo_form(0..=10)) {
        let d = |f: &Form<Gq>| catalog()[entry].presentation.d(f);
        prop_assert!(d(&d(&a)).is_zero());
    }

    #[test]
    fn leibniz((entry, a) in zoo_form(0..=3), b_seed in any::<prop::sample::Index>()) {
        let e = &catalog()[entry];
        let dim = e.dim();
        let p = a.degree().unwrap_or(0);
        // A second form from the same manifold: a monomial of degree ≤ 3.
        let all: Vec<u32> = (0u32..(1 << dim)).filter(|m| m.count_ones() <= 3).collect();
        let m = all[b_seed.index(all.len())];
        let b = Form::term(dim, Mono(m), Gq::new(Q::from(2), Q::from(-1))) + a.conjugate();
        let d = |f: &Form<Gq>| e.presentation.d(f);
        let sgn = if p % 2 == 0 { Gq::one() } else { -Gq::one() };
        prop_assert_eq!(d(&a.wedge(&b)), &d(&a).wedge(&b) + &a.wedge(&d(&b)).scale(&sgn));
    }

    #[test]
    fn real_pullback_agrees_with_complex(alpha in form(DIM, 2), l in real_matrix(DIM)) {
        let lc = l.map(|x| Gq::from(x.clone()));
        prop_assert_eq!(alpha.re().pullback_endo(&l).complexify(), alpha.pullback_endo(&lc).re().complexify());
    }
}

/// A zoo entry index and a homogeneous form on it of degree in `degrees`
/// (clamped to the dimension).
fn zoo_form(degrees: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (usize, Form<Gq>)> {
    (0..catalog().len(), degrees).prop_flat_map(|(i, k)| {
        let dim = catalog()[i].dim();
        (Just(i), form(dim, k.min(dim)))
    })
}

/// `d² = 0` on every basis monomial of every degree, not only on samples.
#[test]
fn d_squared_vanishes_on_all_monomials() {
    for e in catalog() {
        let dim = e.dim();
        for m in 0u32..(1 << dim) {
            let a = Form::<Q>::term(dim, Mono(m as _), Q::one());
            assert!(e.presentation.d(&e.presentation.d(&a)).is_zero(), "{} on {a}", e.name);
        }
    }
}

#[test]
fn structure_flags_are_consistent() {
    for e in catalog() {
        let r = acscohom::lie::check_presentation(&e.presentation);
        if r.nilpotent {
            assert!(r.solvable && r.unimodular, "{}", e.name);
        }
    }
}

#[test]
fn complex_presentations_round_trip() {
    for e in catalog().iter().filter(|e| e.presentation.complex_images().is_some()) {
        let coframe = e.presentation.complex_coframe().unwrap();
        let j = AlmostComplexStructure::from_coframe(&coframe).unwrap();
        assert_eq!(
            complex_structure_equations(&e.presentation, &j),
            e.presentation.complex_images().unwrap().to_vec(),
            "{}",
            e.name
        );
    }
}
