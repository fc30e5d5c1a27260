//! Hermitian metrics, curves of structures and the obstruction system.

use acscohom::basis::Basis;
use acscohom::cohomology::betti_numbers;
use acscohom::deform::{obstruction, DeformationCurve, ObstructionMode};
use acscohom::hermitian::{form_predicates, is_taming, HermitianData, Operator};
use acscohom::zoo::{catalog, lookup, ZooEntry};
use acscohom::{AlmostComplexStructure, Error, Form, Gq, Matrix, Presentation, Scalar, Series, Q};
use proptest::prelude::*;

fn gq() -> impl Strategy<Value = Gq> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| Gq::new(Q::from(a), Q::from(b)))
}

fn small_q() -> impl Strategy<Value = Q> {
    (-3i64..=3, 1i64..=4).prop_map(|(a, d)| Q::new(a, d))
}

fn vector(len: usize) -> impl Strategy<Value = Vec<Gq>> {
    proptest::collection::vec(gq(), len)
}

fn hermitian(e: &ZooEntry) -> Option<HermitianData> {
    let j = &e.default_structure()?.structure;
    match HermitianData::standard(&e.presentation, j) {
        Ok(h) => Some(h),
        Err(Error::IrrationalVolume(_)) => None,
        Err(other) => panic!("{}: {other}", e.name),
    }
}

#[test]
fn harmonic_dimensions_are_betti_numbers() {
    for e in catalog() {
        let Some(h) = hermitian(e) else { continue };
        let b = betti_numbers(&e.presentation);
        for (k, bk) in b.iter().enumerate() {
            assert_eq!(h.harmonic_space(k).dim(), *bk, "{} degree {k}", e.name);
        }
    }
}

#[test]
fn laplacian_commutes_with_star() {
    for e in catalog().iter().filter(|e| e.dim() <= 6) {
        let Some(h) = hermitian(e) else { continue };
        let dim = e.dim();
        for k in 0..=dim {
            let star = h.star_matrix(k);
            assert_eq!(
                star.mul(&h.laplacian(k)),
                h.laplacian(dim - k).mul(&star),
                "{} degree {k}",
                e.name
            );
        }
    }
}

/// A small entry with a rational default volume, an operator, a degree
/// `k`, and coefficient vectors on `Λ^k` and `Λ^{k+1}`.
fn metric_case() -> impl Strategy<Value = (usize, Operator, usize, Vec<Gq>, Vec<Gq>)> {
    let ok: Vec<usize> = catalog()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.dim() <= 6 && hermitian(e).is_some())
        .map(|(i, _)| i)
        .collect();
    (
        proptest::sample::select(ok),
        prop_oneof![Just(Operator::D), Just(Operator::Del), Just(Operator::Delbar)],
        0usize..=4,
    )
        .prop_flat_map(|(i, op, k)| {
            let dim = catalog()[i].dim();
            let k = k.min(dim - 1);
            let (a, b) = (Basis::new(dim, k).len(), Basis::new(dim, k + 1).len());
            (Just(i), Just(op), Just(k), vector(a), vector(b))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn adjoints_are_adjoint((i, op, k, va, vb) in metric_case()) {
        let e = &catalog()[i];
        let h = hermitian(e).unwrap();
        let (src, dst) = (Basis::new(e.dim(), k), Basis::new(e.dim(), k + 1));
        let a = Form::from_vector(&src, &va);
        let b = Form::from_vector(&dst, &vb);
        let pa = Form::from_vector(&dst, &h.operator_matrix(op, k).mul_vec(&va));
        let pstar_b = h.apply_adjoint(op, &b).unwrap();
        prop_assert_eq!(h.inner(&pa, &b), h.inner(&a, &pstar_b));
    }

    #[test]
    fn taming_is_scale_invariant(i in 0usize..11, coeffs in proptest::collection::vec(small_q(), 15), c in 1i64..=7) {
        let e = &catalog()[i];
        let Some(s) = e.default_structure() else { return Ok(()) };
        let dim = e.dim();
        let basis = Basis::new(dim, 2);
        let omega: Form<Gq> = basis
            .monos()
            .iter()
            .zip(coeffs.iter().cycle())
            .map(|(m, q)| Form::term(dim, *m, Gq::from(q.clone())))
            .fold(Form::zero(dim), |acc, f| &acc + &f);
        let scaled = omega.scale(&Gq::from(Q::new(c, 3)));
        prop_assert_eq!(is_taming(&s.structure, &omega).unwrap(), is_taming(&s.structure, &scaled).unwrap());
        let r = form_predicates(&e.presentation, &s.structure, &omega).unwrap();
        prop_assert_eq!(r.almost_kahler, r.compatible && r.nondegenerate && r.closed);
    }

    /// Real `(1,1)`-forms are `J`-invariant, and compatible ones in
    /// particular.
    #[test]
    fn compatible_forms_are_invariant(i in 0usize..11, weights in proptest::collection::vec(1i64..=4, 5), mix in small_q()) {
        let e = &catalog()[i];
        let Some(s) = e.default_structure() else { return Ok(()) };
        let j = &s.structure;
        let half_i = Gq::new(Q::zero(), Q::new(1, 2));
        let mut omega = Form::zero(e.dim());
        for a in 1..=j.n() {
            omega += j.phi(&[a], &[a]).scale(&(half_i.clone() * Gq::from(Q::from(weights[a - 1]))));
        }
        let cross = j.phi(&[1], &[2]).scale(&half_i);
        omega += (&cross + &cross.conjugate()).scale(&Gq::from(mix));
        let r = form_predicates(&e.presentation, j, &omega).unwrap();
        prop_assert!(r.j_invariant);
        if r.compatible {
            prop_assert_eq!(omega.pullback_endo(j.matrix()), omega);
        }
    }

    #[test]
    fn curves_stay_almost_complex(i in 0usize..11, c in 0usize..3, num in -7i64..=7, im in -7i64..=7) {
        let e = &catalog()[i];
        let Some(curve) = e.curves.get(c % e.curves.len().max(1)) else { return Ok(()) };
        let t = Gq::new(Q::new(num, 8), Q::new(im, 8));
        // Accepted parameters give J² = −id; the evaluation asserts it.
        if let Ok(jt) = curve.curve.evaluate(&t) {
            let m = jt.matrix();
            prop_assert_eq!(m.mul(m), Matrix::identity(e.dim()).scale(&-Gq::one()));
        }
    }

    /// `J_t − Σ_{j≤K} 2t^j J L^j = 2t^{K+1} J L^{K+1} (1 − tL)^{-1}`.
    #[test]
    fn series_and_exact_curves_agree(x in proptest::collection::vec(small_q(), 16), order in 1u32..=3,
                                     num in -3i64..=3, den in 4i64..=9) {
        let j = AlmostComplexStructure::from_coframe(&acscohom::complexstruct::pair_coframe(4, &[(1, 2), (3, 4)])).unwrap();
        let jm = j.matrix().clone();
        let xm = Matrix::from_rows(x.chunks(4).map(|r| r.iter().map(|q| Gq::from(q.clone())).collect()).collect());
        let l = xm.add(&jm.mul(&xm).mul(&jm));
        let curve = DeformationCurve::endomorphism(j.clone(), l.clone()).unwrap();
        let t = Gq::ratio(num, den);
        let Ok(exact) = curve.evaluate(&t) else { return Ok(()) };
        let approx = curve.series_expand(order).unwrap().map(|s: &Series| s.eval(&t));
        let mut tk = Gq::from(Q::from(2));
        for _ in 0..=order {
            tk = tk * t.clone();
        }
        let tail = jm
            .mul(&l.pow(order + 1))
            .mul(&Matrix::identity(4).sub(&l.scale(&t)).inverse().unwrap())
            .scale(&tk);
        prop_assert_eq!(exact.matrix().sub(&approx), tail);
    }
}

/// Closed real `J`-invariant 2-forms.
fn invariant_closed(p: &Presentation, j: &AlmostComplexStructure) -> Vec<Form<Gq>> {
    let dim = p.dim();
    let basis = Basis::new(dim, 2);
    let d = p.d_matrix(2);
    let cols: Vec<Vec<Gq>> = (0..basis.len())
        .map(|c| {
            let e = Form::term(dim, basis.mono(c), Gq::one());
            let mut col = d.col(c);
            col.extend((&e.pullback_endo(j.matrix()) - &e).to_vector(&basis));
            col
        })
        .collect();
    let rows = cols[0].len();
    Matrix::from_cols(&cols, rows)
        .kernel()
        .iter()
        .map(|v| Form::from_vector(&basis, v))
        .collect()
}

fn combination(forms: &[Form<Gq>], coeffs: &[i64]) -> Form<Gq> {
    forms
        .iter()
        .zip(coeffs.iter().cycle())
        .fold(Form::zero(forms[0].dim()), |acc, (f, c)| {
            &acc + &f.scale(&Gq::from(Q::from(*c)))
        })
}

fn anticommuting(j: &Matrix<Gq>, x: &[Q]) -> Matrix<Gq> {
    let n = j.nrows();
    let xm = Matrix::from_rows(
        x.chunks(n)
            .map(|r| r.iter().map(|q| Gq::from(q.clone())).collect())
            .collect(),
    );
    xm.add(&j.mul(&xm).mul(j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Solvable projected systems come with `dη_t = 0` through the
    /// requested order.
    #[test]
    fn projected_success_is_verified(entry in prop_oneof![Just("t4"), Just("kt4"), Just("n1"), Just("n2")],
                                     coeffs in proptest::collection::vec(-2i64..=2, 6),
                                     x in proptest::collection::vec(small_q(), 36), order in 1u32..=2) {
        let e = lookup(entry).unwrap();
        let j = &e.default_structure().unwrap().structure;
        let alphas = invariant_closed(&e.presentation, j);
        let alpha = combination(&alphas, &coeffs);
        let n = e.dim();
        let l = anticommuting(j.matrix(), &x[..n * n]);
        let r = obstruction(&e.presentation, j, &alpha, &l, order, ObstructionMode::Projected).unwrap();
        if r.solvable() {
            prop_assert_eq!(r.verified_order, Some(order));
        }
        for v in &r.orders {
            prop_assert_eq!(v.solvable, v.certificate.is_none());
        }
    }

    /// Verdicts survive a change of coframe `f = Q e`.
    #[test]
    fn verdicts_are_basis_independent(lower in proptest::collection::vec(-2i64..=2, 15),
                                      upper in proptest::collection::vec(-2i64..=2, 15),
                                      mode in prop_oneof![Just(ObstructionMode::PaperLiteral), Just(ObstructionMode::Projected)]) {
        let e = lookup("n6c1").unwrap();
        let j = &e.default_structure().unwrap().structure;
        let alpha = e.form("alpha").unwrap().form.clone();
        let l = e.direction("b13").unwrap().clone();
        let q = unitriangular_product(6, &lower, &upper);
        let (p2, j2, alpha2, l2) = change_basis(&e.presentation, j, &alpha, &l, &q);
        let before = obstruction(&e.presentation, j, &alpha, &l, 1, mode).unwrap();
        let after = obstruction(&p2, &j2, &alpha2, &l2, 1, mode).unwrap();
        prop_assert_eq!(before.solvable(), after.solvable());
    }

    #[test]
    fn torus_verdicts_are_basis_independent(lower in proptest::collection::vec(-2i64..=2, 6),
                                            upper in proptest::collection::vec(-2i64..=2, 6),
                                            x in proptest::collection::vec(small_q(), 16)) {
        let e = lookup("kt4").unwrap();
        let j = &e.default_structure().unwrap().structure;
        let alpha = combination(&invariant_closed(&e.presentation, j), &[1, -1, 2]);
        let l = anticommuting(j.matrix(), &x);
        let q = unitriangular_product(4, &lower, &upper);
        let (p2, j2, alpha2, l2) = change_basis(&e.presentation, j, &alpha, &l, &q);
        for mode in [ObstructionMode::PaperLiteral, ObstructionMode::Projected] {
            let before = obstruction(&e.presentation, j, &alpha, &l, 2, mode).unwrap();
            let after = obstruction(&p2, &j2, &alpha2, &l2, 2, mode).unwrap();
            prop_assert_eq!(before.solvable(), after.solvable());
        }
    }
}

/// `(1 + strictly lower)(1 + strictly upper)`, invertible over ℤ.
fn unitriangular_product(n: usize, lower: &[i64], upper: &[i64]) -> Matrix<Q> {
    let mut lo = Matrix::<Q>::identity(n);
    let mut up = Matrix::<Q>::identity(n);
    let mut it = 0;
    for r in 0..n {
        for c in 0..r {
            lo[(r, c)] = Q::from(lower[it]);
            up[(c, r)] = Q::from(upper[it]);
            it += 1;
        }
    }
    lo.mul(&up)
}

/// Rewrite everything on the coframe `f^i = Σ_j Q_ij e^j`.
fn change_basis(
    p: &Presentation,
    j: &AlmostComplexStructure,
    alpha: &Form<Gq>,
    l: &Matrix<Gq>,
    q: &Matrix<Q>,
) -> (Presentation, AlmostComplexStructure, Form<Gq>, Matrix<Gq>) {
    let dim = p.dim();
    let qinv = q.inverse().unwrap();
    // Forms on e ↦ the same forms written on f.
    let to_f = |a: &Form<Q>| a.pullback_endo(&qinv);
    let images: Vec<Form<Q>> = (1..=dim)
        .map(|i| to_f(&p.d(&Form::<Q>::e(dim, &[i]).pullback_endo(q))))
        .collect();
    let p2 = Presentation::new(images).unwrap();
    let qc = q.map(|x| Gq::from(x.clone()));
    let qinvc = qinv.map(|x| Gq::from(x.clone()));
    let coframe: Vec<Form<Gq>> = j.coframe().iter().map(|f| f.pullback_endo(&qinvc)).collect();
    let j2 = AlmostComplexStructure::from_coframe(&coframe).unwrap();
    assert_eq!(j2.matrix(), &qc.mul(j.matrix()).mul(&qinvc));
    let l2 = qc.mul(l).mul(&qinvc);
    (p2, j2, alpha.pullback_endo(&qinvc), l2)
}

#[test]
fn identity_change_of_basis_is_trivial() {
    let e = lookup("n6c1").unwrap();
    let j = &e.default_structure().unwrap().structure;
    let (p2, j2, a2, l2) = change_basis(
        &e.presentation,
        j,
        &Form::e(6, &[1, 4]),
        e.direction("b13").unwrap(),
        &Matrix::identity(6),
    );
    assert_eq!(p2, e.presentation);
    assert_eq!(j2.matrix(), j.matrix());
    assert_eq!(a2, Form::e(6, &[1, 4]));
    assert_eq!(&l2, e.direction("b13").unwrap());
}
