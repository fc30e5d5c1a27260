//! Invariant almost-complex structures, bidegree decomposition and
//! integrability.
//!
//! `J` is a frame endomorphism. The dual action is `J*φ = φ ∘ J`, and a
//! (1,0)-form satisfies `J*φ = iφ`. The matrix `Θ` has the (1,0)-coframe
//! `φ^1…φ^n` as its first rows and `φ̄^1…φ̄^n` as the rest, so
//! `J = Θ⁻¹ diag(i,…,i,−i,…,−i) Θ`.
//!
//! Forms written on `φ, φ̄` (the "θ-basis") use bit `a-1` for `φ^a` and bit
//! `n+a-1` for `φ̄^a`; the monomial for `φ^{A B̄}` then carries no sign.

use crate::basis::{full_mask, Basis, Mono};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::lie::Presentation;
use crate::linalg::Matrix;
use crate::scalar::{Gq, Scalar, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct AlmostComplexStructure {
    n: usize,
    j: Matrix<Gq>,
    coframe: Vec<Form<Gq>>,
    theta: Matrix<Gq>,
    theta_inv: Matrix<Gq>,
}

fn covector(f: &Form<Gq>) -> Vec<Gq> {
    (0..f.dim()).map(|i| f.coeff(Mono(1 << i))).collect()
}

impl AlmostComplexStructure {
    /// The structure whose (1,0)-forms are spanned by `spec`.
    ///
    /// ```
    /// use acscohom::{AlmostComplexStructure, Form, Gq};
    /// let phi = Form::e(2, &[1]) + Form::e(2, &[2]).scale(&Gq::i());
    /// let j = AlmostComplexStructure::from_coframe(&[phi]).unwrap();
    /// // J*e^1 = −e^2
    /// assert_eq!(Form::e(2, &[1]).pullback_endo(j.matrix()), -Form::e(2, &[2]));
    /// ```
    pub fn from_coframe(spec: &[Form<Gq>]) -> Result<AlmostComplexStructure> {
        let n = spec.len();
        let dim = 2 * n;
        if n == 0 {
            return Err(Error::NotSpanning { rank: 0, needed: 0 });
        }
        for f in spec {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: f.dim(),
                });
            }
            if !f.is_homogeneous_of(1) || f.is_zero() {
                return Err(Error::DegreeMismatch {
                    expected: 1,
                    found: f.to_string(),
                });
            }
        }
        let mut rows: Vec<Vec<Gq>> = spec.iter().map(covector).collect();
        rows.extend(spec.iter().map(|f| covector(&f.conjugate())));
        let theta = Matrix::from_rows(rows);
        let theta_inv = theta.inverse().ok_or_else(|| Error::NotSpanning {
            rank: theta.rank(),
            needed: dim,
        })?;
        let mut d = Matrix::zeros(dim, dim);
        for a in 0..n {
            d[(a, a)] = Gq::i();
            d[(n + a, n + a)] = -Gq::i();
        }
        let j = theta_inv.mul(&d).mul(&theta);
        Ok(AlmostComplexStructure {
            n,
            j,
            coframe: spec.to_vec(),
            theta,
            theta_inv,
        })
    }

    /// From a frame endomorphism with `J² = −id`.
    pub fn from_matrix(j: Matrix<Gq>) -> Result<AlmostComplexStructure> {
        if !j.is_square() || !j.nrows().is_multiple_of(2) {
            return Err(Error::NotComplexStructure);
        }
        let dim = j.nrows();
        let n = dim / 2;
        if j.mul(&j) != Matrix::identity(dim).scale(&Gq::int(-1)) {
            return Err(Error::NotComplexStructure);
        }
        let jt = j.transpose();
        let shifted = |s: Gq| jt.sub(&Matrix::identity(dim).scale(&s));
        let plus = shifted(Gq::i()).kernel();
        let minus = if j.conj() == j {
            plus.iter().map(|v| v.iter().map(Gq::conj).collect()).collect()
        } else {
            shifted(-Gq::i()).kernel()
        };
        if plus.len() != n || minus.len() != n {
            return Err(Error::NotComplexStructure);
        }
        let coframe: Vec<Form<Gq>> = plus.iter().map(|v| Form::from_covector(v)).collect();
        let mut rows = plus;
        rows.extend(minus);
        let theta = Matrix::from_rows(rows);
        let theta_inv = theta.inverse().ok_or(Error::Singular)?;
        Ok(AlmostComplexStructure {
            n,
            j,
            coframe,
            theta,
            theta_inv,
        })
    }

    pub fn from_real_matrix(j: &Matrix<Q>) -> Result<AlmostComplexStructure> {
        AlmostComplexStructure::from_matrix(j.map(|q| Gq::real(q.clone())))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `J` as a frame endomorphism.
    pub fn matrix(&self) -> &Matrix<Gq> {
        &self.j
    }

    /// The (1,0)-coframe `φ^1, …, φ^n`.
    pub fn coframe(&self) -> &[Form<Gq>] {
        &self.coframe
    }

    /// `φ̄^1, …, φ̄^n` as forms on the real coframe.
    pub fn conjugate_coframe(&self) -> Vec<Form<Gq>> {
        (0..self.n)
            .map(|a| Form::from_covector(self.theta.row(self.n + a)))
            .collect()
    }

    pub fn theta(&self) -> &Matrix<Gq> {
        &self.theta
    }

    pub fn theta_inv(&self) -> &Matrix<Gq> {
        &self.theta_inv
    }

    pub fn is_real(&self) -> bool {
        self.j.conj() == self.j
    }

    /// `J*a = a(J·, …, J·)`.
    pub fn act(&self, a: &Form<Gq>) -> Form<Gq> {
        a.pullback_endo(&self.j)
    }

    /// Rewrite a form on the `φ, φ̄` coframe.
    pub fn to_theta(&self, a: &Form<Gq>) -> Form<Gq> {
        a.pullback_endo(&self.theta_inv)
    }

    /// Inverse of [`to_theta`](Self::to_theta).
    pub fn from_theta(&self, b: &Form<Gq>) -> Form<Gq> {
        b.pullback_endo(&self.theta)
    }

    /// The bidegree of a θ-basis monomial.
    pub fn bidegree(&self, m: Mono) -> (usize, usize) {
        let low = full_mask(self.n);
        ((m.0 & low).count_ones() as usize, (m.0 >> self.n).count_ones() as usize)
    }

    /// The θ-basis monomial `φ^A ∧ φ̄^B` from 1-based index lists.
    pub fn theta_mono(&self, a: &[usize], b: &[usize]) -> Mono {
        let mut m = 0u32;
        for &i in a {
            m |= 1 << (i - 1);
        }
        for &i in b {
            m |= 1 << (self.n + i - 1);
        }
        Mono(m)
    }

    /// `φ^A ∧ φ̄^B` as a form on the real coframe.
    pub fn phi(&self, a: &[usize], b: &[usize]) -> Form<Gq> {
        let mut f = Form::one(self.dim());
        for &i in a {
            f = f.wedge(&self.coframe[i - 1]);
        }
        let bar = self.conjugate_coframe();
        for &i in b {
            f = f.wedge(&bar[i - 1]);
        }
        f
    }

    /// `π^{p,q} a`.
    pub fn type_project(&self, a: &Form<Gq>, p: usize, q: usize) -> Result<Form<Gq>> {
        if !a.is_homogeneous_of(p + q) {
            return Err(Error::DegreeMismatch {
                expected: p + q,
                found: format!("{:?}", a.degree()),
            });
        }
        let b = self.to_theta(a);
        let kept = b.restrict_support(|m| self.bidegree(m) == (p, q));
        Ok(self.from_theta(&kept))
    }

    /// Real-coframe spanning set of `Λ^{p,q}`.
    pub fn type_basis(&self, p: usize, q: usize) -> Vec<Form<Gq>> {
        Basis::new(self.dim(), p + q)
            .monos()
            .iter()
            .filter(|m| self.bidegree(**m) == (p, q))
            .map(|m| self.from_theta(&Form::term(self.dim(), *m, Gq::one())))
            .collect()
    }
}

/// `[X, Y]` for complex frame vectors.
pub fn bracket_gauss(p: &Presentation, x: &[Gq], y: &[Gq]) -> Vec<Gq> {
    let mut out = vec![Gq::zero(); p.dim()];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() || i == j {
                continue;
            }
            let c = xi.clone() * yj;
            for (o, b) in out.iter_mut().zip(p.bracket_basis(i, j)) {
                if !b.is_zero() {
                    *o += c.clone() * Gq::real(b);
                }
            }
        }
    }
    out
}

/// Nonzero values `Nij(ϑ_i, ϑ_j)` for `i < j` (0-based), where
/// `Nij(X,Y) = [JX,JY] − J[JX,Y] − J[X,JY] − [X,Y]`.
pub fn nijenhuis(p: &Presentation, j: &AlmostComplexStructure) -> Vec<((usize, usize), Vec<Gq>)> {
    let m = j.matrix();
    let dim = p.dim();
    let unit = |i: usize| -> Vec<Gq> { (0..dim).map(|k| Gq::int((k == i) as i64)).collect() };
    let mut out = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            let (x, y) = (unit(a), unit(b));
            let (jx, jy) = (m.col(a), m.col(b));
            let t1 = bracket_gauss(p, &jx, &jy);
            let t2 = m.mul_vec(&bracket_gauss(p, &jx, &y));
            let t3 = m.mul_vec(&bracket_gauss(p, &x, &jy));
            let t4 = bracket_gauss(p, &x, &y);
            let v: Vec<Gq> = (0..dim).map(|k| t1[k].clone() - &t2[k] - &t3[k] - &t4[k]).collect();
            if v.iter().any(|c| !c.is_zero()) {
                out.push(((a, b), v));
            }
        }
    }
    out
}

/// Both integrability tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Integrability {
    /// `Nij ≡ 0` on frame pairs.
    pub nijenhuis: bool,
    /// `π^{0,2} dφ^a = 0` for every (1,0)-coframe element.
    pub forms: bool,
}

pub fn integrability(p: &Presentation, j: &AlmostComplexStructure) -> Integrability {
    let forms = j.coframe().iter().all(|phi| {
        j.type_project(&p.d(phi), 0, 2)
            .expect("d of a 1-form is a 2-form")
            .is_zero()
    });
    Integrability {
        nijenhuis: nijenhuis(p, j).is_empty(),
        forms,
    }
}

/// `Nij ≡ 0`. The form-side test is computed too; a disagreement is a bug.
pub fn is_integrable(p: &Presentation, j: &AlmostComplexStructure) -> bool {
    let r = integrability(p, j);
    assert_eq!(r.nijenhuis, r.forms, "integrability tests disagree");
    r.nijenhuis
}

/// `dφ^a` written on the θ-basis.
pub fn complex_structure_equations(p: &Presentation, j: &AlmostComplexStructure) -> Vec<Form<Gq>> {
    j.coframe().iter().map(|phi| j.to_theta(&p.d(phi))).collect()
}

/// The block structure `Jϑ_i = ϑ_{i+n}`, `Jϑ_{i+n} = −ϑ_i`.
pub fn block_matrix(n: usize) -> Matrix<Q> {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i + n, i)] = Q::from(1);
        j[(i, i + n)] = Q::from(-1);
    }
    j
}

/// The coframe `e^{a} + i e^{b}` for each given 1-based pair.
pub fn pair_coframe(dim: usize, pairs: &[(usize, usize)]) -> Vec<Form<Gq>> {
    pairs
        .iter()
        .map(|&(a, b)| Form::e(dim, &[a]) + Form::e(dim, &[b]).scale(&Gq::i()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::parse_presentation;
    use crate::parse::Mode;

    fn e(dim: usize, idx: &[usize]) -> Form<Gq> {
        Form::e(dim, idx)
    }

    fn std_j(n: usize) -> AlmostComplexStructure {
        let pairs: Vec<(usize, usize)> = (0..n).map(|a| (2 * a + 1, 2 * a + 2)).collect();
        AlmostComplexStructure::from_coframe(&pair_coframe(2 * n, &pairs)).unwrap()
    }

    #[test]
    fn squares_to_minus_one() {
        let j = std_j(3);
        assert_eq!(j.matrix().mul(j.matrix()), Matrix::identity(6).scale(&Gq::int(-1)));
        for phi in j.coframe() {
            assert_eq!(j.act(phi), phi.scale(&Gq::i()));
        }
        // J*e^1 = −e^2 and so Jϑ_1 = ϑ_2 in this convention.
        assert_eq!(j.act(&e(6, &[1])), -e(6, &[2]));
        assert_eq!(j.matrix()[(1, 0)], Gq::int(1));
    }

    #[test]
    fn repeated_coframe_does_not_span() {
        let phi = e(4, &[1]) + e(4, &[2]).scale(&Gq::i());
        assert!(matches!(
            AlmostComplexStructure::from_coframe(&[phi.clone(), phi]),
            Err(Error::NotSpanning { .. })
        ));
    }

    #[test]
    fn matrix_and_coframe_agree() {
        let j = AlmostComplexStructure::from_real_matrix(&block_matrix(3)).unwrap();
        let k = AlmostComplexStructure::from_coframe(&pair_coframe(6, &[(1, 4), (2, 5), (3, 6)])).unwrap();
        assert_eq!(j.matrix(), k.matrix());
        for phi in j.coframe() {
            assert_eq!(j.act(phi), phi.scale(&Gq::i()));
        }
        let bad = Matrix::<Gq>::identity(4);
        assert!(AlmostComplexStructure::from_matrix(bad).is_err());
    }

    #[test]
    fn type_projection_on_torus() {
        let j = std_j(2);
        let e12 = e(4, &[1, 2]);
        assert!(j.type_project(&e12, 2, 0).unwrap().is_zero());
        assert_eq!(j.type_project(&e12, 1, 1).unwrap(), e12);
        // e^{12} = (i/2) φ^{1 1̄}
        assert_eq!(j.phi(&[1], &[1]).scale(&Gq::new(Q::zero(), Q::new(1, 2))), e12);
        let f = e(4, &[1, 3]) + e(4, &[2, 3]).scale(&Gq::int(5));
        let sum =
            j.type_project(&f, 2, 0).unwrap() + j.type_project(&f, 1, 1).unwrap() + j.type_project(&f, 0, 2).unwrap();
        assert_eq!(sum, f);
        assert!(j.type_project(&f, 1, 0).is_err());
    }

    #[test]
    fn kt4_is_not_integrable() {
        let p = parse_presentation("(0^2, 14, 12)", Mode::Real).unwrap();
        let j = std_j(2);
        let nij = nijenhuis(&p, &j);
        assert!(nij.iter().any(|((a, b), _)| (*a, *b) == (0, 2)));
        assert!(!is_integrable(&p, &j));
    }

    #[test]
    fn iwasawa_equations() {
        let p = parse_presentation("(0, 0, -12)", Mode::Complex).unwrap();
        let j = AlmostComplexStructure::from_coframe(&p.complex_coframe().unwrap()).unwrap();
        let eqs = complex_structure_equations(&p, &j);
        assert!(eqs[0].is_zero() && eqs[1].is_zero());
        assert_eq!(eqs[2], -Form::term(6, j.theta_mono(&[1, 2], &[]), Gq::one()));
        assert!(is_integrable(&p, &j));
    }
}
