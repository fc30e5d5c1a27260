//! The exterior algebra `Λ•V*` of a finite-dimensional real vector space,
//! with coefficients in any [`Scalar`] tower.
//!
//! A [`Form`] is a sparse map from [`Mono`] bitmasks to coefficients. The
//! coframe element `e^i` (1-based in notation) is bit `i - 1`. Forms need not
//! be homogeneous; [`Form::degree`] returns `None` for mixed degrees.
//!
//! Evaluation on frame vectors is determinant-normalized:
//! `e^{i₁…i_k}(ϑ_{i₁}, …, ϑ_{i_k}) = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::basis::{full_mask, wedge_sign, Basis, Mono};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Gq, Scalar, Q};

#[derive(Clone, PartialEq)]
pub struct Form<S = Gq> {
    dim: usize,
    terms: BTreeMap<Mono, S>,
}

impl<S: Scalar> Form<S> {
    pub fn zero(dim: usize) -> Form<S> {
        assert!(dim <= 32, "at most 32 generators are supported");
        Form {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: S) -> Form<S> {
        Form::term(dim, Mono(0), c)
    }

    pub fn one(dim: usize) -> Form<S> {
        Form::constant(dim, S::one())
    }

    /// `c · e^m`.
    pub fn term(dim: usize, m: Mono, c: S) -> Form<S> {
        let mut f = Form::zero(dim);
        f.add_term(m, c);
        f
    }

    /// `e^{i₁…i_k}` from 1-based indices, with the sign of the given order.
    ///
    /// ```
    /// use acscohom::{Form, Gq};
    /// let a: Form<Gq> = Form::e(4, &[2, 1]);
    /// assert_eq!(a, -Form::e(4, &[1, 2]));
    /// ```
    pub fn e(dim: usize, indices: &[usize]) -> Form<S> {
        let mut out = Form::one(dim);
        for &i in indices {
            assert!((1..=dim).contains(&i), "index {i} out of range 1..={dim}");
            out = out.wedge(&Form::term(dim, Mono(1 << (i - 1)), S::one()));
        }
        out
    }

    /// The degree-1 form `Σ vᵢ e^i`.
    pub fn from_covector(v: &[S]) -> Form<S> {
        let mut f = Form::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            f.add_term(Mono(1 << i), c.clone());
        }
        f
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Mono, S)>) -> Form<S> {
        let mut f = Form::zero(dim);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// Coefficients on a homogeneous basis.
    pub fn from_vector(basis: &Basis, v: &[S]) -> Form<S> {
        Form::from_terms(basis.dim, basis.monos().iter().copied().zip(v.iter().cloned()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> S {
        self.terms.get(&m).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of `e^{i₁…i_k}` for increasing 1-based indices.
    pub fn coeff_of(&self, indices: &[usize]) -> S {
        self.coeff(Mono::from_indices(&indices.iter().map(|i| i - 1).collect::<Vec<_>>()))
    }

    pub fn add_term(&mut self, m: Mono, c: S) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.0 & !full_mask(self.dim) == 0, "monomial outside the space");
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `Some(k)` when every term has degree `k`; the zero form has every
    /// degree and reports `None`.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    /// The degree-`k` component.
    pub fn part(&self, k: usize) -> Form<S> {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Coefficient vector on `basis`; panics on terms outside it.
    pub fn to_vector(&self, basis: &Basis) -> Vec<S> {
        let mut v = vec![S::zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis
                .position(*m)
                .expect("form has a component outside the requested degree");
            v[i] = c.clone();
        }
        v
    }

    pub fn scale(&self, c: &S) -> Form<S> {
        Form::from_terms(self.dim, self.terms.iter().map(|(m, v)| (*m, v.clone() * c)))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Form<T> {
        Form::from_terms(self.dim, self.terms.iter().map(|(m, v)| (*m, f(v))))
    }

    pub fn wedge(&self, rhs: &Form<S>) -> Form<S> {
        self.checked_wedge(rhs).expect("wedge of forms on different spaces")
    }

    pub fn checked_wedge(&self, rhs: &Form<S>) -> Result<Form<S>> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let mut out = Form::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                match wedge_sign(*a, *b) {
                    0 => {}
                    1 => out.add_term(a.union(*b), x.clone() * y),
                    _ => out.add_term(a.union(*b), -(x.clone() * y)),
                }
            }
        }
        Ok(out)
    }

    /// `self^{∧k}`.
    pub fn power(&self, k: usize) -> Form<S> {
        let mut out = Form::one(self.dim);
        for _ in 0..k {
            out = out.wedge(self);
        }
        out
    }

    /// `self^{∧k} / k!`.
    pub fn divided_power(&self, k: usize) -> Form<S> {
        let mut fact = Q::from(1);
        for j in 2..=k as i64 {
            fact = fact * Q::from(j);
        }
        self.power(k).scale(&S::from_rational(&(Q::from(1) / fact)))
    }

    pub fn conjugate(&self) -> Form<S> {
        self.map(S::conj)
    }

    pub fn is_conjugation_fixed(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.conj() == *c)
    }

    /// `φ ↦ φ(A·, …, A·)` for a frame endomorphism `A`.
    ///
    /// On generators `e^i ↦ Σ_j A_ij e^j`, extended multiplicatively, so
    /// `pullback_endo(φ, AB) = pullback_endo(pullback_endo(φ, A), B)`.
    pub fn pullback_endo(&self, a: &Matrix<S>) -> Form<S> {
        self.checked_pullback_endo(a)
            .expect("endomorphism size does not match the form")
    }

    pub fn checked_pullback_endo(&self, a: &Matrix<S>) -> Result<Form<S>> {
        if a.nrows() != self.dim || a.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.nrows(),
            });
        }
        let images: Vec<Form<S>> = (0..self.dim).map(|i| Form::from_covector(a.row(i))).collect();
        Ok(self.substitute(&images))
    }

    /// Replace each generator `e^i` by `images[i]` (any forms) and expand.
    pub fn substitute(&self, images: &[Form<S>]) -> Form<S> {
        assert_eq!(images.len(), self.dim, "one image per generator");
        let target_dim = images.first().map_or(self.dim, Form::dim);
        let mut out = Form::zero(target_dim);
        for (m, c) in &self.terms {
            let mut prod = Form::constant(target_dim, c.clone());
            for i in m.indices() {
                prod = prod.wedge(&images[i]);
                if prod.is_zero() {
                    break;
                }
            }
            out += prod;
        }
        out
    }

    /// Interior product `ι_X` with a frame vector given by components.
    pub fn interior(&self, x: &[S]) -> Form<S> {
        assert_eq!(x.len(), self.dim, "vector length");
        let mut out = Form::zero(self.dim);
        for (m, c) in &self.terms {
            for (pos, i) in m.indices().enumerate() {
                if x[i].is_zero() {
                    continue;
                }
                let v = c.clone() * &x[i];
                let rest = Mono(m.0 & !(1 << i));
                out.add_term(rest, if pos % 2 == 0 { v } else { -v });
            }
        }
        out
    }

    /// `φ(X₁, …, X_k)` for a homogeneous `k`-form.
    pub fn evaluate(&self, vectors: &[Vec<S>]) -> S {
        let mut f = self.part(vectors.len());
        for x in vectors {
            f = f.interior(x);
        }
        f.coeff(Mono(0))
    }

    /// The antisymmetric matrix `M_ij = α(ϑ_i, ϑ_j)` of the degree-2 part.
    pub fn bilinear_matrix(&self) -> Matrix<S> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (mono, c) in &self.terms {
            if mono.degree() != 2 {
                continue;
            }
            let mut it = mono.indices();
            let (i, j) = (it.next().unwrap(), it.next().unwrap());
            m[(i, j)] = c.clone();
            m[(j, i)] = -c.clone();
        }
        m
    }

    /// The 2-form whose matrix is the antisymmetric part of `m`.
    pub fn from_bilinear_matrix(m: &Matrix<S>) -> Form<S> {
        let dim = m.nrows();
        let half = S::from_rational(&Q::new(1, 2));
        let mut f = Form::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = (m[(i, j)].clone() - &m[(j, i)]) * &half;
                f.add_term(Mono((1 << i) | (1 << j)), v);
            }
        }
        f
    }

    /// `(X, Y) ↦ α(LX, Y) + α(X, LY)` for the degree-2 part `α` of `self`.
    pub fn twist(&self, l: &Matrix<S>) -> Form<S> {
        assert_eq!(l.nrows(), self.dim, "endomorphism size");
        let m = self.bilinear_matrix();
        let n = l.transpose().mul(&m).add(&m.mul(l));
        let mut f = Form::zero(self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                f.add_term(Mono((1 << i) | (1 << j)), n[(i, j)].clone());
            }
        }
        f
    }

    /// Drop every term whose index set meets `mask`'s complement.
    pub fn restrict_support(&self, keep: impl Fn(Mono) -> bool) -> Form<S> {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }
}

impl Form<Q> {
    pub fn complexify(&self) -> Form<Gq> {
        self.map(|c| Gq::real(c.clone()))
    }
}

impl Form<Gq> {
    pub fn re(&self) -> Form<Q> {
        self.map(|c| c.re.clone())
    }

    pub fn im(&self) -> Form<Q> {
        self.map(|c| c.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Gq::is_real)
    }

    pub fn to_real(&self) -> Result<Form<Q>> {
        if self.is_real() {
            Ok(self.re())
        } else {
            Err(Error::NotReal)
        }
    }
}

impl<S: Scalar> Add for Form<S> {
    type Output = Form<S>;
    fn add(mut self, rhs: Form<S>) -> Form<S> {
        self += rhs;
        self
    }
}

impl<S: Scalar> Add<&Form<S>> for &Form<S> {
    type Output = Form<S>;
    fn add(self, rhs: &Form<S>) -> Form<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> Sub for Form<S> {
    type Output = Form<S>;
    fn sub(mut self, rhs: Form<S>) -> Form<S> {
        self -= rhs;
        self
    }
}

impl<S: Scalar> Sub<&Form<S>> for &Form<S> {
    type Output = Form<S>;
    fn sub(self, rhs: &Form<S>) -> Form<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Scalar> AddAssign<&Form<S>> for Form<S> {
    fn add_assign(&mut self, rhs: &Form<S>) {
        assert_eq!(self.dim, rhs.dim, "sum of forms on different spaces");
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<S: Scalar> AddAssign for Form<S> {
    fn add_assign(&mut self, rhs: Form<S>) {
        assert_eq!(self.dim, rhs.dim, "sum of forms on different spaces");
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<S: Scalar> SubAssign<&Form<S>> for Form<S> {
    fn sub_assign(&mut self, rhs: &Form<S>) {
        assert_eq!(self.dim, rhs.dim, "difference of forms on different spaces");
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<S: Scalar> SubAssign for Form<S> {
    fn sub_assign(&mut self, rhs: Form<S>) {
        *self -= &rhs;
    }
}

impl<S: Scalar> Neg for Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar> Neg for &Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        self.map(|c| -c.clone())
    }
}

/// Writes the 1-based index list of `m`: `134` when `dim ≤ 9`, otherwise
/// `(1,3,10)`.
pub fn fmt_indices(m: Mono, dim: usize) -> String {
    let idx: Vec<String> = m.indices().map(|i| (i + 1).to_string()).collect();
    if dim <= 9 {
        idx.concat()
    } else {
        format!("({})", idx.join(","))
    }
}

pub(crate) fn fmt_terms<'a, S: Scalar + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Mono, &'a S)>,
    dim: usize,
    letter: &str,
) -> fmt::Result {
    let mut first = true;
    for (m, c) in terms {
        let s = c.to_string();
        let basis = if m.0 == 0 {
            String::new()
        } else {
            format!("{letter}{}", fmt_indices(*m, dim))
        };
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, s),
        };
        let needs_parens = body.contains(['+', '-']) && !basis.is_empty();
        let coeff = if needs_parens { format!("({body})") } else { body };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match (coeff.as_str(), basis.is_empty()) {
            ("1", false) => write!(f, "{basis}")?,
            (_, false) => write!(f, "{coeff} {basis}")?,
            (_, true) => write!(f, "{coeff}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<S: Scalar> fmt::Display for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter(), self.dim, "e")
    }
}

impl<S: Scalar> fmt::Debug for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({self})", self.dim)
    }
}

/// An element of `Λ•V`, the exterior algebra of the frame. Invariant
/// currents are modeled by these.
///
/// Pairing with forms is `⟨e^I, ϑ_J⟩ = δ_IJ`.
#[derive(Clone, PartialEq)]
pub struct Multivector<S = Gq>(pub Form<S>);

impl<S: Scalar> Multivector<S> {
    pub fn pair(&self, form: &Form<S>) -> S {
        pair(form, &self.0)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// `Σ_I a_I b_I` with no conjugation.
pub fn pair<S: Scalar>(a: &Form<S>, b: &Form<S>) -> S {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut acc = S::zero();
    for (m, c) in small.terms() {
        if let Some(d) = large.terms.get(m) {
            acc += c.clone() * d;
        }
    }
    acc
}

impl<S: Scalar> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.0.terms.iter(), self.0.dim, "v")
    }
}

impl<S: Scalar> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector[{}]({self})", self.0.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(idx: &[usize]) -> Form<Gq> {
        Form::e(6, idx)
    }

    #[test]
    fn wedge_basics() {
        assert_eq!(e(&[1]).wedge(&e(&[2])), e(&[1, 2]));
        assert!(e(&[1, 2]).wedge(&e(&[1, 2])).is_zero());
        let a = e(&[1]) + e(&[2]);
        let b = e(&[3]) + e(&[4]);
        assert_eq!(a.wedge(&b), e(&[1, 3]) + e(&[1, 4]) + e(&[2, 3]) + e(&[2, 4]));
    }

    #[test]
    fn conjugate_coframe() {
        let phi = e(&[1]) + e(&[4]).scale(&Gq::i());
        assert_eq!(phi.conjugate(), e(&[1]) - e(&[4]).scale(&Gq::i()));
        let x = e(&[1, 2]).scale(&Gq::i());
        assert_eq!(x.conjugate(), -x.clone());
    }

    fn block_j() -> Matrix<Gq> {
        let mut j = Matrix::zeros(6, 6);
        for i in 0..3 {
            j[(i + 3, i)] = Gq::int(1);
            j[(i, i + 3)] = Gq::int(-1);
        }
        j
    }

    #[test]
    fn pullback_by_block_j() {
        let j = block_j();
        // Direct evaluation: (e13∘J)(ϑ_a, ϑ_b) = e13(Jϑ_a, Jϑ_b).
        let got = e(&[1, 3]).pullback_endo(&j);
        let mut oracle = Form::zero(6);
        for a in 0..6 {
            for b in a + 1..6 {
                let v = e(&[1, 3]).evaluate(&[j.col(a), j.col(b)]);
                oracle.add_term(Mono((1 << a) | (1 << b)), v);
            }
        }
        assert_eq!(got, oracle);
        assert_eq!(got, e(&[4, 6]));
    }

    #[test]
    fn twist_example() {
        let mut l = Matrix::zeros(6, 6);
        l[(0, 5)] = Gq::int(1);
        l[(3, 2)] = Gq::int(1);
        assert_eq!(e(&[1, 4]).twist(&l), e(&[1, 3]) - e(&[4, 6]));
        assert_eq!(e(&[1, 4]).twist(&Matrix::identity(6)), e(&[1, 4]).scale(&Gq::int(2)));
    }

    #[test]
    fn interior_and_evaluate() {
        let x = vec![Gq::int(1), Gq::int(0), Gq::int(0), Gq::int(0), Gq::int(0), Gq::int(0)];
        let y = vec![Gq::int(0), Gq::int(1), Gq::int(0), Gq::int(0), Gq::int(0), Gq::int(0)];
        assert_eq!(e(&[1, 2]).evaluate(&[x.clone(), y.clone()]), Gq::int(1));
        assert_eq!(e(&[1, 2]).evaluate(&[y, x]), Gq::int(-1));
    }

    #[test]
    fn divided_power_halves_square() {
        let w = e(&[1, 2]) + e(&[3, 4]);
        assert_eq!(w.divided_power(2), e(&[1, 2, 3, 4]));
        assert_eq!(w.power(2), e(&[1, 2, 3, 4]).scale(&Gq::int(2)));
    }

    #[test]
    fn display() {
        let f = e(&[1, 3]) - e(&[4, 6]).scale(&Gq::ratio(3, 2));
        assert_eq!(f.to_string(), "e13 - 3/2 e46");
        let g = e(&[2]).scale(&Gq::new(Q::from(1), Q::from(2)));
        assert_eq!(g.to_string(), "(1+2 i) e2");
        let h: Form<Gq> = Form::e(10, &[1, 10]);
        assert_eq!(h.to_string(), "e(1,10)");
    }
}
