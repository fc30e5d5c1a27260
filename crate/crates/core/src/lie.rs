//! Lie algebras given by structure equations, and their Chevalley–Eilenberg
//! differential.
//!
//! A [`Presentation`] stores `d e^k` for a real coframe `e^1, …, e^m`. The
//! dual frame `ϑ_1, …, ϑ_m` has brackets `e^k([ϑ_i, ϑ_j]) = −(d e^k)(ϑ_i, ϑ_j)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::basis::{wedge_sign, Basis, Mono};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::linalg::{span, Matrix};
use crate::parse::{parse_presentation_text, Mode};
use crate::poly::Poly;
use crate::scalar::{Gq, Scalar, Q};

/// Largest dimension for which the per-degree differential matrices are
/// cached.
const CACHE_DIM: usize = 16;

#[derive(Clone)]
pub struct Presentation {
    dim: usize,
    mode: Mode,
    images: Vec<Form<Q>>,
    complex_images: Option<Vec<Form<Gq>>>,
    matrices: Vec<OnceLock<Arc<Matrix<Gq>>>>,
}

impl Presentation {
    /// Build and validate `d² = 0` on generators.
    pub fn new(images: Vec<Form<Q>>) -> Result<Presentation> {
        let p = Presentation::new_unchecked(images)?;
        p.validate_jacobi()?;
        Ok(p)
    }

    /// Build without the Jacobi check; [`check_presentation`] reports the
    /// failure instead.
    pub fn new_unchecked(images: Vec<Form<Q>>) -> Result<Presentation> {
        let dim = images.len();
        if dim == 0 || dim > CACHE_DIM {
            return Err(Error::Config(format!("dimension {dim} is outside 1..={CACHE_DIM}")));
        }
        for img in &images {
            if img.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: img.dim(),
                });
            }
            if !img.is_homogeneous_of(2) {
                return Err(Error::DegreeMismatch {
                    expected: 2,
                    found: img.to_string(),
                });
            }
        }
        Ok(Presentation {
            dim,
            mode: Mode::Real,
            images,
            complex_images: None,
            matrices: (0..=dim).map(|_| OnceLock::new()).collect(),
        })
    }

    /// From `d φ^a` on `φ^1…φ^n, φ̄^1…φ̄^n`, realified through
    /// `φ^a = e^{2a-1} + i e^{2a}`.
    pub fn from_complex(images: Vec<Form<Gq>>) -> Result<Presentation> {
        let n = images.len();
        let real_dim = 2 * n;
        let subst = complex_to_real_substitution(n);
        let mut real = Vec::with_capacity(real_dim);
        for img in &images {
            if img.dim() != real_dim {
                return Err(Error::DimensionMismatch {
                    expected: real_dim,
                    found: img.dim(),
                });
            }
            let f = img.substitute(&subst);
            real.push(f.re());
            real.push(f.im());
        }
        let mut p = Presentation::new(real)?;
        p.mode = Mode::Complex;
        p.complex_images = Some(images);
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Half the dimension (rounded down).
    pub fn n(&self) -> usize {
        self.dim / 2
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `d e^k` for `k` in `1..=dim`.
    pub fn de(&self, k: usize) -> &Form<Q> {
        &self.images[k - 1]
    }

    pub fn images(&self) -> &[Form<Q>] {
        &self.images
    }

    /// The stored `d φ^a` in complex mode.
    pub fn complex_images(&self) -> Option<&[Form<Gq>]> {
        self.complex_images.as_deref()
    }

    /// In complex mode, the coframe `φ^a = e^{2a-1} + i e^{2a}` the entries
    /// refer to.
    pub fn complex_coframe(&self) -> Option<Vec<Form<Gq>>> {
        self.complex_images.as_ref().map(|_| {
            (0..self.n())
                .map(|a| Form::e(self.dim, &[2 * a + 1]) + Form::e(self.dim, &[2 * a + 2]).scale(&Gq::i()))
                .collect()
        })
    }

    /// `d` on a single monomial, as `(mono, coefficient)` pairs.
    fn d_mono(&self, m: Mono) -> Vec<(Mono, Q)> {
        let mut out: Vec<(Mono, Q)> = Vec::new();
        for (r, i) in m.indices().enumerate() {
            let before = Mono(m.0 & ((1u32 << i) - 1));
            let after = Mono(m.0 & !((1u32 << (i + 1)) - 1));
            let rest = Mono(before.0 | after.0);
            for (p, c) in self.images[i].terms() {
                if !p.is_disjoint(rest) {
                    continue;
                }
                let s = wedge_sign(before, *p) * wedge_sign(before.union(*p), after);
                let s = if r % 2 == 0 { s } else { -s };
                let target = rest.union(*p);
                let v = if s > 0 { c.clone() } else { -c.clone() };
                match out.iter_mut().find(|(t, _)| *t == target) {
                    Some((_, acc)) => *acc += v,
                    None => out.push((target, v)),
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }

    /// The Chevalley–Eilenberg differential on any form.
    pub fn d<S: Scalar>(&self, a: &Form<S>) -> Form<S> {
        self.checked_d(a).expect("form lives on a different space")
    }

    pub fn checked_d<S: Scalar>(&self, a: &Form<S>) -> Result<Form<S>> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        let mut out = Form::zero(self.dim);
        for (m, c) in a.terms() {
            for (t, v) in self.d_mono(*m) {
                out.add_term(t, c.clone() * S::from_rational(&v));
            }
        }
        Ok(out)
    }

    /// Matrix of `d: Λ^k → Λ^{k+1}` on the lexicographic bases; column `j`
    /// is `d` of the `j`-th monomial.
    pub fn d_matrix(&self, k: usize) -> Arc<Matrix<Gq>> {
        assert!(k <= self.dim, "degree {k} exceeds the dimension");
        Arc::clone(self.matrices[k].get_or_init(|| {
            let src = Basis::new(self.dim, k);
            let dst = Basis::new(self.dim, k + 1);
            let mut m = Matrix::zeros(dst.len(), src.len());
            for (j, &mono) in src.monos().iter().enumerate() {
                for (t, v) in self.d_mono(mono) {
                    let i = dst.position(t).expect("d raises degree by one");
                    m[(i, j)] = Gq::real(v);
                }
            }
            Arc::new(m)
        }))
    }

    fn validate_jacobi(&self) -> Result<()> {
        for k in 1..=self.dim {
            let dd = self.d(self.de(k));
            if !dd.is_zero() {
                return Err(Error::Jacobi {
                    index: k,
                    value: dd.to_string(),
                });
            }
        }
        Ok(())
    }

    /// `[ϑ_i, ϑ_j]` (0-based) as frame components.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Q> {
        let m = Mono((1 << i) | (1 << j));
        let sign = if i < j { Q::from(-1) } else { Q::from(1) };
        (0..self.dim)
            .map(|k| {
                if i == j {
                    Q::zero()
                } else {
                    self.images[k].coeff(m) * &sign
                }
            })
            .collect()
    }

    /// `[X, Y]` for frame-component vectors.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi.clone() * yj;
                for (o, b) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                    if !b.is_zero() {
                        *o += c.clone() * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_{ϑ_i}` on the frame.
    pub fn ad(&self, i: usize) -> Matrix<Q> {
        let cols: Vec<Vec<Q>> = (0..self.dim).map(|j| self.bracket_basis(i, j)).collect();
        Matrix::from_cols(&cols, self.dim)
    }

    /// Salamon-style listing of the real structure equations.
    pub fn notation(&self) -> String {
        let entries: Vec<String> = self
            .images
            .iter()
            .map(|f| {
                if f.is_zero() {
                    return "0".to_string();
                }
                let mut s = String::new();
                for (idx, (m, c)) in f.terms().enumerate() {
                    let neg = c.is_negative();
                    let a = c.abs();
                    if neg {
                        s.push('-');
                    } else if idx > 0 {
                        s.push('+');
                    }
                    if !a.is_one() {
                        s.push_str(&format!("{a}*"));
                    }
                    let ind: Vec<String> = m.indices().map(|i| (i + 1).to_string()).collect();
                    if self.dim <= 9 {
                        s.push_str(&ind.concat());
                    } else {
                        s.push_str(&ind.join("^"));
                    }
                }
                s
            })
            .collect();
        format!("({})", entries.join(","))
    }
}

/// Images of `φ^a ↦ e^{2a-1} + i e^{2a}`, `φ̄^a ↦ e^{2a-1} − i e^{2a}`.
fn complex_to_real_substitution(n: usize) -> Vec<Form<Gq>> {
    let dim = 2 * n;
    let mut subst = Vec::with_capacity(dim);
    for sign in [1, -1] {
        for a in 0..n {
            subst.push(
                Form::e(dim, &[2 * a + 1]) + Form::e(dim, &[2 * a + 2]).scale(&Gq::new(Q::zero(), Q::from(sign))),
            );
        }
    }
    subst
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Presentation{}", self.notation())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.notation())
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Presentation) -> bool {
        self.images == other.images
    }
}

/// Parse structure equations (see [`crate::parse`] for the grammar).
///
/// ```
/// use acscohom::lie::parse_presentation;
/// use acscohom::parse::Mode;
/// let n1 = parse_presentation("(0^3, 12, 14, 24)", Mode::Real).unwrap();
/// assert_eq!(n1.de(5).to_string(), "e14");
/// ```
pub fn parse_presentation(text: &str, mode: Mode) -> Result<Presentation> {
    let raw = parse_presentation_text(text, mode)?;
    match mode {
        Mode::Real => Presentation::new(
            raw.images
                .iter()
                .map(|f| f.to_real())
                .collect::<Result<Vec<_>>>()
                .map_err(|_| Error::Parse {
                    pos: 0,
                    msg: "complex coefficients need complex mode".into(),
                })?,
        ),
        Mode::Complex => Presentation::from_complex(raw.images),
    }
}

/// Structural flags of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub jacobi: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    /// Solvable and every `ad_{ϑ_i}` has only real eigenvalues. Necessary for
    /// complete solvability, not sufficient.
    pub completely_solvable_heuristic: bool,
    pub unimodular: bool,
    /// Dimensions of the lower central series, starting with `g`.
    pub lower_central: Vec<usize>,
    /// Dimensions of the derived series, starting with `g`.
    pub derived: Vec<usize>,
}

fn bracket_span(p: &Presentation, a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut vs = Vec::new();
    for x in a {
        for y in b {
            let z = p.bracket(x, y);
            if z.iter().any(|c| !c.is_zero()) {
                vs.push(z);
            }
        }
    }
    span(&vs, p.dim()).0
}

/// Iterate `V ↦ [A(V), V]` until the dimension stabilises.
fn series(p: &Presentation, lower: bool) -> Vec<usize> {
    let whole: Vec<Vec<Q>> = (0..p.dim())
        .map(|i| (0..p.dim()).map(|j| Q::from((i == j) as i64)).collect())
        .collect();
    let mut dims = vec![p.dim()];
    let mut cur = whole.clone();
    loop {
        let next = if lower {
            bracket_span(p, &whole, &cur)
        } else {
            bracket_span(p, &cur, &cur)
        };
        if next.len() == cur.len() {
            break;
        }
        dims.push(next.len());
        cur = next;
        if cur.is_empty() {
            break;
        }
    }
    dims
}

/// Run the structural checks. Never fails; failures are flags.
pub fn check_presentation(p: &Presentation) -> StructureReport {
    let jacobi = p.validate_jacobi().is_ok();
    let lower_central = series(p, true);
    let derived = series(p, false);
    let nilpotent = jacobi && *lower_central.last().unwrap() == 0;
    let solvable = jacobi && *derived.last().unwrap() == 0;
    let unimodular = (0..p.dim()).all(|i| p.ad(i).trace().is_zero());
    let completely_solvable_heuristic =
        solvable && (0..p.dim()).all(|i| Poly::new(p.ad(i).charpoly()).all_roots_real());
    StructureReport {
        jacobi,
        nilpotent,
        solvable,
        completely_solvable_heuristic,
        unimodular,
        lower_central,
        derived,
    }
}

/// A derivation of the exterior algebra determined by the images of the
/// generators (which may have any degree).
#[derive(Clone)]
pub struct Derivation<S: Scalar> {
    images: Vec<Form<S>>,
    /// Degree of the images, for the sign rule; images of mixed or odd
    /// degree make the map a graded derivation of that parity.
    odd: bool,
}

impl<S: Scalar> Derivation<S> {
    /// Images of the generators. An image of even degree gives an
    /// anti-derivation of odd total degree (like `d`).
    pub fn new(images: Vec<Form<S>>) -> Derivation<S> {
        let odd = images.iter().find_map(Form::degree).is_none_or(|k| k % 2 == 0);
        Derivation { images, odd }
    }

    pub fn apply(&self, a: &Form<S>) -> Form<S> {
        let dim = a.dim();
        let mut out = Form::zero(self.images.first().map_or(dim, Form::dim));
        for (m, c) in a.terms() {
            let idx: Vec<usize> = m.indices().collect();
            for (r, &i) in idx.iter().enumerate() {
                let mut prod = Form::constant(out.dim(), c.clone());
                for (s, &j) in idx.iter().enumerate() {
                    let factor = if s == r {
                        self.images[i].clone()
                    } else {
                        Form::term(out.dim(), Mono(1 << j), S::one())
                    };
                    prod = prod.wedge(&factor);
                }
                if self.odd && r % 2 == 1 {
                    prod = -prod;
                }
                out += prod;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, idx: &[usize]) -> Form<Q> {
        Form::e(dim, idx)
    }

    #[test]
    fn n1_differentials() {
        let p = parse_presentation("(0^3, 12, 14, 24)", Mode::Real).unwrap();
        assert_eq!(p.de(4), &e(6, &[1, 2]));
        assert_eq!(p.de(5), &e(6, &[1, 4]));
        assert_eq!(p.de(6), &e(6, &[2, 4]));
        assert_eq!(p.d(&e(6, &[5])), e(6, &[1, 4]));
        assert!(p.d(&Form::<Q>::constant(6, Q::from(3))).is_zero());
    }

    #[test]
    fn n6_leibniz_example() {
        let p = parse_presentation("(12, 0, -36, 24, 56, 0)", Mode::Real).unwrap();
        assert_eq!(p.d(&e(6, &[1, 3])), e(6, &[1, 2, 3]) + e(6, &[1, 3, 6]));
    }

    #[test]
    fn brackets_follow_sign_convention() {
        let p = parse_presentation("(0^3, 12, 14, 24)", Mode::Real).unwrap();
        // d e^4 = e^{12} gives [ϑ_1, ϑ_2] = −ϑ_4.
        let b = p.bracket_basis(0, 1);
        assert_eq!(b[3], Q::from(-1));
        assert_eq!(p.bracket_basis(1, 0)[3], Q::from(1));
    }

    #[test]
    fn structure_flags() {
        let n1 = parse_presentation("(0^3, 12, 14, 24)", Mode::Real).unwrap();
        let r = check_presentation(&n1);
        assert!(r.jacobi && r.nilpotent && r.solvable && r.unimodular);

        let s = parse_presentation("(0, -12, 34, 0, 15, 46)", Mode::Real).unwrap();
        let r = check_presentation(&s);
        assert!(r.solvable && !r.nilpotent && r.completely_solvable_heuristic);
        assert!(r.unimodular);

        let bad = Presentation::new_unchecked(vec![e(3, &[1, 2]), e(3, &[1, 3]), Form::zero(3)]).unwrap();
        assert!(!check_presentation(&bad).jacobi);
        assert!(matches!(
            Presentation::new(vec![e(3, &[1, 2]), e(3, &[1, 3]), Form::zero(3)]),
            Err(Error::Jacobi { index: 2, .. })
        ));
    }

    #[test]
    fn compact_group_factor_is_not_solvable() {
        let p = parse_presentation("(23, -13, 12, 0^3)", Mode::Real).unwrap();
        let r = check_presentation(&p);
        assert!(r.jacobi && !r.solvable && r.unimodular);
    }

    #[test]
    fn complex_mode_realifies() {
        let p = parse_presentation("(0, 0, -12)", Mode::Complex).unwrap();
        // dφ³ = −φ¹∧φ² with φ^a = e^{2a-1} + i e^{2a}.
        assert_eq!(p.de(5), &(e(6, &[2, 4]) - e(6, &[1, 3])));
        assert_eq!(p.de(6), &(-e(6, &[1, 4]) - e(6, &[2, 3])));
    }

    #[test]
    fn derivation_matches_d() {
        let p = parse_presentation("(12, 0, -36, 24, 56, 0)", Mode::Real).unwrap();
        let der = Derivation::new(p.images().to_vec());
        let f = e(6, &[1, 3]) + e(6, &[2, 4, 5]);
        assert_eq!(der.apply(&f), p.d(&f));
    }
}
