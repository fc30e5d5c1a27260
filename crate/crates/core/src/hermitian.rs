//! Invariant metrics, the Hodge star, codifferentials and harmonic forms,
//! plus the predicate battery for a 2-form against an almost-complex
//! structure.
//!
//! Inner products on `Λ^k` come from Gram matrices of minors of the coframe
//! Gram matrix, and every adjoint is the literal matrix adjoint
//! `P* = G_k⁻¹ Pᴴ G_{k+1}`. No sign formulas for `d*` are used anywhere.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::{full_mask, wedge_sign, Basis, Mono};
use crate::cohomology::satisfies_hlc;
use crate::complexstruct::{is_integrable, AlmostComplexStructure};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::lie::Presentation;
use crate::linalg::{is_positive_definite, Matrix};
use crate::scalar::{Gq, Scalar, Q};

/// The operators whose adjoints can be requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    D,
    Del,
    Delbar,
}

/// A presentation with an almost-complex structure and an invariant metric.
#[derive(Clone)]
pub struct HermitianData {
    p: Presentation,
    j: AlmostComplexStructure,
    /// `g(ϑ_i, ϑ_j)`.
    metric: Matrix<Q>,
    /// Inner products of the coframe, `g⁻¹`.
    coframe_gram: Matrix<Q>,
    /// `vol = v · e^{1…2n}` with `v = √det g`.
    vol_factor: Q,
    grams: Arc<Vec<OnceLock<Arc<Matrix<Gq>>>>>,
    gram_invs: Arc<Vec<OnceLock<Arc<Matrix<Gq>>>>>,
}

impl std::fmt::Debug for HermitianData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HermitianData")
            .field("presentation", &self.p)
            .field("metric", &self.metric)
            .finish()
    }
}

impl HermitianData {
    /// The metric `g = Σ φ^a ⊙ φ̄^a` of the (1,0)-coframe of `j`.
    pub fn standard(p: &Presentation, j: &AlmostComplexStructure) -> Result<HermitianData> {
        let dim = j.dim();
        let theta = j.theta();
        let mut g = Matrix::zeros(dim, dim);
        for a in 0..j.n() {
            let row = theta.row(a);
            for i in 0..dim {
                for k in 0..dim {
                    let v = row[i].clone() * row[k].conj();
                    g[(i, k)] += v.re;
                }
            }
        }
        HermitianData::with_metric(p, j, g)
    }

    /// The metric `g = ω(·, J·)` of a compatible pair.
    pub fn from_compatible(p: &Presentation, j: &AlmostComplexStructure, omega: &Form<Gq>) -> Result<HermitianData> {
        let m = real_bilinear(omega)?;
        let jr = real_matrix(j)?;
        let g = m.mul(&jr);
        if g.transpose() != g {
            return Err(Error::Precondition(
                "ω(·, J·) is not symmetric; ω is not J-invariant".into(),
            ));
        }
        HermitianData::with_metric(p, j, g)
    }

    /// Any symmetric positive definite metric on the frame.
    pub fn with_metric(p: &Presentation, j: &AlmostComplexStructure, metric: Matrix<Q>) -> Result<HermitianData> {
        let dim = p.dim();
        if j.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: j.dim(),
            });
        }
        if metric.nrows() != dim || metric.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: metric.nrows(),
            });
        }
        if metric.transpose() != metric || !is_positive_definite(&metric, Q::is_positive) {
            return Err(Error::NotPositiveDefinite);
        }
        let det = metric.det();
        let vol_factor = det.sqrt().ok_or_else(|| Error::IrrationalVolume(det.to_string()))?;
        let coframe_gram = metric.inverse().ok_or(Error::Singular)?;
        Ok(HermitianData {
            p: p.clone(),
            j: j.clone(),
            metric,
            coframe_gram,
            vol_factor,
            grams: Arc::new((0..=dim).map(|_| OnceLock::new()).collect()),
            gram_invs: Arc::new((0..=dim).map(|_| OnceLock::new()).collect()),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.p
    }

    pub fn structure(&self) -> &AlmostComplexStructure {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn metric(&self) -> &Matrix<Q> {
        &self.metric
    }

    /// Inner products of `e^1, …, e^{2n}`.
    pub fn coframe_gram(&self) -> &Matrix<Q> {
        &self.coframe_gram
    }

    /// `⋆1`.
    pub fn volume(&self) -> Form<Gq> {
        Form::term(
            self.dim(),
            Mono(full_mask(self.dim())),
            Gq::real(self.vol_factor.clone()),
        )
    }

    /// Gram matrix of the wedge basis of `Λ^k`: minors of the coframe Gram.
    pub fn gram(&self, k: usize) -> Arc<Matrix<Gq>> {
        Arc::clone(self.grams[k].get_or_init(|| {
            let basis = Basis::new(self.dim(), k);
            let g1 = &self.coframe_gram;
            let diagonal = (0..self.dim()).all(|i| (0..self.dim()).all(|l| i == l || g1[(i, l)].is_zero()));
            let len = basis.len();
            let mut g = Matrix::zeros(len, len);
            let idx: Vec<Vec<usize>> = basis.monos().iter().map(|m| m.indices().collect()).collect();
            for a in 0..len {
                if diagonal {
                    let mut v = Q::one();
                    for &i in &idx[a] {
                        v = v * &g1[(i, i)];
                    }
                    g[(a, a)] = Gq::real(v);
                    continue;
                }
                for b in a..len {
                    let v = Gq::real(g1.select(&idx[a], &idx[b]).det());
                    g[(b, a)] = v.clone();
                    g[(a, b)] = v;
                }
            }
            Arc::new(g)
        }))
    }

    fn gram_inv(&self, k: usize) -> Arc<Matrix<Gq>> {
        Arc::clone(
            self.gram_invs[k]
                .get_or_init(|| Arc::new(self.gram(k).inverse().expect("Gram matrices are positive definite"))),
        )
    }

    /// Hermitian inner product `⟨a, b⟩`, linear in `a`.
    pub fn inner(&self, a: &Form<Gq>, b: &Form<Gq>) -> Gq {
        let mut acc = Gq::zero();
        for k in 0..=self.dim() {
            let (pa, pb) = (a.part(k), b.part(k));
            if pa.is_zero() || pb.is_zero() {
                continue;
            }
            let basis = Basis::new(self.dim(), k);
            let va = pa.to_vector(&basis);
            let vb: Vec<Gq> = pb.to_vector(&basis).iter().map(Gq::conj).collect();
            let gb = self.gram(k).mul_vec(&vb);
            for (x, y) in va.iter().zip(&gb) {
                if !x.is_zero() && !y.is_zero() {
                    acc += x.clone() * y;
                }
            }
        }
        acc
    }

    /// Complex-linear Hodge star, `a ∧ ⋆b̄ = ⟨a, b⟩ vol`.
    pub fn hodge_star(&self, a: &Form<Gq>) -> Form<Gq> {
        let dim = self.dim();
        let mut out = Form::zero(dim);
        for k in 0..=dim {
            let part = a.part(k);
            if part.is_zero() {
                continue;
            }
            let basis = Basis::new(dim, k);
            let gv = self.gram(k).mul_vec(&part.to_vector(&basis));
            for (i, c) in gv.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let m = basis.mono(i);
                let comp = m.complement(dim);
                let s = wedge_sign(m, comp);
                out.add_term(comp, c.scale(&self.vol_factor) * Gq::int(s as i64));
            }
        }
        out
    }

    /// Matrix of `⋆: Λ^k → Λ^{2n−k}`.
    pub fn star_matrix(&self, k: usize) -> Matrix<Gq> {
        let dim = self.dim();
        let src = Basis::new(dim, k);
        let dst = Basis::new(dim, dim - k);
        let cols: Vec<Vec<Gq>> = src
            .monos()
            .iter()
            .map(|m| self.hodge_star(&Form::term(dim, *m, Gq::one())).to_vector(&dst))
            .collect();
        Matrix::from_cols(&cols, dst.len())
    }

    /// Matrix of `π^{p,q}` on `Λ^{p+q}`.
    pub fn projection_matrix(&self, p: usize, q: usize) -> Matrix<Gq> {
        let dim = self.dim();
        let basis = Basis::new(dim, p + q);
        let cols: Vec<Vec<Gq>> = basis
            .monos()
            .iter()
            .map(|m| {
                self.j
                    .type_project(&Form::term(dim, *m, Gq::one()), p, q)
                    .expect("degree matches")
                    .to_vector(&basis)
            })
            .collect();
        Matrix::from_cols(&cols, basis.len())
    }

    /// Matrix of `d`, `∂` or `∂̄` from `Λ^k` to `Λ^{k+1}`.
    pub fn operator_matrix(&self, op: Operator, k: usize) -> Matrix<Gq> {
        let d = Matrix::clone(&self.p.d_matrix(k));
        if op == Operator::D {
            return d;
        }
        let mut out = Matrix::zeros(d.nrows(), d.ncols());
        for p in 0..=k {
            let q = k - p;
            let (tp, tq) = match op {
                Operator::Del => (p + 1, q),
                _ => (p, q + 1),
            };
            if tp > self.j.n() || tq > self.j.n() || p > self.j.n() || q > self.j.n() {
                continue;
            }
            let term = self
                .projection_matrix(tp, tq)
                .mul(&d)
                .mul(&self.projection_matrix(p, q));
            out = out.add(&term);
        }
        out
    }

    /// Matrix of the adjoint `P*: Λ^{k+1} → Λ^k` of `P: Λ^k → Λ^{k+1}`.
    pub fn adjoint_operator(&self, op: Operator, k: usize) -> Matrix<Gq> {
        let pm = self.operator_matrix(op, k);
        self.gram_inv(k).mul(&pm.adjoint()).mul(&self.gram(k + 1))
    }

    /// `P* a` for a homogeneous form of positive degree.
    pub fn apply_adjoint(&self, op: Operator, a: &Form<Gq>) -> Result<Form<Gq>> {
        let k = match a.degree() {
            Some(k) if k > 0 => k,
            _ if a.is_zero() => return Ok(Form::zero(self.dim())),
            _ => {
                return Err(Error::DegreeMismatch {
                    expected: 1,
                    found: format!("{:?}", a.degree()),
                })
            }
        };
        let v = a.to_vector(&Basis::new(self.dim(), k));
        let w = self.adjoint_operator(op, k - 1).mul_vec(&v);
        Ok(Form::from_vector(&Basis::new(self.dim(), k - 1), &w))
    }

    /// `d* d + d d*` on `Λ^k`.
    pub fn laplacian(&self, k: usize) -> Matrix<Gq> {
        let dim = self.dim();
        let len = Basis::new(dim, k).len();
        let mut out = Matrix::zeros(len, len);
        if k < dim {
            let d = self.p.d_matrix(k);
            out = out.add(&self.adjoint_operator(Operator::D, k).mul(&d));
        }
        if k > 0 {
            let d = self.p.d_matrix(k - 1);
            out = out.add(&d.mul(&self.adjoint_operator(Operator::D, k - 1)));
        }
        out
    }

    /// `ker d ∩ ker d*` on `Λ^k`.
    pub fn harmonic_space(&self, k: usize) -> HarmonicSpace {
        let dim = self.dim();
        let basis = Basis::new(dim, k);
        let mut m = Matrix::zeros(0, basis.len());
        if k < dim {
            m = m.vstack(&self.p.d_matrix(k));
        }
        if k > 0 {
            m = m.vstack(&self.adjoint_operator(Operator::D, k - 1));
        }
        let forms = if m.nrows() == 0 {
            (0..basis.len())
                .map(|i| Form::term(dim, basis.mono(i), Gq::one()))
                .collect()
        } else {
            m.kernel().iter().map(|v| Form::from_vector(&basis, v)).collect()
        };
        HarmonicSpace { degree: k, forms }
    }
}

/// A basis of harmonic forms in one degree.
#[derive(Clone, Debug)]
pub struct HarmonicSpace {
    pub degree: usize,
    pub forms: Vec<Form<Gq>>,
}

impl HarmonicSpace {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }
}

fn real_bilinear(omega: &Form<Gq>) -> Result<Matrix<Q>> {
    if !omega.is_homogeneous_of(2) {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: omega.to_string(),
        });
    }
    Ok(omega.to_real()?.bilinear_matrix())
}

fn real_matrix(j: &AlmostComplexStructure) -> Result<Matrix<Q>> {
    if !j.is_real() {
        return Err(Error::Precondition("J must be a real endomorphism".into()));
    }
    Ok(j.matrix().map(|c| c.re.clone()))
}

/// `ω(·, J·)` symmetrized is positive definite.
pub fn is_taming(j: &AlmostComplexStructure, omega: &Form<Gq>) -> Result<bool> {
    let m = real_bilinear(omega)?;
    let g = m.mul(&real_matrix(j)?);
    let half = Q::new(1, 2);
    let s = g.add(&g.transpose()).scale(&half);
    Ok(is_positive_definite(&s, Q::is_positive))
}

/// The predicate battery for a real 2-form.
#[derive(Clone, Debug, Serialize)]
pub struct PredicateReport {
    pub form: String,
    pub nondegenerate: bool,
    pub closed: bool,
    pub taming: bool,
    /// `ω(J·, J·) = ω`.
    pub j_invariant: bool,
    pub compatible: bool,
    pub almost_kahler: bool,
    /// `d(ω^{n−1}) = 0`.
    pub power_closed: bool,
    pub semi_kahler: bool,
    pub integrable: bool,
    pub balanced: bool,
    /// Only computed for closed forms.
    pub hlc: Option<bool>,
    pub d_form: String,
    pub d_power: String,
}

pub fn form_predicates(p: &Presentation, j: &AlmostComplexStructure, omega: &Form<Gq>) -> Result<PredicateReport> {
    if !omega.is_homogeneous_of(2) {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: omega.to_string(),
        });
    }
    if !omega.is_real() {
        return Err(Error::NotReal);
    }
    let n = j.n();
    let nondegenerate = !omega.power(n).is_zero();
    let d_form = p.d(omega);
    let d_power = p.d(&omega.power(n.saturating_sub(1)));
    let closed = d_form.is_zero();
    let taming = is_taming(j, omega)?;
    let j_invariant = j.act(omega) == *omega;
    let compatible = taming && j_invariant;
    let integrable = is_integrable(p, j);
    let power_closed = d_power.is_zero();
    let semi_kahler = compatible && nondegenerate && power_closed;
    let hlc = if closed { Some(satisfies_hlc(p, omega)?) } else { None };
    Ok(PredicateReport {
        form: omega.to_string(),
        nondegenerate,
        closed,
        taming,
        j_invariant,
        compatible,
        almost_kahler: compatible && closed,
        power_closed,
        semi_kahler,
        integrable,
        balanced: semi_kahler && integrable,
        hlc,
        d_form: d_form.to_string(),
        d_power: d_power.to_string(),
    })
}

/// Outcome of the positivity test on complex `(n−1)`-subspaces.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Positivity {
    /// `Φ` is a positive multiple of `ψ^{n−1}` with `ψ` taming.
    ExactPositive,
    /// `Φ(X₁, JX₁, …) ≤ 0` on the listed vectors.
    Counterexample {
        trial: usize,
        vectors: Vec<Vec<String>>,
        value: String,
    },
    /// Not a certificate: only the sampled subspaces were checked.
    NoCounterexampleFound { trials: usize },
}

/// Positivity of a real `(2n−2)`-form on complex `(n−1)`-subspaces.
///
/// When `root` is given and `Φ = c·ψ^{n−1}` with `c > 0` and `ψ` taming,
/// the answer is exact. Otherwise `trials` random rational subspaces
/// `⟨X₁, JX₁, …⟩`, drawn from a ChaCha8 stream seeded by `seed`, are
/// evaluated and the first non-positive value is reported.
pub fn positivity_on_complex_hyperplanes(
    j: &AlmostComplexStructure,
    phi: &Form<Gq>,
    root: Option<&Form<Gq>>,
    trials: usize,
    seed: u64,
) -> Result<Positivity> {
    let n = j.n();
    let dim = j.dim();
    let k = 2 * n - 2;
    if !phi.is_homogeneous_of(k) && !phi.is_zero() {
        return Err(Error::DegreeMismatch {
            expected: k,
            found: phi.to_string(),
        });
    }
    if !phi.is_real() {
        return Err(Error::NotReal);
    }
    if let Some(psi) = root {
        if psi.is_real() && psi.is_homogeneous_of(2) && is_taming(j, psi)? {
            let pw = psi.power(n - 1);
            let lead = pw.terms().next().map(|(m, c)| (*m, c.clone()));
            if let Some((m, c)) = lead {
                let ratio = phi.coeff(m) / c;
                if ratio.is_real() && ratio.re.is_positive() && pw.scale(&ratio) == *phi {
                    return Ok(Positivity::ExactPositive);
                }
            }
        }
    }
    let jm = real_matrix(j)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trial = 0;
    let mut attempts = 0;
    while trial < trials {
        attempts += 1;
        if attempts > 100 * trials.max(1) {
            break;
        }
        let mut vectors: Vec<Vec<Q>> = Vec::with_capacity(k);
        for _ in 0..n - 1 {
            let x: Vec<Q> = (0..dim).map(|_| Q::from(rng.gen_range(-5i64..=5))).collect();
            let jx = jm.mul_vec(&x);
            vectors.push(x);
            vectors.push(jx);
        }
        let m = Matrix::from_rows(vectors.clone());
        if m.rank() < k {
            continue;
        }
        trial += 1;
        let complex: Vec<Vec<Gq>> = vectors
            .iter()
            .map(|v| v.iter().map(|q| Gq::real(q.clone())).collect())
            .collect();
        let value = phi.evaluate(&complex);
        if !value.re.is_positive() {
            return Ok(Positivity::Counterexample {
                trial,
                vectors: vectors.iter().map(|v| v.iter().map(Q::to_string).collect()).collect(),
                value: value.to_string(),
            });
        }
    }
    Ok(Positivity::NoCounterexampleFound { trials: trial })
}
