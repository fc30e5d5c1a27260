//! Invariant cohomology and homology, bidegree subgroups, the
//! pure/full classification and cup-product maps.
//!
//! All spaces are subquotients `Z / B` of `Λ^k` (forms) or `Λ_k`
//! (multivectors, modelling invariant currents). Representatives are chosen
//! by reduced row echelon form on the lexicographic basis: the boundaries are
//! fully reduced, the cycles are reduced modulo them, and the survivors are
//! reduced again. A class's coordinates are read off at the representative
//! pivots after reduction modulo the boundaries.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::basis::Basis;
use crate::complexstruct::AlmostComplexStructure;
use crate::error::{Error, Result};
use crate::exterior::{Form, Multivector};
use crate::lie::Presentation;
use crate::linalg::{dot, rank_of, span, Matrix};
use crate::scalar::{Gq, Scalar, Q};

/// Coefficient field of a cohomology space. Differentials are rational, so
/// the two give the same dimensions; `Real` marks spaces whose classes are
/// meant to be read with real coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Forms (cohomology) or multivectors (homology of currents).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Forms,
    Currents,
}

/// `Z / B` inside a coordinate space.
#[derive(Clone, Debug)]
struct Subquotient {
    b_rows: Vec<Vec<Gq>>,
    b_pivots: Vec<usize>,
    reps: Vec<Vec<Gq>>,
    h_pivots: Vec<usize>,
}

impl Subquotient {
    fn new(boundaries: &[Vec<Gq>], cycles: &[Vec<Gq>], len: usize) -> Subquotient {
        let (b_rows, b_pivots) = span(boundaries, len);
        let mut sq = Subquotient {
            b_rows,
            b_pivots,
            reps: Vec::new(),
            h_pivots: Vec::new(),
        };
        let reduced: Vec<Vec<Gq>> = cycles.iter().map(|z| sq.reduce(z)).collect();
        let (reps, h_pivots) = span(&reduced, len);
        sq.reps = reps;
        sq.h_pivots = h_pivots;
        sq
    }

    /// Reduce modulo the boundaries.
    fn reduce(&self, v: &[Gq]) -> Vec<Gq> {
        let mut v = v.to_vec();
        for (row, &p) in self.b_rows.iter().zip(&self.b_pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= c.clone() * r;
                }
            }
        }
        v
    }

    fn coordinates(&self, v: &[Gq]) -> Vec<Gq> {
        let r = self.reduce(v);
        self.h_pivots.iter().map(|&p| r[p].clone()).collect()
    }
}

/// A degree of invariant cohomology (or homology of invariant currents) with
/// canonical representatives.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    degree: usize,
    manifold_dim: usize,
    field: Field,
    side: Side,
    basis: Basis,
    sq: Subquotient,
    /// Forms: `d_k`. Currents: `d_{k-1}`, applied transposed.
    cycle_test: Option<Arc<Matrix<Gq>>>,
}

impl CohomologySpace {
    pub fn dim(&self) -> usize {
        self.sq.reps.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Representatives as coefficient vectors on [`basis`](Self::basis).
    pub fn representative_vectors(&self) -> &[Vec<Gq>] {
        &self.sq.reps
    }

    /// Representatives as forms (for currents, the underlying multivector
    /// coefficients).
    pub fn representatives(&self) -> Vec<Form<Gq>> {
        self.sq.reps.iter().map(|v| Form::from_vector(&self.basis, v)).collect()
    }

    /// Apply the cycle test (`d` or `∂`) to a coefficient vector.
    fn boundary_of(&self, v: &[Gq]) -> Vec<Gq> {
        match (&self.cycle_test, self.side) {
            (None, _) => Vec::new(),
            (Some(m), Side::Forms) => m.mul_vec(v),
            (Some(m), Side::Currents) => m.tr_mul_vec(v),
        }
    }

    pub fn is_cycle_vector(&self, v: &[Gq]) -> bool {
        self.boundary_of(v).iter().all(Scalar::is_zero)
    }

    fn vector_of(&self, a: &Form<Gq>) -> Result<Vec<Gq>> {
        if a.dim() != self.manifold_dim {
            return Err(Error::DimensionMismatch {
                expected: self.manifold_dim,
                found: a.dim(),
            });
        }
        if !a.is_homogeneous_of(self.degree) {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: format!("{:?}", a.degree()),
            });
        }
        Ok(a.to_vector(&self.basis))
    }

    /// Coordinates of the class of a closed form (or cycle) in the canonical
    /// basis.
    pub fn class_coordinates(&self, a: &Form<Gq>) -> Result<Vec<Gq>> {
        let v = self.vector_of(a)?;
        self.coordinates_of_vector(&v)
    }

    pub fn coordinates_of_vector(&self, v: &[Gq]) -> Result<Vec<Gq>> {
        let dv = self.boundary_of(v);
        if dv.iter().any(|c| !c.is_zero()) {
            let shift = match self.side {
                Side::Forms => 1,
                Side::Currents => -1,
            };
            let deg = (self.degree as i64 + shift) as usize;
            let f = Form::from_vector(&Basis::new(self.manifold_dim, deg), &dv);
            return Err(Error::NotClosed {
                differential: f.to_string(),
            });
        }
        Ok(self.sq.coordinates(v))
    }

    /// True when the closed form is a coboundary.
    pub fn is_exact(&self, a: &Form<Gq>) -> Result<bool> {
        Ok(self.class_coordinates(a)?.iter().all(Scalar::is_zero))
    }

    /// Coordinates of each vector, which must be cycles.
    fn project(&self, vectors: &[Vec<Gq>]) -> Vec<Vec<Gq>> {
        vectors.iter().map(|v| self.sq.coordinates(v)).collect()
    }
}

/// `H^k` of the invariant complex.
///
/// ```
/// use acscohom::{zoo, cohomology::{cohomology_space, Field}};
/// let iw = zoo::lookup("iwasawa").unwrap();
/// assert_eq!(cohomology_space(&iw.presentation, 1, Field::Complex).dim(), 4);
/// ```
pub fn cohomology_space(p: &Presentation, k: usize, field: Field) -> CohomologySpace {
    let dim = p.dim();
    assert!(k <= dim, "degree {k} exceeds the dimension {dim}");
    let basis = Basis::new(dim, k);
    let boundaries: Vec<Vec<Gq>> = if k == 0 {
        Vec::new()
    } else {
        p.d_matrix(k - 1).transpose().into_rows()
    };
    let (cycles, test) = if k == dim {
        ((0..basis.len()).map(|i| unit(basis.len(), i)).collect(), None)
    } else {
        let dk = p.d_matrix(k);
        (dk.kernel(), Some(dk))
    };
    CohomologySpace {
        degree: k,
        manifold_dim: dim,
        field,
        side: Side::Forms,
        sq: Subquotient::new(&boundaries, &cycles, basis.len()),
        basis,
        cycle_test: test,
    }
}

/// `H_k` of invariant currents, with `∂_k = d_{k-1}ᵀ`.
pub fn current_homology_space(p: &Presentation, k: usize, field: Field) -> CohomologySpace {
    let dim = p.dim();
    assert!(k <= dim, "degree {k} exceeds the dimension {dim}");
    let basis = Basis::new(dim, k);
    let boundaries: Vec<Vec<Gq>> = if k == dim {
        Vec::new()
    } else {
        Matrix::clone(&p.d_matrix(k)).into_rows()
    };
    let (cycles, test) = if k == 0 {
        ((0..basis.len()).map(|i| unit(basis.len(), i)).collect(), None)
    } else {
        let dm = p.d_matrix(k - 1);
        (dm.left_kernel(), Some(dm))
    };
    CohomologySpace {
        degree: k,
        manifold_dim: dim,
        field,
        side: Side::Currents,
        sq: Subquotient::new(&boundaries, &cycles, basis.len()),
        basis,
        cycle_test: test,
    }
}

fn unit(len: usize, i: usize) -> Vec<Gq> {
    (0..len).map(|j| Gq::int((i == j) as i64)).collect()
}

/// All Betti numbers `b_0, …, b_dim`.
pub fn betti_numbers(p: &Presentation) -> Vec<usize> {
    (0..=p.dim())
        .map(|k| cohomology_space(p, k, Field::Real).dim())
        .collect()
}

/// `⟨[a_j], [v_i]⟩` between homology and cohomology representatives.
pub fn pairing_matrix(homology: &CohomologySpace, cohomology: &CohomologySpace) -> Matrix<Gq> {
    let rows = homology
        .representative_vectors()
        .iter()
        .map(|v| cohomology.representative_vectors().iter().map(|a| dot(v, a)).collect())
        .collect::<Vec<Vec<Gq>>>();
    if rows.is_empty() {
        return Matrix::zeros(0, cohomology.dim());
    }
    Matrix::from_rows(rows)
}

/// A bidegree `(p, q)`.
pub type Bidegree = (usize, usize);

/// The image in cohomology of the closed forms (or cycles) of the given
/// bidegrees.
#[derive(Clone, Debug, Serialize)]
pub struct TypeSubgroup {
    pub types: Vec<Bidegree>,
    pub degree: usize,
    pub side: Side,
    pub real: bool,
    /// Row-reduced basis in class coordinates.
    #[serde(skip)]
    pub basis: Vec<Vec<Gq>>,
    /// For real subgroups, a rational basis of the real points.
    #[serde(skip)]
    pub real_basis: Option<Vec<Vec<Q>>>,
    pub dim: usize,
}

impl TypeSubgroup {
    pub fn dim(&self) -> usize {
        self.dim
    }
}

fn check_types(types: &[Bidegree], k: usize, real: bool) -> Result<()> {
    let bad = || {
        Error::InconsistentTypes(
            types
                .iter()
                .map(|(p, q)| format!("({p},{q})"))
                .collect::<Vec<_>>()
                .join(","),
        )
    };
    if types.is_empty() || types.iter().any(|(p, q)| p + q != k) {
        return Err(bad());
    }
    if real {
        let set: BTreeSet<Bidegree> = types.iter().copied().collect();
        if set.iter().any(|(p, q)| !set.contains(&(*q, *p))) {
            return Err(bad());
        }
    }
    Ok(())
}

/// Vectors spanning `⊕_S Λ^{p,q}` (forms) or the currents of those types.
fn type_span(space: &CohomologySpace, j: &AlmostComplexStructure, types: &[Bidegree]) -> Vec<Vec<Gq>> {
    let dim = j.dim();
    let k = space.degree;
    let frame_subst = j.theta_inv().transpose();
    let mut out = Vec::new();
    for &m in Basis::new(dim, k).monos() {
        if !types.contains(&j.bidegree(m)) {
            continue;
        }
        let unit = Form::term(dim, m, Gq::one());
        let f = match space.side {
            Side::Forms => j.from_theta(&unit),
            Side::Currents => unit.pullback_endo(&frame_subst),
        };
        out.push(f.to_vector(&space.basis));
    }
    out
}

/// `span(vectors) ∩ cycles`, then projected to class coordinates.
fn cycles_in_span(space: &CohomologySpace, vectors: &[Vec<Gq>]) -> Vec<Vec<Gq>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let len = space.basis.len();
    let images: Vec<Vec<Gq>> = vectors.iter().map(|v| space.boundary_of(v)).collect();
    let closed: Vec<Vec<Gq>> = if images.iter().all(|v| v.is_empty()) {
        vectors.to_vec()
    } else {
        let m = Matrix::from_cols(&images, images[0].len());
        m.kernel()
            .into_iter()
            .map(|c| {
                let mut w = vec![Gq::zero(); len];
                for (ci, v) in c.iter().zip(vectors) {
                    if ci.is_zero() {
                        continue;
                    }
                    for (x, y) in w.iter_mut().zip(v) {
                        if !y.is_zero() {
                            *x += ci.clone() * y;
                        }
                    }
                }
                w
            })
            .collect()
    };
    space.project(&closed)
}

/// `H^S_J` (or `H^J_S` on the current side).
pub fn type_subgroup(
    space: &CohomologySpace,
    j: &AlmostComplexStructure,
    types: &[Bidegree],
    real: bool,
) -> Result<TypeSubgroup> {
    check_types(types, space.degree, real)?;
    let projected = cycles_in_span(space, &type_span(space, j, types));
    let (basis, _) = span(&projected, space.dim());
    let real_basis = real.then(|| {
        let parts: Vec<Vec<Q>> = basis
            .iter()
            .flat_map(|v| {
                [
                    v.iter().map(|c| c.re.clone()).collect::<Vec<Q>>(),
                    v.iter().map(|c| c.im.clone()).collect(),
                ]
            })
            .collect();
        span(&parts, space.dim()).0
    });
    if let Some(rb) = &real_basis {
        // Conjugation-stable subspaces of a real space have a real basis of
        // the same size.
        if rb.len() != basis.len() {
            return Err(Error::InconsistentTypes(format!(
                "real points have dimension {} but the subgroup has {}",
                rb.len(),
                basis.len()
            )));
        }
    }
    Ok(TypeSubgroup {
        types: types.to_vec(),
        degree: space.degree,
        side: space.side,
        real,
        dim: basis.len(),
        basis,
        real_basis,
    })
}

/// `dim(Σ subgroups)`.
pub fn sum_dimension(groups: &[&TypeSubgroup], ambient: usize) -> usize {
    let all: Vec<Vec<Gq>> = groups.iter().flat_map(|g| g.basis.iter().cloned()).collect();
    rank_of(&all, ambient)
}

/// Classification of one stage.
#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub degree: usize,
    pub side: Side,
    pub betti: usize,
    /// The real subgroups `H^{(p,q),(q,p)}_ℝ` have a direct sum.
    pub pure: bool,
    /// The real subgroups span `H^k`.
    pub full: bool,
    /// The individual `H^{(p,q)}` have a direct sum.
    pub complex_pure: bool,
    /// The individual `H^{(p,q)}` span `H^k`.
    pub complex_full: bool,
    /// Stage 2 only: `dim H^{(1,1)}_ℝ`.
    pub h_plus: Option<usize>,
    /// Stage 2 only: `dim H^{(2,0),(0,2)}_ℝ`.
    pub h_minus: Option<usize>,
    /// Stage 2 only: `dim(H⁺ ∩ H⁻)`.
    pub intersection: Option<usize>,
    /// Dimensions of the real pair subgroups, keyed by their smaller type.
    pub pairs: Vec<(Bidegree, usize)>,
    /// Dimensions of the individual `H^{(p,q)}`.
    pub types: Vec<(Bidegree, usize)>,
}

/// Pure/full flags of one stage on either side.
pub fn stage_report(space: &CohomologySpace, j: &AlmostComplexStructure) -> Result<StageReport> {
    let k = space.degree;
    let b = space.dim();
    let mut pair_groups = Vec::new();
    for p in (0..=k).rev() {
        let q = k - p;
        if p < q {
            continue;
        }
        let types: Vec<Bidegree> = if p == q { vec![(p, q)] } else { vec![(p, q), (q, p)] };
        pair_groups.push(((q, p), type_subgroup(space, j, &types, true)?));
    }
    let mut singles = Vec::new();
    for p in (0..=k).rev() {
        singles.push(((p, k - p), type_subgroup(space, j, &[(p, k - p)], false)?));
    }
    let pair_refs: Vec<&TypeSubgroup> = pair_groups.iter().map(|(_, g)| g).collect();
    let pair_sum = sum_dimension(&pair_refs, b);
    let pair_total: usize = pair_refs.iter().map(|g| g.dim).sum();
    let single_refs: Vec<&TypeSubgroup> = singles.iter().map(|(_, g)| g).collect();
    let single_sum = sum_dimension(&single_refs, b);
    let single_total: usize = single_refs.iter().map(|g| g.dim).sum();
    let (mut h_plus, mut h_minus, mut intersection) = (None, None, None);
    if k == 2 {
        let plus = pair_groups.iter().find(|(t, _)| *t == (1, 1)).map(|(_, g)| g);
        let minus = pair_groups.iter().find(|(t, _)| *t == (0, 2)).map(|(_, g)| g);
        if let (Some(plus), Some(minus)) = (plus, minus) {
            h_plus = Some(plus.dim);
            h_minus = Some(minus.dim);
            intersection = Some(plus.dim + minus.dim - sum_dimension(&[plus, minus], b));
        }
    }
    Ok(StageReport {
        degree: k,
        side: space.side,
        betti: b,
        pure: pair_sum == pair_total,
        full: pair_sum == b,
        complex_pure: single_sum == single_total,
        complex_full: single_sum == b,
        h_plus,
        h_minus,
        intersection,
        pairs: pair_groups.iter().map(|(t, g)| (*t, g.dim)).collect(),
        types: singles.iter().map(|(t, g)| (*t, g.dim)).collect(),
    })
}

/// Forms side and currents side for every stage `1 ≤ k ≤ 2n−1`.
#[derive(Clone, Debug, Serialize)]
pub struct PureFullReport {
    pub forms: Vec<StageReport>,
    pub currents: Vec<StageReport>,
}

impl PureFullReport {
    pub fn stage(&self, k: usize) -> Option<&StageReport> {
        self.forms.iter().find(|s| s.degree == k)
    }

    pub fn current_stage(&self, k: usize) -> Option<&StageReport> {
        self.currents.iter().find(|s| s.degree == k)
    }
}

pub fn purefull_report(p: &Presentation, j: &AlmostComplexStructure) -> Result<PureFullReport> {
    purefull_report_stages(p, j, &(1..p.dim()).collect::<Vec<_>>())
}

pub fn purefull_report_stages(
    p: &Presentation,
    j: &AlmostComplexStructure,
    stages: &[usize],
) -> Result<PureFullReport> {
    use rayon::prelude::*;
    let forms = stages
        .par_iter()
        .map(|&k| stage_report(&cohomology_space(p, k, Field::Complex), j))
        .collect::<Result<Vec<_>>>()?;
    let currents = stages
        .par_iter()
        .map(|&k| stage_report(&current_homology_space(p, k, Field::Complex), j))
        .collect::<Result<Vec<_>>>()?;
    Ok(PureFullReport { forms, currents })
}

/// A subspace of `Λ^k` to search for primitives in.
#[derive(Clone, Debug)]
pub enum Subspace<'a> {
    All,
    /// Fixed points of `J*`.
    JInvariant(&'a AlmostComplexStructure),
    /// `J* = −id`.
    JAntiInvariant(&'a AlmostComplexStructure),
    Span(Vec<Form<Gq>>),
}

/// Outcome of solving `dβ = target` inside a subspace.
#[derive(Clone, Debug, PartialEq)]
pub enum DSolution {
    Witness(Form<Gq>),
    /// A functional `y` on `Λ^{k+1}` with `⟨dβ, y⟩ = 0` for every admissible
    /// `β` and `⟨target, y⟩ = 1`.
    Certificate(Multivector<Gq>),
}

impl DSolution {
    pub fn is_solvable(&self) -> bool {
        matches!(self, DSolution::Witness(_))
    }

    pub fn witness(&self) -> Option<&Form<Gq>> {
        match self {
            DSolution::Witness(w) => Some(w),
            DSolution::Certificate(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Multivector<Gq>> {
        match self {
            DSolution::Witness(_) => None,
            DSolution::Certificate(c) => Some(c),
        }
    }
}

/// Matrix of `J*` on `Λ^k`.
pub fn action_matrix(j: &AlmostComplexStructure, k: usize) -> Matrix<Gq> {
    let basis = Basis::new(j.dim(), k);
    let cols: Vec<Vec<Gq>> = basis
        .monos()
        .iter()
        .map(|m| j.act(&Form::term(j.dim(), *m, Gq::one())).to_vector(&basis))
        .collect();
    Matrix::from_cols(&cols, basis.len())
}

/// Spanning vectors of a subspace of `Λ^k`.
pub fn subspace_vectors(dim: usize, k: usize, subspace: &Subspace<'_>) -> Result<Vec<Vec<Gq>>> {
    let basis = Basis::new(dim, k);
    let eigen = |j: &AlmostComplexStructure, sign: i64| {
        action_matrix(j, k)
            .sub(&Matrix::identity(basis.len()).scale(&Gq::int(sign)))
            .kernel()
    };
    Ok(match subspace {
        Subspace::All => (0..basis.len()).map(|i| unit(basis.len(), i)).collect(),
        Subspace::JInvariant(j) => eigen(j, 1),
        Subspace::JAntiInvariant(j) => eigen(j, -1),
        Subspace::Span(forms) => forms
            .iter()
            .map(|f| {
                if f.dim() != dim || !f.is_homogeneous_of(k) {
                    Err(Error::DegreeMismatch {
                        expected: k,
                        found: f.to_string(),
                    })
                } else {
                    Ok(f.to_vector(&basis))
                }
            })
            .collect::<Result<_>>()?,
    })
}

/// Solve `dβ = target` with `β ∈ subspace ⊂ Λ^k`, `k = deg target − 1`.
pub fn solve_d_in_subspace(
    p: &Presentation,
    target: &Form<Gq>,
    k: usize,
    subspace: &Subspace<'_>,
) -> Result<DSolution> {
    let dim = p.dim();
    if target.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: target.dim(),
        });
    }
    if !target.is_homogeneous_of(k + 1) || k >= dim {
        return Err(Error::DegreeMismatch {
            expected: k + 1,
            found: format!("{:?}", target.degree()),
        });
    }
    let src = Basis::new(dim, k);
    let dst = Basis::new(dim, k + 1);
    let vectors = subspace_vectors(dim, k, subspace)?;
    let t = target.to_vector(&dst);
    if vectors.is_empty() {
        return Ok(if t.iter().all(Scalar::is_zero) {
            DSolution::Witness(Form::zero(dim))
        } else {
            let y: Vec<Gq> = {
                let i = t.iter().position(|c| !c.is_zero()).unwrap();
                let mut y = vec![Gq::zero(); dst.len()];
                y[i] = crate::scalar::Field::inv(&t[i]);
                y
            };
            DSolution::Certificate(Multivector(Form::from_vector(&dst, &y)))
        });
    }
    let dmat = p.d_matrix(k);
    let images: Vec<Vec<Gq>> = vectors.iter().map(|v| dmat.mul_vec(v)).collect();
    let m = Matrix::from_cols(&images, dst.len());
    if let Some(c) = m.solve(&t) {
        let mut beta = Form::zero(dim);
        for (ci, v) in c.iter().zip(&vectors) {
            if !ci.is_zero() {
                beta += Form::from_vector(&src, v).scale(ci);
            }
        }
        return Ok(DSolution::Witness(beta));
    }
    for y in m.left_kernel() {
        let s = dot(&y, &t);
        if !s.is_zero() {
            let inv = crate::scalar::Field::inv(&s);
            let y: Vec<Gq> = y.into_iter().map(|c| c * &inv).collect();
            return Ok(DSolution::Certificate(Multivector(Form::from_vector(&dst, &y))));
        }
    }
    unreachable!("an inconsistent system has a separating functional")
}

/// The linear map `[a] ↦ [γ ∧ a]` between two degrees.
#[derive(Clone, Debug, Serialize)]
pub struct CupMap {
    pub source_degree: usize,
    pub target_degree: usize,
    /// Columns are images of the source basis classes.
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: Matrix<Gq>,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
}

fn ser_matrix<S: serde::Serializer>(m: &Matrix<Gq>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for i in 0..m.nrows() {
        seq.serialize_element(m.row(i))?;
    }
    seq.end()
}

/// `γ ∧ · : H^k → H^{k + deg γ}`.
pub fn cup_map(p: &Presentation, k: usize, gamma: &Form<Gq>) -> Result<CupMap> {
    let g = gamma.degree().unwrap_or(0);
    if !gamma.is_zero() && gamma.degree().is_none() {
        return Err(Error::DegreeMismatch {
            expected: g,
            found: gamma.to_string(),
        });
    }
    let dg = p.checked_d(gamma)?;
    if !dg.is_zero() {
        return Err(Error::NotClosed {
            differential: dg.to_string(),
        });
    }
    if k + g > p.dim() {
        return Err(Error::DegreeMismatch {
            expected: p.dim() - g,
            found: k.to_string(),
        });
    }
    let src = cohomology_space(p, k, Field::Complex);
    let dst = cohomology_space(p, k + g, Field::Complex);
    cup_map_between(&src, &dst, gamma)
}

pub fn cup_map_between(src: &CohomologySpace, dst: &CohomologySpace, gamma: &Form<Gq>) -> Result<CupMap> {
    let cols = src
        .representatives()
        .iter()
        .map(|a| dst.class_coordinates(&gamma.wedge(a)))
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_cols(&cols, dst.dim());
    let rank = matrix.rank();
    Ok(CupMap {
        source_degree: src.degree(),
        target_degree: dst.degree(),
        rank,
        injective: rank == src.dim(),
        surjective: rank == dst.dim(),
        iso: rank == src.dim() && rank == dst.dim(),
        matrix,
    })
}

/// The maps `ω^k : H^{n−k} → H^{n+k}` for `k = 1..=n`, using divided powers.
pub fn hlc_maps(p: &Presentation, omega: &Form<Gq>) -> Result<Vec<CupMap>> {
    let n = p.n();
    (1..=n).map(|k| cup_map(p, n - k, &omega.divided_power(k))).collect()
}

pub fn satisfies_hlc(p: &Presentation, omega: &Form<Gq>) -> Result<bool> {
    Ok(hlc_maps(p, omega)?.iter().all(|m| m.iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexstruct::{block_matrix, pair_coframe};
    use crate::lie::parse_presentation;
    use crate::parse::Mode;

    fn pres(s: &str) -> Presentation {
        parse_presentation(s, Mode::Real).unwrap()
    }

    #[test]
    fn torus_betti() {
        let t6 = pres("(0^6)");
        assert_eq!(betti_numbers(&t6), vec![1, 6, 15, 20, 15, 6, 1]);
        let h = current_homology_space(&t6, 2, Field::Real);
        assert_eq!(h.dim(), 15);
    }

    #[test]
    fn n1_basics() {
        let n1 = pres("(0^3, 12, 14, 24)");
        assert_eq!(cohomology_space(&n1, 2, Field::Real).dim(), 5);
        let h1 = cohomology_space(&n1, 1, Field::Real);
        let e5: Form<Gq> = Form::e(6, &[5]);
        assert!(matches!(h1.class_coordinates(&e5), Err(Error::NotClosed { .. })));
        let zero = Form::zero(6);
        assert!(h1.class_coordinates(&zero).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn representatives_have_unit_coordinates() {
        let n1 = pres("(0^3, 12, 14, 24)");
        for k in 0..=6 {
            let h = cohomology_space(&n1, k, Field::Real);
            for (i, r) in h.representatives().iter().enumerate() {
                assert_eq!(h.class_coordinates(r).unwrap(), unit(h.dim(), i));
            }
        }
    }

    #[test]
    fn n6_primitive_and_invariant_obstruction() {
        let p = pres("(12, 0, -36, 24, 56, 0)");
        let target: Form<Gq> = Form::e(6, &[1, 2, 3]) + Form::e(6, &[1, 3, 6]) - Form::e(6, &[2, 4, 6]);
        let sol = solve_d_in_subspace(&p, &target, 2, &Subspace::All).unwrap();
        let w = sol.witness().unwrap();
        assert_eq!(p.d(w), target);
        let expected = Form::e(6, &[1, 3]) - Form::e(6, &[4, 6]);
        assert!(p.d(&(w - &expected)).is_zero());

        let j = AlmostComplexStructure::from_real_matrix(&block_matrix(3)).unwrap();
        let sol = solve_d_in_subspace(&p, &target, 2, &Subspace::JInvariant(&j)).unwrap();
        let y = sol.certificate().unwrap();
        assert_eq!(y.pair(&target), Gq::one());
        for v in subspace_vectors(6, 2, &Subspace::JInvariant(&j)).unwrap() {
            let beta = Form::from_vector(&Basis::new(6, 2), &v);
            assert!(y.pair(&p.d(&beta)).is_zero());
        }
    }

    #[test]
    fn abelian_invariant_real_11() {
        let t6 = pres("(0^6)");
        let j = AlmostComplexStructure::from_coframe(&pair_coframe(6, &[(1, 2), (3, 4), (5, 6)])).unwrap();
        let h2 = cohomology_space(&t6, 2, Field::Real);
        let g = type_subgroup(&h2, &j, &[(1, 1)], true).unwrap();
        assert_eq!(g.dim, 9);
        assert!(type_subgroup(&h2, &j, &[(2, 0)], true).is_err());
        assert!(type_subgroup(&h2, &j, &[(1, 0)], false).is_err());
    }
}
