//! Exact invariant cohomology of nilmanifolds and solvmanifolds under
//! almost-complex structures.
//!
//! Everything is computed on the Chevalley–Eilenberg complex of a Lie algebra
//! given by its structure equations, with exact rational and Gaussian-rational
//! arithmetic. On top of it sit the type-decomposition subgroups
//! `H^S_J`, the C∞-pure/full classification, metric predicates (taming,
//! compatible, semi-Kähler, balanced, Hard Lefschetz), and the order-by-order
//! obstruction system for deforming a `J`-invariant class along a curve of
//! almost-complex structures.
//!
//! ```
//! use acscohom::{zoo, cohomology::{cohomology_space, Field}};
//!
//! let n1 = zoo::lookup("n1").unwrap();
//! let h2 = cohomology_space(&n1.presentation, 2, Field::Real);
//! assert_eq!(h2.dim(), 5);
//! ```

pub mod analysis;
pub mod basis;
pub mod cohomology;
pub mod complexstruct;
pub mod deform;
pub mod error;
pub mod exterior;
pub mod hermitian;
pub mod lie;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod zoo;

pub use complexstruct::AlmostComplexStructure;
pub use error::{Error, Result};
pub use exterior::{Form, Multivector};
pub use lie::Presentation;
pub use linalg::Matrix;
pub use scalar::{Field as ScalarField, Gq, Scalar, Series, Q};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/exterior.md")]
    mod exterior {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/structures.md")]
    mod structures {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/deformations.md")]
    mod deformations {}
    #[doc = include_str!("../../../book/src/zoo.md")]
    mod zoo {}
}
