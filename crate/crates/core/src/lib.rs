//! Quandle counting invariants of oriented links and Lie ideal
//! enhancements over finite algebras.
//!
//! A typical run: parse or look up a PD code, build its [`LinkDiagram`],
//! pick a [`FiniteQuandle`] (directly or as a subquandle of the units of a
//! [`FiniteAlgebra`]) and collect an [`EnhancementReport`].

pub mod colorings;
pub mod error;
pub mod field;
pub mod finalg;
pub mod group;
pub mod ideals;
pub mod invariants;
pub mod linkdiag;
pub mod quandle;

pub use colorings::{coloring_image, counting_invariant, enumerate_colorings, Coloring};
pub use error::{AlgebraError, Error, FieldError, GroupError, PdError, QuandleError};
pub use finalg::{AlgebraElement, FiniteAlgebra, UnitsQuandle, DEFAULT_ENUMERATION_BOUND};
pub use group::Group;
pub use ideals::{assoc_ideal, lie_ideal, Subspace};
pub use invariants::{
    abelian_closed_form, format_polynomial, image_enhancement, BiPolynomial, EnhancementReport, ExponentMode,
    GenPolynomial,
};
pub use linkdiag::{build_diagram, lookup_link, mirror, parse_pd, LinkDiagram, OrientedPDCode, PRIME_LINKS_LE7};
pub use quandle::{are_isomorphic, find_embedding, parse_quandle, FiniteQuandle};
