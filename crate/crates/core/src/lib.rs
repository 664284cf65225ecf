//! Decorated mapper graphs and cellular Leray cosheaves.
//!
//! Given a simplicial complex `X` with a vertex function `f` and a finite open
//! interval cover of the range of `f` whose nerve is a graph, this crate
//! computes
//!
//! * the cellular Leray cosheaf on the nerve: homology of the preimage of every
//!   cover element and pairwise intersection, with the inclusion-induced maps;
//! * the decorated mapper graph, its refinement into connected components;
//! * the continuous extension of the cellular cosheaf to arbitrary open
//!   intervals via cosheaf homology, with an explicit Mayer–Vietoris
//!   isomorphism to the homology of the preimage of the covered region;
//! * checks of the resolution-interleaving between the extension and the
//!   homology of preimages.
//!
//! All linear algebra is exact, over GF(2) or the rationals.

pub mod assets;
pub mod chain;
pub mod convergence;
pub mod cosheaf;
pub mod cosheaf_homology;
pub mod cover;
pub mod field;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod simplicial;

pub use cover::{Cover, NerveComplex, OpenInterval, SubNerve};
pub use field::{Field, FieldKind, Gf2, Rational};
pub use homology::{GradedMap, Homology};
pub use linalg::Matrix;
pub use simplicial::{ScalarField, SimplicialComplex, Subcomplex};
