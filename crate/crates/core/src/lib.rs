//! Computational topology over GF(2) at desk scale.
//!
//! The crate makes a family of combinatorial-topology constructions
//! executable and checkable:
//!
//! * abstract simplicial complexes and the operations that generate new ones
//!   (closure, skeleta, cones, barycentric subdivision, induced subcomplexes),
//! * deleted products with their coordinate-swap involution and the quotient
//!   cell complexes they define,
//! * GF(2) chain complexes: Betti numbers, filling chains, homology classes,
//!   cocycle/coboundary tests,
//! * the intersection-parity obstruction cocycle of a generic linear map on
//!   the moment curve, and the derived embeddability obstruction,
//! * simplicial chain maps, homological almost-embeddings, and staircase
//!   triangulations of products of simplices,
//! * covers by subcomplexes: Helly numbers and Betti-number audits,
//! * a constructive pipeline that turns favorable cover data into constrained
//!   chain maps by direct search for the monochromatic structures a
//!   Ramsey-style argument would guarantee.
//!
//! Everything is exact: GF(2) linear algebra is bit-packed, geometric
//! predicates use arbitrary-precision rationals, and all search orders are
//! deterministic, so identical inputs produce identical outputs.

pub mod budget;
pub mod cell;
pub mod chain_map;
pub mod complex;
pub mod construction;
pub mod error;
pub mod families;
pub mod gf2;
pub mod helly;
pub mod homology;
pub mod json;
pub mod obstruction;
pub mod oracle;
pub mod selftest;
pub mod simplex;

pub use budget::Budget;
pub use cell::{CellComplex, CellLabel, Involution, ProductCell};
pub use chain_map::{HaeVerdict, SimplicialChainMap, StaircaseTriangulation};
pub use complex::{SimplicialComplex, Subdivision};
pub use construction::{
    almost_embedding_verdict, build_constrained, verify_constrained, BuildOutcome,
    ConstrainedChainMap, ConstraintMap, ConstraintReport,
};
pub use error::Error;
pub use helly::{HellyAnalysis, HypothesisReport, SetFamily};
pub use homology::{Chain, Filling, HomologyBasis};
pub use obstruction::{GenericPointConfig, ObstructionAnalysis, ObstructionWitness};
pub use simplex::Simplex;
