//! Finite matroids, strong maps, and the category around them.
//!
//! The crate models matroids on ground sets of up to 16 labelled elements,
//! with the flat family as canonical representation and the independent
//! sets, rank table and closure table derived at construction. On top of
//! that sit strong maps with exhaustive hom-set enumeration, geometric
//! lattices with the flat-lattice and atom-matroid translations, the usual
//! matroid constructions (duals, minors, coproducts, connections, unions,
//! extensions and erections), generic finite (co)limit searches with
//! verified verdicts, two orthogonal factorization systems, linear and
//! graphic matroids over exact arithmetic, and the greedy-algorithm
//! characterization of matroids.
//!
//! Everything is exact: counts are integers, weights are rationals, and
//! every search re-verifies its witnesses. All values are immutable after
//! construction and safe to share across threads.

pub mod catlab;
pub mod construct;
pub mod enumerate;
pub mod glat;
pub mod greedy;
pub mod ground;
pub mod json;
pub mod maps;
pub mod matroid;
pub mod represent;

pub use ground::{GroundSet, Subset, SubsetFamily};
pub use maps::StrongMap;
pub use matroid::{Matroid, PointedMatroid};
