//! Exact combinatorics of the rank-four oriented matroid attached to a
//! triangulation of a convex polygon.
//!
//! Given a triangulation `T` of the convex `m`-gon, [`chirotope`] builds a
//! uniform rank-four chirotope on `[m]`. The [`matroid`] module derives its
//! signed circuits, cocircuits and facets, [`mtri`] enumerates its
//! triangulations and decides stackability, and [`green`] enumerates maximal
//! green sequences in the type-A cluster category and maps between the two
//! sides. [`realize`] holds exact determinant checks and a heuristic search
//! for point realisations.
//!
//! Vertices are 1-based throughout: the polygon has vertices `1..=m` and
//! cyclic arithmetic uses representatives in `1..=m`.

pub mod chirotope;
pub mod error;
pub mod green;
pub mod matroid;
pub mod mtri;
pub mod polygon;
pub mod realize;

pub use chirotope::{Chirotope, Sign};
pub use error::{Error, Result};
pub use green::{EquivalenceClass, ExchangePair, GreenSequence};
pub use matroid::{FacetList, OrientedMatroid, SignedSet};
pub use mtri::{MatroidTriangulation, SearchLimits, SearchStatus, Simplex};
pub use polygon::{Arc, Triangle, Triangulation, Vertex};
