//! Nori diagrams of finite categories of simplicial pairs and their
//! homology representations.

mod complex;
mod diagram;
pub mod fixtures;
mod homology;

pub use complex::{PairsCategoryData, Simplex, SimplicialComplex, SimplicialMap, SimplicialPair, Triple};
pub use diagram::{build_nori_diagram, vertex_name, ArrowKind, NoriDiagram};
pub use homology::{boundary_matrix, chain_map, check_les_exactness, homology_representation, relative_homology};
