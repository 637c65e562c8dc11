//! Exact computation in Leavitt path algebras of finite graphs: normal forms,
//! hereditary saturated closures, two-sided ideal generators of the form
//! `v + Σ λᵢ gⁱ`, and the ascending-chain analysis of the ideal lattice.

pub mod algebra;
pub mod cli;
pub mod closures;
pub mod fixtures;
pub mod graph;
pub mod ideals;
pub mod poly;
pub mod scalar;

pub use algebra::{Algebra, CyclePolynomial, Element, Monomial};
pub use closures::VertexSet;
pub use graph::{load_graph, Graph, Path};
pub use scalar::{Field, Scalar};
