//! Two-sided ideals given by finite generator lists: bounded membership with
//! exact certificates, reduction to cycle-polynomial generators, and the
//! vertex trace of graded ideals.

mod canonical;
mod gcd;
mod membership;
mod prune;
mod trace;

pub use canonical::{canonical_generators, canonicalize_real, CanonicalGenerators};
pub use gcd::{gcd_merge, merge_inputs, GcdMerge};
pub use membership::{
    membership_bounded, search_is_complete, Certificate, CertificateRecord, CertificateTerm, Membership,
};
pub use prune::{prune_dominated, Dropped, PruneResult};
pub use trace::{closure_certificates, graded_vertex_trace, ClosureCertificate, GradedTrace, VertexTrace};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::graph::GraphError;

/// Default sandwich length for membership searches.
pub const DEFAULT_BOUND: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("the zero element has no canonical generators")]
    ZeroElement,
    #[error("expected an element without ghost edges, got {0}")]
    GhostEdges(String),
    #[error("cannot merge {first} with {second}: vertex or cycle differ")]
    MismatchedCycle { first: String, second: String },
    #[error("gcd {0} has zero constant term")]
    ZeroConstantGcd(String),
    #[error("{0} is not hereditary and saturated")]
    NotHereditarySaturated(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
