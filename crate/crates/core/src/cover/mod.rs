//! Branched-cover models: graphs of groups, deck groups, truncated
//! infinite covers, sphere-class homology over GF(p), separation
//! certificates, and obstruction classes with their deck orbits.

mod graph;
mod model;
mod truncate;

pub use graph::{DeckGroup, FactorOrigin, GogVertex, GraphOfGroups, VertexKind};
pub use model::{unlink_model, CoverModel, LambdaSubgroup, PieceSide, SideDiagnosis};
pub use truncate::{
    deck_translate, obstruction_alpha0, orbit_independence, truncate_cover, ObstructionClass,
    OrbitReport, SeparationReport, SphereIndex, TruncatedComplex,
};

use crate::gf::FieldError;
use crate::words::WordError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("invalid model: {0}")]
    BadModel(String),
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("truncation radius must be at least {0}")]
    BadRadius(usize),
    #[error("sphere index does not name a gluing sphere: {0}")]
    BadSphereIndex(String),
    #[error("sphere lies outside the truncated ball")]
    SphereOutsideBall,
    #[error("orbit sample must consist of distinct normal forms")]
    DuplicateSample,
    #[error("orbit sample element is not supported on the side-2 subgroup")]
    SampleOutsideSubgroup,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Word(#[from] WordError),
}
