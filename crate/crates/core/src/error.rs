use thiserror::Error;

use crate::roots::RootId;

/// Crate-wide error type. Most variants correspond to a specific failure
/// mode of one operation; callers that can recover (e.g. by deepening a
/// slice) match on the variant.
#[derive(Debug, Error)]
pub enum Error {
    #[error("exact mode unavailable: bond m({},{}) = {label} has an irrational form entry", .bond.0 + 1, .bond.1 + 1)]
    ExactModeUnavailable { bond: (usize, usize), label: u32 },

    #[error("slice too large: {count} roots exceeds cap {cap}")]
    SliceTooLarge { count: usize, cap: usize },

    #[error("rank {rank} unsupported: {needed}")]
    RankUnsupported { rank: usize, needed: &'static str },

    #[error("degenerate quadratic: the whole segment is isotropic")]
    DegenerateQuadratic,

    #[error("dihedral closure escapes the slice at depth {depth}; deepen the slice to determine the canonical pair")]
    ClosureEscapesSlice { depth: u32 },

    #[error("roots {a:?} and {b:?} have equal normalized coordinates; numeric breakdown in approximate mode")]
    EqualNormalizedCoordinates { a: RootId, b: RootId },

    #[error("order prefix is not an inversion set: peel fails at index {index}")]
    NotAnInversionPrefix { index: usize },

    #[error("insufficient near-cone candidates: found a chain of {found}, needed {needed}")]
    InsufficientCandidates { found: usize, needed: usize },

    #[error("matrix is not of finite type: generation did not saturate within depth {depth_tried}")]
    NotFiniteType { depth_tried: u32 },

    #[error("word is not reduced: prefix of length {prefix_len} repeats or negates an inversion")]
    WordNotReduced { prefix_len: usize },

    #[error("inversion sets do not partition the slice: {detail}")]
    NotAPartition { detail: String },

    #[error("block structure violated: {detail}")]
    BlockViolation { detail: String },

    #[error("invalid order spec: {detail}")]
    InvalidSpec { detail: String },

    #[error("root {id:?} not in slice")]
    RootNotInSlice { id: RootId },

    #[error("parse error: {detail}")]
    Parse { detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
