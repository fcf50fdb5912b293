//! Combinatorial models of fold maps `S² → S²` with embedded fold circles.
//!
//! A model lists the fold images as nested circles, the sheets over every
//! region of their complement, and which two sheets meet at each fold. From
//! a transverse loop given by its crossings, the module computes the
//! pullback 1-manifold, the monodromy on the sheets over the basepoint, the
//! winding and simplicial-loop invariants of the standard model, and the
//! alternation certificate for nested models.

mod alternation;
mod arrangement;
mod pullback;
mod words;

use thiserror::Error;

pub use alternation::{
    alternation_certificate, AlternationCertificate, AlternationVerdict, ArcSplit, DiskArcs,
    ALTERNATION_REFERENCE,
};
pub use arrangement::{
    standard_path, ArrangementSpec, CircleSpec, Crossing, CrossingWord, Direction,
    DiskArrangement, FoldFlag, ModelKind, NestedSpec, PieceId, RegionId,
};
pub use pullback::{
    basepoint_transport, monodromy, pullback, ArcKind, BasepointFrame, PullbackArc,
    PullbackComponent, PullbackGraph,
};
pub use words::{disk_word, simplicial_class, winding_invariant, BASE_LETTER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldMapError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("unknown region {0}")]
    UnknownRegion(usize),
    #[error("circle {0} listed twice")]
    DuplicateCircle(usize),
    #[error("circle {circle} has unknown parent {parent}")]
    UnknownParent { circle: usize, parent: usize },
    #[error("nesting cycle through circle {0}")]
    NestingCycle(usize),
    #[error("no fiber given over region {0}")]
    MissingFiber(usize),
    #[error("circle {circle} ({flag:?}): fiber {inside} inside vs {outside} outside")]
    FiberJump {
        circle: usize,
        inside: usize,
        outside: usize,
        flag: FoldFlag,
    },
    #[error("unknown circle {0}")]
    UnknownCircle(usize),
    #[error("rho is not idempotent at circle {0}")]
    RhoNotIdempotent(usize),
    #[error("disk {circle} is not inside disk {rho}")]
    RhoNotContaining { circle: usize, rho: usize },
    #[error("region {region}: fiber {declared} but {listed} sheets listed")]
    SheetCount {
        region: usize,
        declared: usize,
        listed: usize,
    },
    #[error("sheet {sheet} repeated over region {region}")]
    RepeatedSheet { region: usize, sheet: String },
    #[error("sheets across circle {0} do not differ by a fold pair")]
    SheetJump(usize),
    #[error("sheet signs cannot be chosen consistently")]
    PieceGraphNotBipartite,
    #[error("the source is not connected")]
    PieceGraphDisconnected,
    #[error("declared degree {declared}, sheets give {computed}")]
    DegreeMismatch { declared: i64, computed: i64 },
    #[error("rho({0}) is not determined by the model")]
    RhoUndefined(usize),
    #[error("circle {circle}: rho declared {declared}, model gives {derived}")]
    RhoMismatch {
        circle: usize,
        declared: usize,
        derived: usize,
    },
    #[error("expected a single sheet over the basepoint, found {0}")]
    NotSingleSheeted(usize),
    #[error("crossing {position}: circle {circle} does not bound region {region} that way")]
    BadCrossing {
        position: usize,
        circle: usize,
        region: usize,
    },
    #[error("path starts in region {found}, expected {expected}")]
    WrongBase { expected: usize, found: usize },
    #[error("path from region {base} ends in region {end}")]
    NotClosed { base: usize, end: usize },
    #[error("region {region} has {fiber} sheets, a frame needs |degree| = {}", degree.unsigned_abs())]
    FrameSize {
        region: usize,
        fiber: usize,
        degree: i64,
    },
    #[error("relabelling of degree {found} applied to a frame of size {expected}")]
    FrameRelabel { expected: usize, found: usize },
    #[error("some sheet over the start does not reach the end")]
    NotFull,
    #[error("letter {letter:?} at position {position} is outside the alphabet")]
    BadLetter { position: usize, letter: char },
    #[error("word must start and end with {}", BASE_LETTER)]
    NotBased,
    #[error("the vertex alphabet needs d >= 2, got {0}")]
    AlphabetTooSmall(usize),
    #[error("operation needs a standard model")]
    NotStandard,
    #[error("disk {circle} is met in {arcs} arcs, expected 2")]
    DiskArcCount { circle: usize, arcs: usize },
    #[error("the pullback has {0} component(s), at least 2 needed")]
    TooFewComponents(usize),
    #[error("the basepoint lies on several sheets, no marked component")]
    NoMarkedComponent,
}
