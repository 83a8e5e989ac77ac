use thiserror::Error;

use crate::diagram::ArcLabel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("arc {label} occurs {count} times; expected exactly 2")]
    ArcOccurrence { label: ArcLabel, count: usize },
    #[error("planarity violation: V - E + F = {euler} for a connected piece")]
    Planarity { euler: i64 },
    #[error("orientation error: {0}")]
    Orientation(String),
    #[error("boundary error: {0}")]
    Boundary(String),
    #[error("unknown arc {0}")]
    UnknownArc(ArcLabel),
    #[error("arc {0} compared with itself")]
    SameArc(ArcLabel),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("modulus must be at least 2, got {0}")]
    Modulus(u64),
    #[error("arc {0} has no color")]
    MissingArc(ArcLabel),
    #[error("arc {0} is not part of the diagram")]
    UnknownArc(ArcLabel),
    #[error("quandle axiom fails: {0}")]
    Axiom(String),
    #[error("quandle file: {0}")]
    QuandleFormat(String),
    #[error("non-involutory quandle colorings need an oriented diagram")]
    OrientationRequired,
    #[error("determinant is only defined here for 1-component closed diagrams ({0} components)")]
    NotAKnot(usize),
    #[error("solution count {count} exceeds the enumeration cap {cap}")]
    CapExceeded { count: String, cap: u64 },
    #[error("color {color} is out of range for a palette of size {size}")]
    ColorRange { color: u32, size: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("arcs {0} and {1} do not share a face")]
    NotCoFacial(ArcLabel, ArcLabel),
    #[error("no move applies here: {0}")]
    Inapplicable(String),
    #[error("face graph is disconnected between arcs {0} and {1}")]
    Disconnected(ArcLabel, ArcLabel),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TangleError {
    #[error("expected a {expected}-ended tangle, found {found} boundary endpoints")]
    Arity { expected: usize, found: usize },
    #[error("tangle requires an orientation")]
    Unoriented,
    #[error("twist vector is empty")]
    EmptyTwists,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PersistenceError {
    #[error("the supplied coloring is trivial")]
    TrivialColoring,
    #[error("arcs {0} and {1} carry different colors")]
    ColorsDiffer(ArcLabel, ArcLabel),
    #[error("input must be a closed 1-component diagram")]
    NotAKnot,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("no certificate exists: {0}")]
    CannotExist(String),
    #[error("no certificate found: {0}")]
    NotFound(String),
    #[error("certificate is malformed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
}
