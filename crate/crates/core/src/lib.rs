//! Certification of persistent tangles.
//!
//! A tangle is persistent when every knot diagram containing it is knotted.
//! This crate builds and checks such certificates from colorings: a
//! nontrivial Fox or quandle coloring of the tangle whose endpoints all
//! share one color extends monochromatically to any host diagram, so the
//! host admits a nontrivial coloring and cannot be the unknot.
//!
//! Modules:
//! - [`diagram`]: PD codes, validation, faces, components.
//! - [`colorings`]: Fox colorings mod N, quandles, determinants.
//! - [`moves`]: Reidemeister moves with recoloring, R2 transport.
//! - [`tangle`]: closures, addition, mirror, rational tangles.
//! - [`persistence`]: cut constructions, certificate search and verification.

pub mod colorings;
pub mod diagram;
pub mod error;
pub mod moves;
pub mod persistence;
pub mod tangle;

mod pd;
mod unionfind;

pub use colorings::{
    determinant, dihedral, fox_solution_space, has_nontrivial_fox, link_determinant,
    quandle_colorings, Coloring, FoxSolutions, Palette, Quandle, QuandleSearch,
};
pub use diagram::{ArcLabel, Crossing, Diagram, Face, Sign};
pub use error::{ColoringError, DiagramError, MoveError, PersistenceError, TangleError};
pub use moves::{MoveKind, MoveRecord};
pub use persistence::{Certificate, CertificateKind, IrreducibilityReport, VerificationReport};
pub use tangle::{Closure, Tangle, TangleFraction};
