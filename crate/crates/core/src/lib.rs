//! Classification of prime knots from pair notations of their projections.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! and parallel drivers live in the `knotclass` crate.

#![no_std]

extern crate alloc;

pub mod coloring;
pub mod enumeration;
pub mod moves;
pub mod notation;
pub mod pipeline;
pub mod realizability;

pub use coloring::{ColoringScheme, Fingerprint};
pub use moves::{EquivalenceVerdict, MoveDescriptor};
pub use notation::{CrossingPair, Notation, NotationError, Role};
pub use pipeline::{classify, ClassificationReport, ClassifyConfig, KnotClass};
pub use realizability::{RealizabilityVerdict, RotationSystem};
