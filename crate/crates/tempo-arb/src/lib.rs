#![forbid(unsafe_code)]

//! Toolkit for time-respecting arborescences in temporal digraphs.
//!
//! A temporal digraph carries an exact rational time label on every arc. An
//! arborescence is *time-respecting* when labels never decrease along any
//! directed path from the root. This crate builds minimal time-respecting
//! arborescences, transforms one arborescence into another by single-arc
//! swaps, decides in polynomial time whether such a transformation exists
//! when the roots differ, cross-checks everything against exhaustive search
//! at small scale, and generates vertex-cover-based instances on which the
//! shortest transformation is hard to find.

pub mod corpus;
pub mod digraph;
pub mod fixed_root;
pub mod free_root;
pub mod hardness;
pub mod io;
pub mod label;
pub mod minimal;
pub mod oracle;

pub use digraph::{Arborescence, Arc, ContractionResult, TemporalDigraph, ValidationError};
pub use fixed_root::{reconfigure_same_root, verify_sequence, ReconfSequence, ReconfStep};
pub use label::Label;
