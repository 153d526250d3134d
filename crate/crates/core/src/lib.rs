//! Exhaustive generation, exact power series and singularity-analysis
//! constants for ordered trees in which every internal node distinguishes
//! exactly one child, together with the marked ordered tree variants and
//! their skew Dyck path encoding.
//!
//! The crate is `no_std` (it needs `alloc`). All counting is exact; the only
//! inexact arithmetic lives in [`real`], a fixed-point type over big integers
//! with a per-value precision.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod closed_forms;
pub mod error;
pub mod marked;
pub mod models;
pub mod real;
pub mod series;
pub mod tree;

pub use error::{Error, Result};
pub use real::Real;
pub use series::{Marker, MarkerPoly, MultiSeries, PowerSeries, Series};
pub use tree::{
    DistTree, Family, LeafConvention, MarkedDistTree, MarkedTree, OrderedTree, Parameter,
    PlaneTree, TreeStats,
};
