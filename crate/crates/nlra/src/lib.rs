//! Exact-arithmetic kernel for finite-dimensional n-Lie Rinehart algebras.
//!
//! Structures are given by rational structure constants; every axiom is
//! verified by exhaustive basis sweeps, cohomology is computed by exact
//! linear algebra, and the derived objects (Leibniz-Rinehart brackets,
//! semidirect products, tensor and adjoined-base enlargements, central and
//! `T_theta` extensions, crossed modules with their degree-3 invariant)
//! are constructed with their defining properties re-checked per instance.
//!
//! No floating point anywhere: scalars are arbitrary-precision rationals
//! and elimination is fraction-free, so a passing check is a proof for the
//! instance at hand and a failing one comes with an exact witness.

// index-based loops over matrix rows/columns read better than iterator
// chains in the dense linear algebra below
#![allow(clippy::needless_range_loop)]

pub mod base_algebra;
pub mod bundle;
pub mod cli;
pub mod cohomology;
pub mod crossed;
pub mod error;
pub mod exact;
pub mod ext;
pub mod fixtures;
pub mod nlie;
pub mod rep;
pub mod report;
pub mod rinehart;
pub mod wedge;

pub use error::Error;
pub use report::{Report, Status};
