//! Irreducible components of module varieties of truncated path algebras.
//!
//! Over a truncated path algebra, the variety of `d`-dimensional modules
//! decomposes into closures of strata indexed by semisimple sequences, and
//! the components among them can be detected by a filtration-existence
//! test against generic modules.  This crate provides:
//!
//! * quivers, truncated path algebras, dimension vectors, semisimple
//!   sequences, and the dominance order ([`quiver`]);
//! * explicit finite-field representation points with radical and socle
//!   layerings, duality, and degeneration invariants ([`rep`]);
//! * skeleta of modules, hypergraph extraction, and generic modules for a
//!   stratum ([`skeleta`]);
//! * the filtration search deciding whether a module degenerates into a
//!   stratum closure ([`filt`]);
//! * the component classifier and its reports ([`components`]).

pub mod components;
pub mod config;
pub mod error;
pub mod field;
pub mod filt;
pub mod par;
pub mod quiver;
pub mod rep;
pub mod skeleta;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
