//! Exact computations with finite-dimensional bound quiver algebras.
//!
//! The crate covers exact linear algebra over the rationals and prime fields,
//! quivers and their mutation, algebras given by a quiver with relations,
//! right modules as quiver representations, minimal projective resolutions,
//! Ext groups and the Auslander-Reiten translates, one-point extensions and
//! relation extensions, and a handful of checkers for slices and local slices
//! in Auslander-Reiten quivers.
//!
//! Everything here works without `std`; only `alloc` is needed. File formats,
//! JSON and the command line live in the companion `quiverkit` crate.
//!
//! Conventions: paths compose left to right, so `a*b` means first `a` then
//! `b`. Modules are right modules, written as representations whose arrow
//! `a: s -> t` acts by a matrix `M_t x M_s` on column vectors.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod arquiver;
pub mod error;
pub mod extensions;
pub mod field;
pub mod homology;
pub mod matrix;
pub mod module;
pub mod mutation;
pub mod projective;
pub mod quiver;
pub mod slices;

pub use algebra::{BasedAlgebra, Quotient, RawAlgebra};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rational, Rationals};
pub use matrix::Matrix;
pub use module::{Module, ModuleMap};
pub use quiver::{Path, Presentation, Quiver, Relation};
