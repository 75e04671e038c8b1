//! Exact symbolic machinery for braided and twisted tensor products of
//! Hopf-module algebras and the parameter spaces of their PBW deformations.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] — exact arithmetic in Q and in cyclotomic fields Q(z_m);
//! * [`linalg`] — sparse exact row reduction and linear solving;
//! * [`freealg`] — words, noncommutative polynomials and graded subspaces;
//! * [`hopf`] — Hopf algebra presentations, products, coproducts, antipodes;
//! * [`action`] — module-algebra actions and induced actions on relations;
//! * [`products`] — braidings, braided opposites, braided/twisted products,
//!   smash products and quasitriangularity checks;
//! * [`grading`] — quadratic reduction systems, confluence and graded
//!   dimensions by exact elimination;
//! * [`deform`] — deformation maps, overlap intersections and the linear
//!   systems cutting out the deformation parameter space;
//! * [`catalog`] — ready-made example bundles with frozen expected data;
//! * [`parse`] / [`report`] — the textual interfaces.

pub mod action;
pub mod catalog;
pub mod deform;
pub mod error;
pub mod freealg;
pub mod grading;
pub mod hopf;
pub mod linalg;
pub mod parse;
pub mod products;
pub mod report;
pub mod scalar;

pub use error::Error;

/// Convenient result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
