//! Succinct two-dimensional fixed-point instances built from quantified
//! boolean formulas.
//!
//! A formula becomes a lazily colored `2^m x 2^m` grid ([`construction`])
//! whose Brouwer walk ([`walker`]) ends at the YES terminal exactly when the
//! formula is true. [`reduction`] turns any such grid into a triangular
//! Sperner instance, and [`verify`] checks all of it against brute-force
//! scans of small grids.
//!
//! ```
//! use sperner_forge::construction::{build_brouwer, LayoutParams};
//! use sperner_forge::grid::Coloring;
//! use sperner_forge::qbf::{QbfFormula, Quantifier};
//! use sperner_forge::walker::{brouwer_walk, default_cap};
//!
//! let f = QbfFormula::from_ints(&[Quantifier::Exists], &[&[1]]).unwrap();
//! let inst = build_brouwer(&f, LayoutParams::default()).unwrap();
//! let end = brouwer_walk(&inst, default_cap(inst.size_param())).solution();
//! assert_eq!(end, Some(inst.terminals().yes));
//! ```

pub mod grid;
pub mod qbf;
pub mod walker;
pub mod reduction;
pub mod construction;
pub mod verify;
pub mod cli;
pub mod render;

#[cfg(test)]
mod properties;
