//! Quantified boolean formulas to Brouwer instances.
//!
//! Each prefix `x` of the variables owns a box. A leaf box routes its left
//! input to YES or NO by the matrix value; an internal box chains its two
//! children with six connector wires whose shape depends on the quantifier.
//! The root box is fed by a wire from the origin, so the walk ends at the YES
//! stub exactly when the formula is true.

pub mod descriptor;
pub mod gadgets;
pub mod instance;
pub mod layout;
pub mod wire;

use thiserror::Error;

pub use descriptor::{BrouwerDescriptor, Descriptor, DescriptorError, SpernerDescriptor};
pub use gadgets::WireRole;
pub use instance::{build_brouwer, terminals, ConstructedBrouwer, Terminals};
pub use layout::{layout, BoxRect, Dimensions, LayoutParams, StructureLayout, Terminal, TerminalKind};
pub use wire::{wire_color_at, WireError, WirePolyline};

use crate::qbf::{Prefix, QbfFormula};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid layout parameters: {0}")]
    InvalidParams(String),
    #[error("a formula with {n} variables needs a domain beyond the coordinate limit")]
    DomainTooLarge { n: u32 },
    #[error("prefix of length {len} exceeds the {n} variables of the formula")]
    PrefixTooLong { len: usize, n: u32 },
}

/// Wires owned by `S(Φ_x)`, in absolute coordinates.
pub fn structure_wires(
    formula: &QbfFormula,
    x: &Prefix,
    params: LayoutParams,
) -> Result<Vec<WirePolyline>, ConstructionError> {
    let inst = build_brouwer(formula, params)?;
    Ok(inst.structure_wires(x)?.into_iter().map(|(_, w)| w).collect())
}
