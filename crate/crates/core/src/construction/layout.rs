//! Closed-form placement of the structure boxes and their terminals.

use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::grid::{Coord, GridPoint, Region, UnitSquare, MAX_SIZE_PARAM};
use crate::qbf::{Prefix, QbfFormula};

/// Leaf box size, margin around child boxes, and gap between siblings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LayoutParams {
    #[serde(rename = "LW")]
    pub lw: u32,
    #[serde(rename = "LH")]
    pub lh: u32,
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "G")]
    pub g: u32,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            lw: 32,
            lh: 32,
            m: 8,
            g: 8,
        }
    }
}

pub const MIN_LEAF: u32 = 24;
/// The over-box corridor's outer lane sits 5 above a child box and needs two
/// clear rows before the parent's edge.
pub const MIN_MARGIN: u32 = 7;
/// Three vertical wires share the gap between siblings.
pub const MIN_GAP: u32 = 8;

impl LayoutParams {
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let bad = |what: &str, v: u32, min: u32| {
            Err(ConstructionError::InvalidParams(format!("{what} = {v} is below the minimum {min}")))
        };
        if self.lw < MIN_LEAF {
            return bad("LW", self.lw, MIN_LEAF);
        }
        if self.lh < MIN_LEAF {
            return bad("LH", self.lh, MIN_LEAF);
        }
        if self.m < MIN_MARGIN {
            return bad("M", self.m, MIN_MARGIN);
        }
        if self.g < MIN_GAP {
            return bad("G", self.g, MIN_GAP);
        }
        if [self.lw, self.lh, self.m, self.g].iter().any(|&v| v > 1 << 20) {
            return Err(ConstructionError::InvalidParams("parameters above 2^20 are not supported".into()));
        }
        Ok(())
    }
}

/// Half-open box `[x, x+w) x [y, y+h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxRect {
    pub x: Coord,
    pub y: Coord,
    pub w: Coord,
    pub h: Coord,
}

impl BoxRect {
    pub fn contains(&self, p: GridPoint) -> bool {
        p.x >= self.x && p.x < self.x + self.w && p.y >= self.y && p.y < self.y + self.h
    }

    pub fn contains_box(&self, other: &BoxRect) -> bool {
        other.x >= self.x && other.y >= self.y && other.x + other.w <= self.x + self.w && other.y + other.h <= self.y + self.h
    }

    pub fn disjoint(&self, other: &BoxRect) -> bool {
        self.x + self.w <= other.x || other.x + other.w <= self.x || self.y + self.h <= other.y || other.y + other.h <= self.y
    }

    /// Inclusive region of the same points.
    pub fn region(&self) -> Region {
        Region::new(self.x, self.y, self.x + self.w - 1, self.y + self.h - 1)
    }

    /// Center height, rounded down.
    pub fn cy(&self) -> Coord {
        self.y + self.h / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TerminalKind {
    In,
    Out,
}

/// A square on the box edge where an owned wire enters or leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Terminal {
    pub square: UnitSquare,
    pub kind: TerminalKind,
}

impl Terminal {
    pub fn point(&self) -> GridPoint {
        self.square.anchor
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureLayout {
    pub prefix: Prefix,
    pub bbox: BoxRect,
    pub left_in: Terminal,
    pub yes_out: Terminal,
    pub right_in: Terminal,
    pub no_out: Terminal,
}

impl StructureLayout {
    pub fn at(prefix: Prefix, bbox: BoxRect) -> Self {
        let cy = bbox.cy();
        let right = bbox.x + bbox.w - 2;
        let t = |x, y, kind| Terminal {
            square: UnitSquare::new(x, y),
            kind,
        };
        StructureLayout {
            prefix,
            bbox,
            left_in: t(bbox.x, cy, TerminalKind::In),
            yes_out: t(right, cy - 4, TerminalKind::Out),
            right_in: t(right, cy, TerminalKind::In),
            no_out: t(right, cy + 4, TerminalKind::Out),
        }
    }
}

/// Box sizes per depth and the derived domain size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dimensions {
    pub params: LayoutParams,
    /// `widths[i]` is the width of a box at depth `i`, for `i` in `0..=n`.
    pub widths: Vec<Coord>,
    pub heights: Vec<Coord>,
    /// Size parameter of the domain.
    pub m: u32,
}

impl Dimensions {
    pub fn new(n: u32, params: LayoutParams) -> Result<Self, ConstructionError> {
        params.validate()?;
        let (lw, lh, m, g) = (params.lw as Coord, params.lh as Coord, params.m as Coord, params.g as Coord);
        let n = n as usize;
        let limit: Coord = 1 << MAX_SIZE_PARAM;
        let mut widths = vec![0; n + 1];
        let mut heights = vec![0; n + 1];
        widths[n] = lw;
        heights[n] = lh;
        for i in (0..n).rev() {
            widths[i] = 2 * widths[i + 1] + g + 2 * m;
            heights[i] = heights[i + 1] + 2 * m;
            if widths[i] > limit {
                return Err(ConstructionError::DomainTooLarge { n: n as u32 });
            }
        }
        let need = widths[0].max(heights[0]) + 2 * m;
        let mut size = 1u32;
        while (1 as Coord) << size < need {
            size += 1;
        }
        if size > MAX_SIZE_PARAM {
            return Err(ConstructionError::DomainTooLarge { n: n as u32 });
        }
        Ok(Dimensions {
            params,
            widths,
            heights,
            m: size,
        })
    }

    pub fn n(&self) -> usize {
        self.widths.len() - 1
    }

    pub fn side(&self) -> Coord {
        1 << self.m
    }

    pub fn root_box(&self) -> BoxRect {
        let m = self.params.m as Coord;
        BoxRect {
            x: m,
            y: m,
            w: self.widths[0],
            h: self.heights[0],
        }
    }

    /// Offset of child `bit` inside a parent box at depth `depth`.
    pub fn child_offset(&self, depth: usize, bit: bool) -> (Coord, Coord) {
        let m = self.params.m as Coord;
        let dx = if bit {
            m + self.widths[depth + 1] + self.params.g as Coord
        } else {
            m
        };
        (dx, m)
    }

    /// Box of the structure for prefix `x`, found in `O(|x|)`.
    pub fn box_of(&self, x: &Prefix) -> BoxRect {
        let mut b = self.root_box();
        for (depth, &bit) in x.bits().iter().enumerate() {
            let (dx, dy) = self.child_offset(depth, bit);
            b = BoxRect {
                x: b.x + dx,
                y: b.y + dy,
                w: self.widths[depth + 1],
                h: self.heights[depth + 1],
            };
        }
        b
    }
}

pub fn layout(formula: &QbfFormula, x: &Prefix, params: LayoutParams) -> Result<StructureLayout, ConstructionError> {
    let n = formula.num_vars();
    if x.len() > n as usize {
        return Err(ConstructionError::PrefixTooLong { len: x.len(), n });
    }
    let dims = Dimensions::new(n, params)?;
    Ok(StructureLayout::at(x.clone(), dims.box_of(x)))
}
