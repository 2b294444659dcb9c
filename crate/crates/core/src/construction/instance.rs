//! The constructed Brouwer instance and its per-point color oracle.

use super::gadgets::{connector_wires, leaf_wires, outer_wires, WireRole};
use super::layout::{BoxRect, Dimensions, LayoutParams, StructureLayout};
use super::wire::WirePolyline;
use super::ConstructionError;
use crate::grid::{BrouwerInstance, Color, Coloring, Coord, DomainShape, GridPoint, UnitSquare};
use crate::qbf::{Prefix, QbfFormula};

/// Leaf truth values are tabulated up to this many variables.
const TABLE_VARS: u32 = 20;

/// The three solution squares of a constructed instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Terminals {
    pub yes: UnitSquare,
    pub no: UnitSquare,
    pub aux_source: UnitSquare,
}

type Wires = Vec<(WireRole, WirePolyline)>;

#[derive(Debug, Clone)]
pub struct ConstructedBrouwer {
    formula: QbfFormula,
    dims: Dimensions,
    /// Per depth `0..n`, local to the structure's box.
    connectors: Vec<Wires>,
    leaf_sat: Wires,
    leaf_unsat: Wires,
    outer: Wires,
    leaf_table: Option<Vec<bool>>,
}

pub fn build_brouwer(formula: &QbfFormula, params: LayoutParams) -> Result<ConstructedBrouwer, ConstructionError> {
    let n = formula.num_vars();
    let dims = Dimensions::new(n, params)?;
    let connectors = (0..n as usize)
        .map(|d| connector_wires(&dims, d, formula.prefix()[d]))
        .collect();
    let leaf_table = (n <= TABLE_VARS).then(|| {
        (0u32..1 << n)
            .map(|v| {
                let bits: Vec<bool> = (0..n).map(|i| (v >> (n - 1 - i)) & 1 == 1).collect();
                formula.matrix_holds(&bits)
            })
            .collect()
    });
    Ok(ConstructedBrouwer {
        formula: formula.clone(),
        leaf_sat: leaf_wires(&dims, true),
        leaf_unsat: leaf_wires(&dims, false),
        outer: outer_wires(&dims),
        connectors,
        dims,
        leaf_table,
    })
}

/// Solution squares at the ends of the root's stubs and the aux source start.
pub fn terminals(formula: &QbfFormula, params: LayoutParams) -> Result<Terminals, ConstructionError> {
    let dims = Dimensions::new(formula.num_vars(), params)?;
    Ok(terminals_of(&dims))
}

fn terminals_of(dims: &Dimensions) -> Terminals {
    let outer = outer_wires(dims);
    let find = |role| {
        outer
            .iter()
            .find(|(r, _)| *r == role)
            .map(|(_, w)| w.clone())
            .expect("root owns all outer wires")
    };
    Terminals {
        yes: find(WireRole::YesStub).last_square(),
        no: find(WireRole::NoStub).last_square(),
        aux_source: find(WireRole::AuxSource).first_square(),
    }
}

fn first_hit(wires: &Wires, p: GridPoint) -> Option<Color> {
    wires.iter().find_map(|(_, w)| w.color_at(p))
}

impl ConstructedBrouwer {
    pub fn formula(&self) -> &QbfFormula {
        &self.formula
    }

    pub fn params(&self) -> LayoutParams {
        self.dims.params
    }

    pub fn dims(&self) -> &Dimensions {
        &self.dims
    }

    pub fn terminals(&self) -> Terminals {
        terminals_of(&self.dims)
    }

    pub fn layout(&self, x: &Prefix) -> Result<StructureLayout, ConstructionError> {
        let n = self.formula.num_vars();
        if x.len() > n as usize {
            return Err(ConstructionError::PrefixTooLong { len: x.len(), n });
        }
        Ok(StructureLayout::at(x.clone(), self.dims.box_of(x)))
    }

    fn leaf_holds(&self, bits: &[bool]) -> bool {
        match &self.leaf_table {
            Some(t) => {
                let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
                t[idx]
            }
            None => self.formula.matrix_holds(bits),
        }
    }

    /// Wires owned by `S(Φ_x)`, in absolute coordinates.
    pub fn structure_wires(&self, x: &Prefix) -> Result<Vec<(WireRole, WirePolyline)>, ConstructionError> {
        let b = self.layout(x)?.bbox;
        let n = self.formula.num_vars() as usize;
        let local = if x.len() == n {
            if self.leaf_holds(x.bits()) {
                &self.leaf_sat
            } else {
                &self.leaf_unsat
            }
        } else {
            &self.connectors[x.len()]
        };
        let mut out: Vec<(WireRole, WirePolyline)> = local.iter().map(|(r, w)| (*r, w.translated(b.x, b.y))).collect();
        if x.is_empty() {
            out.extend(self.outer.iter().cloned());
        }
        Ok(out)
    }

    /// Every wire of every structure, with its owner. Exponential in `n`.
    pub fn all_wires(&self) -> Vec<(Prefix, WireRole, WirePolyline)> {
        let n = self.formula.num_vars() as usize;
        Prefix::all_up_to(n)
            .flat_map(|x| {
                self.structure_wires(&x)
                    .expect("prefix within range")
                    .into_iter()
                    .map(move |(r, w)| (x.clone(), r, w))
            })
            .collect()
    }

    /// The color oracle: boundary, then root wiring, then the owned wires of
    /// each box on the root-to-leaf chain containing `p`.
    pub fn color_at(&self, p: GridPoint) -> Color {
        let last = self.dims.side() - 1;
        if p.x == 0 {
            return Color::One;
        }
        if p.y == 0 {
            return Color::Two;
        }
        if p.x == last || p.y == last {
            return Color::Zero;
        }
        if let Some(c) = first_hit(&self.outer, p) {
            return c;
        }
        let root = self.dims.root_box();
        if !root.contains(p) {
            return Color::Zero;
        }
        let n = self.dims.n();
        let mut b = root;
        let mut bits = [false; 128];
        for (depth, bit) in bits.iter_mut().enumerate().take(n) {
            let local = GridPoint::new(p.x - b.x, p.y - b.y);
            if let Some(c) = first_hit(&self.connectors[depth], local) {
                return c;
            }
            let (wc, hc) = (self.dims.widths[depth + 1], self.dims.heights[depth + 1]);
            let (x0, y0) = self.dims.child_offset(depth, false);
            let (x1, _) = self.dims.child_offset(depth, true);
            if local.y < y0 || local.y >= y0 + hc {
                return Color::Zero;
            }
            let (dx, chosen) = if local.x >= x0 && local.x < x0 + wc {
                (x0, false)
            } else if local.x >= x1 && local.x < x1 + wc {
                (x1, true)
            } else {
                return Color::Zero;
            };
            *bit = chosen;
            b = BoxRect {
                x: b.x + dx,
                y: b.y + y0,
                w: wc,
                h: hc,
            };
        }
        let local = GridPoint::new(p.x - b.x, p.y - b.y);
        let wires = if self.leaf_holds(&bits[..n]) {
            &self.leaf_sat
        } else {
            &self.leaf_unsat
        };
        first_hit(wires, local).unwrap_or(Color::Zero)
    }

    /// Number of wires summed over all structures, without building them.
    pub fn wire_count(&self) -> u128 {
        let n = self.dims.n() as u32;
        // 6 per internal structure, 2 per leaf, 4 outer.
        6 * ((1u128 << n) - 1) + 2 * (1u128 << n) + 4
    }

    pub fn side_len(&self) -> Coord {
        self.dims.side()
    }
}

impl Coloring for ConstructedBrouwer {
    fn size_param(&self) -> u32 {
        self.dims.m
    }

    fn shape(&self) -> DomainShape {
        DomainShape::Square
    }

    fn color(&self, p: GridPoint) -> Color {
        self.color_at(p)
    }
}

impl BrouwerInstance for ConstructedBrouwer {}
