//! Wire sets owned by each kind of structure.
//!
//! Connector and leaf wires are built in coordinates local to the owning box
//! (its lower-left corner at the origin) and translated on use. Root wiring is
//! absolute.

use super::layout::Dimensions;
use super::wire::WirePolyline;
use crate::grid::Coord;
use crate::qbf::Quantifier;

/// Which wire of a gadget, for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WireRole {
    LeafLeft,
    LeafRight,
    /// Connector wire 1 to 6, in the order parent.left_in, child0 out to
    /// child1.left_in, child1 out to parent out, parent.right_in, the inner
    /// corridor and the outer corridor.
    Connector(u8),
    Origin,
    YesStub,
    NoStub,
    AuxSource,
}

impl std::fmt::Display for WireRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WireRole::LeafLeft => f.write_str("leaf left"),
            WireRole::LeafRight => f.write_str("leaf right"),
            WireRole::Connector(i) => write!(f, "connector w{i}"),
            WireRole::Origin => f.write_str("origin"),
            WireRole::YesStub => f.write_str("yes stub"),
            WireRole::NoStub => f.write_str("no stub"),
            WireRole::AuxSource => f.write_str("aux source"),
        }
    }
}

fn wire(pts: &[(Coord, Coord)]) -> WirePolyline {
    WirePolyline::from_coords(pts).expect("gadget geometry is valid for validated parameters")
}

/// Leaf wires: left_in goes to YES when satisfied, else to NO; right_in to the other.
pub fn leaf_wires(dims: &Dimensions, satisfied: bool) -> Vec<(WireRole, WirePolyline)> {
    let p = dims.params;
    let (w, h) = (p.lw as Coord, p.lh as Coord);
    let cy = h / 2;
    let x1 = 8;
    let x2 = w - 12;
    let r = w - 2;
    let (a_lane, b_lane) = if satisfied { (cy - 4, cy + 4) } else { (cy + 4, cy - 4) };
    vec![
        (WireRole::LeafLeft, wire(&[(0, cy), (x1, cy), (x1, a_lane), (r, a_lane)])),
        (WireRole::LeafRight, wire(&[(r, cy), (x2, cy), (x2, b_lane), (r, b_lane)])),
    ]
}

/// The six connector wires of a structure at depth `depth`, local to its box.
pub fn connector_wires(dims: &Dimensions, depth: usize, q: Quantifier) -> Vec<(WireRole, WirePolyline)> {
    let (wp, hp) = (dims.widths[depth], dims.heights[depth]);
    let (wc, hc) = (dims.widths[depth + 1], dims.heights[depth + 1]);
    let cy = hp / 2;
    let (c0x, _) = dims.child_offset(depth, false);
    let (c1x, c_y) = dims.child_offset(depth, true);
    let g0 = c0x + wc;
    let r0 = c1x + wc;
    let top = c_y + hc;
    let e = wp - 2;
    // ∀ leaves through YES of both children and detours over child1;
    // ∃ mirrors it through NO and detours under both children.
    let (out, back, lane_in, lane_out) = match q {
        Quantifier::Forall => (-4, 4, top + 1, top + 4),
        Quantifier::Exists => (4, -4, c_y - 3, c_y - 6),
    };
    vec![
        (WireRole::Connector(1), wire(&[(0, cy), (c0x, cy)])),
        (
            WireRole::Connector(2),
            wire(&[(g0 - 2, cy + out), (c1x - 2, cy + out), (c1x - 2, cy), (c1x, cy)]),
        ),
        (WireRole::Connector(3), wire(&[(r0 - 2, cy + out), (e, cy + out)])),
        (WireRole::Connector(4), wire(&[(e, cy), (r0 - 2, cy)])),
        (
            WireRole::Connector(5),
            wire(&[
                (r0 - 2, cy + back),
                (r0, cy + back),
                (r0, lane_in),
                (g0 + 3, lane_in),
                (g0 + 3, cy),
                (g0 - 2, cy),
            ]),
        ),
        (
            WireRole::Connector(6),
            wire(&[
                (g0 - 2, cy + back),
                (g0, cy + back),
                (g0, lane_out),
                (r0 + 3, lane_out),
                (r0 + 3, cy + back),
                (e, cy + back),
            ]),
        ),
    ]
}

/// Wires outside the root box: the origin wire, the YES and NO stubs, and
/// the free source feeding root.right_in.
pub fn outer_wires(dims: &Dimensions) -> Vec<(WireRole, WirePolyline)> {
    let root = dims.root_box();
    let cy = root.cy();
    let e = root.x + root.w - 2;
    let d = dims.side();
    vec![
        (WireRole::Origin, wire(&[(0, 0), (0, cy), (root.x, cy)])),
        (WireRole::YesStub, wire(&[(e, cy - 4), (e + 3, cy - 4)])),
        (WireRole::NoStub, wire(&[(e, cy + 4), (e + 3, cy + 4)])),
        (WireRole::AuxSource, wire(&[(d - 3, cy), (e, cy)])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::layout::{LayoutParams, StructureLayout};
    use crate::qbf::Prefix;

    #[test]
    fn connector_count_is_six() {
        let dims = Dimensions::new(2, LayoutParams::default()).unwrap();
        for q in [Quantifier::Forall, Quantifier::Exists] {
            assert_eq!(connector_wires(&dims, 0, q).len(), 6);
        }
    }

    #[test]
    fn connectors_join_terminals() {
        let dims = Dimensions::new(2, LayoutParams::default()).unwrap();
        let x = Prefix::empty();
        let parent = dims.box_of(&x);
        let local = |b: crate::construction::layout::BoxRect| {
            let mut l = StructureLayout::at(x.clone(), b);
            for t in [&mut l.left_in, &mut l.yes_out, &mut l.right_in, &mut l.no_out] {
                t.square.anchor = t.square.anchor.offset(-parent.x, -parent.y);
            }
            l
        };
        let p = local(parent);
        let c0 = local(dims.box_of(&x.child(false)));
        let c1 = local(dims.box_of(&x.child(true)));
        let ends = |q| {
            connector_wires(&dims, 0, q)
                .into_iter()
                .map(|(_, w)| (w.first_square(), w.last_square()))
                .collect::<Vec<_>>()
        };
        assert_eq!(
            ends(Quantifier::Forall),
            vec![
                (p.left_in.square, c0.left_in.square),
                (c0.yes_out.square, c1.left_in.square),
                (c1.yes_out.square, p.yes_out.square),
                (p.right_in.square, c1.right_in.square),
                (c1.no_out.square, c0.right_in.square),
                (c0.no_out.square, p.no_out.square),
            ]
        );
        assert_eq!(
            ends(Quantifier::Exists),
            vec![
                (p.left_in.square, c0.left_in.square),
                (c0.no_out.square, c1.left_in.square),
                (c1.no_out.square, p.no_out.square),
                (p.right_in.square, c1.right_in.square),
                (c1.yes_out.square, c0.right_in.square),
                (c0.yes_out.square, p.yes_out.square),
            ]
        );
    }

    #[test]
    fn leaf_wires_match_truth() {
        let dims = Dimensions::new(1, LayoutParams::default()).unwrap();
        let leaf = StructureLayout::at(
            Prefix::empty(),
            crate::construction::layout::BoxRect { x: 0, y: 0, w: 32, h: 32 },
        );
        let sat = leaf_wires(&dims, true);
        assert_eq!(sat[0].1.first_square(), leaf.left_in.square);
        assert_eq!(sat[0].1.last_square(), leaf.yes_out.square);
        assert_eq!(sat[1].1.first_square(), leaf.right_in.square);
        assert_eq!(sat[1].1.last_square(), leaf.no_out.square);
        let unsat = leaf_wires(&dims, false);
        assert_eq!(unsat[0].1.last_square(), leaf.no_out.square);
        assert_eq!(unsat[1].1.last_square(), leaf.yes_out.square);
    }
}
