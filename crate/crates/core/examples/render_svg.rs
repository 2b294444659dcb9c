//! Draw a constructed instance as SVG with its walk and structure boxes.
//!
//! ```bash
//! cargo run --example render_svg > walk.svg
//! ```

use sperner_forge::construction::{build_brouwer, LayoutParams};
use sperner_forge::grid::{Coloring, Region};
use sperner_forge::qbf::{QbfFormula, Quantifier::*};
use sperner_forge::render::{layout_boxes, render_svg, SvgOptions};
use sperner_forge::walker::{brouwer_walk_with, default_cap, TraceMode, WalkConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = QbfFormula::from_ints(&[Exists], &[&[1]])?;
    let inst = build_brouwer(&f, LayoutParams::default())?;
    let walk = brouwer_walk_with(
        &inst,
        &WalkConfig::new(default_cap(inst.size_param())).with_trace(TraceMode::Full),
        None,
    );
    let opts = SvgOptions {
        trace: walk.trace.unwrap_or_default().into_iter().map(|e| e.cell).collect(),
        boxes: layout_boxes(&inst, 1),
    };
    print!("{}", render_svg(&inst, Region::full(inst.size_param()), &opts)?);
    Ok(())
}
