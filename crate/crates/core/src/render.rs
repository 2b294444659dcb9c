//! Text and SVG pictures of instance regions.

use std::fmt::Write as _;

use crate::construction::{BoxRect, ConstructedBrouwer};
use crate::grid::{Color, Coloring, Coord, GridError, GridPoint, Region, UnitSquare};
use crate::qbf::Prefix;
use crate::verify::densify_with_limit;

pub const ASCII_LIMIT: u128 = 10_000;
pub const SVG_LIMIT: u128 = 1_000_000;

/// SVG units per lattice step.
pub const CELL: Coord = 12;

/// One character per point, top row first: `.` for 0, `1`, `2`.
pub fn render_ascii<I: Coloring + ?Sized>(inst: &I, region: Region) -> Result<String, GridError> {
    if region.is_empty() {
        return Ok(String::new());
    }
    let grid = densify_with_limit(inst, region, ASCII_LIMIT)?;
    let mut out = String::with_capacity((region.area() + region.height() as u128) as usize);
    for y in (region.y0..=region.y1).rev() {
        for x in region.x0..=region.x1 {
            out.push(match grid.get(GridPoint::new(x, y)).expect("inside") {
                Color::Zero => '.',
                c => c.digit(),
            });
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct SvgOptions {
    /// Squares visited by a walk, drawn as an arrowed path through their centers.
    pub trace: Vec<UnitSquare>,
    /// Dashed rectangles with labels.
    pub boxes: Vec<(String, BoxRect)>,
}

/// Layout boxes of every structure down to `max_depth`, in prefix order.
pub fn layout_boxes(inst: &ConstructedBrouwer, max_depth: usize) -> Vec<(String, BoxRect)> {
    let depth = max_depth.min(inst.formula().num_vars() as usize);
    Prefix::all_up_to(depth)
        .map(|x| {
            let b = inst.layout(&x).expect("prefix within range").bbox;
            let label = if x.is_empty() { "root".to_string() } else { x.to_string() };
            (label, b)
        })
        .collect()
}

pub fn render_svg<I: Coloring + ?Sized>(inst: &I, region: Region, opts: &SvgOptions) -> Result<String, GridError> {
    let grid = densify_with_limit(inst, region, SVG_LIMIT)?;
    let (w, h) = if region.is_empty() {
        (0, 0)
    } else {
        (region.width(), region.height())
    };
    let pad = CELL;
    let sx = |x: f64| (x - region.x0 as f64) * CELL as f64 + pad as f64;
    let sy = |y: f64| (region.y1 as f64 - y) * CELL as f64 + pad as f64;
    let width = (w - 1).max(0) * CELL + 2 * pad;
    let height = (h - 1).max(0) * CELL + 2 * pad;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    s.push_str(concat!(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">",
        "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c0392b\"/></marker></defs>\n"
    ));
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);

    if !region.is_empty() {
        s.push_str("<g id=\"lattice\" stroke=\"#dddddd\" stroke-width=\"1\">\n");
        for x in region.x0..=region.x1 {
            let px = sx(x as f64);
            let _ = writeln!(s, r#"<line x1="{px}" y1="{}" x2="{px}" y2="{}"/>"#, sy(region.y1 as f64), sy(region.y0 as f64));
        }
        for y in region.y0..=region.y1 {
            let py = sy(y as f64);
            let _ = writeln!(s, r#"<line x1="{}" y1="{py}" x2="{}" y2="{py}"/>"#, sx(region.x0 as f64), sx(region.x1 as f64));
        }
        s.push_str("</g>\n");

        s.push_str("<g id=\"points\" stroke=\"black\" stroke-width=\"0.5\">\n");
        for y in region.y0..=region.y1 {
            for x in region.x0..=region.x1 {
                let fill = match grid.get(GridPoint::new(x, y)).expect("inside") {
                    Color::Zero => continue,
                    Color::One => "#999999",
                    Color::Two => "black",
                };
                let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="4" fill="{fill}"/>"#, sx(x as f64), sy(y as f64));
            }
        }
        s.push_str("</g>\n");
    }

    if !opts.boxes.is_empty() {
        s.push_str("<g id=\"boxes\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\">\n");
        for (label, b) in &opts.boxes {
            let (x0, y1) = (sx(b.x as f64), sy((b.y + b.h - 1) as f64));
            let bw = (b.w - 1) as f64 * CELL as f64;
            let bh = (b.h - 1) as f64 * CELL as f64;
            let _ = writeln!(s, r#"<rect x="{x0}" y="{y1}" width="{bw}" height="{bh}"><title>{label}</title></rect>"#);
        }
        s.push_str("</g>\n");
    }

    if opts.trace.len() > 1 {
        let pts: Vec<String> = opts
            .trace
            .iter()
            .map(|q| format!("{},{}", sx(q.anchor.x as f64 + 0.5), sy(q.anchor.y as f64 + 0.5)))
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline id="trace" points="{}" fill="none" stroke="#c0392b" stroke-width="2.5" stroke-linejoin="round" marker-end="url(#arrow)"/>"##,
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
