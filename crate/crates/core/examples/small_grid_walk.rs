//! A hand-made 4x4 Brouwer coloring, walked square by square and then
//! through its doubled Sperner triangulation.

use sperner_forge::grid::{Coloring, DenseBrouwer, Region};
use sperner_forge::reduction::{brouwer_to_sperner, sperner_solution_to_brouwer};
use sperner_forge::render::render_ascii;
use sperner_forge::verify::{enumerate_solutions, square_solutions};
use sperner_forge::walker::{brouwer_walk_with, sperner_walk, TraceMode, WalkConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = DenseBrouwer::from_rows(2, &["1000", "1120", "1210", "1222"])?;
    print!("{}", render_ascii(&inst, Region::full(2))?);

    let walk = brouwer_walk_with(&inst, &WalkConfig::new(16).with_trace(TraceMode::Full), None);
    for e in walk.trace.iter().flatten() {
        println!("  {e}");
    }
    println!("walk ends at {}", walk.solution().expect("walk terminates").anchor);

    // The walk finds one solution; a scan finds them all.
    let all = square_solutions(inst.grid());
    let anchors: Vec<String> = all.iter().map(|s| s.anchor.to_string()).collect();
    println!("trichromatic squares: {}", anchors.join(" "));
    assert_eq!(all, enumerate_solutions(&inst, Region::full(2))?);

    let sperner = brouwer_to_sperner(&inst);
    let tri = sperner_walk(&sperner, 1 << 12);
    let t = tri.solution().expect("triangle walk terminates");
    println!(
        "sperner (m = {}) walk: {} steps, {} triangle at {} lies in doubled square {}",
        sperner.size_param(),
        tri.steps,
        t.kind.name(),
        t.anchor,
        sperner_solution_to_brouwer(t).anchor,
    );
    Ok(())
}
