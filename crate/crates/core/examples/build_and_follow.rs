//! Build the Brouwer instance for a formula and walk it to a solution.
//! The walk ends at the YES terminal exactly when the formula is true.

use sperner_forge::construction::{build_brouwer, LayoutParams};
use sperner_forge::grid::Coloring;
use sperner_forge::qbf::{eval_qbf, Prefix, QbfFormula, Quantifier::*};
use sperner_forge::walker::{brouwer_walk, default_cap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let formulas = [
        // exists x1, x2: x1 and not x2
        QbfFormula::from_ints(&[Exists, Exists], &[&[1], &[-2]])?,
        // forall x1 exists x2: x1 == x2
        QbfFormula::from_ints(&[Forall, Exists], &[&[1, -2], &[-1, 2]])?,
        // exists x1 forall x2: x1 == x2
        QbfFormula::from_ints(&[Exists, Forall], &[&[1, -2], &[-1, 2]])?,
    ];

    for f in &formulas {
        let inst = build_brouwer(f, LayoutParams::default())?;
        let t = inst.terminals();
        let walk = brouwer_walk(&inst, default_cap(inst.size_param()));
        let end = walk.solution().expect("walk terminates");
        let verdict = if end == t.yes { "YES" } else if end == t.no { "NO" } else { "??" };
        println!(
            "{f}\n  m = {}, {} wires, {} steps, ends at {} -> {verdict} (formula is {})",
            inst.size_param(),
            inst.wire_count(),
            walk.steps,
            end.anchor,
            eval_qbf(f, &Prefix::empty())?,
        );
    }
    Ok(())
}
