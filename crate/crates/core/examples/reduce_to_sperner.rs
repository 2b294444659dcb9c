//! Reduce a constructed Brouwer instance to Sperner, walk both, and check
//! that the two walks agree square by square.

use sperner_forge::construction::{build_brouwer, LayoutParams};
use sperner_forge::qbf::{QbfFormula, Quantifier::*};
use sperner_forge::grid::Coloring;
use sperner_forge::reduction::{brouwer_to_sperner, sperner_solution_to_brouwer};
use sperner_forge::verify::check_reduction_correspondence;
use sperner_forge::walker::{brouwer_walk, default_cap, sperner_walk};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = QbfFormula::from_ints(&[Forall, Exists], &[&[1, 2], &[-1, -2]])?;
    let inst = build_brouwer(&f, LayoutParams::default())?;
    let sperner = brouwer_to_sperner(&inst);

    let b = brouwer_walk(&inst, default_cap(inst.size_param()));
    let s = sperner_walk(&sperner, default_cap(sperner.size_param()));
    let (bs, st) = (b.solution().unwrap(), s.solution().unwrap());
    println!("brouwer: {} steps to {}", b.steps, bs.anchor);
    println!("sperner: {} steps to triangle at {}", s.steps, st.anchor);
    assert_eq!(sperner_solution_to_brouwer(st), bs);

    print!("{}", check_reduction_correspondence(&inst)?);
    Ok(())
}
