//! The Brouwer walk seen as an End-of-Line graph: follow arcs from node 0
//! and decode where the line ends.

use sperner_forge::construction::{build_brouwer, LayoutParams};
use sperner_forge::qbf::{QbfFormula, Quantifier::*};
use sperner_forge::verify::check_eol_degrees;
use sperner_forge::walker::{brouwer_as_eol, eol_follow, EolInstance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = QbfFormula::from_ints(&[Forall], &[&[1]])?;
    let inst = build_brouwer(&f, LayoutParams::default())?;
    let no = inst.terminals().no;
    let eol = brouwer_as_eol(inst)?;

    let u = 0;
    println!("node bits: {}, S(0) = {}, P(S(0)) = {}", eol.node_bits(), eol.successor(u), eol.predecessor(eol.successor(u)));
    let end = eol_follow(&eol, 1 << 20)?;
    let (sq, tag) = eol.decode(end);
    println!("line ends at node {end} = square {} tag {tag}", sq.anchor);
    assert_eq!(sq, no);
    println!("{}", check_eol_degrees(&eol));
    Ok(())
}
