//! Parse a QDIMACS file and evaluate it, along with every prefix subtree.
//!
//! ```bash
//! cargo run --example eval_qbf -- crates/core/examples/data/xor.qdimacs
//! ```

use sperner_forge::qbf::{eval_qbf, parse_qdimacs, Prefix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/xor.qdimacs").into());
    let formula = parse_qdimacs(&std::fs::read_to_string(&path)?)?;
    println!("{formula}");
    println!("value: {}", eval_qbf(&formula, &Prefix::empty())?);

    for x in Prefix::all_up_to(formula.num_vars() as usize) {
        let bits: String = x.bits().iter().map(|&b| if b { '1' } else { '0' }).collect();
        let indent = "  ".repeat(x.len());
        println!("{indent}[{bits}] {}", eval_qbf(&formula, &x)?);
    }
    Ok(())
}
