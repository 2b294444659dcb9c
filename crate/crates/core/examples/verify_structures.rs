//! Run the brute-force verification suite over every formula with two
//! variables and one or two unit clauses, with mutation checks on.

use sperner_forge::construction::{build_brouwer, LayoutParams};
use sperner_forge::qbf::{QbfFormula, Quantifier::*};
use sperner_forge::verify::{verify_construction, RoutingMode, SuiteOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SuiteOptions { mode: RoutingMode::Exhaustive, mutation: true };
    let units: [&[i32]; 4] = [&[1], &[-1], &[2], &[-2]];
    let mut failed = 0;
    for q in [[Exists, Exists], [Exists, Forall], [Forall, Exists], [Forall, Forall]] {
        for (i, a) in units.iter().enumerate() {
            for b in &units[i..] {
                let f = QbfFormula::from_ints(&q, &[a, b])?;
                let report = verify_construction(&build_brouwer(&f, LayoutParams::default())?, opts)?;
                let n = report.checks.len();
                if report.passed() {
                    println!("ok   {n:3} checks  {f}");
                } else {
                    failed += 1;
                    println!("FAIL {f}");
                    for c in report.failures() {
                        println!("     {c}");
                    }
                }
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
