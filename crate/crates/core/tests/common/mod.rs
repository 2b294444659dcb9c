//! Formula families and hand transcribed grids shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sperner_forge::grid::{Color, DenseBrouwer, GridPoint};
use sperner_forge::qbf::{QbfFormula, Quantifier};

/// Every clause over `n` variables with at most two literals on distinct
/// variables, the empty clause included.
fn small_clauses(n: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for v in 1..=n {
        out.push(vec![v]);
        out.push(vec![-v]);
    }
    for a in 1..=n {
        for b in a + 1..=n {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push(vec![sa * a, sb * b]);
            }
        }
    }
    out
}

fn prefixes(n: usize) -> Vec<Vec<Quantifier>> {
    (0u32..1 << n)
        .map(|mask| {
            (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Quantifier::Exists
                    } else {
                        Quantifier::Forall
                    }
                })
                .collect()
        })
        .collect()
}

/// All prefixes times all CNF matrices of at most two distinct clauses of
/// width at most two, for `n` in `1..=3`: 14 + 184 + 1528 formulas.
pub fn exhaustive_family() -> Vec<QbfFormula> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        let clauses = small_clauses(n as i32);
        let mut matrices: Vec<Vec<&[i32]>> = vec![vec![]];
        for (i, a) in clauses.iter().enumerate() {
            matrices.push(vec![a]);
            for b in &clauses[i + 1..] {
                matrices.push(vec![a, b]);
            }
        }
        for q in prefixes(n) {
            for m in &matrices {
                out.push(QbfFormula::from_ints(&q, m).expect("family formula is well-formed"));
            }
        }
    }
    out
}

pub fn random_formula(rng: &mut ChaCha8Rng, n: usize, clauses: usize, width: usize) -> QbfFormula {
    let q: Vec<Quantifier> = (0..n)
        .map(|_| if rng.gen() { Quantifier::Exists } else { Quantifier::Forall })
        .collect();
    let cls: Vec<Vec<i32>> = (0..clauses)
        .map(|_| {
            let w = rng.gen_range(1..=width.min(n));
            let mut vars: Vec<i32> = Vec::new();
            while vars.len() < w {
                let v = rng.gen_range(1..=n as i32);
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
            vars.into_iter().map(|v| if rng.gen() { v } else { -v }).collect()
        })
        .collect();
    let refs: Vec<&[i32]> = cls.iter().map(|c| c.as_slice()).collect();
    QbfFormula::from_ints(&q, &refs).expect("random formula is well-formed")
}

/// `count` random three-variable formulas of one to four clauses.
pub fn random_family(seed: u64, count: usize) -> Vec<QbfFormula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            random_formula(&mut rng, 3, k, 3)
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The small Brouwer example: grey column on the left, black bottom row,
/// black at (1,1) and (2,2), grey at (1,2) and (2,1).
pub fn sample_grid() -> DenseBrouwer {
    DenseBrouwer::from_rows(2, &["1000", "1120", "1210", "1222"]).expect("valid rows")
}

/// The derived Sperner triangulation as drawn, for all `x + y < 16`.
pub fn sample_grid_doubled() -> Vec<(GridPoint, Color)> {
    let mut grey: Vec<(i128, i128)> = (1..=15).map(|y| (0, y)).collect();
    grey.extend([(1, 2), (1, 4), (1, 6)]);
    for x in 1..=5 {
        for y in 1..=5 {
            grey.push((x, y));
        }
    }
    let black: Vec<(i128, i128)> = (0..=7)
        .map(|x| (x, 0))
        .chain([(1, 1), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (4, 1), (4, 4), (4, 5), (5, 4)])
        .collect();
    let white = [(1, 5), (3, 5), (5, 5), (5, 3), (5, 1)];
    let mut out = Vec::new();
    for y in 0..16 {
        for x in 0..16 - y {
            let p = (x, y);
            // Later layers are drawn over earlier ones.
            let c = if white.contains(&p) {
                Color::Zero
            } else if black.contains(&p) {
                Color::Two
            } else if grey.contains(&p) {
                Color::One
            } else {
                Color::Zero
            };
            out.push((GridPoint::new(x, y), c));
        }
    }
    out
}
