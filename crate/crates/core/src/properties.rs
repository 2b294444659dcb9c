//! Cross-module invariants on generated formulas and layout parameters.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construction::{build_brouwer, BrouwerDescriptor, Descriptor, LayoutParams};
use crate::grid::{sperner_boundary_allows, Coloring, GridPoint, Region};
use crate::qbf::{eval_qbf, Prefix, QbfFormula, Quantifier};
use crate::reduction::brouwer_to_sperner;
use crate::verify::{densify, verify_construction, RoutingMode, SuiteOptions};
use crate::walker::{brouwer_walk, default_cap};

fn formula(max_vars: usize) -> impl Strategy<Value = QbfFormula> {
    (1..=max_vars).prop_flat_map(|n| {
        let quant = prop::collection::vec(any::<bool>(), n);
        let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, pos)| if pos { v } else { -v });
        let clause = prop::collection::vec(lit, 0..=3);
        (quant, prop::collection::vec(clause, 0..=4)).prop_map(|(q, cls)| {
            let q: Vec<Quantifier> =
                q.into_iter().map(|e| if e { Quantifier::Exists } else { Quantifier::Forall }).collect();
            let refs: Vec<&[i32]> = cls.iter().map(|c| c.as_slice()).collect();
            QbfFormula::from_ints(&q, &refs).unwrap()
        })
    })
}

fn params() -> impl Strategy<Value = LayoutParams> {
    (24u32..40, 24u32..40, 7u32..11, 8u32..13).prop_map(|(lw, lh, m, g)| LayoutParams { lw, lh, m, g })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn walk_tracks_truth(f in formula(5), p in params()) {
        let inst = build_brouwer(&f, p).unwrap();
        let t = inst.terminals();
        let truth = eval_qbf(&f, &Prefix::empty()).unwrap();
        let end = brouwer_walk(&inst, default_cap(inst.size_param())).solution();
        prop_assert_eq!(end, Some(if truth { t.yes } else { t.no }));
        prop_assert_ne!(end, Some(t.aux_source));
    }

    #[test]
    fn full_suite_under_any_parameters(f in formula(2), p in params()) {
        let inst = build_brouwer(&f, p).unwrap();
        let r = verify_construction(&inst, SuiteOptions { mode: RoutingMode::Exhaustive, mutation: false }).unwrap();
        prop_assert!(r.passed(), "{}\n{:?}\n{}", f, p, r);
    }

    #[test]
    fn descriptor_round_trip_is_bit_identical(f in formula(2), p in params()) {
        let d = Descriptor::Brouwer(BrouwerDescriptor::new(f, p));
        let back = Descriptor::parse(&d.to_json().unwrap()).unwrap();
        let a = d.brouwer().build().unwrap();
        let b = back.brouwer().build().unwrap();
        let full = Region::full(a.size_param());
        prop_assert_eq!(densify(&a, full).unwrap().fingerprint(), densify(&b, full).unwrap().fingerprint());
    }

    #[test]
    fn reduced_construction_obeys_sperner_boundary(f in formula(3), seed in any::<u64>()) {
        let inst = build_brouwer(&f, LayoutParams::default()).unwrap();
        let s = brouwer_to_sperner(&inst);
        let m = s.size_param();
        let last = s.side() - 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..2000 {
            let i: i128 = rng.gen_range(0..=last);
            for p in [GridPoint::new(0, i), GridPoint::new(i, 0), GridPoint::new(i, last - i)] {
                prop_assert!(sperner_boundary_allows(m, p, s.color(p)), "{}", p);
            }
        }
    }

    #[test]
    fn evaluation_follows_quantifiers(f in formula(4), bits in prop::collection::vec(any::<bool>(), 0..4)) {
        let n = f.num_vars() as usize;
        prop_assume!(bits.len() < n);
        let x = Prefix::from_bits(bits);
        let v0 = eval_qbf(&f, &x.child(false)).unwrap();
        let v1 = eval_qbf(&f, &x.child(true)).unwrap();
        let want = match f.prefix()[x.len()] {
            Quantifier::Forall => v0 && v1,
            Quantifier::Exists => v0 || v1,
        };
        prop_assert_eq!(eval_qbf(&f, &x).unwrap(), want);
    }
}
