//! Each reduction step preserves the answer, checked against brute force.

mod common;

use contractvc::digraph::dp_digraph_maxcut;
use contractvc::oracles::{oracle_annotated, oracle_constrained_maxcut, oracle_digraph_maxcut};
use contractvc::pipeline::{expand_k_to_d, maxcut_to_digraph, rr1_eliminate_x_edges, rr2_matching_simplify, Expansion};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rr1_preserves_the_answer(seed in any::<u64>()) {
        let a = common::sample_annotated(seed);
        let before = oracle_annotated(&a).unwrap();
        let after = match rr1_eliminate_x_edges(&a) {
            Some((b, _)) => {
                prop_assert!(b.base.g.is_independent_set(&b.x));
                oracle_annotated(&b).unwrap()
            }
            None => false,
        };
        prop_assert_eq!(before, after);
    }

    #[test]
    fn annotated_equals_constrained_maxcut(seed in any::<u64>()) {
        let a = common::sample_annotated(seed);
        if let Some((b, _)) = rr1_eliminate_x_edges(&a) {
            prop_assert_eq!(oracle_annotated(&b).unwrap(), oracle_constrained_maxcut(&b).unwrap());
        }
    }

    /// Expanded instances with `q` pendants certify budget `d + q`, so the
    /// expansion is YES iff some budget in `d..=k` is.
    #[test]
    fn expansion_preserves_the_answer(seed in any::<u64>()) {
        let a = common::sample_annotated(seed);
        if let Some((b, _)) = rr1_eliminate_x_edges(&a) {
            let mut before = false;
            for budget in b.base.d..=b.base.k {
                let mut lowered = b.clone();
                lowered.base.k = budget;
                before |= oracle_constrained_maxcut(&lowered).unwrap();
            }
            let after = match expand_k_to_d(&b) {
                Expansion::Yes(_) => true,
                Expansion::Instances(list) => {
                    let mut any = false;
                    for (m, _) in &list {
                        prop_assert_eq!(m.base.k, m.base.d);
                        any |= oracle_constrained_maxcut(m).unwrap();
                    }
                    any
                }
            };
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn rr2_and_digraph_preserve_the_answer(seed in any::<u64>()) {
        let a = common::sample_annotated(seed);
        let Some((b, _)) = rr1_eliminate_x_edges(&a) else { return Ok(()) };
        let Expansion::Instances(list) = expand_k_to_d(&b) else { return Ok(()) };
        for (m, _) in list.iter().take(8) {
            let before = oracle_constrained_maxcut(m).unwrap();
            match rr2_matching_simplify(m) {
                None => prop_assert!(!before),
                Some((r, _)) => {
                    prop_assert_eq!(before, oracle_constrained_maxcut(&r).unwrap());
                    let (d, _) = maxcut_to_digraph(&r);
                    prop_assert_eq!(before, oracle_digraph_maxcut(&d).unwrap());
                    prop_assert_eq!(before, dp_digraph_maxcut(&d).partition.is_some());
                }
            }
        }
    }

    #[test]
    fn dp_matches_partition_oracle(seed in any::<u64>()) {
        let inst = common::sample_digraph_instance(seed);
        let out = dp_digraph_maxcut(&inst);
        prop_assert_eq!(out.partition.is_some(), oracle_digraph_maxcut(&inst).unwrap());
        if let Some(p) = out.partition {
            let right: Vec<bool> = (0..inst.d.n()).map(|v| p.right.contains(&v)).collect();
            prop_assert!(contractvc::digraph::is_valid_digraph_cut(&inst, &right));
        }
    }
}
