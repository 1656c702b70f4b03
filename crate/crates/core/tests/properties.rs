use bggkit_core::casimir::{all_splitting_factors, character_filtration, eigenvalue, full_casimir_audit};
use bggkit_core::character::{character_dimension, Subsystem};
use bggkit_core::kostant::{chain_euler_characteristic, hasse_diagram, homology, module_character};
use bggkit_core::linalg::{q, qf};
use bggkit_core::{DynkinSpec, Error, Guardrails, ParabolicData, ParabolicSpec, RootSystem, Weight};
use num_traits::Zero;
use proptest::prelude::*;

fn rs(t: &str) -> RootSystem {
    RootSystem::new(t.parse::<DynkinSpec>().unwrap())
}

fn pd(r: &RootSystem, crossed: &[usize]) -> ParabolicData {
    ParabolicData::new(r, &ParabolicSpec::new(crossed.iter().copied())).unwrap()
}

#[test]
fn weyl_group_orders() {
    for (t, n) in [
        ("A1", 2),
        ("A2", 6),
        ("B2", 8),
        ("G2", 12),
        ("A3", 24),
        ("B3", 48),
        ("C3", 48),
        ("A4", 120),
        ("D4", 192),
        ("F4", 1152),
    ] {
        assert_eq!(rs(t).enumerate_weyl(1_000_000).unwrap().len(), n, "{t}");
    }
}

#[test]
fn positive_root_counts() {
    for (t, n) in [("A3", 6), ("B3", 9), ("C3", 9), ("G2", 6), ("D4", 12), ("F4", 24), ("E6", 36)] {
        assert_eq!(rs(t).positive_roots().len(), n, "{t}");
    }
}

#[test]
fn hasse_size_is_weyl_index() {
    for t in ["A2", "B2", "G2", "A3", "B3", "C3", "D4"] {
        let r = rs(t);
        let w = r.enumerate_weyl(1_000_000).unwrap().len();
        let n = r.rank();
        for mask in 1u32..(1 << n) {
            let crossed: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let p = pd(&r, &crossed);
            let levi = Subsystem::new(&r, &p.levi_nodes());
            let h = hasse_diagram(&p).unwrap();
            assert_eq!(h.len() * levi.weyl_order(), w, "{t} {crossed:?}");
            assert!(h.iter().all(|e| e.degree == e.inversion_set.len()));
        }
    }
}

#[test]
fn known_casimir_values() {
    for t in ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "D4", "F4"] {
        let r = rs(t);
        assert_eq!(eigenvalue(&r, &r.root_to_weight(r.highest_root())), q(1), "{t}");
    }
    let b2 = rs("B2");
    assert_eq!(eigenvalue(&b2, &Weight(vec![1, 0])), qf(2, 3));
    let a1 = rs("A1");
    assert_eq!(eigenvalue(&a1, &Weight(vec![1])), qf(3, 8));
}

#[test]
fn guardrail_on_weyl_order() {
    let r = rs("B3");
    let p = pd(&r, &[0, 1, 2]);
    let tight = Guardrails {
        weyl_order: 10,
        ..Guardrails::default()
    };
    let err = bggkit_core::kostant::hasse_diagram_with(&p, &tight).unwrap_err();
    assert!(matches!(err, Error::Guardrail { .. }));
}

#[test]
fn rejects_bad_input() {
    assert!(matches!("Z3".parse::<DynkinSpec>(), Err(Error::UnknownType(_))));
    assert!(matches!("G3".parse::<DynkinSpec>(), Err(Error::InvalidRank { .. })));
    let r = rs("A2");
    assert!(matches!(
        ParabolicData::new(&r, &ParabolicSpec::new([])),
        Err(Error::EmptyCrossed)
    ));
    assert!(matches!(
        ParabolicData::new(&r, &ParabolicSpec::new([2])),
        Err(Error::NodeOutOfRange { .. })
    ));
    assert!(homology(&pd(&r, &[0]), &Weight(vec![-1, 0])).is_err());
}

fn case() -> impl Strategy<Value = (&'static str, u32, Vec<i64>)> {
    prop::sample::select(vec!["A1", "A2", "B2", "G2", "A3", "B3", "C3"]).prop_flat_map(|t| {
        let n = rs(t).rank();
        (Just(t), 1u32..(1 << n), prop::collection::vec(0i64..3, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homology_invariants((t, mask, lambda) in case()) {
        let r = rs(t);
        let crossed: Vec<usize> = (0..r.rank()).filter(|i| mask & (1 << i) != 0).collect();
        let p = pd(&r, &crossed);
        let lambda = Weight(lambda);
        let d = homology(&p, &lambda).unwrap();
        let levi = p.levi();
        let c = eigenvalue(&r, &lambda);
        for comp in &d.components {
            prop_assert!(levi.is_antidominant(&comp.lowest_weight));
            prop_assert_eq!(eigenvalue(&r, &-&comp.lowest_weight), c.clone());
        }
        prop_assert_eq!(d.euler_characteristic(), chain_euler_characteristic(&p, &lambda).unwrap());
        let dim = r.weyl_dimension(&lambda);
        prop_assert_eq!(q(character_dimension(&module_character(&r, &lambda).unwrap())), dim);
    }

    #[test]
    fn laplacian_identity_and_disjointness((t, mask, lambda) in case()) {
        let r = rs(t);
        let crossed: Vec<usize> = (0..r.rank()).filter(|i| mask & (1 << i) != 0).collect();
        let p = pd(&r, &crossed);
        for e in full_casimir_audit(&p, &Weight(lambda)).unwrap() {
            prop_assert!(e.identity_holds);
            prop_assert_eq!(e.in_homology, e.laplacian.is_zero());
        }
    }

    #[test]
    fn filtration_ladder_and_splitting((t, mask, lambda) in case()) {
        let r = rs(t);
        let crossed: Vec<usize> = (0..r.rank()).filter(|i| mask & (1 << i) != 0).collect();
        let p = pd(&r, &crossed);
        let lambda = Weight(lambda);
        let levels = character_filtration(&p, &lambda).unwrap();
        let total: usize = levels.iter().map(|l| l.dimension).sum();
        prop_assert_eq!(q(total as i64), r.weyl_dimension(&lambda));
        for pair in levels.windows(2) {
            prop_assert_eq!(&pair[1].grading_eigenvalue - &pair[0].grading_eigenvalue, q(1));
        }
        for s in all_splitting_factors(&p, &levels).unwrap() {
            prop_assert_eq!(s.splits, !s.product.is_zero());
        }
    }
}
