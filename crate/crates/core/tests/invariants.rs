use proptest::prelude::*;
use ptile_core::constructions::{
    build_p2q2_witness, decompose_ascending_chain, ChainDecomposition, ConstructionReport,
};
use ptile_core::group::abelian_groups;
use ptile_core::properties::{
    check_property, classify_tile, invariant_factors, known_classification, verify_certificate, ClassificationWitness,
    KnownStatus, Property, PropertyVerdict, TileClassification,
};
use ptile_core::tiling::{
    enumerate_complements, enumerate_tile_classes, is_periodic, is_tiling_pair, periods, Route, SweepOptions,
};
use ptile_core::{Budget, Group, GroupSubset, SearchConfig};

const PROPERTIES: [Property; 4] = [Property::Pt, Property::Upt, Property::Hajos, Property::Redei];

/// Abelian groups of order at most 16, one presentation per isomorphism type.
fn small_groups() -> Vec<Group> {
    (1..=16).flat_map(|n| abelian_groups(n).unwrap()).collect()
}

fn arb_group() -> impl Strategy<Value = Group> {
    let groups = small_groups();
    (0..groups.len()).prop_map(move |i| groups[i].clone())
}

/// A translate of a random tile of a small group, with its complements containing 0.
fn arb_tile() -> impl Strategy<Value = (GroupSubset, Vec<GroupSubset>)> {
    (arb_group(), any::<usize>(), any::<usize>()).prop_map(|(g, pick, shift)| {
        let classes = enumerate_tile_classes(&g, SweepOptions::default(), &SearchConfig::default()).unwrap();
        let c = &classes[pick % classes.len()];
        (c.omega.translate(shift % g.order()), c.complements.clone())
    })
}

fn verdict(g: &Group, p: Property) -> PropertyVerdict {
    check_property(g, p, &SearchConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hajos_and_upt_imply_pt(g in arb_group()) {
        let pt = verdict(&g, Property::Pt).holds;
        prop_assert!(pt.is_some());
        if verdict(&g, Property::Hajos).holds == Some(true) {
            prop_assert_eq!(pt, Some(true));
        }
        if verdict(&g, Property::Upt).holds == Some(true) {
            prop_assert_eq!(pt, Some(true));
        }
    }

    #[test]
    fn certificates_reverify(g in arb_group(), which in 0usize..4) {
        let p = PROPERTIES[which];
        let v = verdict(&g, p);
        let cert = v.certificate.expect("computed verdicts carry a certificate");
        prop_assert!(verify_certificate(&g, p, &cert).unwrap());
    }

    #[test]
    fn exhaustive_pt_matches_classification(g in arb_group()) {
        let known = known_classification(&invariant_factors(&g)).unwrap();
        let holds = verdict(&g, Property::Pt).holds;
        match known.status {
            KnownStatus::Pt => prop_assert_eq!(holds, Some(true)),
            KnownStatus::NotPt => prop_assert_eq!(holds, Some(false)),
            KnownStatus::Unknown => {}
        }
    }

    #[test]
    fn non_pt_passes_to_supergroups(
        factors in prop::collection::vec(1u64..=12, 1..=2),
        extra in 1u64..=12,
    ) {
        let g = Group::new(&factors).unwrap();
        let big = g.product(&Group::cyclic(extra).unwrap()).unwrap();
        let small = known_classification(&invariant_factors(&g)).unwrap();
        let large = known_classification(&invariant_factors(&big)).unwrap();
        if small.status == KnownStatus::NotPt {
            prop_assert_eq!(large.status, KnownStatus::NotPt);
        }
        if large.status == KnownStatus::Pt {
            prop_assert_ne!(small.status, KnownStatus::NotPt);
        }
    }

    #[test]
    fn tiling_routes_agree_and_are_translation_invariant((a, ts) in arb_tile(), shift in any::<usize>()) {
        let g = a.group().clone();
        for t in ts.iter().take(4) {
            for r in Route::ALL {
                prop_assert!(is_tiling_pair(&a, t, r).unwrap());
                let moved = t.translate(shift % g.order());
                prop_assert!(is_tiling_pair(&a.translate(shift % g.order()), &moved, r).unwrap());
            }
        }
        let lonely = GroupSubset::from_indices(&g, [0]).unwrap();
        if a.len() != g.order() {
            for r in Route::ALL {
                prop_assert!(!is_tiling_pair(&a, &lonely, r).unwrap());
            }
        }
    }

    #[test]
    fn chain_decomposition_recomposes((a, _) in arb_tile()) {
        let dec = decompose_ascending_chain(&a, &mut Budget::unlimited()).unwrap();
        prop_assert_eq!(dec.recompose().unwrap(), a.clone());
        let json = serde_json::to_string(&dec).unwrap();
        let back: ChainDecomposition = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, dec);
    }

    #[test]
    fn classification_witnesses_check_out((a, _) in arb_tile()) {
        let ts = enumerate_complements(&a, true).unwrap();
        let g = a.group().clone();
        let c = classify_tile(&a, &SearchConfig::default()).unwrap();
        prop_assert_eq!(c.complement_count, ts.len());
        match &c.witness {
            Some(ClassificationWitness::CommonPeriod(x)) => {
                prop_assert!(c.uniformly_periodic);
                prop_assert!(*x != 0);
                prop_assert!(ts.iter().all(|t| periods(t).contains(*x)));
            }
            Some(ClassificationWitness::PeriodicReplacement(v)) => {
                prop_assert!(c.dual_uniformly_periodic && !c.uniformly_periodic);
                let x = GroupSubset::from_indices(&g, v.iter().copied()).unwrap();
                prop_assert!(is_periodic(&x));
                for t in &ts {
                    prop_assert!(is_tiling_pair(&x, t, Route::Convolution).unwrap());
                }
            }
            None => prop_assert!(!c.uniformly_periodic && !c.dual_uniformly_periodic),
        }
        let back: TileClassification = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn verdicts_roundtrip(g in arb_group(), which in 0usize..4) {
        let v = verdict(&g, PROPERTIES[which]);
        let back: PropertyVerdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }
}

#[test]
fn construction_report_roundtrips() {
    let r = build_p2q2_witness(2, 3, &SearchConfig::default()).unwrap();
    let back: ConstructionReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}
