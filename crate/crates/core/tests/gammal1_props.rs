use orbit3::field::FieldSpec;
use orbit3::gammal1::*;
use proptest::prelude::*;

fn small_field() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![(1u32..=10).prop_map(|m| (2, m)), Just((3, 2)), Just((3, 4)), Just((5, 2)), Just((7, 3)), Just((31, 2))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn standard_form_regenerates_the_subgroup((p, m) in small_field(), raw in prop::collection::vec(any::<u64>(), 1..4)) {
        let g = Gamma::new(p, m).unwrap();
        let gens: Vec<SemilinearMap> = raw.iter().map(|&r| g.from_index((r % g.order()) as usize)).collect();
        let sp = standard_form(&g, &gens).unwrap();
        prop_assert!(sp.validate().is_ok());
        let h = g.closure(&gens);
        let back = sp.elements(&g);
        prop_assert!(h.is_subset_of(&g, &back) && back.is_subset_of(&g, &h));
        prop_assert_eq!(sp.order(), h.order() as u64);
    }

    #[test]
    fn transitivity_matches_the_action(m in 1u32..=10, raw in any::<[u64; 3]>()) {
        let all = StandardParams::all(2, m);
        let sp = all[(raw[0] % all.len() as u64) as usize];
        let g = Gamma::new(2, m).unwrap();
        let direct = g.orbit_count_of(&sp.generators(&g));
        prop_assert_eq!(is_transitive(&sp), direct == 1);
        prop_assert_eq!(orbit_count(&sp), direct);
    }

    #[test]
    fn action_is_semilinear(m in 1u32..=8, s in 0i64..8, e in 0i64..255, x in any::<u32>(), y in any::<u32>()) {
        let f = FieldSpec::binary(m).unwrap();
        let g = Gamma::new(2, m).unwrap();
        let a = g.elem(s, e);
        let (x, y) = (x % f.order(), y % f.order());
        prop_assert_eq!(g.apply(&f, a, f.add(x, y)), f.add(g.apply(&f, a, x), g.apply(&f, a, y)));
        let b = g.elem(e % 3, s);
        prop_assert_eq!(g.apply(&f, g.compose(a, b), x), g.apply(&f, b, g.apply(&f, a, x)));
    }
}

#[test]
fn knuth_matches_simulation_small() {
    for modulus in 1..=64 {
        for a in 0..modulus {
            for b in 0..modulus {
                assert_eq!(knuth_full_cycle(a, b, modulus), simulate_full_cycle(a, b, modulus), "{a} {b} {modulus}");
            }
        }
    }
}

#[test]
fn hom_targets_map_scalars_onto_scalars() {
    for m in [6, 12] {
        for a in enumerate_transitive_subgroups(m) {
            assert!(a.d > 1 && a.e != 0);
            for n in (2..=m).filter(|n| m % n == 0 && *n <= 6) {
                let targets = enumerate_hom_targets(&a, n).unwrap();
                for t in &targets {
                    validate_hom_target(&a, t).unwrap();
                }
                // every preimage of an induced map is kept
                let classes = hom_target_classes(&a, &targets).unwrap();
                assert_eq!(classes.iter().map(|c| c.1.len()).sum::<usize>(), targets.len());
            }
        }
    }
}

#[test]
fn closed_form_targets_are_exactly_the_validated_ones() {
    for a in enumerate_transitive_subgroups(6) {
        for n in [2, 3] {
            assert_eq!(enumerate_hom_targets(&a, n).unwrap(), hom_targets_by_validation(&a, n).unwrap(), "{a:?} n={n}");
        }
    }
}

#[test]
fn nine_is_the_exception() {
    let found = StandardParams::all(3, 2).into_iter().filter(is_transitive).any(|sp| {
        let maxima = largest_abelian_normal(&sp).unwrap();
        maxima.len() > 1 || maxima[0] != StandardParams { p: 3, m: 2, d: sp.d, e: 0, s: 2 }
    });
    assert!(found);
    for sp in StandardParams::all(2, 6).into_iter().filter(is_transitive) {
        assert_eq!(largest_abelian_normal_unique(&sp).unwrap(), StandardParams { p: 2, m: 6, d: sp.d, e: 0, s: 6 });
    }
}
