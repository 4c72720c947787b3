use std::collections::BTreeMap;

use orbit3::classify;
use orbit3::group::{aut_pair_group, brute_force_orbits, invariant_profile, orbit_count, GroupElement, GroupSpec, DEFAULT_BUDGET};
use orbit3::Error;
use proptest::prelude::*;

mod common;

fn spec(max_total: u32) -> impl Strategy<Value = GroupSpec> {
    (1u32..=5, 1u32..=4)
        .prop_filter("size", move |(m, n)| m + n <= max_total)
        .prop_flat_map(|(m, n)| {
            let top = 1u32 << n;
            (Just(m), Just(n), prop::collection::vec(0..top, m as usize), prop::collection::vec(prop::collection::vec(0..top, m as usize), m as usize))
        })
        .prop_map(|(m, n, sigma, pi)| GroupSpec::new(m, n, sigma, pi).unwrap())
}

fn named() -> Vec<GroupSpec> {
    let mut out = vec![GroupSpec::q8(), GroupSpec::z2_z4(), GroupSpec::homocyclic(1).unwrap(), GroupSpec::homocyclic(2).unwrap(), GroupSpec::homocyclic(3).unwrap(), GroupSpec::elementary_abelian(2, 2)];
    out.push(classify::construct_a(3, 1).unwrap());
    out.push(classify::construct_b(2).unwrap());
    out
}

fn check_identities(g: &GroupSpec) {
    let elems: Vec<GroupElement> = g.elements().collect();
    let e = g.identity();
    assert_eq!(e, GroupElement { u: 0, v: 0 });
    for &x in &elems {
        assert_eq!(g.multiply(x, e), x);
        assert_eq!(g.multiply(e, x), x);
        assert_eq!(g.multiply(x, g.inverse(x)), e);
        assert_eq!(g.unpack(g.pack(x)), x);
        for &y in &elems {
            let lhs = g.multiply(g.multiply(g.square(g.multiply(x, y)), g.square(x)), g.square(y));
            assert_eq!(lhs, g.commutator(x, y), "{x:?} {y:?}");
        }
    }
    if g.order() <= 64 {
        for &x in &elems {
            for &y in &elems {
                let xy = g.multiply(x, y);
                for &z in &elems {
                    assert_eq!(g.multiply(xy, z), g.multiply(x, g.multiply(y, z)));
                }
            }
        }
    }
}

#[test]
fn named_specs_satisfy_group_identities() {
    for g in named() {
        check_identities(&g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_specs_satisfy_group_identities(g in spec(8)) {
        check_identities(&g);
    }

    #[test]
    fn associativity_on_random_triples(g in spec(12), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let mask = (1u32 << (g.m() + g.n())) - 1;
        let (x, y, z) = (g.unpack(a & mask), g.unpack(b & mask), g.unpack(c & mask));
        prop_assert_eq!(g.multiply(g.multiply(x, y), z), g.multiply(x, g.multiply(y, z)));
    }

    #[test]
    fn squaring_round_trip(g in spec(9)) {
        let s = g.squaring();
        prop_assert!(s.is_biadditive());
        prop_assert_eq!(&GroupSpec::from_squaring(&s).unwrap(), &g);
        for u1 in 0..1u32 << g.m() {
            prop_assert_eq!(g.square(GroupElement { u: u1, v: 0 }).v, s.eval(u1));
            for u2 in 0..1u32 << g.m() {
                let c = g.commutator(GroupElement { u: u1, v: 0 }, GroupElement { u: u2, v: 0 });
                prop_assert_eq!(c, GroupElement { u: 0, v: s.induced_form(u1, u2) });
            }
        }
    }

    #[test]
    fn serialization_round_trips(g in spec(9)) {
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(&serde_json::from_str::<GroupSpec>(&json).unwrap(), &g);
        prop_assert_eq!(&GroupSpec::parse_pc(&g.export_pc()).unwrap(), &g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pair_method_agrees_with_oracle(g in spec(8)) {
        let brute = brute_force_orbits(&g, DEFAULT_BUDGET).unwrap();
        match orbit_count(&g) {
            Ok(c) => prop_assert_eq!(c, brute),
            Err(Error::NotSpanning) => prop_assert!(!g.squaring().image_spans()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn three_orbits_iff_both_actions_transitive(g in spec(8)) {
        let s = g.squaring();
        prop_assume!(s.is_surjective());
        let aut = aut_pair_group(&g, DEFAULT_BUDGET).unwrap();
        let transitive = aut.a_orbits() == 1 && aut.b_orbits() == 1;
        prop_assert_eq!(orbit_count(&g).unwrap() == 3, transitive);
    }

    #[test]
    fn equivalent_squarings_give_equal_profiles((g, t, u) in spec(8).prop_flat_map(|g| {
        let (m, n) = (g.m(), g.n());
        (Just(g), common::invertible(m), common::invertible(n))
    })) {
        prop_assert!(orbit3::linalg::is_invertible(&t) && orbit3::linalg::is_invertible(&u));
        let s2 = g.squaring().transform(&t, &u).unwrap();
        let h = GroupSpec::from_squaring(&s2).unwrap();
        prop_assert_eq!(invariant_profile(&g), invariant_profile(&h));
    }
}

#[test]
fn named_orbit_counts() {
    let cases = [(GroupSpec::q8(), 3), (GroupSpec::z2_z4(), 4), (GroupSpec::homocyclic(1).unwrap(), 3), (GroupSpec::homocyclic(2).unwrap(), 3), (classify::construct_a(3, 1).unwrap(), 3)];
    for (g, want) in cases {
        assert_eq!(brute_force_orbits(&g, DEFAULT_BUDGET).unwrap(), want);
        if g.squaring().image_spans() {
            assert_eq!(orbit_count(&g).unwrap(), want);
        }
    }
}

#[test]
fn q8_profile() {
    let p = invariant_profile(&GroupSpec::q8());
    assert_eq!(p.order, 8);
    assert_eq!(p.order_histogram, BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
    assert_eq!((p.center, p.derived, p.commuting_pairs), (2, 2, 40));
}

#[test]
fn pc_text_for_q8() {
    let pc = GroupSpec::q8().export_pc();
    assert_eq!(pc, "pc m=2 n=1\nx1^2 = y1\nx2^2 = y1\n[x1,x2] = y1\n[x1,y1] = 1\n[x2,y1] = 1\ny1^2 = 1\n");
}
