use orbit3::field::{Elem, FieldSpec};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        (1u32..=10).prop_map(|m| FieldSpec::binary(m).unwrap()),
        Just(FieldSpec::new(3, 2).unwrap()),
        Just(FieldSpec::new(3, 4).unwrap()),
        Just(FieldSpec::new(5, 3).unwrap()),
        Just(FieldSpec::new(7, 1).unwrap()),
        Just(FieldSpec::new(101, 1).unwrap()),
    ]
}

fn with_elems(k: usize) -> impl Strategy<Value = (FieldSpec, Vec<Elem>)> {
    fields().prop_flat_map(move |f| {
        let q = f.order();
        (Just(f), prop::collection::vec(0..q, k))
    })
}

proptest! {
    #[test]
    fn ring_laws((f, v) in with_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.mul(a, 1), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn log_exp_round_trip((f, v) in with_elems(1)) {
        let a = v[0];
        match f.log(a) {
            Some(l) => prop_assert_eq!(f.omega_pow(l as i64), a),
            None => prop_assert_eq!(a, 0),
        }
    }

    #[test]
    fn frobenius_composes((f, v) in with_elems(1), i in -20i64..20, j in -20i64..20) {
        let a = v[0];
        prop_assert_eq!(f.frobenius(f.frobenius(a, i), j), f.frobenius(a, i + j));
        prop_assert_eq!(f.frobenius(a, f.m() as i64), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn interpolate_inverts_evaluate(m in 1u32..=7, seed in prop::collection::vec(any::<u32>(), 128)) {
        let f = FieldSpec::binary(m).unwrap();
        let q = f.order() as usize;
        let c: Vec<Elem> = (0..q).map(|i| seed[i] % q as u32).collect();
        let vals: Vec<Elem> = f.elements().map(|x| f.evaluate(&c, x)).collect();
        let back = f.interpolate(&vals).unwrap();
        let again: Vec<Elem> = f.elements().map(|x| f.evaluate(&back, x)).collect();
        prop_assert_eq!(&again, &vals);
        prop_assert_eq!(back, c);
    }
}

#[test]
fn odd_characteristic_interpolation() {
    let f = FieldSpec::new(3, 2).unwrap();
    let c = vec![2, 0, 5, 1, 0, 7, 0, 3, 8];
    let vals: Vec<Elem> = f.elements().map(|x| f.evaluate(&c, x)).collect();
    assert_eq!(f.interpolate(&vals).unwrap(), c);
}

#[test]
fn subfield_coordinates_round_trip() {
    let f = FieldSpec::binary(6).unwrap();
    for n in [1, 2, 3, 6] {
        let c = f.subfield_coords(n).unwrap();
        for v in 0..1u32 << n {
            let x = c.embed(v);
            assert!(f.in_subfield(x, n).unwrap());
            assert_eq!(c.project(x).unwrap(), v);
        }
    }
    assert!(f.subfield_coords(6).unwrap().project(f.omega()).is_ok());
    assert!(f.subfield_coords(3).unwrap().project(f.omega()).is_err());
}

#[test]
fn serde_round_trip() {
    let f = FieldSpec::binary(6).unwrap();
    let s = serde_json::to_string(&f).unwrap();
    assert_eq!(s, r#"{"p":2,"m":6,"modulus":[1,1,0,1,1,0,1],"omega":2}"#);
    let g: FieldSpec = serde_json::from_str(&s).unwrap();
    assert_eq!(f, g);
    assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"m":2,"modulus":[1,0,1],"omega":2}"#).is_err());
}
