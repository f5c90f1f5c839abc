use proptest::prelude::*;

use satake::grassmannian::{closure_contains, component_of, component_parity, orbit_dim, OrbitLabel, Parity};
use satake::linalg::rat_frac;
use satake::multiplicities::{freudenthal_table, freudenthal_table_with_form, is_weight, KostantEngine};
use satake::root_datum::Isogeny;
use satake::tensor::tensor_decompose;
use satake::{LatticeVector, RootDatum};

fn data() -> Vec<RootDatum> {
    let mut out = Vec::new();
    for t in ["A1", "A2", "B2", "G2", "A3", "C3"] {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            out.push(RootDatum::from_cartan_type(t.parse().unwrap(), iso));
        }
    }
    out.push(RootDatum::general_linear(2).unwrap());
    out.push(RootDatum::general_linear(3).unwrap());
    out
}

fn datum_and_points(n: usize) -> impl Strategy<Value = (RootDatum, Vec<LatticeVector>)> {
    (0..data().len()).prop_flat_map(move |i| {
        let d = data().swap_remove(i);
        let r = d.rank();
        let pts = prop::collection::vec(prop::collection::vec(-4i64..=4, r), n);
        (Just(d), pts.prop_map(|ps| ps.into_iter().map(LatticeVector::new).collect()))
    })
}

fn dominant(d: &RootDatum, v: &LatticeVector) -> OrbitLabel {
    OrbitLabel::new(d, d.dominant_rep(v)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominance_is_a_partial_order((d, p) in datum_and_points(3)) {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        prop_assert!(d.dominance_leq(a, a));
        if d.dominance_leq(a, b) && d.dominance_leq(b, a) {
            prop_assert_eq!(a, b);
        }
        if d.dominance_leq(a, b) && d.dominance_leq(b, c) {
            prop_assert!(d.dominance_leq(a, c));
        }
    }

    #[test]
    fn dominant_representative_is_dominant_and_conjugate((d, p) in datum_and_points(1)) {
        let (dom, word) = d.dominant_representative(&p[0]);
        prop_assert!(d.is_dominant(&dom));
        prop_assert_eq!(d.apply_word(&word, &p[0]), dom.clone());
        prop_assert!(d.dominance_leq(&p[0], &dom));
        prop_assert_eq!(d.height2(&d.w0(&dom)), -d.height2(&dom));
    }

    #[test]
    fn closure_refines_components_and_dimension((d, p) in datum_and_points(2)) {
        let (l, m) = (dominant(&d, &p[0]), dominant(&d, &p[1]));
        if closure_contains(&d, &l, &m) {
            prop_assert_eq!(component_of(&d, l.coweight()).unwrap(), component_of(&d, m.coweight()).unwrap());
            if l != m {
                prop_assert!(orbit_dim(&d, &m) < orbit_dim(&d, &l));
            }
        }
        let parity = component_parity(&d, &component_of(&d, l.coweight()).unwrap()).unwrap();
        prop_assert_eq!(parity == Parity::Odd, orbit_dim(&d, &l) % 2 == 1);
    }

    #[test]
    fn components_add((d, p) in datum_and_points(2)) {
        let sum = &component_of(&d, &p[0]).unwrap() + &component_of(&d, &p[1]).unwrap();
        prop_assert_eq!(sum, component_of(&d, &(&p[0] + &p[1])).unwrap());
    }

    #[test]
    fn dual_is_an_involution((d, _) in datum_and_points(0)) {
        prop_assert_eq!(d.dual().dual(), d.clone());
        prop_assert_eq!(d.dual().weyl_group_order().unwrap(), d.weyl_group_order().unwrap());
    }
}

fn small(d: &RootDatum, v: &LatticeVector) -> bool {
    d.height2(&d.dominant_rep(v)) <= 10
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tables_are_weyl_invariant_with_the_right_support((d, p) in datum_and_points(1)) {
        prop_assume!(small(&d, &p[0]));
        let lambda = dominant(&d, &p[0]);
        let t = KostantEngine::new(&d).table(&d, &lambda).unwrap();
        prop_assert!(t.is_weyl_invariant(&d));
        prop_assert_eq!(t.get(lambda.coweight()), 1);
        for nu in t.entries.keys() {
            prop_assert!(is_weight(&d, &lambda, nu));
        }
    }

    #[test]
    fn freudenthal_ignores_form_scale((d, p) in datum_and_points(1), num in 1i64..9, den in 1i64..9) {
        prop_assume!(small(&d, &p[0]) && d.is_semisimple());
        let lambda = dominant(&d, &p[0]);
        let k = d.components().len();
        let factors: Vec<_> = (0..k).map(|i| rat_frac(num + i as i64, den)).collect();
        let form = d.dual().invariant_form().rescaled(&factors);
        prop_assert_eq!(freudenthal_table(&d, &lambda).unwrap(), freudenthal_table_with_form(&d, &lambda, &form).unwrap());
    }

    #[test]
    fn tensor_products_commute((d, p) in datum_and_points(2)) {
        prop_assume!(small(&d, &p[0]) && small(&d, &p[1]) && d.rank() <= 2);
        let (l, m) = (dominant(&d, &p[0]), dominant(&d, &p[1]));
        let a = tensor_decompose(&d, &l, &m).unwrap();
        let b = tensor_decompose(&d, &m, &l).unwrap();
        prop_assert_eq!(a.entries, b.entries);
    }
}
