use proptest::prelude::*;

use convspace::calculus::{adh, adh_star, closure, is_closed, is_open, iterated_adh, open_sets, topological_defect};
use convspace::connectivity::{components, is_connected_subset};
use convspace::format::{parse_space, SpaceDocument};
use convspace::tsubspace::is_t_subspace;
use convspace::verify::{random_space, EdgeProbability};
use convspace::{ConvergenceSpace, PointSet};

fn space(max_n: usize) -> impl Strategy<Value = ConvergenceSpace> {
    (1..=max_n, 0u32..=4, any::<u64>())
        .prop_map(|(n, q, seed)| random_space(n, EdgeProbability::new(q, 4).unwrap(), seed).unwrap())
}

fn space_and_sets(max_n: usize) -> impl Strategy<Value = (ConvergenceSpace, PointSet, PointSet)> {
    (space(max_n), any::<u64>(), any::<u64>()).prop_map(|(s, a, b)| {
        let full = s.full().bits();
        let n = s.len();
        (s, PointSet::from_bits(n, a & full).unwrap(), PointSet::from_bits(n, b & full).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn adherence_is_extensive_monotone_and_additive((s, a, b) in space_and_sets(12)) {
        prop_assert!(a.is_subset(&adh(&s, &a)));
        prop_assert_eq!(adh(&s, &a.union(&b)), adh(&s, &a).union(&adh(&s, &b)));
        if a.is_subset(&b) {
            prop_assert!(adh(&s, &a).is_subset(&adh(&s, &b)));
        }
        prop_assert!(adh(&s, &s.empty_set()).is_empty());
    }

    #[test]
    fn closure_is_idempotent_and_the_limit_of_adherence((s, a, _b) in space_and_sets(12)) {
        let cl = closure(&s, &a);
        prop_assert_eq!(closure(&s, &cl), cl);
        prop_assert_eq!(iterated_adh(&s, &a, s.len()), cl);
        prop_assert!(is_closed(&s, &cl));
        prop_assert!(iterated_adh(&s, &a, topological_defect(&s).defect).is_superset(&cl));
    }

    #[test]
    fn adherence_duality((s, a, b) in space_and_sets(12)) {
        prop_assert_eq!(b.meets(&adh(&s, &a)), a.meets(&adh_star(&s, &b)));
        prop_assert_eq!(adh_star(&s, &a), adh(&s.star_dual(), &a));
        prop_assert_eq!(is_open(&s.star_dual(), &a), is_closed(&s, &a));
        prop_assert_eq!(is_open(&s, &a), is_closed(&s, &a.complement()));
    }

    #[test]
    fn modifications_are_reflexive_idempotent_and_involutive(s in space(12)) {
        let t = s.t_modification();
        let r = s.r_modification();
        prop_assert!(s.arrows_subset_of(&t) && s.arrows_subset_of(&r));
        prop_assert!(t.is_transitive());
        prop_assert_eq!(t.t_modification(), t);
        prop_assert!(r.is_symmetric());
        prop_assert_eq!(r.r_modification(), r);
        prop_assert_eq!(s.star_dual().star_dual(), s.clone());
        prop_assert_eq!(s.star_dual().r_modification(), s.r_modification());
    }

    #[test]
    fn subspace_commutes_with_r_and_refines_t((s, a, _b) in space_and_sets(10)) {
        let sub = s.subspace(&a).unwrap();
        prop_assert_eq!(s.r_modification().subspace(&a).unwrap(), sub.r_modification());
        prop_assert!(sub.t_modification().arrows_subset_of(&s.t_modification().subspace(&a).unwrap()));
        prop_assert_eq!(
            is_t_subspace(&s, &a).unwrap(),
            sub.t_modification() == s.t_modification().subspace(&a).unwrap()
        );
    }

    #[test]
    fn components_partition_the_space(s in space(16)) {
        let comps = components(&s);
        let union = comps.iter().fold(s.empty_set(), |acc, c| acc.union(c));
        prop_assert_eq!(union, s.full());
        for (i, c) in comps.iter().enumerate() {
            prop_assert!(is_connected_subset(&s, c).unwrap());
            for d in &comps[i + 1..] {
                prop_assert!(!c.meets(d));
                prop_assert!(!is_connected_subset(&s, &c.union(d)).unwrap());
            }
        }
    }

    #[test]
    fn open_sets_form_a_topology(s in space(7)) {
        let open = open_sets(&s).unwrap();
        prop_assert!(open.contains(&s.empty_set()) && open.contains(&s.full()));
        for u in &open {
            for v in &open {
                prop_assert!(open.contains(&u.union(v)));
                prop_assert!(open.contains(&u.intersection(v)));
            }
        }
    }

    #[test]
    fn t1_finite_spaces_are_discrete(s in space(10)) {
        // T1: every singleton closed, i.e. no arrows at all
        let t1 = s.points().all(|x| is_closed(&s, &PointSet::singleton(s.len(), x)));
        prop_assert_eq!(t1, s == ConvergenceSpace::discrete(s.len()).with_labels(s.labels().to_vec()).unwrap());
    }

    #[test]
    fn documents_round_trip(s in space(20)) {
        let doc = SpaceDocument::from_space("prop", &s);
        let text = doc.render();
        prop_assert_eq!(parse_space(&text).unwrap(), doc.clone());
        prop_assert_eq!(doc.to_space().unwrap(), s);
    }
}
