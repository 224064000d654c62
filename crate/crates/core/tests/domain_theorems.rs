use benchvote_core::generators::{degree_one_profile, group_separable_profile, single_peaked_profile};
use benchvote_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn relations(p: &Profile) -> (MajorityRelation, MajorityRelation) {
    let c = majority_counts(p);
    (majority_relation(&c, RelationMode::Weak), majority_relation(&c, RelationMode::Strict))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn single_peaked_odd_n_weak_majority_is_an_order(seed in any::<u64>(), k in 3usize..=6, half in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (axis, p) = single_peaked_profile(&mut rng, &ModelSet::synthetic(k), 2 * half + 1);
        prop_assert!(admissible_axes(&p).unwrap().contains(&axis.canonical()));
        let (weak, _) = relations(&p);
        prop_assert!(weak.is_transitive() && weak.is_complete());
    }

    #[test]
    fn single_peaked_strict_majority_is_transitive(seed in any::<u64>(), k in 3usize..=6, n in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, p) = single_peaked_profile(&mut rng, &ModelSet::synthetic(k), n);
        prop_assert!(relations(&p).1.is_transitive());
    }

    #[test]
    fn group_separable_odd_n_strict_majority_is_an_order(seed in any::<u64>(), k in 3usize..=7, half in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = group_separable_profile(&mut rng, &ModelSet::synthetic(k), 2 * half + 1);
        let rec = is_group_separable_recursive(&p).unwrap();
        prop_assert!(rec.holds());
        prop_assert!(is_group_separable_exhaustive(&p).unwrap().holds());
        let (_, strict) = relations(&p);
        prop_assert!(strict.is_transitive() && strict.is_complete());
    }

    #[test]
    fn degree_one_weak_majority_is_an_order(seed in any::<u64>(), k in 2usize..=7, n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = degree_one_profile(&mut rng, &ModelSet::synthetic(k), n);
        prop_assert!(distance_degree(&p).unwrap().within(1));
        let (weak, _) = relations(&p);
        prop_assert!(weak.is_transitive() && weak.is_complete());
        let mut distinct: Vec<&StrictRanking> = Vec::new();
        for r in p.rankings() {
            if !distinct.contains(&r) {
                distinct.push(r);
            }
        }
        prop_assert!(distinct.len() <= 2);
    }

    #[test]
    fn recursive_and_exhaustive_separability_agree(seed in any::<u64>(), k in 3usize..=7, n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = generators::random_profile(&mut rng, &ModelSet::synthetic(k), n);
        let rec = is_group_separable_recursive(&p).unwrap();
        let exh = is_group_separable_exhaustive(&p).unwrap();
        prop_assert_eq!(rec.holds(), exh.holds());
        if let (GroupSeparability::NotSeparable { failing_set }, _) = (&rec, &exh) {
            prop_assert!(separations_of(failing_set, &p).unwrap().is_empty());
        }
    }
}

/// With an even number of metrics a single-peaked profile can have an
/// intransitive weak majority relation: indifference is not transitive.
#[test]
fn even_single_peaked_profile_with_intransitive_weak_majority() {
    let m = ModelSet::new(["a", "b", "c"]).unwrap();
    let r = |ids: [&str; 3]| StrictRanking::from_ids(m.clone(), &ids).unwrap();
    let p = Profile::from_rankings(vec![r(["c", "b", "a"]), r(["b", "a", "c"])]).unwrap();
    let axis = Axis::from_ids(m.clone(), &["a", "b", "c"]).unwrap();
    assert!(p.rankings().iter().all(|x| is_single_peaked_on_axis(x, &axis).unwrap()));
    let (weak, strict) = relations(&p);
    // a ~ c, c ~ b, b > a
    assert!(weak.holds_by_id("a", "c").unwrap() && weak.holds_by_id("c", "b").unwrap());
    assert!(!weak.holds_by_id("a", "b").unwrap());
    assert!(!weak.is_transitive());
    assert!(strict.is_transitive());
}
