use benchvote_core::generators::{group_separable_profile, random_profile};
use benchvote_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..k).collect::<Vec<_>>()).prop_shuffle()
}

fn profile(k: std::ops::RangeInclusive<usize>, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Profile> {
    (k, n).prop_flat_map(|(k, n)| {
        prop::collection::vec(perm(k), n).prop_map(move |seqs| {
            let models = ModelSet::synthetic(k);
            Profile::from_rankings(
                seqs.into_iter()
                    .map(|s| StrictRanking::from_indices(models.clone(), s).unwrap())
                    .collect(),
            )
            .unwrap()
        })
    })
}

/// Raw score grid `[model][metric]` over a small value range so ties occur.
fn grid(models: usize, metrics: usize, levels: u8) -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop::collection::vec(0..levels, metrics), models)
}

fn table_from(grid: &[Vec<u8>], specs: Vec<MetricSpec>, scale: f64) -> ScoreTable {
    let names: Vec<String> = specs.iter().map(|s| s.name.clone()).collect();
    let mut t = ScoreTable::new(specs).unwrap();
    for (i, row) in grid.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            t.insert_raw("d", &format!("m{i}"), &names[j], v as f64 * scale).unwrap();
        }
    }
    t
}

/// The same profile with model `i` renamed to `y{sigma[i]}`.
fn relabel(p: &Profile, sigma: &[usize]) -> Profile {
    let rankings = p
        .rankings()
        .iter()
        .map(|r| {
            let ids: Vec<String> = r.sequence().iter().map(|&m| format!("y{}", sigma[m])).collect();
            StrictRanking::from_order(&ids).unwrap()
        })
        .collect();
    Profile::from_rankings(rankings).unwrap()
}

fn with_pair_order(r: &StrictRanking, a: usize, b: usize, a_first: bool) -> StrictRanking {
    let mut seq = r.sequence().to_vec();
    if r.prefers(a, b) != a_first {
        let (pa, pb) = (r.position(a), r.position(b));
        seq.swap(pa, pb);
    }
    StrictRanking::from_indices(r.models().clone(), seq).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tie_break_refines_weak_ranking(g in grid(6, 1, 3)) {
        let t = table_from(&g, vec![MetricSpec::higher("x").unwrap()], 1.0);
        let models = t.model_set();
        let weak = induce_weak_ranking(&t, "d", "x", &models).unwrap();
        let asc = break_ties(&weak, TieBreakRule::AlphaAsc);
        let desc = break_ties(&weak, TieBreakRule::AlphaDesc);
        for a in 0..6 {
            for b in 0..6 {
                if weak.class_of(a) < weak.class_of(b) {
                    prop_assert!(asc.prefers(a, b));
                    prop_assert!(desc.prefers(a, b));
                } else if a != b && weak.class_of(a) == weak.class_of(b) {
                    // containment: the rules disagree only inside a class
                    prop_assert_eq!(asc.prefers(a, b), desc.prefers(b, a));
                }
            }
        }
    }

    #[test]
    fn build_profile_is_deterministic(g in grid(5, 3, 4), desc in any::<bool>()) {
        let specs = vec![MetricSpec::higher("a").unwrap(), MetricSpec::lower("b").unwrap(), MetricSpec::higher("c").unwrap()];
        let rule = if desc { TieBreakRule::AlphaDesc } else { TieBreakRule::AlphaAsc };
        let t1 = table_from(&g, specs.clone(), 0.5);
        let t2 = table_from(&g, specs, 0.5);
        let m = t1.model_set();
        prop_assert_eq!(
            build_profile(&t1, "d", &["a", "b", "c"], &m, rule).unwrap(),
            build_profile(&t2, "d", &["a", "b", "c"], &m, rule).unwrap()
        );
    }

    #[test]
    fn orientation_soundness(g in grid(6, 1, 4), desc in any::<bool>()) {
        let rule = if desc { TieBreakRule::AlphaDesc } else { TieBreakRule::AlphaAsc };
        let lower = table_from(&g, vec![MetricSpec::lower("x").unwrap()], 1.0);
        let negated = table_from(&g, vec![MetricSpec::higher("x").unwrap()], -1.0);
        let m = lower.model_set();
        let a = build_profile(&lower, "d", &["x"], &m, rule).unwrap();
        let b = build_profile(&negated, "d", &["x"], &m, rule).unwrap();
        prop_assert_eq!(a.rankings(), b.rankings());
    }

    #[test]
    fn count_conservation(p in profile(2..=6, 1..=8)) {
        let c = majority_counts(&p);
        let k = p.models().len();
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    prop_assert_eq!(c.count(a, b) + c.count(b, a), p.voters());
                }
            }
        }
        let weak = majority_relation(&c, RelationMode::Weak);
        prop_assert!(weak.is_complete());
        let strict = majority_relation(&c, RelationMode::Strict);
        for a in 0..k {
            for b in 0..k {
                prop_assert!(!(strict.holds(a, b) && strict.holds(b, a)));
            }
        }
    }

    #[test]
    fn iia(p in profile(3..=6, 1..=7), q in profile(6..=6, 7..=7), pair in (0usize..6, 0usize..6)) {
        let k = p.models().len();
        let (a, b) = (pair.0 % k, pair.1 % k);
        prop_assume!(a != b);
        // q agrees with p on (a, b) for every voter and is otherwise unrelated
        let other = Profile::from_rankings(
            p.rankings()
                .iter()
                .zip(q.rankings())
                .map(|(r, s)| {
                    let s = StrictRanking::from_indices(
                        r.models().clone(),
                        s.sequence().iter().copied().filter(|&m| m < k).collect(),
                    )
                    .unwrap();
                    with_pair_order(&s, a, b, r.prefers(a, b))
                })
                .collect(),
        )
        .unwrap();
        for mode in [RelationMode::Weak, RelationMode::Strict] {
            let r1 = majority_relation(&majority_counts(&p), mode);
            let r2 = majority_relation(&majority_counts(&other), mode);
            prop_assert_eq!(r1.holds(a, b), r2.holds(a, b));
            prop_assert_eq!(r1.holds(b, a), r2.holds(b, a));
        }
    }

    #[test]
    fn weak_pareto(p in profile(2..=6, 1..=7), pair in (0usize..6, 0usize..6)) {
        let k = p.models().len();
        let (a, b) = (pair.0 % k, pair.1 % k);
        prop_assume!(a != b);
        let unanimous = Profile::from_rankings(p.rankings().iter().map(|r| with_pair_order(r, a, b, true)).collect()).unwrap();
        prop_assert!(majority_relation(&majority_counts(&unanimous), RelationMode::Strict).holds(a, b));
    }

    #[test]
    fn cycle_transitivity_duality(cols in prop::collection::vec(perm(5), 3), k in 3usize..=5) {
        // distinct scores per metric: model i gets its position in a shuffle
        let names = ["p", "q", "r"];
        let mut t = ScoreTable::new(names.iter().map(|n| MetricSpec::higher(*n).unwrap()).collect()).unwrap();
        for (col, name) in cols.iter().zip(names) {
            for (i, &v) in col.iter().enumerate().take(k) {
                t.insert_raw("d", &format!("m{i}"), name, v as f64).unwrap();
            }
        }
        let cyclic = find_cycles(&t, "d", &names, 0.0).unwrap().is_cyclic();
        let p = build_profile(&t, "d", &names, &t.model_set(), TieBreakRule::AlphaAsc).unwrap();
        let strict = majority_relation(&majority_counts(&p), RelationMode::Strict);
        prop_assert_eq!(cyclic, !strict.is_transitive());
    }

    #[test]
    fn raising_tolerance_to_buffer_removes_witness(g in grid(4, 3, 6), tol_step in 0u8..3) {
        let names = ["p", "q", "r"];
        let t = table_from(&g, names.iter().map(|n| MetricSpec::higher(*n).unwrap()).collect(), 0.25);
        let tol = tol_step as f64 * 0.25 + DEFAULT_TOLERANCE;
        for w in find_cycles(&t, "d", &names, tol).unwrap().witnesses {
            prop_assert!(w.buffer > tol);
            let again = find_cycles(&t, "d", &names, w.buffer).unwrap();
            prop_assert!(!again.witnesses.iter().any(|v| v.metrics == w.metrics && v.cycle == w.cycle));
        }
    }

    #[test]
    fn swap_distance_is_a_metric(a in perm(7), b in perm(7), c in perm(7)) {
        let m = ModelSet::synthetic(7);
        let r = |s: Vec<usize>| StrictRanking::from_indices(m.clone(), s).unwrap();
        let (a, b, c) = (r(a), r(b), r(c));
        let d = |x: &StrictRanking, y: &StrictRanking| swap_distance(x, y).unwrap();
        prop_assert_eq!(d(&a, &b) == 0, a == b);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        prop_assert_eq!(d(&a, &a.reversed()), 21);
    }

    #[test]
    fn axis_symmetry(r in perm(6), axis in perm(6)) {
        let m = ModelSet::synthetic(6);
        let r = StrictRanking::from_indices(m.clone(), r).unwrap();
        let axis = Axis::from_indices(m, axis).unwrap();
        prop_assert_eq!(
            is_single_peaked_on_axis(&r, &axis).unwrap(),
            is_single_peaked_on_axis(&r, &axis.reversed()).unwrap()
        );
    }

    #[test]
    fn domain_verdicts_survive_relabeling(seed in any::<u64>(), sigma in perm(5), structured in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let models = ModelSet::synthetic(5);
        let p = if structured {
            group_separable_profile(&mut rng, &models, 3)
        } else {
            random_profile(&mut rng, &models, 3)
        };
        let q = relabel(&p, &sigma);
        let (rp, rq) = (domain_report(&p).unwrap(), domain_report(&q).unwrap());
        prop_assert!(rp.verify(&p) && rq.verify(&q));
        prop_assert_eq!(rp.single_peaked.holds(), rq.single_peaked.holds());
        prop_assert_eq!(rp.group_separable.holds(), rq.group_separable.holds());
        prop_assert_eq!(rp.distance.map(|d| d.degree), rq.distance.map(|d| d.degree));
    }

    #[test]
    fn average_rank_is_total_and_bounded(p in profile(1..=7, 1..=7), desc in any::<bool>()) {
        let rule = if desc { TieBreakRule::AlphaDesc } else { TieBreakRule::AlphaAsc };
        let s = average_rank(&p, rule);
        let k = p.models().len() as f64;
        prop_assert!(s.avg_rank.iter().all(|&x| (1.0..=k).contains(&x)));
        prop_assert!((s.avg_rank.iter().sum::<f64>() - k * (k + 1.0) / 2.0).abs() < 1e-9);
        prop_assert_eq!(s.order.len(), p.models().len());
        for w in s.order.sequence().windows(2) {
            prop_assert!(s.avg_rank[w[0]] <= s.avg_rank[w[1]]);
        }
    }

    #[test]
    fn bottom_append_neutrality(g in grid(5, 4, 5), desc in any::<bool>()) {
        let rule = if desc { TieBreakRule::AlphaDesc } else { TieBreakRule::AlphaAsc };
        let names = ["a", "b", "c", "e"];
        let mut t = table_from(&g, names.iter().map(|n| MetricSpec::higher(*n).unwrap()).collect(), 1.0);
        for n in names {
            t.insert_raw("d", "zz", n, -1.0).unwrap();
        }
        let base = ModelSet::synthetic(5);
        let rep = flip_experiment(&t, "d", &names, &base, &ModelId::new("zz").unwrap(), rule).unwrap();
        prop_assert!(!rep.flipped());
        let after_base: Vec<usize> = rep.after.order.restricted_to(
            &(0..5).map(|i| rep.after.models().index_of(base.get(i).as_str()).unwrap()).collect::<Vec<_>>(),
        );
        let before: Vec<String> = rep.before.order.id_strings();
        let after: Vec<String> = after_base.iter().map(|&i| rep.after.models().get(i).to_string()).collect();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn removing_added_model_restores_base_summary(g in grid(6, 3, 5)) {
        let names = ["a", "b", "c"];
        let t = table_from(&g, names.iter().map(|n| MetricSpec::higher(*n).unwrap()).collect(), 1.0);
        let base = ModelSet::new((0..5).map(|i| format!("m{i}"))).unwrap();
        let rep = flip_experiment(&t, "d", &names, &base, &ModelId::new("m5").unwrap(), TieBreakRule::AlphaAsc).unwrap();
        let direct = average_rank(&build_profile(&t, "d", &names, &base, TieBreakRule::AlphaAsc).unwrap(), TieBreakRule::AlphaAsc);
        prop_assert_eq!(rep.before, direct);
        for (x, y) in &rep.flips {
            prop_assert!(base.contains(x.as_str()) && base.contains(y.as_str()));
        }
    }

    #[test]
    fn sharing_level_bounds_and_monotonicity(pool in prop::collection::vec(perm(4), 1..=3), picks in prop::collection::vec(0usize..3, 1..=9)) {
        let m = ModelSet::synthetic(4);
        let members: Vec<StrictRanking> = picks
            .iter()
            .map(|&i| StrictRanking::from_indices(m.clone(), pool[i % pool.len()].clone()).unwrap())
            .collect();
        let fam = RankingFamily::from_rankings(members.clone()).unwrap();
        let rep = commonality_sharing(&fam);
        let n = members.len();
        let unanimous = members.iter().all(|r| r == &members[0]);
        for (i, &lvl) in rep.levels.iter().enumerate() {
            prop_assert!((1..=n).contains(&lvl));
            prop_assert_eq!(lvl == 1, unanimous);
            for (j, &other) in rep.levels.iter().enumerate() {
                // disagreement pairs of i contained in those of j
                let subset = (0..4).all(|a| (0..4).all(|b| a == b || !members[i].prefers(b, a) || members[j].prefers(b, a)));
                if subset {
                    prop_assert!(lvl <= other);
                }
            }
        }
        for &d in &rep.deepest {
            for &(a, b) in &rep.consensus_pairs {
                prop_assert!(members[d].prefers(a, b));
            }
        }
    }

    #[test]
    fn duplicating_family_keeps_deepest(members in prop::collection::vec(perm(4), 1..=6)) {
        let m = ModelSet::synthetic(4);
        let members: Vec<StrictRanking> = members.into_iter().map(|s| StrictRanking::from_indices(m.clone(), s).unwrap()).collect();
        let once = commonality_sharing(&RankingFamily::from_rankings(members.clone()).unwrap());
        let doubled: Vec<StrictRanking> = members.iter().chain(&members).cloned().collect();
        let twice = commonality_sharing(&RankingFamily::from_rankings(doubled.clone()).unwrap());
        for i in 0..members.len() {
            prop_assert_eq!(twice.levels[i] - 1, 2 * (once.levels[i] - 1));
        }
        let ids = |rep: &DepthReport, fam: &[StrictRanking]| {
            let mut v: Vec<Vec<usize>> = rep.deepest.iter().map(|&i| fam[i].sequence().to_vec()).collect();
            v.sort();
            v.dedup();
            v
        };
        prop_assert_eq!(ids(&once, &members), ids(&twice, &doubled));
    }

    #[test]
    fn deepest_survives_relabeling(members in prop::collection::vec(perm(4), 1..=6), sigma in perm(4)) {
        let m = ModelSet::synthetic(4);
        let members: Vec<StrictRanking> = members.into_iter().map(|s| StrictRanking::from_indices(m.clone(), s).unwrap()).collect();
        let p = Profile::from_rankings(members.clone()).unwrap();
        let renamed = relabel(&p, &sigma).rankings().to_vec();
        let a = commonality_sharing(&RankingFamily::from_rankings(members).unwrap());
        let b = commonality_sharing(&RankingFamily::from_rankings(renamed).unwrap());
        prop_assert_eq!(a.deepest, b.deepest);
        prop_assert_eq!(a.levels, b.levels);
    }
}
