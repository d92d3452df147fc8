use proptest::prelude::*;
use qbag_core::lab::{self, CheckOptions, enumerate_partitions, random_qbag};
use qbag_core::{
    ContributionConfig, GradientAggregator, MonteCarlo, Preset, Qbag, QbagDraft, Scenario, SetFunction, SingleKind, Status,
    evaluate, evaluate_dual,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GRID: [f64; 11] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

fn graph() -> impl Strategy<Value = Qbag> {
    (any::<u64>(), 2usize..=6, prop::sample::select(vec![0.2, 0.4, 0.6]))
        .prop_map(|(seed, n, p)| random_qbag(&mut ChaCha8Rng::seed_from_u64(seed), n, p, &GRID))
}

fn preset() -> impl Strategy<Value = Preset> {
    prop::sample::select(Preset::ALL.to_vec())
}

fn function() -> impl Strategy<Value = SetFunction> {
    prop::sample::select(vec![
        SetFunction::Removal,
        SetFunction::IntrinsicRemoval,
        SetFunction::Shapley,
        SetFunction::Gradient(GradientAggregator::Max),
        SetFunction::Gradient(GradientAggregator::Min),
        SetFunction::Gradient(GradientAggregator::MaxAbs),
    ])
}

fn scenario<'g>(g: &'g Qbag, p: Preset, a: &str) -> Scenario<'g> {
    Scenario::new(g, &p.spec(), a, ContributionConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn strengths_stay_in_unit_interval(g in graph(), p in preset()) {
        for (_, s) in evaluate(&g, &p.spec()).unwrap().iter() {
            prop_assert!((0.0..=1.0).contains(&s), "{s}");
        }
    }

    #[test]
    fn sources_keep_their_initial_strength(g in graph(), p in preset()) {
        let v = qbag_core::check_stability(&p.spec(), &g, 1e-12).unwrap();
        prop_assert_eq!(v.status, Status::SatisfiedOnInstance);
    }

    #[test]
    fn set_functions_generalize_single_ones(g in graph(), p in preset(), f in function()) {
        // |∂σ/∂τ| cannot match a negative single gradient
        prop_assume!(f != SetFunction::Gradient(GradientAggregator::MaxAbs));
        let kind = match f {
            SetFunction::Removal => SingleKind::Removal,
            SetFunction::IntrinsicRemoval => SingleKind::IntrinsicRemoval,
            SetFunction::Shapley => SingleKind::Shapley,
            SetFunction::Gradient(_) => SingleKind::Gradient,
        };
        let v = lab::check_generalization(kind, &f, &g, &p.spec(), &CheckOptions::default()).unwrap();
        prop_assert_eq!(v.status, Status::SatisfiedOnInstance);
    }

    #[test]
    fn unreachable_sets_contribute_nothing(g in graph(), p in preset(), f in function()) {
        for a in g.ids() {
            let v = lab::check_directionality(&f, &g, &p.spec(), a.as_str(), &CheckOptions::default()).unwrap();
            prop_assert_eq!(v.status, Status::SatisfiedOnInstance, "{:?}", v.witness);
        }
    }

    #[test]
    fn removing_every_influencer_accounts_for_the_whole_change(g in graph(), p in preset()) {
        let sigma = evaluate(&g, &p.spec()).unwrap();
        for a in g.ids() {
            let mut sc = scenario(&g, p, a.as_str());
            let reach = sc.influencers();
            if reach.is_clear() {
                continue;
            }
            let delta = sigma.get(a.as_str()).unwrap() - g.initial_strength(a.as_str()).unwrap();
            prop_assert!((sc.removal(&reach).unwrap() - delta).abs() <= 1e-12);
            prop_assert!((sc.shapley(&reach).unwrap().0 - delta).abs() <= 1e-12);
        }
    }

    #[test]
    fn singleton_shapley_values_are_efficient(g in graph(), p in preset()) {
        let sigma = evaluate(&g, &p.spec()).unwrap();
        for a in g.ids() {
            let mut sc = scenario(&g, p, a.as_str());
            let singles: Vec<_> = sc.others().ones().map(|i| { let mut m = sc.empty_set(); m.insert(i); m }).collect();
            let mut sum = 0.0;
            for x in &singles {
                let (v, se) = sc.shapley(x).unwrap();
                prop_assert!(se.is_none());
                // with singleton players both games coincide
                prop_assert!((sc.partition_shapley(x, &singles).unwrap().0 - v).abs() <= 1e-12);
                sum += v;
            }
            let delta = sigma.get(a.as_str()).unwrap() - g.initial_strength(a.as_str()).unwrap();
            prop_assert!((sum - delta).abs() <= 1e-9);
        }
    }

    #[test]
    fn gradient_aggregators_are_ordered(g in graph(), p in preset()) {
        for a in g.ids() {
            let mut sc = scenario(&g, p, a.as_str());
            let others = sc.others();
            if others.is_clear() {
                continue;
            }
            let max = sc.gradient(&others, GradientAggregator::Max).unwrap();
            let min = sc.gradient(&others, GradientAggregator::Min).unwrap();
            let abs = sc.gradient(&others, GradientAggregator::MaxAbs).unwrap();
            prop_assert!(min <= max);
            prop_assert!(abs.abs() >= max.abs().max(min.abs()) - 1e-15);
        }
    }

    #[test]
    fn dual_matches_central_difference_off_kinks(g in graph(), p in preset(), seed in any::<u64>()) {
        use rand::Rng;
        const H: f64 = 1e-5;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = g;
        for id in g.ids().to_vec() {
            g = g.set_initial_strength(id.as_str(), rng.random_range(0.05..0.95)).unwrap();
        }
        let spec = p.spec();
        for x in g.ids() {
            let tau = g.initial_strength(x.as_str()).unwrap();
            let d = evaluate_dual(&g, &spec, x.as_str()).unwrap();
            let lo = evaluate(&g.set_initial_strength(x.as_str(), tau - H).unwrap(), &spec).unwrap();
            let hi = evaluate(&g.set_initial_strength(x.as_str(), tau + H).unwrap(), &spec).unwrap();
            let mid = evaluate(&g, &spec).unwrap();
            for (i, a) in g.ids().iter().enumerate() {
                prop_assert!((d.value(a.as_str()).unwrap() - mid.values()[i]).abs() <= 1e-15);
                let (l, m, r) = (lo.values()[i], mid.values()[i], hi.values()[i]);
                if ((r - m) - (m - l)).abs() / H > 1e-3 {
                    continue;
                }
                prop_assert!((d.derivative(a.as_str()).unwrap() - (r - l) / (2.0 * H)).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn renaming_arguments_does_not_change_strengths(g in graph(), p in preset()) {
        // reversing the alphabet also reverses any id-based ordering
        let flip = |s: &str| -> String { s.chars().map(|c| (b'a' + (b'z' - c as u8)) as char).collect() };
        let d = g.to_draft();
        let mut h = QbagDraft::new();
        for (id, t) in &d.arguments {
            h = h.argument(&flip(id), *t);
        }
        for (x, y) in &d.attacks {
            h = h.attack(&flip(x), &flip(y));
        }
        for (x, y) in &d.supports {
            h = h.support(&flip(x), &flip(y));
        }
        let h = h.build().unwrap();
        let (sg, sh) = (evaluate(&g, &p.spec()).unwrap(), evaluate(&h, &p.spec()).unwrap());
        for (id, v) in sg.iter() {
            prop_assert!((v - sh.get(&flip(id.as_str())).unwrap()).abs() <= 1e-12);
        }
    }

    #[test]
    fn monte_carlo_tracks_exact_shapley(g in graph(), p in preset(), seed in any::<u64>()) {
        let a = g.ids()[0].as_str();
        let mut exact = scenario(&g, p, a);
        let cfg = ContributionConfig { budget: 0, monte_carlo: Some(MonteCarlo { samples: 4000, seed }) };
        let mut sampled = Scenario::new(&g, &p.spec(), a, cfg).unwrap();
        for i in exact.influencers().ones() {
            let mut x = exact.empty_set();
            x.insert(i);
            let (v, _) = exact.shapley(&x).unwrap();
            let (est, se) = sampled.shapley(&x).unwrap();
            let se = se.unwrap_or(0.0);
            prop_assert!((est - v).abs() <= 6.0 * se + 1e-9, "exact {v}, estimate {est} ± {se}");
        }
    }
}

#[test]
fn partition_counts_are_bell_numbers() {
    let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
    for (n, b) in bell.iter().enumerate().skip(1) {
        let base: Vec<usize> = (0..n).collect();
        let parts: Vec<Vec<Vec<usize>>> = enumerate_partitions(&base).unwrap().collect();
        assert_eq!(parts.len(), *b, "n = {n}");
        for p in &parts {
            let mut all: Vec<usize> = p.iter().flatten().copied().collect();
            all.sort();
            assert_eq!(all, base);
            assert!(p.iter().all(|blk| !blk.is_empty()));
        }
    }
}

#[test]
fn symmetric_attackers_share_shapley_value() {
    for p in Preset::ALL {
        for t in [0.2, 0.7, 1.0] {
            let g = QbagDraft::new()
                .argument("a", 0.5)
                .argument("b", t)
                .argument("c", t)
                .argument("d", 0.4)
                .attack("b", "a")
                .attack("c", "a")
                .support("d", "a")
                .build()
                .unwrap();
            let mut sc = scenario(&g, p, "a");
            let vb = sc.shapley(&g.mask(["b"]).unwrap()).unwrap().0;
            let vc = sc.shapley(&g.mask(["c"]).unwrap()).unwrap().0;
            assert!((vb - vc).abs() <= 1e-12, "{} τ={t}: {vb} vs {vc}", p.name());
        }
    }
}
