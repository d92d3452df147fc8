use qbag_core::lab::{self, CheckOptions, random_corpus};
use qbag_core::{fixtures, ContributionConfig, PrincipleId, Preset, Scenario, SetFunction, SingleKind, Status};

const KINDS: [SingleKind; 4] = [SingleKind::Removal, SingleKind::IntrinsicRemoval, SingleKind::Shapley, SingleKind::Gradient];

#[test]
fn designated_fixtures_violate_and_replay() {
    let o = CheckOptions::default();
    let mut checked = 0;
    for s in Preset::ALL {
        let spec = s.spec();
        for p in PrincipleId::TABLED {
            for f in SetFunction::PAPER {
                let Some(id) = lab::designated_fixture(p, f, s) else { continue };
                let fx = fixtures::fixture(&id).unwrap();
                let mut sc = Scenario::new(&fx.graph, &spec, fx.topic, ContributionConfig::default()).unwrap();
                let v = lab::check(p, &f, &mut sc, &o).unwrap();
                let cell = format!("{} / {f} / {}", p.name(), s.name());
                assert_eq!(v.status, Status::ViolatedOnInstance, "{cell} on {id}");
                let w = v.witness.as_ref().unwrap();
                assert!(w.margin > o.tolerance, "{cell}");
                let m = lab::replay(&v, &f, &spec, &o).unwrap().unwrap_or_else(|| panic!("{cell}: witness does not replay"));
                assert!((m - w.margin).abs() <= 1e-12, "{cell}: {m} vs {}", w.margin);
                checked += 1;
            }
        }
    }
    // every ✗ cell of the two tables has a fixture
    assert_eq!(checked, 88);
}

#[test]
fn set_principles_already_fail_for_single_arguments_on_fig3() {
    let fx = fixtures::fixture("fig3").unwrap();
    for s in Preset::ALL {
        for k in [SingleKind::Removal, SingleKind::IntrinsicRemoval, SingleKind::Gradient] {
            let v = lab::single::quantitative_contribution_existence(k, &fx.graph, &s.spec(), fx.topic, 1e-9).unwrap();
            assert_eq!(v.status, Status::ViolatedOnInstance, "{k:?} / {}", s.name());
        }
    }
    // σ moves under DFQuAD but no single argument gets credit for it
    let v = lab::single::contribution_existence(SingleKind::Removal, &fx.graph, &Preset::DfQuad.spec(), fx.topic, 1e-9).unwrap();
    assert_eq!(v.status, Status::ViolatedOnInstance);
}

#[test]
fn single_directionality_holds_on_random_graphs() {
    let grid: Vec<f64> = (0..=10).map(|k| f64::from(k) / 10.0).collect();
    for g in random_corpus(11, 60, 6, &grid) {
        for s in Preset::ALL {
            let spec = s.spec();
            for a in g.ids() {
                for k in KINDS {
                    let v = lab::single::directionality(k, &g, &spec, a.as_str(), 1e-12).unwrap();
                    assert_eq!(v.status, Status::SatisfiedOnInstance, "{k:?} / {} on {g:?}", s.name());
                }
            }
        }
    }
}

#[test]
fn set_directionality_holds_on_every_fixture() {
    let o = CheckOptions::default();
    for fx in fixtures::all() {
        for s in Preset::ALL {
            for f in SetFunction::PAPER {
                for a in fx.graph.ids() {
                    let v = lab::check_directionality(&f, &fx.graph, &s.spec(), a.as_str(), &o).unwrap();
                    assert_eq!(v.status, Status::SatisfiedOnInstance, "{} {f} {} @{}", fx.id, s.name(), a.as_str());
                }
            }
        }
    }
}
