//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Numbers quoted from the published figures and tables are written out here
//! rather than read from the crate's claim table, so the two act as
//! independent transcriptions.

use std::process::Command;

use qbag_core::claims::{self, Quantity};
use qbag_core::fixtures::fixture;
use qbag_core::lab::{self, CheckOptions, random_corpus};
use qbag_core::review::run_pipeline;
use qbag_core::{
    ContributionConfig, GradientAggregator, Partition, Preset, PrincipleId, Qbag, SetContributor, SetFunction, SingleKind,
    evaluate, evaluate_dual, pctrb_shapley, sctrb_gradient, sctrb_intrinsic_removal, sctrb_removal, sctrb_shapley,
    single_ctrb,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRAD: SetFunction = SetFunction::Gradient(GradientAggregator::Max);
const GRID: [f64; 11] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn others<'g>(g: &'g Qbag, a: &str) -> Vec<&'g str> {
    g.ids().iter().map(|i| i.as_str()).filter(|x| *x != a).collect()
}

fn set_value(f: SetFunction, g: &Qbag, p: Preset, members: &[&str], a: &str) -> f64 {
    let spec = p.spec();
    let x = SetContributor::new(members, a);
    let r = match f {
        SetFunction::Removal => sctrb_removal(g, &spec, &x),
        SetFunction::IntrinsicRemoval => sctrb_intrinsic_removal(g, &spec, &x),
        SetFunction::Shapley => sctrb_shapley(g, &spec, &x, ContributionConfig::default()),
        SetFunction::Gradient(psi) => sctrb_gradient(g, &spec, &x, psi),
    };
    r.unwrap().value
}

fn c1_running_example() -> Outcome {
    let g = fixture("fig1a").unwrap().graph;
    let sigma = evaluate(&g, &Preset::Qe.spec()).unwrap();
    let printed = [("a", 0.39), ("b", 0.95), ("c", 0.61), ("d", 0.55), ("e", 0.57), ("f", 0.60)];
    let worst = printed.iter().map(|(id, v)| (sigma.get(id).unwrap() - v).abs()).fold(0.0, f64::max);
    outcome(worst <= 0.005, format!("max |σ − printed| = {worst:.2e} (tol 5e-3)"))
}

fn c2_review_table() -> Outcome {
    let text = fixture("fig8").unwrap().graph;
    let aspects = ["NOV", "APR", "CMP", "IMP", "CLA", "EMP", "SUB"];
    let r = run_pipeline(&text, &aspects, "D", 0.5, &[vec!["NOV", "IMP"]]).unwrap().report;
    // (row, removal, Shapley, gradient) as printed
    let table = [
        ("{IMP,NOV}", 0.045, 0.048, 0.200),
        ("NOV", 0.120, 0.210, 0.200),
        ("IMP", -0.075, -0.163, -0.150),
        ("CMP", -0.175, -0.263, -0.250),
        ("APR", 0.120, 0.210, 0.200),
        ("sum", -0.010, -0.005, 0.150),
    ];
    // exact half-unit values (0.0475 → 0.048) sit on the tolerance edge;
    // allow float noise in the last bits, not a wider band
    let tol = 5e-4 + 1e-12;
    let mut worst: f64 = 0.0;
    let mut cells = 0;
    for (label, rem, sh, gr) in table {
        let row = if label == "sum" { &r.sum } else { r.rows.iter().find(|x| x.label == label).unwrap() };
        for (got, want) in [(row.removal, rem), (row.shapley, sh), (row.gradient, gr)] {
            worst = worst.max((got - want).abs());
            cells += 1;
        }
    }
    let ds = (r.sigma - 0.495).abs();
    outcome(
        cells == 18 && worst <= tol && ds <= tol,
        format!("{cells} cells, max |Δ| = {worst:.2e}; σ(D) = {:.6} (tol 5e-4)", r.sigma),
    )
}

fn c3_sign_inconsistency() -> Outcome {
    let g = fixture("fig1a").unwrap().graph;
    let d = set_value(SetFunction::Removal, &g, Preset::Qe, &["d"], "a");
    let f = set_value(SetFunction::Removal, &g, Preset::Qe, &["f"], "a");
    let df = set_value(SetFunction::Removal, &g, Preset::Qe, &["d", "f"], "a");
    outcome(d < -1e-9 && f < -1e-9 && df > 1e-9, format!("{{d}}: {d:.5}, {{f}}: {f:.5}, {{d,f}}: {df:.5}"))
}

fn c4_violations() -> Outcome {
    let mut fails: Vec<String> = Vec::new();
    let mut n = 0;
    let mut min_margin = f64::INFINITY;
    let mut record = |name: String, margin: f64| {
        n += 1;
        min_margin = min_margin.min(margin);
        if !(margin > 1e-9) {
            fails.push(format!("{name} (margin {margin:e})"));
        }
    };
    let fig3 = fixture("fig3").unwrap().graph;
    // singleton gradients all 0 while σ(a) < τ(a)
    for p in [Preset::DfQuad, Preset::SdDfQuad, Preset::Ebt] {
        let gb = set_value(GRAD, &fig3, p, &["b"], "a");
        let gc = set_value(GRAD, &fig3, p, &["c"], "a");
        let drop = 0.5 - evaluate(&fig3, &p.spec()).unwrap().get("a").unwrap();
        let margin = if gb.abs() <= 1e-9 && gc.abs() <= 1e-9 { drop } else { 0.0 };
        record(format!("fig3 gradient existence {}", p.name()), margin);
    }
    // {{b},{c}} does not add up to σ − τ
    for p in Preset::ALL {
        let delta = evaluate(&fig3, &p.spec()).unwrap().get("a").unwrap() - 0.5;
        for f in [SetFunction::Removal, SetFunction::IntrinsicRemoval, GRAD] {
            let sum = set_value(f, &fig3, p, &["b"], "a") + set_value(f, &fig3, p, &["c"], "a");
            record(format!("fig3 quantitative existence {f} {}", p.name()), (sum - delta).abs());
        }
    }
    // Shapley over {{b,c},{d}}
    let fig4 = fixture("fig4").unwrap();
    for p in Preset::ALL {
        let delta = evaluate(&fig4.graph, &p.spec()).unwrap().get(fig4.topic).unwrap() - fig4.graph.initial_strength(fig4.topic).unwrap();
        let sum = set_value(SetFunction::Shapley, &fig4.graph, p, &["b", "c"], fig4.topic)
            + set_value(SetFunction::Shapley, &fig4.graph, p, &["d"], fig4.topic);
        record(format!("fig4 Shapley quantitative existence {}", p.name()), (sum - delta).abs());
    }
    let o = CheckOptions::default();
    let margin = |v: qbag_core::PrincipleVerdict| if v.is_violated() { v.witness.map_or(0.0, |w| w.margin) } else { 0.0 };
    // gradient weak quantitative existence
    let fig5 = fixture("fig5").unwrap();
    for p in Preset::ALL {
        let v = lab::check_quantitative_contribution_existence(&GRAD, &fig5.graph, &p.spec(), fig5.topic, true, &o).unwrap();
        record(format!("fig5 weak quantitative existence {}", p.name()), margin(v));
    }
    // consistency, one τ vector per semantics
    for (prefix, f) in [("fig6", SetFunction::Removal), ("fig6-shapley", SetFunction::Shapley)] {
        for (p, suffix) in [(Preset::Qe, "qe"), (Preset::DfQuad, "dfquad"), (Preset::SdDfQuad, "sd-dfquad"), (Preset::Eb, "eb"), (Preset::Ebt, "ebt")] {
            let fx = fixture(&format!("{prefix}-{suffix}")).unwrap();
            let v = lab::check_consistency(&f, &fx.graph, &p.spec(), fx.topic, &o).unwrap();
            record(format!("{} consistency {f}", fx.id), margin(v));
        }
    }
    // monotonicity
    let fig7 = fixture("fig7").unwrap();
    for p in Preset::ALL {
        for f in [SetFunction::Removal, SetFunction::IntrinsicRemoval, SetFunction::Shapley] {
            let v = lab::check_monotonicity(&f, &fig7.graph, &p.spec(), fig7.topic, &o).unwrap();
            record(format!("fig7 monotonicity {f} {}", p.name()), margin(v));
        }
    }
    outcome(fails.is_empty(), format!("{n} violations, min margin {min_margin:.3e}; failing: {fails:?}"))
}

fn c5_appendix() -> Outcome {
    let mut failed = Vec::new();
    let mut labels_off = Vec::new();
    let mut n = 0;
    for k in 1..=12 {
        let id = format!("figA{k}");
        let cs = claims::claims_for(&id);
        assert!(!cs.is_empty(), "{id} has no claims");
        for c in cs {
            let o = claims::check_claim(c).unwrap();
            // printed node labels are checked too, but reported apart from the claims
            let is_label = c.label.starts_with("label ") && matches!(c.quantity, Some(Quantity::Strength { .. }));
            if is_label {
                if !o.reproduced {
                    labels_off.push(format!("{id} {}", c.label));
                }
                continue;
            }
            n += 1;
            if !o.reproduced {
                failed.push(format!("{id} {} [{}]", c.label, o.detail));
            }
        }
    }
    // spot values spelled out in the acceptance text
    let spot = [
        ("figA2", SetFunction::IntrinsicRemoval, Preset::Eb, "e", 3.5431e-6, 1e-9),
        ("figA4", SetFunction::Shapley, Preset::Qe, "e", 4.9326e-5, 1e-8),
        ("figA4", SetFunction::Removal, Preset::Qe, "e", -0.0149, 5e-4),
        ("figA12", GRAD, Preset::Eb, "b", -0.4530, 5e-4),
    ];
    for (id, f, p, x, want, tol) in spot {
        let fx = fixture(id).unwrap();
        let got = set_value(f, &fx.graph, p, &[x], fx.topic);
        n += 1;
        if (got - want).abs() > tol {
            failed.push(format!("{id} {f} {{{x}}} = {got:e}, printed {want:e}"));
        }
    }
    outcome(
        failed.is_empty(),
        format!("{}/{n} claims reproduce; failing: {failed:?}; figure labels off: {labels_off:?}", n - failed.len()),
    )
}

fn c6_generalization() -> Outcome {
    let corpus = random_corpus(6, 500, 6, &GRID);
    let pairs = [
        (SingleKind::Removal, SetFunction::Removal),
        (SingleKind::IntrinsicRemoval, SetFunction::IntrinsicRemoval),
        (SingleKind::Shapley, SetFunction::Shapley),
        (SingleKind::Gradient, GRAD),
    ];
    let mut worst: f64 = 0.0;
    let mut n = 0u64;
    for g in &corpus {
        for p in Preset::ALL {
            let spec = p.spec();
            for a in g.ids() {
                for x in others(g, a.as_str()) {
                    for (kind, f) in pairs {
                        let single = single_ctrb(kind, g, &spec, x, a.as_str(), ContributionConfig::default()).unwrap().value;
                        let set = set_value(f, g, p, &[x], a.as_str());
                        worst = worst.max((single - set).abs());
                        n += 1;
                    }
                }
            }
        }
    }
    outcome(worst <= 1e-9, format!("{} graphs, {n} comparisons, max |Δ| = {worst:.2e}", corpus.len()))
}

fn c7_finite_differences() -> Outcome {
    const H: f64 = 1e-5;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let corpus = random_corpus(7, 200, 6, &GRID);
    let (mut worst, mut n, mut kinks): (f64, u64, u64) = (0.0, 0, 0);
    for g in &corpus {
        // continuous initial strengths away from the box edges
        let mut g = g.clone();
        for id in g.ids().to_vec() {
            g = g.set_initial_strength(id.as_str(), rng.random_range(0.05..0.95)).unwrap();
        }
        for p in Preset::ALL {
            let spec = p.spec();
            for x in g.ids() {
                let x = x.as_str();
                let tau = g.initial_strength(x).unwrap();
                let dual = evaluate_dual(&g, &spec, x).unwrap();
                let lo = evaluate(&g.set_initial_strength(x, tau - H).unwrap(), &spec).unwrap();
                let mid = evaluate(&g, &spec).unwrap();
                let hi = evaluate(&g.set_initial_strength(x, tau + H).unwrap(), &spec).unwrap();
                for (i, a) in g.ids().iter().enumerate() {
                    let (l, m, r) = (lo.values()[i], mid.values()[i], hi.values()[i]);
                    // one-sided slopes disagree: a kink, not an interior point
                    if ((r - m) / H - (m - l) / H).abs() > 1e-3 {
                        kinks += 1;
                        continue;
                    }
                    let central = (r - l) / (2.0 * H);
                    let d = dual.derivative(a.as_str()).unwrap();
                    worst = worst.max((d - central).abs());
                    n += 1;
                }
            }
        }
    }
    outcome(worst <= 1e-6, format!("{n} derivatives, max |dual − central| = {worst:.2e}, {kinks} kink points skipped"))
}

fn c8_weak_split() -> Outcome {
    let corpus = random_corpus(8, 200, 6, &GRID);
    let mut worst: f64 = 0.0;
    let mut n = 0u64;
    for g in &corpus {
        for p in Preset::ALL {
            let sigma = evaluate(g, &p.spec()).unwrap();
            for a in g.ids() {
                let a = a.as_str();
                let (reach, rest): (Vec<&str>, Vec<&str>) =
                    others(g, a).into_iter().partition(|x| g.can_reach(x, a).unwrap());
                let delta = sigma.get(a).unwrap() - g.initial_strength(a).unwrap();
                for f in [SetFunction::Removal, SetFunction::IntrinsicRemoval, SetFunction::Shapley] {
                    let sum: f64 = [&reach, &rest].iter().filter(|b| !b.is_empty()).map(|b| set_value(f, g, p, b, a)).sum();
                    worst = worst.max((sum - delta).abs());
                    n += 1;
                }
            }
        }
    }
    outcome(worst <= 1e-9, format!("{n} splits, max |Σ − (σ−τ)| = {worst:.2e}"))
}

fn c9_efficiency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let corpus = random_corpus(9, 100, 6, &GRID);
    let mut worst: f64 = 0.0;
    let mut n = 0u64;
    for g in &corpus {
        let a = g.ids()[rng.random_range(0..g.len())].as_str();
        let rest = others(g, a);
        for _ in 0..3 {
            let k = rng.random_range(1..=rest.len());
            let mut blocks: Vec<Vec<&str>> = vec![Vec::new(); k];
            for x in &rest {
                blocks[rng.random_range(0..k)].push(x);
            }
            blocks.retain(|b| !b.is_empty());
            let partition = Partition::new(blocks.clone());
            for p in Preset::ALL {
                let spec = p.spec();
                let delta = evaluate(g, &spec).unwrap().get(a).unwrap() - g.initial_strength(a).unwrap();
                let sum: f64 = blocks
                    .iter()
                    .map(|b| {
                        pctrb_shapley(g, &spec, &SetContributor::new(b, a), &partition, ContributionConfig::default())
                            .unwrap()
                            .value
                    })
                    .sum();
                worst = worst.max((sum - delta).abs());
                n += 1;
            }
        }
    }
    outcome(worst <= 1e-9, format!("{n} partitions, max |Σ − (σ−τ)| = {worst:.2e}"))
}

fn c10_matrix() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_qbag")).args(["reproduce", "--all", "--json"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("reproduce emits JSON");
    let cells = v["matrix"]["cells"].as_array().unwrap();
    let mismatched: Vec<String> = cells
        .iter()
        .filter(|c| c["status"] == "mismatch")
        .map(|c| format!("{} {} {}", c["principle"], c["fn"], c["semantics"]))
        .collect();
    let tabled = PrincipleId::TABLED.len() * SetFunction::PAPER.len() * Preset::ALL.len();
    let reproduced = cells.iter().filter(|c| c["status"] == "violation-reproduced").count();
    outcome(
        mismatched.is_empty() && cells.len() == tabled,
        format!("{} cells ({reproduced} ✗ reproduced), {} mismatches {mismatched:?}", cells.len(), mismatched.len()),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("running example final strengths under QE", c1_running_example),
        ("review table: 18 cells and σ(D)", c2_review_table),
        ("sign inconsistency of removal on the running example", c3_sign_inconsistency),
        ("violations on their designated fixtures", c4_violations),
        ("appendix counterexamples at printed precision", c5_appendix),
        ("generalization over 500 random graphs", c6_generalization),
        ("dual gradients vs central differences", c7_finite_differences),
        ("reachability split sums to σ − τ", c8_weak_split),
        ("partition Shapley efficiency", c9_efficiency),
        ("verdict matrix via `reproduce --all`", c10_matrix),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = std::time::Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {name} — {} [{:.1?}]", i + 1, o.detail, t.elapsed());
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
