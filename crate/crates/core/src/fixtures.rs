//! The worked-example graphs, as ready-made QBAGs.
//!
//! Each fixture carries its topic and, where the example prints them, the
//! final strengths shown next to the nodes (`labels`).

use alloc::vec::Vec;

use crate::graph::{Qbag, QbagDraft};

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub id: &'static str,
    pub title: &'static str,
    pub graph: Qbag,
    pub topic: &'static str,
    /// Printed final strengths, `(argument, value)`.
    pub labels: Vec<(&'static str, f64)>,
}

fn build(args: &[(&str, f64)], attacks: &[(&str, &str)], supports: &[(&str, &str)]) -> Qbag {
    let mut d = QbagDraft::new();
    for (id, t) in args {
        d = d.argument(id, *t);
    }
    for (x, y) in attacks {
        d = d.attack(x, y);
    }
    for (x, y) in supports {
        d = d.support(x, y);
    }
    d.build().expect("fixture graphs are valid")
}

const RUNNING_ATTACKS: [(&str, &str); 2] = [("c", "e"), ("e", "a")];
const RUNNING_SUPPORTS: [(&str, &str); 8] =
    [("d", "c"), ("d", "e"), ("d", "b"), ("f", "c"), ("f", "e"), ("f", "b"), ("c", "b"), ("b", "a")];

/// The running-example topology with initial strengths for a..f.
fn running(tau: [f64; 6]) -> Qbag {
    let ids = ["a", "b", "c", "d", "e", "f"];
    let args: Vec<(&str, f64)> = ids.into_iter().zip(tau).collect();
    build(&args, &RUNNING_ATTACKS, &RUNNING_SUPPORTS)
}

fn fig6(preset: &str) -> [f64; 6] {
    match preset {
        "qe" => [0.3, 0.8, 0.1, 0.55, 0.45, 0.6],
        "dfquad" => [0.3, 0.8, 0.1, 0.8, 0.6, 0.8],
        "sd-dfquad" => [0.3, 0.8, 0.1, 0.25, 0.2, 0.2],
        "eb" => [0.3, 0.8, 0.9, 0.9, 0.9, 0.8],
        _ => [0.3, 0.1, 0.1, 0.5, 0.1, 0.5],
    }
}

fn fig6_shapley(preset: &str) -> [f64; 6] {
    match preset {
        "qe" => [0.3, 0.8, 0.2, 0.7, 0.6, 0.7],
        "dfquad" => [0.3, 0.8, 0.2, 0.5, 0.4, 0.5],
        "sd-dfquad" => [0.3, 0.1, 0.9, 0.3, 0.9, 0.3],
        "eb" => [0.3, 0.6, 0.8, 0.8, 0.5, 0.7],
        _ => [0.3, 0.6, 0.2, 0.8, 0.4, 0.7],
    }
}

/// Shared topology of the Shapley counterfactuality examples (QE, DFQuAD,
/// SD-DFQuAD variants differ only in τ).
fn shapley_cf(d: f64, c: f64) -> Qbag {
    build(
        &[("f", 1.0), ("e", 0.495), ("d", d), ("b", 0.15), ("c", c), ("a", 0.1)],
        &[("b", "a"), ("c", "a")],
        &[("f", "e"), ("e", "b"), ("e", "d"), ("e", "c"), ("d", "a")],
    )
}

/// Shared topology of the Euler-based intrinsic / Shapley examples.
fn euler_cf(tau: [(&'static str, f64); 7]) -> Qbag {
    build(&tau, &[("b", "a"), ("c", "a"), ("g", "a")], &[("f", "e"), ("e", "b"), ("e", "d"), ("e", "c"), ("d", "a")])
}

fn chain(first_is_support: bool) -> Qbag {
    let args = [("c", 1.0), ("b", 0.0), ("a", 0.5)];
    if first_is_support {
        build(&args, &[("b", "a")], &[("c", "b")])
    } else {
        build(&args, &[("c", "b"), ("b", "a")], &[])
    }
}

const IDS: [&str; 29] = [
    "fig1a", "fig3", "fig4", "fig5", "fig7", "fig8", "table4",
    "fig6-qe", "fig6-dfquad", "fig6-sd-dfquad", "fig6-eb", "fig6-ebt",
    "fig6-shapley-qe", "fig6-shapley-dfquad", "fig6-shapley-sd-dfquad", "fig6-shapley-eb", "fig6-shapley-ebt",
    "figA1", "figA2", "figA3", "figA4", "figA5", "figA6", "figA7", "figA8", "figA9", "figA10", "figA11", "figA12",
];

/// Every fixture id, in a stable order.
pub fn ids() -> &'static [&'static str] {
    &IDS
}

/// Looks a fixture up by id.
pub fn fixture(id: &str) -> Option<Fixture> {
    let f = |id: &'static str, title: &'static str, graph: Qbag, topic: &'static str, labels: &[(&'static str, f64)]| Fixture {
        id,
        title,
        graph,
        topic,
        labels: labels.to_vec(),
    };
    let id = *IDS.iter().find(|k| **k == id)?;
    Some(match id {
        "fig1a" => f(
            id,
            "running example (QE)",
            running([0.3, 0.8, 0.1, 0.55, 0.45, 0.6]),
            "a",
            &[("a", 0.3875), ("b", 0.9513), ("c", 0.6125), ("e", 0.5733)],
        ),
        "fig3" => f(
            id,
            "two full-strength attackers",
            build(&[("a", 0.5), ("b", 1.0), ("c", 1.0)], &[("b", "a"), ("c", "a")], &[]),
            "a",
            &[],
        ),
        "fig4" => f(
            id,
            "attack chain below an attacker",
            build(&[("a", 0.5), ("b", 0.5), ("c", 0.5), ("d", 0.5)], &[("b", "a"), ("c", "a"), ("d", "c")], &[]),
            "a",
            &[],
        ),
        "fig5" => f(
            id,
            "weak quantitative existence fails for gradients",
            build(&[("a", 0.5), ("b", 1.0), ("c", 1.0)], &[("c", "a"), ("b", "a")], &[]),
            "a",
            &[],
        ),
        "fig7" => f(
            id,
            "attacker and supporter of equal strength",
            build(&[("a", 0.5), ("b", 1.0), ("c", 1.0)], &[("b", "a")], &[("c", "a")]),
            "a",
            &[],
        ),
        "fig8" => f(
            id,
            "review text layer (DFQuAD)",
            build(
                &[
                    ("t1", 0.6),
                    ("t2", 0.7),
                    ("t3", 0.5),
                    ("NOV", 0.5),
                    ("APR", 0.5),
                    ("CMP", 0.5),
                    ("IMP", 0.5),
                    ("CLA", 0.0),
                    ("EMP", 0.0),
                    ("SUB", 0.0),
                ],
                &[("t2", "CMP"), ("t3", "IMP")],
                &[("t1", "NOV"), ("t1", "APR")],
            ),
            "NOV",
            &[("NOV", 0.8), ("APR", 0.8), ("CMP", 0.15), ("IMP", 0.25)],
        ),
        "table4" => f(
            id,
            "review decision layer (DFQuAD)",
            build(
                &[("D", 0.5), ("NOV", 0.6), ("APR", 0.6), ("CMP", 0.7), ("IMP", 0.5)],
                &[("CMP", "D"), ("IMP", "D")],
                &[("NOV", "D"), ("APR", "D")],
            ),
            "D",
            &[("D", 0.495)],
        ),
        "fig6-qe" | "fig6-dfquad" | "fig6-sd-dfquad" | "fig6-eb" | "fig6-ebt" => {
            f(id, "removal consistency counterexample", running(fig6(&id[5..])), "a", &[])
        }
        "fig6-shapley-qe" | "fig6-shapley-dfquad" | "fig6-shapley-sd-dfquad" | "fig6-shapley-eb" | "fig6-shapley-ebt" => {
            f(id, "Shapley consistency counterexample", running(fig6_shapley(&id[13..])), "a", &[])
        }
        "figA1" => f(
            id,
            "intrinsic removal vs removal (QE, DFQuAD, SD-DFQuAD)",
            build(&[("a", 1.0), ("b", 0.0), ("c", 1.0)], &[("b", "a")], &[("c", "b")]),
            "a",
            &[],
        ),
        "figA2" => f(
            id,
            "intrinsic removal vs removal (EB)",
            euler_cf([("f", 1.0), ("e", 0.02), ("b", 0.1), ("d", 0.51), ("c", 0.1), ("g", 0.27), ("a", 0.5)]),
            "a",
            &[("a", 0.507), ("b", 0.104), ("d", 0.519), ("e", 0.005)],
        ),
        "figA3" => f(
            id,
            "intrinsic removal vs removal (EBT)",
            build(&[("a", 0.7), ("b", 0.1), ("c", 1.0), ("d", 0.1)], &[("b", "a"), ("d", "a")], &[("c", "b")]),
            "a",
            &[("b", 0.221)],
        ),
        "figA4" => f(id, "Shapley vs removal (QE)", shapley_cf(0.15, 0.15), "a", &[]),
        "figA5" => f(id, "Shapley vs removal (DFQuAD)", shapley_cf(0.3, 0.17), "a", &[]),
        "figA6" => f(id, "Shapley vs removal (SD-DFQuAD)", shapley_cf(0.2, 0.15), "a", &[]),
        "figA7" => f(
            id,
            "Shapley vs removal (EB)",
            euler_cf([("f", 1.0), ("e", 0.025), ("d", 0.54), ("b", 0.11), ("c", 0.1), ("g", 0.4), ("a", 0.3)]),
            "a",
            &[("c", 0.1055394)],
        ),
        "figA8" => f(
            id,
            "Shapley vs removal (EBT)",
            build(
                &[("f", 1.0), ("e", 0.25), ("d", 0.51), ("b", 0.4), ("c", 0.55), ("g", 0.429), ("a", 0.3)],
                &[("f", "e"), ("b", "a"), ("c", "d"), ("g", "a"), ("g", "d")],
                &[("e", "b"), ("e", "d"), ("d", "a")],
            ),
            "a",
            &[("e", 0.14146), ("b", 0.424965), ("d", 0.447405), ("a", 0.302988)],
        ),
        "figA9" => f(
            id,
            "gradient vs removal (QE)",
            build(
                &[("d", 0.4), ("b", 0.4), ("c", 0.4), ("a", 0.2), ("e", 0.1)],
                &[("b", "a"), ("e", "a")],
                &[("d", "b"), ("d", "c"), ("c", "a")],
            ),
            "a",
            &[],
        ),
        "figA10" => f(
            id,
            "gradient vs removal (DFQuAD)",
            build(
                &[("e", 0.5), ("b", 0.0), ("d", 0.0), ("c", 0.0), ("a", 0.5)],
                &[("d", "a"), ("c", "a")],
                &[("e", "b"), ("e", "d"), ("e", "c"), ("b", "a")],
            ),
            "a",
            &[("a", 0.375)],
        ),
        "figA11" => f(id, "gradient vs removal (SD-DFQuAD)", chain(false), "a", &[]),
        "figA12" => f(id, "gradient vs removal (EB, EBT)", chain(true), "a", &[]),
        _ => return None,
    })
}

/// All fixtures, in [`ids`] order.
pub fn all() -> Vec<Fixture> {
    ids().iter().filter_map(|id| fixture(id)).collect()
}
