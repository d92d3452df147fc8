//! Published numeric and qualitative claims about the fixtures, and a
//! checker that recomputes each one from scratch.
//!
//! Tolerances are half a unit in the last printed digit unless noted.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::contribution::{ContributionConfig, GradientAggregator, Partition, Scenario, SetContribution, SetFunction, pctrb_shapley, sign};
use crate::error::{Error, Result};
use crate::fixtures::fixture;
use crate::lab::{CheckOptions, PrincipleId, check};
use crate::semantics::{Preset, evaluate};

/// Slack for values that sit exactly half a unit from their printed form.
const EDGE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Quantity {
    /// Final strength of an argument.
    Strength { semantics: Preset, argument: &'static str },
    /// A set contribution to the fixture's topic.
    Contribution { function: SetFunction, semantics: Preset, members: &'static [&'static str] },
    /// Partition Shapley value of `members` with `partition` as players.
    PartitionShapley { semantics: Preset, members: &'static [&'static str], partition: &'static [&'static [&'static str]] },
    /// Sum of a set contribution over the blocks of a partition.
    Sum { function: SetFunction, semantics: Preset, blocks: &'static [&'static [&'static str]] },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Expectation {
    /// |computed − value| ≤ tol.
    Approx { value: f64, tol: f64 },
    /// Strict sign (−1, 0, 1) at the default tolerance.
    Sign(i8),
    /// The checker finds a violation on the fixture's topic.
    Violation { principle: PrincipleId, function: SetFunction, semantics: Preset },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Claim {
    pub fixture: &'static str,
    pub label: &'static str,
    /// Unused for [`Expectation::Violation`].
    pub quantity: Option<Quantity>,
    pub expectation: Expectation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimOutcome {
    pub claim: Claim,
    pub reproduced: bool,
    pub computed: Option<f64>,
    /// Distance from the claimed value (or witness margin for violations).
    pub margin: f64,
    pub detail: String,
}

const GRAD: SetFunction = SetFunction::Gradient(GradientAggregator::Max);

const fn value(fixture: &'static str, label: &'static str, q: Quantity, value: f64, tol: f64) -> Claim {
    Claim { fixture, label, quantity: Some(q), expectation: Expectation::Approx { value, tol } }
}

const fn signed(fixture: &'static str, label: &'static str, q: Quantity, s: i8) -> Claim {
    Claim { fixture, label, quantity: Some(q), expectation: Expectation::Sign(s) }
}

const fn violation(fixture: &'static str, label: &'static str, principle: PrincipleId, function: SetFunction, semantics: Preset) -> Claim {
    Claim { fixture, label, quantity: None, expectation: Expectation::Violation { principle, function, semantics } }
}

const fn strength(semantics: Preset, argument: &'static str) -> Quantity {
    Quantity::Strength { semantics, argument }
}

const fn ctrb(function: SetFunction, semantics: Preset, members: &'static [&'static str]) -> Quantity {
    Quantity::Contribution { function, semantics, members }
}

const REMOVAL: SetFunction = SetFunction::Removal;
const INTRINSIC: SetFunction = SetFunction::IntrinsicRemoval;
const SHAPLEY: SetFunction = SetFunction::Shapley;
use Preset::{DfQuad, Eb, Ebt, Qe, SdDfQuad};

const TABLE_BLOCKS: &[&[&str]] = &[&["NOV", "IMP"], &["CMP"], &["APR"]];
const T: f64 = 5e-4 + EDGE;

static CLAIMS: &[Claim] = &[
    // running example
    value("fig1a", "σ(a) under QE", strength(Qe, "a"), 0.3875, 5e-5),
    value("fig1a", "σ(b) under QE", strength(Qe, "b"), 0.9513, 5e-5),
    value("fig1a", "σ(c) under QE", strength(Qe, "c"), 0.6125, 5e-5),
    value("fig1a", "σ(e) under QE", strength(Qe, "e"), 0.5733, 5e-5),
    value("fig1a", "removal of {d}", ctrb(REMOVAL, Qe, &["d"]), -0.01253, 5e-6),
    value("fig1a", "removal of {f}", ctrb(REMOVAL, Qe, &["f"]), -0.01101, 5e-6),
    value("fig1a", "removal of {d,f}", ctrb(REMOVAL, Qe, &["d", "f"]), 0.00861, 5e-6),
    // two full-strength attackers
    // QE: 0.5 − 0.5·h(2) with h(2) = 4/5; SD-DFQuAD: 0.5 − 0.5·h(1) with h(1) = 1/2
    value("fig3", "σ(a) under QE", strength(Qe, "a"), 0.1, 1e-9),
    value("fig3", "σ(a) under DFQuAD", strength(DfQuad, "a"), 0.0, 1e-12),
    value("fig3", "σ(a) under SD-DFQuAD", strength(SdDfQuad, "a"), 0.25, 1e-9),
    value("fig3", "σ(a) under EB", strength(Eb, "a"), 0.29753, 5e-6),
    value("fig3", "σ(a) under EBT", strength(Ebt, "a"), 0.36652, 5e-6),
    value("fig3", "gradient {b} under DFQuAD", ctrb(GRAD, DfQuad, &["b"]), 0.0, 1e-9),
    value("fig3", "gradient {c} under DFQuAD", ctrb(GRAD, DfQuad, &["c"]), 0.0, 1e-9),
    value("fig3", "gradient {b} under SD-DFQuAD", ctrb(GRAD, SdDfQuad, &["b"]), 0.0, 1e-9),
    value("fig3", "gradient {c} under SD-DFQuAD", ctrb(GRAD, SdDfQuad, &["c"]), 0.0, 1e-9),
    value("fig3", "gradient {b} under EBT", ctrb(GRAD, Ebt, &["b"]), 0.0, 1e-9),
    value("fig3", "gradient {c} under EBT", ctrb(GRAD, Ebt, &["c"]), 0.0, 1e-9),
    violation("fig3", "gradient existence fails under DFQuAD", PrincipleId::ContributionExistence, GRAD, DfQuad),
    violation("fig3", "gradient existence fails under SD-DFQuAD", PrincipleId::ContributionExistence, GRAD, SdDfQuad),
    violation("fig3", "gradient existence fails under EBT", PrincipleId::ContributionExistence, GRAD, Ebt),
    violation("fig3", "removal quantitative existence fails", PrincipleId::QuantitativeContributionExistence, REMOVAL, Qe),
    violation("fig4", "Shapley quantitative existence fails", PrincipleId::QuantitativeContributionExistence, SHAPLEY, Qe),
    violation("fig5", "gradient weak quantitative existence fails", PrincipleId::WeakQuantitativeContributionExistence, GRAD, Qe),
    violation("fig7", "removal monotonicity fails", PrincipleId::Monotonicity, REMOVAL, Qe),
    violation("fig7", "intrinsic monotonicity fails", PrincipleId::Monotonicity, INTRINSIC, Qe),
    violation("fig7", "Shapley monotonicity fails", PrincipleId::Monotonicity, SHAPLEY, Qe),
    violation("fig6-qe", "removal consistency fails under QE", PrincipleId::Consistency, REMOVAL, Qe),
    violation("fig6-dfquad", "removal consistency fails under DFQuAD", PrincipleId::Consistency, REMOVAL, DfQuad),
    violation("fig6-sd-dfquad", "removal consistency fails under SD-DFQuAD", PrincipleId::Consistency, REMOVAL, SdDfQuad),
    violation("fig6-eb", "removal consistency fails under EB", PrincipleId::Consistency, REMOVAL, Eb),
    violation("fig6-ebt", "removal consistency fails under EBT", PrincipleId::Consistency, REMOVAL, Ebt),
    violation("fig6-shapley-qe", "Shapley consistency fails under QE", PrincipleId::Consistency, SHAPLEY, Qe),
    violation("fig6-shapley-dfquad", "Shapley consistency fails under DFQuAD", PrincipleId::Consistency, SHAPLEY, DfQuad),
    violation("fig6-shapley-sd-dfquad", "Shapley consistency fails under SD-DFQuAD", PrincipleId::Consistency, SHAPLEY, SdDfQuad),
    violation("fig6-shapley-eb", "Shapley consistency fails under EB", PrincipleId::Consistency, SHAPLEY, Eb),
    violation("fig6-shapley-ebt", "Shapley consistency fails under EBT", PrincipleId::Consistency, SHAPLEY, Ebt),
    // review pipeline
    value("fig8", "σ(NOV)", strength(DfQuad, "NOV"), 0.8, 1e-12),
    value("fig8", "σ(APR)", strength(DfQuad, "APR"), 0.8, 1e-12),
    value("fig8", "σ(CMP)", strength(DfQuad, "CMP"), 0.15, 1e-12),
    value("fig8", "σ(IMP)", strength(DfQuad, "IMP"), 0.25, 1e-12),
    value("table4", "σ(D)", strength(DfQuad, "D"), 0.495, T),
    value("table4", "removal {NOV,IMP}", ctrb(REMOVAL, DfQuad, &["NOV", "IMP"]), 0.045, T),
    value("table4", "removal NOV", ctrb(REMOVAL, DfQuad, &["NOV"]), 0.120, T),
    value("table4", "removal IMP", ctrb(REMOVAL, DfQuad, &["IMP"]), -0.075, T),
    value("table4", "removal CMP", ctrb(REMOVAL, DfQuad, &["CMP"]), -0.175, T),
    value("table4", "removal APR", ctrb(REMOVAL, DfQuad, &["APR"]), 0.120, T),
    value("table4", "intrinsic {NOV,IMP}", ctrb(INTRINSIC, DfQuad, &["NOV", "IMP"]), 0.045, T),
    value("table4", "Shapley {NOV,IMP}", ctrb(SHAPLEY, DfQuad, &["NOV", "IMP"]), 0.048, T),
    value("table4", "Shapley NOV", ctrb(SHAPLEY, DfQuad, &["NOV"]), 0.210, T),
    value("table4", "Shapley IMP", ctrb(SHAPLEY, DfQuad, &["IMP"]), -0.163, T),
    value("table4", "Shapley CMP", ctrb(SHAPLEY, DfQuad, &["CMP"]), -0.263, T),
    value("table4", "Shapley APR", ctrb(SHAPLEY, DfQuad, &["APR"]), 0.210, T),
    value(
        "table4",
        "partition Shapley {NOV,IMP}",
        Quantity::PartitionShapley { semantics: DfQuad, members: &["NOV", "IMP"], partition: TABLE_BLOCKS },
        0.048,
        T,
    ),
    value("table4", "gradient {NOV,IMP}", ctrb(GRAD, DfQuad, &["NOV", "IMP"]), 0.200, T),
    value("table4", "gradient NOV", ctrb(GRAD, DfQuad, &["NOV"]), 0.200, T),
    value("table4", "gradient IMP", ctrb(GRAD, DfQuad, &["IMP"]), -0.150, T),
    value("table4", "gradient CMP", ctrb(GRAD, DfQuad, &["CMP"]), -0.250, T),
    value("table4", "gradient APR", ctrb(GRAD, DfQuad, &["APR"]), 0.200, T),
    value("table4", "removal sum", Quantity::Sum { function: REMOVAL, semantics: DfQuad, blocks: TABLE_BLOCKS }, -0.010, T),
    value("table4", "Shapley sum", Quantity::Sum { function: SHAPLEY, semantics: DfQuad, blocks: TABLE_BLOCKS }, -0.005, T),
    value("table4", "gradient sum", Quantity::Sum { function: GRAD, semantics: DfQuad, blocks: TABLE_BLOCKS }, 0.150, T),
    // intrinsic removal vs removal
    value("figA1", "intrinsic {b} under QE", ctrb(INTRINSIC, Qe, &["b"]), 0.0, 1e-9),
    signed("figA1", "removing b raises σ(a) under QE", ctrb(REMOVAL, Qe, &["b"]), -1),
    value("figA1", "intrinsic {b} under DFQuAD", ctrb(INTRINSIC, DfQuad, &["b"]), 0.0, 1e-9),
    signed("figA1", "removing b raises σ(a) under DFQuAD", ctrb(REMOVAL, DfQuad, &["b"]), -1),
    value("figA1", "intrinsic {b} under SD-DFQuAD", ctrb(INTRINSIC, SdDfQuad, &["b"]), 0.0, 1e-9),
    signed("figA1", "removing b raises σ(a) under SD-DFQuAD", ctrb(REMOVAL, SdDfQuad, &["b"]), -1),
    value("figA2", "intrinsic {e} under EB", ctrb(INTRINSIC, Eb, &["e"]), 3.5431e-6, 1e-9),
    violation("figA2", "intrinsic counterfactuality fails under EB", PrincipleId::Counterfactuality, INTRINSIC, Eb),
    violation("figA2", "intrinsic quantitative counterfactuality fails under EB", PrincipleId::QuantitativeCounterfactuality, INTRINSIC, Eb),
    value("figA2", "label σ(a)", strength(Eb, "a"), 0.507, 5e-4),
    value("figA2", "label σ(b)", strength(Eb, "b"), 0.104, 5e-4),
    value("figA2", "label σ(d)", strength(Eb, "d"), 0.519, 5e-4),
    value("figA2", "label σ(e)", strength(Eb, "e"), 0.005, 5e-4),
    value("figA3", "intrinsic {b} under EBT", ctrb(INTRINSIC, Ebt, &["b"]), 0.0, 1e-9),
    violation("figA3", "intrinsic counterfactuality fails under EBT", PrincipleId::Counterfactuality, INTRINSIC, Ebt),
    value("figA3", "label σ(b)", strength(Ebt, "b"), 0.221, 1e-3),
    // Shapley vs removal
    value("figA4", "Shapley {e} under QE", ctrb(SHAPLEY, Qe, &["e"]), 4.9326e-5, 1e-8),
    value("figA4", "removal {e} under QE", ctrb(REMOVAL, Qe, &["e"]), -0.0149, 5e-4),
    value("figA5", "Shapley {e} under DFQuAD", ctrb(SHAPLEY, DfQuad, &["e"]), 0.0027, 5e-5),
    value("figA5", "removal {e} under DFQuAD", ctrb(REMOVAL, DfQuad, &["e"]), -0.0049, 5e-5 + EDGE),
    value("figA6", "Shapley {e} under SD-DFQuAD", ctrb(SHAPLEY, SdDfQuad, &["e"]), 0.0022, 5e-5),
    signed("figA6", "Shapley {e} under SD-DFQuAD is positive", ctrb(SHAPLEY, SdDfQuad, &["e"]), 1),
    value("figA6", "removal {e} under SD-DFQuAD", ctrb(REMOVAL, SdDfQuad, &["e"]), -0.0109, 5e-5),
    value("figA7", "Shapley {f} under EB", ctrb(SHAPLEY, Eb, &["f"]), 3.4380e-6, 5e-11),
    value("figA7", "removal {f} under EB", ctrb(REMOVAL, Eb, &["f"]), -7.8369e-5, 5e-10),
    value("figA7", "label σ(c)", strength(Eb, "c"), 0.1055394, 5e-8),
    value("figA8", "Shapley {f} under EBT", ctrb(SHAPLEY, Ebt, &["f"]), -2.7043e-5, 5e-10),
    value("figA8", "removal {f} under EBT", ctrb(REMOVAL, Ebt, &["f"]), 7.3331e-5, 5e-10),
    value("figA8", "label σ(e)", strength(Ebt, "e"), 0.14146, 5e-6),
    value("figA8", "label σ(b)", strength(Ebt, "b"), 0.424965, 5e-7),
    value("figA8", "label σ(d)", strength(Ebt, "d"), 0.447405, 5e-7),
    value("figA8", "label σ(a)", strength(Ebt, "a"), 0.302988, 5e-7),
    // gradient vs removal
    value("figA9", "gradient {d} under QE", ctrb(GRAD, Qe, &["d"]), 0.0, 1e-9),
    signed("figA9", "removing d raises σ(a) under QE", ctrb(REMOVAL, Qe, &["d"]), -1),
    value("figA10", "gradient {e} under DFQuAD", ctrb(GRAD, DfQuad, &["e"]), 7.4506e-9, 5e-14),
    value("figA10", "removal {e} under DFQuAD", ctrb(REMOVAL, DfQuad, &["e"]), -0.125, 1e-9),
    value("figA11", "gradient {b} under SD-DFQuAD", ctrb(GRAD, SdDfQuad, &["b"]), -0.25, 1e-9),
    value("figA11", "removal {b} under SD-DFQuAD", ctrb(REMOVAL, SdDfQuad, &["b"]), 0.0, 1e-9),
    value("figA12", "gradient {b} under EB", ctrb(GRAD, Eb, &["b"]), -0.4530, 5e-4),
    value("figA12", "removal {b} under EB", ctrb(REMOVAL, Eb, &["b"]), 0.0, 1e-9),
    value("figA12", "gradient {b} under EBT", ctrb(GRAD, Ebt, &["b"]), -0.4530, 5e-4),
    value("figA12", "removal {b} under EBT", ctrb(REMOVAL, Ebt, &["b"]), 0.0, 1e-9),
];

/// Every claim, grouped by fixture.
pub fn claims() -> &'static [Claim] {
    CLAIMS
}

pub fn claims_for(fixture_id: &str) -> Vec<&'static Claim> {
    CLAIMS.iter().filter(|c| c.fixture == fixture_id).collect()
}

fn compute(q: &Quantity, fixture_id: &str) -> Result<f64> {
    let fx = fixture(fixture_id).ok_or_else(|| Error::UnknownArgument(fixture_id.into()))?;
    let g = &fx.graph;
    let cfg = ContributionConfig::default();
    match *q {
        Quantity::Strength { semantics, argument } => {
            evaluate(g, &semantics.spec())?.get(argument).ok_or_else(|| Error::UnknownArgument(argument.into()))
        }
        Quantity::Contribution { function, semantics, members } => {
            let mut sc = Scenario::new(g, &semantics.spec(), fx.topic, cfg)?;
            function.value(&mut sc, &g.mask(members.iter().copied())?)
        }
        Quantity::PartitionShapley { semantics, members, partition } => {
            let x = crate::contribution::SetContributor::new(members.iter().copied(), fx.topic);
            let p = Partition::new(partition.iter().map(|b| b.iter().copied()));
            Ok(pctrb_shapley(g, &semantics.spec(), &x, &p, cfg)?.value)
        }
        Quantity::Sum { function, semantics, blocks } => {
            let mut sc = Scenario::new(g, &semantics.spec(), fx.topic, cfg)?;
            let mut s = 0.0;
            for b in blocks {
                s += function.value(&mut sc, &g.mask(b.iter().copied())?)?;
            }
            Ok(s)
        }
    }
}

/// Recomputes one claim.
pub fn check_claim(claim: &Claim) -> Result<ClaimOutcome> {
    let tol = crate::DEFAULT_TOLERANCE;
    let out = |reproduced, computed, margin, detail| ClaimOutcome { claim: *claim, reproduced, computed, margin, detail };
    match (claim.expectation, &claim.quantity) {
        (Expectation::Approx { value, tol }, Some(q)) => {
            let v = compute(q, claim.fixture)?;
            let d = (v - value).abs();
            Ok(out(d <= tol, Some(v), d, format!("computed {v:.10e}, claimed {value:e} ± {tol:e}")))
        }
        (Expectation::Sign(s), Some(q)) => {
            let v = compute(q, claim.fixture)?;
            Ok(out(sign(v, tol) == s, Some(v), v.abs(), format!("computed {v:.10e}, claimed sign {s}")))
        }
        (Expectation::Violation { principle, function, semantics }, _) => {
            let fx = fixture(claim.fixture).ok_or_else(|| Error::UnknownArgument(claim.fixture.into()))?;
            let spec = semantics.spec();
            let mut sc = Scenario::new(&fx.graph, &spec, fx.topic, ContributionConfig::default())?;
            let v = check(principle, &function, &mut sc, &CheckOptions::default())?;
            let margin = v.witness.as_ref().map_or(0.0, |w| w.margin);
            Ok(out(v.is_violated(), None, margin, format!("{principle} for {function} under {semantics}: {}", v.status)))
        }
        _ => Err(Error::InvalidConfig(format!("claim `{}` has no quantity", claim.label))),
    }
}
