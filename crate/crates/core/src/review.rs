//! Two-layer review pipeline.
//!
//! Text arguments attack or support aspect arguments; the text layer is
//! evaluated under DFQuAD. Each aspect that received at least one text edge
//! becomes a source argument of the decision layer: σ > 0.5 supports the
//! decision, σ < 0.5 attacks it, with initial strength 2|σ − 0.5|. An aspect
//! that ends exactly at 0.5 carries no polarity and is left out.

use alloc::string::String;
use alloc::vec::Vec;

use crate::contribution::{ContributionConfig, GradientAggregator, Scenario, set_label};
use crate::error::{Error, Result};
use crate::graph::{ArgumentId, Qbag, QbagDraft};
use crate::semantics::{SemanticsSpec, StrengthAssignment, evaluate};

/// Where an aspect lands in the decision layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AspectPolarity {
    Supports(f64),
    Attacks(f64),
    Excluded,
}

/// Maps a final aspect strength to its decision-layer role.
pub fn normalize_aspect(sigma: f64) -> AspectPolarity {
    let w = 2.0 * (sigma - 0.5).abs();
    if sigma > 0.5 {
        AspectPolarity::Supports(w)
    } else if sigma < 0.5 {
        AspectPolarity::Attacks(w)
    } else {
        AspectPolarity::Excluded
    }
}

/// Final strengths of the text layer under DFQuAD.
pub fn evaluate_text_layer(text: &Qbag) -> Result<StrengthAssignment> {
    evaluate(text, &SemanticsSpec::dfquad())
}

#[derive(Clone, Debug, PartialEq)]
pub struct AspectOutcome {
    pub id: ArgumentId,
    pub sigma: f64,
    /// `false` when the aspect had no incoming text edge.
    pub addressed: bool,
    pub polarity: AspectPolarity,
}

/// Builds the decision layer: `decision` with initial strength `base` plus
/// every addressed, non-neutral aspect.
pub fn build_decision_graph(text: &Qbag, aspects: &[&str], decision: &str, base: f64) -> Result<(Qbag, Vec<AspectOutcome>)> {
    let sigma = evaluate_text_layer(text)?;
    let mut outcomes = Vec::with_capacity(aspects.len());
    let mut draft = QbagDraft::new().argument(decision, base);
    for &a in aspects {
        let i = text.require(a)?;
        if a == decision {
            return Err(Error::InvalidConfig(alloc::format!("aspect `{a}` clashes with the decision id")));
        }
        let s = sigma.values()[i];
        let addressed = !text.parents(i).is_empty();
        let polarity = if addressed { normalize_aspect(s) } else { AspectPolarity::Excluded };
        match polarity {
            AspectPolarity::Supports(w) => draft = draft.argument(a, w).support(a, decision),
            AspectPolarity::Attacks(w) => draft = draft.argument(a, w).attack(a, decision),
            AspectPolarity::Excluded => {}
        }
        outcomes.push(AspectOutcome { id: ArgumentId::raw(a), sigma: s, addressed, polarity });
    }
    Ok((draft.build()?, outcomes))
}

/// One row of a contribution report.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub label: String,
    pub members: Vec<ArgumentId>,
    pub removal: f64,
    pub intrinsic: f64,
    pub shapley: f64,
    /// Shapley value with the report's partition as players; only for
    /// rows that are partition blocks.
    pub partition_shapley: Option<f64>,
    pub gradient: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContributionReport {
    pub topic: ArgumentId,
    pub sigma: f64,
    pub tau: f64,
    pub rows: Vec<ReportRow>,
    pub partition: Vec<Vec<ArgumentId>>,
    /// Column sums over the partition blocks.
    pub sum: ReportRow,
}

/// Contributions to `topic` of every group in `groups`, of every single
/// argument, and their sums over the partition formed by `groups` plus the
/// remaining arguments as singletons.
pub fn report_contributions(
    g: &Qbag,
    spec: &SemanticsSpec,
    topic: &str,
    groups: &[Vec<&str>],
    config: ContributionConfig,
) -> Result<ContributionReport> {
    let mut sc = Scenario::new(g, spec, topic, config)?;
    let t = sc.topic();
    let mut grouped = sc.empty_set();
    let mut blocks = Vec::new();
    let mut rows_of = Vec::new();
    for grp in groups {
        let m = g.mask(grp.iter().copied())?;
        if m.contains(t) {
            return Err(Error::TopicInContributor(topic.into()));
        }
        if m.is_clear() {
            return Err(Error::EmptyContributor);
        }
        if !m.is_disjoint(&grouped) {
            return Err(Error::InvalidPartition("report groups overlap".into()));
        }
        grouped.union_with(&m);
        blocks.push(m.clone());
        rows_of.push(m);
    }
    // singles: group members in listed order, then the rest by id
    for grp in groups {
        for x in grp {
            rows_of.push(g.mask([*x])?);
        }
    }
    for i in sc.others().ones() {
        if !grouped.contains(i) {
            let mut m = sc.empty_set();
            m.insert(i);
            blocks.push(m.clone());
            rows_of.push(m);
        }
    }

    let row = |sc: &mut Scenario<'_>, m: &fixedbitset::FixedBitSet| -> Result<ReportRow> {
        let members: Vec<ArgumentId> = m.ones().map(|i| g.ids()[i].clone()).collect();
        Ok(ReportRow {
            label: if members.len() == 1 { String::from(members[0].as_str()) } else { set_label(&members) },
            removal: sc.removal(m)?,
            intrinsic: sc.intrinsic_removal(m)?,
            shapley: sc.shapley(m)?.0,
            partition_shapley: if blocks.contains(m) { Some(sc.partition_shapley(m, &blocks)?.0) } else { None },
            gradient: sc.gradient(m, GradientAggregator::Max)?,
            members,
        })
    };
    let mut rows = Vec::with_capacity(rows_of.len());
    for m in &rows_of {
        rows.push(row(&mut sc, m)?);
    }
    let mut sum = ReportRow {
        label: String::from("sum"),
        members: Vec::new(),
        removal: 0.0,
        intrinsic: 0.0,
        shapley: 0.0,
        partition_shapley: Some(0.0),
        gradient: 0.0,
    };
    for b in &blocks {
        let r = row(&mut sc, b)?;
        sum.removal += r.removal;
        sum.intrinsic += r.intrinsic;
        sum.shapley += r.shapley;
        sum.partition_shapley = sum.partition_shapley.zip(r.partition_shapley).map(|(a, b)| a + b);
        sum.gradient += r.gradient;
    }
    Ok(ContributionReport {
        topic: g.ids()[t].clone(),
        sigma: sc.sigma()?,
        tau: g.tau()[t],
        rows,
        partition: blocks.iter().map(|b| b.ones().map(|i| g.ids()[i].clone()).collect()).collect(),
        sum,
    })
}

/// Everything the pipeline produces.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineResult {
    pub text_strengths: StrengthAssignment,
    pub aspects: Vec<AspectOutcome>,
    pub decision_graph: Qbag,
    pub report: ContributionReport,
}

/// Text layer → aspect normalization → decision layer (DFQuAD) →
/// contribution report for the decision.
pub fn run_pipeline(text: &Qbag, aspects: &[&str], decision: &str, base: f64, groups: &[Vec<&str>]) -> Result<PipelineResult> {
    let text_strengths = evaluate_text_layer(text)?;
    let (decision_graph, aspects) = build_decision_graph(text, aspects, decision, base)?;
    let report = report_contributions(&decision_graph, &SemanticsSpec::dfquad(), decision, groups, ContributionConfig::default())?;
    Ok(PipelineResult { text_strengths, aspects, decision_graph, report })
}
