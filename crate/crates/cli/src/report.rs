//! Serializable views of core results, plus the human-readable renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use qbag_core::claims::ClaimOutcome;
use qbag_core::lab::{CellStatus, MatrixCell, MatrixReport};
use qbag_core::review::{AspectPolarity, ContributionReport, PipelineResult, ReportRow};
use qbag_core::{ArgumentId, Preset, PrincipleId, PrincipleVerdict, Qbag, SetFunction, StrengthAssignment, Witness};
use serde::Serialize;

use crate::format::GraphFile;

fn ids(v: &[ArgumentId]) -> Vec<String> {
    v.iter().map(|i| i.as_str().to_string()).collect()
}

/// Two decimals, as next to the nodes of a figure.
pub fn display2(v: f64) -> String {
    format!("{v:.2}")
}

/// Three decimals, or scientific notation for values that would print as 0.
pub fn display3(v: f64) -> String {
    if v == 0.0 || v.abs() >= 5e-4 { format!("{v:.3}") } else { format!("{v:.4e}") }
}

#[derive(Debug, Serialize)]
pub struct StrengthRow {
    pub id: String,
    pub initial_strength: f64,
    pub final_strength: f64,
    pub display: String,
}

#[derive(Debug, Serialize)]
pub struct EvalOutput {
    pub semantics: String,
    pub arguments: Vec<StrengthRow>,
}

impl EvalOutput {
    pub fn new(g: &Qbag, semantics: String, sigma: &StrengthAssignment) -> Self {
        let arguments = sigma
            .iter()
            .map(|(id, s)| {
                let tau = g.initial_strength(id.as_str()).unwrap_or(f64::NAN);
                StrengthRow { id: id.as_str().to_string(), initial_strength: tau, final_strength: s, display: display2(s) }
            })
            .collect();
        EvalOutput { semantics, arguments }
    }

    pub fn text(&self) -> String {
        let mut out = format!("semantics: {}\n", self.semantics);
        for r in &self.arguments {
            let _ = writeln!(out, "{}: {} → {}    (final {:?})", r.id, r.initial_strength, r.display, r.final_strength);
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ContribOutput {
    pub function: String,
    pub semantics: String,
    pub topic: String,
    pub set: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<String>>>,
    pub value: f64,
    pub evaluations: u64,
    pub standard_error: Option<f64>,
}

impl ContribOutput {
    pub fn text(&self) -> String {
        let mut out = format!(
            "{}({{{}}} → {}) under {} = {:?}\ndisplay: {}\nevaluations: {}\n",
            self.function,
            self.set.join(","),
            self.topic,
            self.semantics,
            self.value,
            display3(self.value),
            self.evaluations
        );
        if let Some(se) = self.standard_error {
            let _ = writeln!(out, "monte-carlo standard error: {se:e}");
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessOutput {
    pub graph: GraphFile,
    pub topic: Option<String>,
    pub sets: Vec<Vec<String>>,
    pub partition: Option<Vec<Vec<String>>>,
    pub values: BTreeMap<String, f64>,
    pub margin: f64,
    pub note: String,
}

impl From<&Witness> for WitnessOutput {
    fn from(w: &Witness) -> Self {
        WitnessOutput {
            graph: GraphFile::from_graph(&w.graph),
            topic: w.topic.as_ref().map(|t| t.as_str().to_string()),
            sets: w.sets.iter().map(|s| ids(s)).collect(),
            partition: w.partition.as_ref().map(|p| p.iter().map(|b| ids(b)).collect()),
            values: w.values.iter().cloned().collect(),
            margin: w.margin,
            note: w.note.clone(),
        }
    }
}

impl WitnessOutput {
    fn text(&self, indent: &str) -> String {
        let braces = |s: &Vec<String>| format!("{{{}}}", s.join(","));
        let mut out = String::new();
        if !self.sets.is_empty() {
            let sets: Vec<String> = self.sets.iter().map(braces).collect();
            let _ = writeln!(out, "{indent}witness: ({})", sets.join(","));
        }
        if let Some(p) = &self.partition {
            let blocks: Vec<String> = p.iter().map(braces).collect();
            let _ = writeln!(out, "{indent}partition: {}", blocks.join(" | "));
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "{indent}{k} = {v:?}");
        }
        let _ = writeln!(out, "{indent}margin = {:e}", self.margin);
        if !self.note.is_empty() {
            let _ = writeln!(out, "{indent}{}", self.note);
        }
        if self.graph.arguments.len() <= 8 {
            let args: Vec<String> =
                self.graph.arguments.iter().map(|a| format!("{}={}", a.id, a.initial_strength)).collect();
            let edges: Vec<String> = self
                .graph
                .attacks
                .iter()
                .map(|(x, y)| format!("{x}-{y}"))
                .chain(self.graph.supports.iter().map(|(x, y)| format!("{x}+{y}")))
                .collect();
            let _ = writeln!(out, "{indent}graph: {} ; {}", args.join(" "), edges.join(" "));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictOutput {
    pub principle: String,
    pub function: String,
    pub semantics: String,
    /// `None` for a random-corpus search, which covers every topic.
    pub topic: Option<String>,
    pub status: String,
    pub cases_examined: u64,
    pub violations_found: u64,
    pub witness: Option<WitnessOutput>,
}

impl VerdictOutput {
    pub fn new(v: &PrincipleVerdict, function: &SetFunction, semantics: &str, topic: Option<&str>) -> Self {
        VerdictOutput {
            principle: v.principle.name().to_string(),
            function: function.to_string(),
            semantics: semantics.to_string(),
            topic: topic.map(str::to_string),
            status: v.status.to_string(),
            cases_examined: v.cases_examined,
            violations_found: v.violations_found,
            witness: v.witness.as_ref().map(WitnessOutput::from),
        }
    }

    pub fn text(&self) -> String {
        let word = match self.status.as_str() {
            "satisfied-on-instance" => "satisfied",
            "violated-on-instance" => "violated",
            s => s,
        };
        let at = match &self.topic {
            Some(t) => format!("topic {t}"),
            None => "random corpus".to_string(),
        };
        let mut out =
            format!("{} [{}, {}] {at}: {word} ({} cases)\n", self.principle, self.function, self.semantics, self.cases_examined);
        if let Some(w) = &self.witness {
            out.push_str(&w.text("    "));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct PrinciplesOutput {
    pub verdicts: Vec<VerdictOutput>,
}

#[derive(Debug, Serialize)]
pub struct RowOutput {
    pub label: String,
    pub members: Vec<String>,
    pub removal: f64,
    pub intrinsic: f64,
    pub shapley: f64,
    pub partition_shapley: Option<f64>,
    pub gradient: f64,
}

impl From<&ReportRow> for RowOutput {
    fn from(r: &ReportRow) -> Self {
        RowOutput {
            label: r.label.clone(),
            members: ids(&r.members),
            removal: r.removal,
            intrinsic: r.intrinsic,
            shapley: r.shapley,
            partition_shapley: r.partition_shapley,
            gradient: r.gradient,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AspectOutput {
    pub id: String,
    pub sigma: f64,
    pub addressed: bool,
    /// `supports`, `attacks` or `excluded`.
    pub role: &'static str,
    pub weight: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct PipelineOutput {
    pub text_strengths: BTreeMap<String, f64>,
    pub aspects: Vec<AspectOutput>,
    pub decision_graph: GraphFile,
    pub decision: String,
    pub sigma: f64,
    pub tau: f64,
    pub partition: Vec<Vec<String>>,
    pub rows: Vec<RowOutput>,
    pub sum: RowOutput,
}

impl PipelineOutput {
    pub fn new(r: &PipelineResult) -> Self {
        let ContributionReport { topic, sigma, tau, rows, partition, sum } = &r.report;
        PipelineOutput {
            text_strengths: r.text_strengths.iter().map(|(k, v)| (k.as_str().to_string(), v)).collect(),
            aspects: r
                .aspects
                .iter()
                .map(|a| {
                    let (role, weight) = match a.polarity {
                        AspectPolarity::Supports(w) => ("supports", Some(w)),
                        AspectPolarity::Attacks(w) => ("attacks", Some(w)),
                        AspectPolarity::Excluded => ("excluded", None),
                    };
                    AspectOutput { id: a.id.as_str().to_string(), sigma: a.sigma, addressed: a.addressed, role, weight }
                })
                .collect(),
            decision_graph: GraphFile::from_graph(&r.decision_graph),
            decision: topic.as_str().to_string(),
            sigma: *sigma,
            tau: *tau,
            partition: partition.iter().map(|b| ids(b)).collect(),
            rows: rows.iter().map(RowOutput::from).collect(),
            sum: RowOutput::from(sum),
        }
    }

    /// Rows in the layout of a printed contribution table: 3-decimal
    /// display columns followed by full-precision ones.
    pub fn csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "label",
            "removal",
            "intrinsic",
            "shapley",
            "partition_shapley",
            "gradient",
            "removal_full",
            "intrinsic_full",
            "shapley_full",
            "partition_shapley_full",
            "gradient_full",
        ])?;
        for r in self.rows.iter().chain(std::iter::once(&self.sum)) {
            let ps3 = r.partition_shapley.map(|v| format!("{v:.3}")).unwrap_or_default();
            let psf = r.partition_shapley.map(|v| format!("{v:?}")).unwrap_or_default();
            w.write_record([
                r.label.clone(),
                format!("{:.3}", r.removal),
                format!("{:.3}", r.intrinsic),
                format!("{:.3}", r.shapley),
                ps3,
                format!("{:.3}", r.gradient),
                format!("{:?}", r.removal),
                format!("{:?}", r.intrinsic),
                format!("{:?}", r.shapley),
                psf,
                format!("{:?}", r.gradient),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[derive(Debug, Serialize)]
pub struct ClaimOutput {
    pub fixture: String,
    pub label: String,
    pub reproduced: bool,
    pub computed: Option<f64>,
    pub margin: f64,
    pub detail: String,
}

impl From<&ClaimOutcome> for ClaimOutput {
    fn from(o: &ClaimOutcome) -> Self {
        ClaimOutput {
            fixture: o.claim.fixture.to_string(),
            label: o.claim.label.to_string(),
            reproduced: o.reproduced,
            computed: o.computed,
            margin: o.margin,
            detail: o.detail.clone(),
        }
    }
}

impl ClaimOutput {
    pub fn text(&self) -> String {
        let verdict = if self.reproduced { "REPRODUCED" } else { "NOT REPRODUCED" };
        format!("[{}] {} — {verdict} (margin {:.3e}; {})\n", self.fixture, self.label, self.margin, self.detail)
    }
}

#[derive(Debug, Serialize)]
pub struct CellOutput {
    #[serde(rename = "fn")]
    pub function: String,
    pub semantics: String,
    pub principle: String,
    pub expected: &'static str,
    pub status: String,
    pub fixture: Option<String>,
    pub instances: u64,
    pub inconclusive: u64,
    pub witness: Option<WitnessOutput>,
}

impl From<&MatrixCell> for CellOutput {
    fn from(c: &MatrixCell) -> Self {
        CellOutput {
            function: c.function.to_string(),
            semantics: c.semantics.name().to_string(),
            principle: c.principle.name().to_string(),
            expected: if c.expected { "satisfied" } else { "violated" },
            status: c.status.to_string(),
            fixture: c.fixture.clone(),
            instances: c.instances,
            inconclusive: c.inconclusive,
            witness: c.witness.as_ref().map(WitnessOutput::from),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MatrixOutput {
    pub cells: Vec<CellOutput>,
    pub mismatches: usize,
}

impl MatrixOutput {
    pub fn new(m: &MatrixReport) -> Self {
        MatrixOutput { cells: m.cells.iter().map(CellOutput::from).collect(), mismatches: m.mismatches().count() }
    }
}

/// ✓/✗ grid, one block per semantics; a `!` marks a cell whose verdict
/// disagrees with the expectation.
pub fn matrix_grid(m: &MatrixReport) -> String {
    let mut out = String::new();
    let heads: Vec<String> = SetFunction::PAPER.iter().map(|f| format!("{:>13}", f.to_string())).collect();
    for preset in Preset::ALL {
        let _ = writeln!(out, "{:<42}{}", preset.name(), heads.join(""));
        for p in PrincipleId::TABLED {
            let mut line = format!("  {:<40}", p.name());
            for f in SetFunction::PAPER {
                let mark = match m.cell(p, f, preset) {
                    Some(c) => {
                        let sym = if c.expected { "✓" } else { "✗" };
                        if c.status == CellStatus::Mismatch { format!("{sym}!") } else { sym.to_string() }
                    }
                    None => "-".to_string(),
                };
                let _ = write!(line, "{mark:>13}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ReproduceOutput {
    pub claims: Vec<ClaimOutput>,
    pub matrix: Option<MatrixOutput>,
    pub reproduced: usize,
    pub total: usize,
    pub ok: bool,
}
