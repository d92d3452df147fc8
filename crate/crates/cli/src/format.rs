//! File formats: graphs, custom semantics and pipeline manifests.

use std::fs;
use std::path::Path;

use qbag_core::semantics::{AggregationKind, InfluenceKind, Preset, SemanticsSpec};
use qbag_core::{Qbag, QbagDraft, fixtures};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgumentEntry {
    pub id: String,
    pub initial_strength: f64,
}

/// `{"arguments": [{"id", "initial_strength"}], "attacks": [[x, y]], "supports": [[x, y]]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub arguments: Vec<ArgumentEntry>,
    #[serde(default)]
    pub attacks: Vec<(String, String)>,
    #[serde(default)]
    pub supports: Vec<(String, String)>,
}

impl GraphFile {
    pub fn from_graph(g: &Qbag) -> Self {
        let d = g.to_draft();
        GraphFile {
            arguments: d.arguments.into_iter().map(|(id, initial_strength)| ArgumentEntry { id, initial_strength }).collect(),
            attacks: d.attacks,
            supports: d.supports,
        }
    }

    pub fn draft(&self) -> QbagDraft {
        QbagDraft {
            arguments: self.arguments.iter().map(|a| (a.id.clone(), a.initial_strength)).collect(),
            attacks: self.attacks.clone(),
            supports: self.supports.clone(),
        }
    }

    pub fn build(&self) -> Result<Qbag, CliError> {
        Ok(self.draft().build()?)
    }
}

pub fn parse_graph(text: &str, origin: &str) -> Result<Qbag, CliError> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse { origin: origin.to_string(), message: e.to_string() })?;
    file.build()
}

/// Serialized graph; floats use the shortest representation that reads back
/// to the same bits.
pub fn write_graph(g: &Qbag) -> String {
    serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("graph serializes")
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// A graph file path, or the id of a bundled fixture.
pub fn load_graph(arg: &str) -> Result<(Qbag, Option<&'static str>), CliError> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok((parse_graph(&read(path)?, arg)?, None));
    }
    match fixtures::fixture(arg) {
        Some(fx) => Ok((fx.graph, Some(fx.topic))),
        None => Err(CliError::Io {
            path: arg.to_string(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or fixture id"),
        }),
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum AggregationName {
    Sum,
    Product,
    Top,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum InfluenceEntry {
    Linear { k: f64 },
    Euler,
    Pmax { p: u32, k: f64 },
}

/// `{"aggregation": "sum", "influence": {"kind": "pmax", "p": 2, "k": 1.0}, "name": "…"}`
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SemanticsFile {
    aggregation: AggregationName,
    influence: InfluenceEntry,
    #[serde(default)]
    name: Option<String>,
}

/// A preset name (`QE`, `DFQuAD`, `SD-DFQuAD`, `EB`, `EBT`) or the path of
/// a custom semantics JSON file.
pub fn load_semantics(arg: &str) -> Result<SemanticsSpec, CliError> {
    if let Ok(p) = arg.parse::<Preset>() {
        return Ok(p.spec());
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(qbag_core::Error::InvalidSemantics(format!("unknown preset or file `{arg}`")).into());
    }
    let f: SemanticsFile = serde_json::from_str(&read(path)?)
        .map_err(|e| qbag_core::Error::InvalidSemantics(format!("{arg}: {e}")))?;
    let aggregation = match f.aggregation {
        AggregationName::Sum => AggregationKind::Sum,
        AggregationName::Product => AggregationKind::Product,
        AggregationName::Top => AggregationKind::Top,
    };
    let influence = match f.influence {
        InfluenceEntry::Linear { k } => InfluenceKind::Linear { k },
        InfluenceEntry::Euler => InfluenceKind::Euler,
        InfluenceEntry::Pmax { p, k } => InfluenceKind::PMax { p, k },
    };
    Ok(SemanticsSpec::new(aggregation, influence, f.name)?)
}

/// `{"aspects": [...], "decision_tau": 0.5, "decision": "D", "groups": [["NOV", "IMP"]]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub aspects: Vec<String>,
    #[serde(default = "half")]
    pub decision_tau: f64,
    #[serde(default = "decision_id")]
    pub decision: String,
    #[serde(default)]
    pub groups: Vec<Vec<String>>,
}

fn half() -> f64 {
    0.5
}

fn decision_id() -> String {
    "D".to_string()
}

pub fn load_manifest(path: &str) -> Result<Manifest, CliError> {
    serde_json::from_str(&read(Path::new(path))?)
        .map_err(|e| CliError::Parse { origin: path.to_string(), message: e.to_string() })
}
