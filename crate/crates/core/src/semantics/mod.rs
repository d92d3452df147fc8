//! Modular gradual semantics: aggregation ∘ influence, evaluated once per
//! argument in topological order.
//!
//! | preset    | aggregation | influence  |
//! |-----------|-------------|------------|
//! | QE        | Sum         | PMax(2,1)  |
//! | DFQuAD    | Product     | Linear(1)  |
//! | SD-DFQuAD | Product     | PMax(1,1)  |
//! | EB        | Sum         | Euler      |
//! | EBT       | Top         | Euler      |

mod dual;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use fixedbitset::FixedBitSet;

pub use dual::{Dual, Scalar};

use crate::error::{Error, Result};
use crate::graph::{ArgumentId, Polarity, Qbag};
use crate::lab::{PrincipleId, PrincipleVerdict, Status, Witness};

/// Aggregation functions over the relationship vector v and strength vector s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AggregationKind {
    /// Σ vᵢ·sᵢ
    Sum,
    /// Π_{attackers}(1−sᵢ) − Π_{supporters}(1−sᵢ)
    Product,
    /// M_v(s) − M_{−v}(s), M_v(s) = max{0, vᵢ·sᵢ}
    Top,
}

/// Influence functions combining an initial strength w with an aggregate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InfluenceKind {
    /// Defined on [−k, k].
    Linear { k: f64 },
    Euler,
    PMax { p: u32, k: f64 },
}

/// An aggregation paired with an influence function.
#[derive(Clone, Debug, PartialEq)]
pub struct SemanticsSpec {
    pub aggregation: AggregationKind,
    pub influence: InfluenceKind,
    pub name: Option<String>,
}

/// The five named semantics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Preset {
    Qe,
    DfQuad,
    SdDfQuad,
    Eb,
    Ebt,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Qe, Preset::DfQuad, Preset::SdDfQuad, Preset::Eb, Preset::Ebt];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Qe => "QE",
            Preset::DfQuad => "DFQuAD",
            Preset::SdDfQuad => "SD-DFQuAD",
            Preset::Eb => "EB",
            Preset::Ebt => "EBT",
        }
    }

    pub fn spec(self) -> SemanticsSpec {
        use AggregationKind::*;
        let (aggregation, influence) = match self {
            Preset::Qe => (Sum, InfluenceKind::PMax { p: 2, k: 1.0 }),
            Preset::DfQuad => (Product, InfluenceKind::Linear { k: 1.0 }),
            Preset::SdDfQuad => (Product, InfluenceKind::PMax { p: 1, k: 1.0 }),
            Preset::Eb => (Sum, InfluenceKind::Euler),
            Preset::Ebt => (Top, InfluenceKind::Euler),
        };
        SemanticsSpec { aggregation, influence, name: Some(self.name().to_string()) }
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidSemantics(format!("unknown preset `{s}` (expected QE, DFQuAD, SD-DFQuAD, EB or EBT)")))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl SemanticsSpec {
    /// A custom spec; parameters are checked (k > 0 finite, p ≥ 1).
    pub fn new(aggregation: AggregationKind, influence: InfluenceKind, name: Option<String>) -> Result<Self> {
        let ok_k = |k: f64| k.is_finite() && k > 0.0;
        match influence {
            InfluenceKind::Linear { k } if !ok_k(k) => {
                return Err(Error::InvalidSemantics(format!("linear influence needs k > 0, got {k}")));
            }
            InfluenceKind::PMax { p, k } if p == 0 || !ok_k(k) => {
                return Err(Error::InvalidSemantics(format!("p-max influence needs p >= 1 and k > 0, got p={p}, k={k}")));
            }
            _ => {}
        }
        Ok(Self { aggregation, influence, name })
    }

    pub fn qe() -> Self {
        Preset::Qe.spec()
    }
    pub fn dfquad() -> Self {
        Preset::DfQuad.spec()
    }
    pub fn sd_dfquad() -> Self {
        Preset::SdDfQuad.spec()
    }
    pub fn eb() -> Self {
        Preset::Eb.spec()
    }
    pub fn ebt() -> Self {
        Preset::Ebt.spec()
    }

    /// Looks up a preset by its exact, case-sensitive name.
    pub fn preset(name: &str) -> Result<Self> {
        name.parse::<Preset>().map(Preset::spec)
    }

    pub fn label(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        let agg = match self.aggregation {
            AggregationKind::Sum => "sum",
            AggregationKind::Product => "product",
            AggregationKind::Top => "top",
        };
        match self.influence {
            InfluenceKind::Linear { k } => format!("{agg}+linear(k={k})"),
            InfluenceKind::Euler => format!("{agg}+euler"),
            InfluenceKind::PMax { p, k } => format!("{agg}+pmax(p={p},k={k})"),
        }
    }
}

/// A modular semantics: anything that can aggregate parent strengths and
/// apply an influence function. [`SemanticsSpec`] is the canonical
/// implementation; the trait exists so checkers can be exercised against
/// deliberately broken semantics.
pub trait Modular {
    fn label(&self) -> String;
    /// `parents` lists (polarity, final strength) in argument-id order.
    fn aggregate<S: Scalar>(&self, parents: &[(Polarity, S)]) -> S;
    fn influence<S: Scalar>(&self, w: S, agg: S) -> Result<S>;
}

impl Modular for SemanticsSpec {
    fn label(&self) -> String {
        SemanticsSpec::label(self)
    }

    fn aggregate<S: Scalar>(&self, parents: &[(Polarity, S)]) -> S {
        aggregate_parents(self.aggregation, parents)
    }

    fn influence<S: Scalar>(&self, w: S, agg: S) -> Result<S> {
        apply_influence(self.influence, w, agg)
    }
}

fn aggregate_parents<S: Scalar>(kind: AggregationKind, parents: &[(Polarity, S)]) -> S {
    let zero = S::constant(0.0);
    let one = S::constant(1.0);
    match kind {
        AggregationKind::Sum => parents.iter().fold(zero, |acc, &(p, s)| match p {
            Polarity::Attack => acc - s,
            Polarity::Support => acc + s,
        }),
        AggregationKind::Product => {
            let (mut att, mut sup) = (one, one);
            for &(p, s) in parents {
                match p {
                    Polarity::Attack => att = att * (one - s),
                    Polarity::Support => sup = sup * (one - s),
                }
            }
            att - sup
        }
        AggregationKind::Top => {
            let (mut m_v, mut m_neg) = (zero, zero);
            for &(p, s) in parents {
                let vs = match p {
                    Polarity::Attack => -s,
                    Polarity::Support => s,
                };
                m_v = m_v.max(vs);
                m_neg = m_neg.max(-vs);
            }
            m_v - m_neg
        }
    }
}

fn apply_influence<S: Scalar>(kind: InfluenceKind, w: S, agg: S) -> Result<S> {
    let zero = S::constant(0.0);
    let one = S::constant(1.0);
    match kind {
        InfluenceKind::Linear { k } => {
            let a = agg.value();
            if !(a.abs() <= k) {
                return Err(Error::LinearDomain { aggregate: a, k });
            }
            let k = S::constant(k);
            Ok(w - (w / k) * zero.max(-agg) + ((one - w) / k) * zero.max(agg))
        }
        InfluenceKind::Euler => Ok(one - (one - w * w) / (one + w * agg.exp())),
        InfluenceKind::PMax { p, k } => {
            let k = S::constant(k);
            let h = |x: S| {
                let m = zero.max(x).powi(p);
                m / (one + m)
            };
            Ok(w - w * h(-agg / k) + (one - w) * h(agg / k))
        }
    }
}

/// Aggregates strengths `s` under relationship vector `v` (entries −1, 0, 1).
pub fn aggregate(kind: AggregationKind, v: &[i8], s: &[f64]) -> Result<f64> {
    if v.len() != s.len() {
        return Err(Error::LengthMismatch { relations: v.len(), strengths: s.len() });
    }
    let mut parents = Vec::with_capacity(v.len());
    for (&vi, &si) in v.iter().zip(s) {
        match vi {
            -1 => parents.push((Polarity::Attack, si)),
            1 => parents.push((Polarity::Support, si)),
            0 => {}
            other => return Err(Error::InvalidSemantics(format!("relationship entry {other} is not in {{-1,0,1}}"))),
        }
    }
    Ok(aggregate_parents(kind, &parents))
}

/// Applies an influence function to initial strength `w` and aggregate `agg`.
pub fn influence(kind: InfluenceKind, w: f64, agg: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::StrengthOutOfRange { id: "w".to_string(), value: w });
    }
    apply_influence(kind, w, agg)
}

/// Single topological pass. Arguments outside `present` are treated as
/// removed; for arguments in `detached`, edges from outside `detached` are
/// ignored. Entries for absent arguments are left at 0.
pub(crate) fn propagate<M: Modular, S: Scalar>(
    g: &Qbag,
    m: &M,
    present: Option<&FixedBitSet>,
    detached: Option<&FixedBitSet>,
    init: impl Fn(usize) -> S,
) -> Result<Vec<S>> {
    let mut out = vec![S::constant(0.0); g.len()];
    let mut buf = Vec::new();
    let here = |i: usize| present.is_none_or(|p| p.contains(i));
    for &y in g.order() {
        if !here(y) {
            continue;
        }
        buf.clear();
        let cut = detached.is_some_and(|d| d.contains(y));
        for &(x, pol) in g.parents(y) {
            if !here(x) || (cut && !detached.is_some_and(|d| d.contains(x))) {
                continue;
            }
            buf.push((pol, out[x]));
        }
        let agg = m.aggregate(&buf);
        out[y] = m.influence(init(y), agg)?;
    }
    Ok(out)
}

/// Final strengths of every argument.
#[derive(Clone, Debug, PartialEq)]
pub struct StrengthAssignment {
    ids: Vec<ArgumentId>,
    values: Vec<f64>,
}

impl StrengthAssignment {
    pub fn get(&self, id: &str) -> Option<f64> {
        self.ids.binary_search_by(|p| p.as_str().cmp(id)).ok().map(|i| self.values[i])
    }

    /// Values by argument index of the evaluated graph.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ArgumentId, f64)> {
        self.ids.iter().zip(self.values.iter().copied())
    }
}

/// Final strengths with their derivative w.r.t. one seed's initial strength.
#[derive(Clone, Debug, PartialEq)]
pub struct DualAssignment {
    pub seed: ArgumentId,
    ids: Vec<ArgumentId>,
    values: Vec<f64>,
    derivatives: Vec<f64>,
}

impl DualAssignment {
    pub fn value(&self, id: &str) -> Option<f64> {
        self.index(id).map(|i| self.values[i])
    }

    pub fn derivative(&self, id: &str) -> Option<f64> {
        self.index(id).map(|i| self.derivatives[i])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn derivatives(&self) -> &[f64] {
        &self.derivatives
    }

    fn index(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|p| p.as_str().cmp(id)).ok()
    }
}

/// σ for every argument of `g`.
pub fn evaluate<M: Modular>(g: &Qbag, m: &M) -> Result<StrengthAssignment> {
    let values = propagate(g, m, None, None, |i| g.tau()[i])?;
    Ok(StrengthAssignment { ids: g.ids().to_vec(), values })
}

/// Tangent direction for a seed: into [0,1] from τ(seed).
pub(crate) fn seed_direction(tau: f64) -> f64 {
    if tau < 1.0 { 1.0 } else { -1.0 }
}

/// σ and ∂σ/∂τ(seed) for every argument of `g`.
///
/// Where the composition has a kink (a hinge max{0,·} at 0, a tie inside
/// Top) the derivative is the one-sided one pointing into [0,1]: right-hand
/// unless τ(seed) = 1, left-hand there.
pub fn evaluate_dual<M: Modular>(g: &Qbag, m: &M, seed: &str) -> Result<DualAssignment> {
    let s = g.require(seed)?;
    let dir = seed_direction(g.tau()[s]);
    let out = propagate(g, m, None, None, |i| Dual::new(g.tau()[i], if i == s { dir } else { 0.0 }))?;
    Ok(DualAssignment {
        seed: g.ids()[s].clone(),
        ids: g.ids().to_vec(),
        values: out.iter().map(|d| d.v).collect(),
        derivatives: out.iter().map(|d| d.d * dir).collect(),
    })
}

/// Stability: every argument without attackers or supporters keeps τ.
pub fn check_stability<M: Modular>(m: &M, g: &Qbag, tol: f64) -> Result<PrincipleVerdict> {
    let sigma = evaluate(g, m)?;
    let mut examined = 0;
    for i in 0..g.len() {
        if !g.parents(i).is_empty() {
            continue;
        }
        examined += 1;
        let (s, t) = (sigma.values()[i], g.tau()[i]);
        if (s - t).abs() > tol {
            return Ok(PrincipleVerdict {
                principle: PrincipleId::Stability,
                status: Status::ViolatedOnInstance,
                witness: Some(Witness {
                    graph: g.clone(),
                    topic: Some(g.ids()[i].clone()),
                    sets: Vec::new(),
                    partition: None,
                    values: vec![("sigma".to_string(), s), ("tau".to_string(), t)],
                    margin: (s - t).abs(),
                    note: format!("`{}` has no attackers or supporters but σ ≠ τ under {}", g.id(i), m.label()),
                }),
                cases_examined: examined,
                violations_found: 1,
            });
        }
    }
    Ok(PrincipleVerdict::satisfied(PrincipleId::Stability, examined))
}
