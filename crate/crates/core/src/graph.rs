//! The QBAG value type ⟨A, τ, Att, Supp⟩, validation, and graph surgery.
//!
//! A [`Qbag`] can only be obtained through validation, so every value of the
//! type is acyclic, has disjoint attack/support relations and strengths in
//! `[0,1]`. Arguments are stored sorted by id; that order doubles as the
//! tie-breaker of the topological order.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Opaque, case-sensitive argument identifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgumentId(String);

impl ArgumentId {
    /// Wraps `id`; empty ids are rejected.
    pub fn new(id: impl Into<String>) -> Option<Self> {
        let id = id.into();
        if id.is_empty() { None } else { Some(Self(id)) }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Unchecked wrap; unknown or empty ids surface when resolved against a graph.
    pub(crate) fn raw(id: &str) -> Self {
        Self(id.to_string())
    }
}

impl Borrow<str> for ArgumentId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Edge polarity. Attacks carry the relationship value −1, supports +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Attack,
    Support,
}

impl Polarity {
    pub fn sign(self) -> f64 {
        match self {
            Polarity::Attack => -1.0,
            Polarity::Support => 1.0,
        }
    }
}

/// An unvalidated candidate graph, as read from a file or built in code.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QbagDraft {
    pub arguments: Vec<(String, f64)>,
    pub attacks: Vec<(String, String)>,
    pub supports: Vec<(String, String)>,
}

impl QbagDraft {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn argument(mut self, id: &str, initial_strength: f64) -> Self {
        self.arguments.push((id.to_owned(), initial_strength));
        self
    }

    pub fn attack(mut self, from: &str, to: &str) -> Self {
        self.attacks.push((from.to_owned(), to.to_owned()));
        self
    }

    pub fn support(mut self, from: &str, to: &str) -> Self {
        self.supports.push((from.to_owned(), to.to_owned()));
        self
    }

    /// Validates and freezes the draft.
    pub fn build(&self) -> Result<Qbag> {
        let report = validate(self);
        if !report.ok {
            return Err(Error::InvalidGraph(report));
        }
        Ok(Qbag::from_checked(self))
    }
}

/// One violated graph invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// Stable rule identifier, e.g. `"cycle"` or `"att-supp-overlap"`.
    pub rule: &'static str,
    pub message: String,
    /// Offending ids; for `"cycle"` the cycle in edge order.
    pub elements: Vec<String>,
}

/// Result of [`validate`]. `ok` holds exactly when `violations` is empty.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.rule, v.message)?;
        }
        Ok(())
    }
}

/// Checks every QBAG invariant of `draft` and lists all breaches.
///
/// Rules: `empty-id`, `duplicate-id`, `strength-out-of-range`,
/// `unknown-endpoint`, `att-supp-overlap`, `cycle`. A cycle violation names one
/// concrete cycle, rotated to start at its smallest id.
pub fn validate(draft: &QbagDraft) -> ValidationReport {
    let mut violations = Vec::new();
    let mut known = BTreeSet::new();
    for (id, tau) in &draft.arguments {
        if id.is_empty() {
            violations.push(Violation {
                rule: "empty-id",
                message: "argument ids must be non-empty".to_string(),
                elements: vec![],
            });
            continue;
        }
        if !known.insert(id.as_str()) {
            violations.push(Violation {
                rule: "duplicate-id",
                message: format!("argument `{id}` is declared more than once"),
                elements: vec![id.clone()],
            });
        }
        if !(0.0..=1.0).contains(tau) {
            violations.push(Violation {
                rule: "strength-out-of-range",
                message: format!("initial strength {tau} of `{id}` is outside [0,1]"),
                elements: vec![id.clone()],
            });
        }
    }

    let mut edges: BTreeSet<(&str, &str)> = BTreeSet::new();
    let attacks: BTreeSet<(&str, &str)> =
        draft.attacks.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
    let supports: BTreeSet<(&str, &str)> =
        draft.supports.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
    for (kind, rel) in [("attack", &attacks), ("support", &supports)] {
        for &(x, y) in rel.iter() {
            let missing: Vec<String> =
                [x, y].iter().filter(|e| !known.contains(*e)).map(|e| e.to_string()).collect();
            if missing.is_empty() {
                edges.insert((x, y));
            } else {
                violations.push(Violation {
                    rule: "unknown-endpoint",
                    message: format!("{kind} ({x},{y}) references undeclared {}", missing.join(", ")),
                    elements: missing,
                });
            }
        }
    }
    for &(x, y) in attacks.intersection(&supports) {
        violations.push(Violation {
            rule: "att-supp-overlap",
            message: format!("({x},{y}) is both an attack and a support"),
            elements: vec![x.to_string(), y.to_string()],
        });
    }
    if let Some(cycle) = find_cycle(&known, &edges) {
        violations.push(Violation {
            rule: "cycle",
            message: format!("[{}]", cycle.join(",")),
            elements: cycle,
        });
    }
    ValidationReport { ok: violations.is_empty(), violations }
}

fn find_cycle(nodes: &BTreeSet<&str>, edges: &BTreeSet<(&str, &str)>) -> Option<Vec<String>> {
    let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for &(x, y) in edges {
        succ.entry(x).or_default().push(y);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state: BTreeMap<&str, u8> = nodes.iter().map(|n| (*n, 0)).collect();
    for &root in nodes {
        if state[root] != 0 {
            continue;
        }
        let mut path: Vec<&str> = vec![root];
        let mut cursor: Vec<usize> = vec![0];
        state.insert(root, 1);
        while let Some(&node) = path.last() {
            let i = *cursor.last().unwrap();
            let next = succ.get(node).and_then(|s| s.get(i)).copied();
            match next {
                Some(n) => {
                    *cursor.last_mut().unwrap() += 1;
                    match state[n] {
                        0 => {
                            state.insert(n, 1);
                            path.push(n);
                            cursor.push(0);
                        }
                        1 => {
                            let start = path.iter().position(|p| *p == n).unwrap();
                            let mut cycle: Vec<String> =
                                path[start..].iter().map(|s| s.to_string()).collect();
                            let min = cycle.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).unwrap().0;
                            cycle.rotate_left(min);
                            return Some(cycle);
                        }
                        _ => {}
                    }
                }
                None => {
                    state.insert(node, 2);
                    path.pop();
                    cursor.pop();
                }
            }
        }
    }
    None
}

/// A validated, immutable QBAG.
#[derive(Clone, Debug, PartialEq)]
pub struct Qbag {
    ids: Vec<ArgumentId>,
    tau: Vec<f64>,
    /// Incoming edges per argument, sorted by source index.
    parents: Vec<Vec<(usize, Polarity)>>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl Qbag {
    fn from_checked(draft: &QbagDraft) -> Self {
        let mut args: Vec<(&str, f64)> = draft.arguments.iter().map(|(i, t)| (i.as_str(), *t)).collect();
        args.sort_by(|a, b| a.0.cmp(b.0));
        let ids: Vec<ArgumentId> = args.iter().map(|(i, _)| ArgumentId(i.to_string())).collect();
        let tau = args.iter().map(|(_, t)| *t).collect();
        let index = |s: &str| ids.binary_search_by(|p| p.as_str().cmp(s)).unwrap();
        let n = ids.len();
        let mut parent_sets: Vec<BTreeMap<usize, Polarity>> = vec![BTreeMap::new(); n];
        for (x, y) in &draft.attacks {
            parent_sets[index(y)].insert(index(x), Polarity::Attack);
        }
        for (x, y) in &draft.supports {
            parent_sets[index(y)].insert(index(x), Polarity::Support);
        }
        Self::assemble(ids, tau, parent_sets.into_iter().map(|m| m.into_iter().collect()).collect())
    }

    fn assemble(ids: Vec<ArgumentId>, tau: Vec<f64>, parents: Vec<Vec<(usize, Polarity)>>) -> Self {
        let n = ids.len();
        let mut children = vec![Vec::new(); n];
        for (y, ps) in parents.iter().enumerate() {
            for &(x, _) in ps {
                children[x].push(y);
            }
        }
        // Kahn's algorithm, smallest index (= smallest id) first.
        let mut indeg: Vec<usize> = parents.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            order.push(x);
            for &y in &children[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        debug_assert_eq!(order.len(), n, "validated graphs are acyclic");
        Self { ids, tau, parents, children, order }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Argument ids in lexicographic order; positions are argument indices.
    pub fn ids(&self) -> &[ArgumentId] {
        &self.ids
    }

    pub fn id(&self, index: usize) -> &str {
        self.ids[index].as_str()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|p| p.as_str().cmp(id)).ok()
    }

    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownArgument(id.to_string()))
    }

    pub fn initial_strength(&self, id: &str) -> Option<f64> {
        self.index_of(id).map(|i| self.tau[i])
    }

    /// τ by argument index.
    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    /// Attackers and supporters of the argument at `index`, sorted by index.
    pub fn parents(&self, index: usize) -> &[(usize, Polarity)] {
        &self.parents[index]
    }

    pub fn children(&self, index: usize) -> &[usize] {
        &self.children[index]
    }

    /// Evaluation order as indices.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// All edges as `(from, to, polarity)` index triples, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, Polarity)> {
        let mut out: Vec<_> = self
            .parents
            .iter()
            .enumerate()
            .flat_map(|(y, ps)| ps.iter().map(move |&(x, p)| (x, y, p)))
            .collect();
        out.sort();
        out
    }

    pub fn attacks(&self) -> Vec<(&str, &str)> {
        self.edges_of(Polarity::Attack)
    }

    pub fn supports(&self) -> Vec<(&str, &str)> {
        self.edges_of(Polarity::Support)
    }

    fn edges_of(&self, polarity: Polarity) -> Vec<(&str, &str)> {
        self.edges()
            .into_iter()
            .filter(|e| e.2 == polarity)
            .map(|(x, y, _)| (self.id(x), self.id(y)))
            .collect()
    }

    pub fn to_draft(&self) -> QbagDraft {
        QbagDraft {
            arguments: self.ids.iter().zip(&self.tau).map(|(i, t)| (i.0.clone(), *t)).collect(),
            attacks: self.attacks().into_iter().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
            supports: self.supports().into_iter().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
        }
    }

    /// Resolves ids to a bit set over argument indices.
    pub fn mask<I, S>(&self, ids: I) -> Result<FixedBitSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut m = FixedBitSet::with_capacity(self.len());
        for id in ids {
            m.insert(self.require(id.as_ref())?);
        }
        Ok(m)
    }

    /// g↓S: keeps the arguments in `keep` and the edges between them.
    pub fn restrict<I, S>(&self, keep: I) -> Result<Qbag>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let keep = self.mask(keep)?;
        Ok(self.restrict_mask(&keep))
    }

    pub(crate) fn restrict_mask(&self, keep: &FixedBitSet) -> Qbag {
        let mut remap = vec![usize::MAX; self.len()];
        let mut ids = Vec::new();
        let mut tau = Vec::new();
        for i in keep.ones() {
            remap[i] = ids.len();
            ids.push(self.ids[i].clone());
            tau.push(self.tau[i]);
        }
        let parents = keep
            .ones()
            .map(|y| {
                self.parents[y]
                    .iter()
                    .filter(|(x, _)| keep.contains(*x))
                    .map(|&(x, p)| (remap[x], p))
                    .collect()
            })
            .collect();
        Qbag::assemble(ids, tau, parents)
    }

    /// Removes every edge (y,x) with x ∈ `x_set` and y ∉ `x_set`.
    pub fn detach_incoming<I, S>(&self, x_set: I) -> Result<Qbag>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let x = self.mask(x_set)?;
        let parents = self
            .parents
            .iter()
            .enumerate()
            .map(|(y, ps)| {
                if x.contains(y) {
                    ps.iter().filter(|(p, _)| x.contains(*p)).copied().collect()
                } else {
                    ps.clone()
                }
            })
            .collect();
        Ok(Qbag::assemble(self.ids.clone(), self.tau.clone(), parents))
    }

    /// g↓τ(x)←ε.
    pub fn set_initial_strength(&self, x: &str, eps: f64) -> Result<Qbag> {
        let i = self.require(x)?;
        if !(0.0..=1.0).contains(&eps) {
            return Err(Error::StrengthOutOfRange { id: x.to_string(), value: eps });
        }
        let mut g = self.clone();
        g.tau[i] = eps;
        Ok(g)
    }

    /// Deterministic topological order, ties broken by lexicographic id.
    pub fn topological_order(&self) -> Vec<&ArgumentId> {
        self.order.iter().map(|&i| &self.ids[i]).collect()
    }

    /// True iff there is a directed path from `x` to `a`, or `x == a`.
    pub fn can_reach(&self, x: &str, a: &str) -> Result<bool> {
        let xi = self.require(x)?;
        let ai = self.require(a)?;
        Ok(self.reach_mask(ai).contains(xi))
    }

    /// Arguments with a directed path to `a`; `a` itself iff `include_topic`.
    pub fn influencers(&self, a: &str, include_topic: bool) -> Result<BTreeSet<ArgumentId>> {
        let ai = self.require(a)?;
        let mut m = self.reach_mask(ai);
        m.set(ai, include_topic);
        Ok(m.ones().map(|i| self.ids[i].clone()).collect())
    }

    /// Indices that can reach `topic`, including `topic` itself.
    pub(crate) fn reach_mask(&self, topic: usize) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.len());
        let mut stack = vec![topic];
        m.insert(topic);
        while let Some(y) = stack.pop() {
            for &(x, _) in &self.parents[y] {
                if !m.put(x) {
                    stack.push(x);
                }
            }
        }
        m
    }
}
