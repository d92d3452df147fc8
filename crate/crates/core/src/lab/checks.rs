//! The principle checkers.
//!
//! Each checker works inside a [`Scenario`] so that σ evaluations are shared
//! between principles and functions probing the same graph and topic. The
//! `check_*` wrappers build a fresh scenario for one-off use.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::partitions::partitions_bounded;
use super::{CheckOptions, PrincipleId, PrincipleVerdict, Status, Witness, ids_of, named};
use crate::contribution::{ContributionConfig, Scenario, SetContribution, SingleKind, sign, single_ctrb};
use crate::error::{Error, Result};
use crate::graph::{ArgumentId, Qbag};
use crate::semantics::{SemanticsSpec, check_stability};

fn to_set(n: usize, base: &[usize], mask: u64) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for (j, &i) in base.iter().enumerate() {
        if mask >> j & 1 == 1 {
            s.insert(i);
        }
    }
    s
}

/// Non-empty subsets of `base` by (size, lexicographic members) when
/// `base.len() <= bound`; otherwise `samples` random non-empty subsets.
/// The flag says whether the list is exhaustive.
fn candidates(n: usize, base: &[usize], bound: usize, o: &CheckOptions, salt: u64) -> (Vec<FixedBitSet>, bool) {
    if base.is_empty() {
        return (Vec::new(), true);
    }
    if base.len() <= bound.min(63) {
        let mut masks: Vec<u64> = (1u64..(1u64 << base.len())).collect();
        masks.sort_by_key(|&m| {
            let members: Vec<usize> = (0..base.len()).filter(|j| m >> j & 1 == 1).collect();
            (m.count_ones(), members)
        });
        return (masks.into_iter().map(|m| to_set(n, base, m)).collect(), true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ salt);
    let out = (0..o.samples).map(|_| random_subset(&mut rng, n, base)).collect();
    (out, false)
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, base: &[usize]) -> FixedBitSet {
    loop {
        let mut s = FixedBitSet::with_capacity(n);
        for &i in base {
            if rng.random_bool(0.5) {
                s.insert(i);
            }
        }
        if !s.is_clear() {
            return s;
        }
    }
}

struct Values<'a> {
    f: &'a dyn SetContribution,
    cache: BTreeMap<FixedBitSet, f64>,
}

impl<'a> Values<'a> {
    fn new(f: &'a dyn SetContribution) -> Self {
        Self { f, cache: BTreeMap::new() }
    }

    fn get(&mut self, sc: &mut Scenario<'_>, x: &FixedBitSet) -> Result<f64> {
        if let Some(&v) = self.cache.get(x) {
            return Ok(v);
        }
        let v = self.f.value(sc, x)?;
        self.cache.insert(x.clone(), v);
        Ok(v)
    }
}

fn witness(sc: &Scenario<'_>, sets: Vec<&FixedBitSet>, values: &[(&str, f64)], margin: f64, note: &str) -> Witness {
    let g = sc.graph();
    Witness {
        graph: g.clone(),
        topic: Some(g.ids()[sc.topic()].clone()),
        sets: sets.into_iter().map(|s| ids_of(g, s)).collect(),
        partition: None,
        values: named(values),
        margin,
        note: note.to_string(),
    }
}

fn violated(principle: PrincipleId, w: Witness, cases: u64) -> PrincipleVerdict {
    PrincipleVerdict { principle, status: Status::ViolatedOnInstance, witness: Some(w), cases_examined: cases, violations_found: 1 }
}

fn done(principle: PrincipleId, exhaustive: bool, cases: u64) -> PrincipleVerdict {
    if exhaustive {
        PrincipleVerdict::satisfied(principle, cases)
    } else {
        PrincipleVerdict::inconclusive(principle, cases)
    }
}

fn others(sc: &Scenario<'_>) -> Vec<usize> {
    sc.others().ones().collect()
}

/// Runs the checker for `principle` on the scenario's graph and topic.
pub fn check(
    principle: PrincipleId,
    f: &dyn SetContribution,
    sc: &mut Scenario<'_>,
    o: &CheckOptions,
) -> Result<PrincipleVerdict> {
    match principle {
        PrincipleId::CtrbGeneralization => {
            let kind = f
                .single_kind()
                .ok_or_else(|| Error::InvalidConfig(format!("`{}` has no single-argument counterpart", f.name())))?;
            generalization(kind, f, sc, o)
        }
        PrincipleId::ContributionExistence => contribution_existence(f, sc, o),
        PrincipleId::QuantitativeContributionExistence => quantitative_existence(f, sc, o, false),
        PrincipleId::WeakQuantitativeContributionExistence => quantitative_existence(f, sc, o, true),
        PrincipleId::Directionality => directionality(f, sc, o),
        PrincipleId::Counterfactuality => counterfactuality(f, sc, o, false),
        PrincipleId::QuantitativeCounterfactuality => counterfactuality(f, sc, o, true),
        PrincipleId::Consistency => consistency(f, sc, o),
        PrincipleId::Monotonicity => monotonicity(f, sc, o),
        PrincipleId::Stability => check_stability(sc.spec(), sc.graph(), o.tolerance),
    }
}

fn generalization(kind: SingleKind, f: &dyn SetContribution, sc: &mut Scenario<'_>, o: &CheckOptions) -> Result<PrincipleVerdict> {
    let g = sc.graph();
    let a = g.id(sc.topic());
    let mut cases = 0;
    for x in others(sc) {
        cases += 1;
        let single = single_ctrb(kind, g, sc.spec(), g.id(x), a, sc.config())?.value;
        let mut set = sc.empty_set();
        set.insert(x);
        let value = f.value(sc, &set)?;
        let diff = (single - value).abs();
        if diff > o.tolerance {
            let w = witness(sc, vec![&set], &[("single", single), ("set", value)], diff, "single-argument and singleton-set contributions differ");
            return Ok(violated(PrincipleId::CtrbGeneralization, w, cases));
        }
    }
    Ok(PrincipleVerdict::satisfied(PrincipleId::CtrbGeneralization, cases))
}

fn contribution_existence(f: &dyn SetContribution, sc: &mut Scenario<'_>, o: &CheckOptions) -> Result<PrincipleVerdict> {
    let p = PrincipleId::ContributionExistence;
    let sigma = sc.sigma()?;
    let tau = sc.graph().tau()[sc.topic()];
    if (sigma - tau).abs() <= o.tolerance {
        return Ok(PrincipleVerdict::satisfied(p, 0));
    }
    let mut cases = 1;
    let infl = sc.influencers();
    if f.value(sc, &infl)?.abs() > o.tolerance {
        return Ok(PrincipleVerdict::satisfied(p, cases));
    }
    let (cands, exhaustive) = candidates(sc.graph().len(), &others(sc), o.subset_bound, o, 1);
    for x in &cands {
        cases += 1;
        if f.value(sc, x)?.abs() > o.tolerance {
            return Ok(PrincipleVerdict::satisfied(p, cases));
        }
    }
    if !exhaustive {
        return Ok(PrincipleVerdict::inconclusive(p, cases));
    }
    let w = witness(
        sc,
        vec![],
        &[("sigma", sigma), ("tau", tau)],
        (sigma - tau).abs(),
        "σ(a) ≠ τ(a) but every X ⊆ A\\{a} has zero contribution",
    );
    Ok(violated(p, w, cases))
}

fn partition_sum(
    values: &mut Values<'_>,
    sc: &mut Scenario<'_>,
    blocks: &[FixedBitSet],
) -> Result<f64> {
    let mut sum = 0.0;
    for b in blocks {
        sum += values.get(sc, b)?;
    }
    Ok(sum)
}

fn quantitative_existence(
    f: &dyn SetContribution,
    sc: &mut Scenario<'_>,
    o: &CheckOptions,
    weak: bool,
) -> Result<PrincipleVerdict> {
    let p = if weak {
        PrincipleId::WeakQuantitativeContributionExistence
    } else {
        PrincipleId::QuantitativeContributionExistence
    };
    let n = sc.graph().len();
    let target = sc.sigma()? - sc.graph().tau()[sc.topic()];
    let mut values = Values::new(f);
    let base = others(sc);
    let blocks_of = |part: &[Vec<usize>]| -> Vec<FixedBitSet> {
        part.iter()
            .map(|b| {
                let mut s = FixedBitSet::with_capacity(n);
                b.iter().for_each(|&i| s.insert(i));
                s
            })
            .collect()
    };
    let mut cases = 0;
    let partition_witness = |sc: &Scenario<'_>, blocks: &[FixedBitSet], sum: f64, margin: f64, note: &str| {
        let mut w = witness(sc, vec![], &[("sum", sum), ("sigma-minus-tau", target)], margin, note);
        w.partition = Some(blocks.iter().map(|b| ids_of(sc.graph(), b)).collect());
        w
    };

    if weak {
        // reachability split first: {influencers, everything else}
        let infl = sc.influencers();
        let mut rest = sc.others();
        rest.difference_with(&infl);
        let split: Vec<FixedBitSet> = [infl, rest].into_iter().filter(|b| !b.is_clear()).collect();
        cases += 1;
        let sum = partition_sum(&mut values, sc, &split)?;
        if (sum - target).abs() <= o.tolerance {
            return Ok(PrincipleVerdict::satisfied(p, cases));
        }
        if base.len() > o.partition_bound {
            return Ok(PrincipleVerdict::inconclusive(p, cases));
        }
        let mut best: Option<(f64, f64, Vec<FixedBitSet>)> = None;
        for part in partitions_bounded(&base, o.partition_bound)? {
            cases += 1;
            let blocks = blocks_of(&part);
            let sum = partition_sum(&mut values, sc, &blocks)?;
            let miss = (sum - target).abs();
            if miss <= o.tolerance {
                return Ok(PrincipleVerdict::satisfied(p, cases));
            }
            if best.as_ref().is_none_or(|b| miss < b.0) {
                best = Some((miss, sum, blocks));
            }
        }
        let (miss, sum, blocks) = best.expect("at least one partition");
        let w = partition_witness(sc, &blocks, sum, miss, "no partition of A\\{a} sums to σ(a) − τ(a); closest shown");
        return Ok(violated(p, w, cases));
    }

    for part in partitions_bounded(&base, o.partition_bound)? {
        cases += 1;
        let blocks = blocks_of(&part);
        let sum = partition_sum(&mut values, sc, &blocks)?;
        let miss = (sum - target).abs();
        if miss > o.tolerance {
            let w = partition_witness(sc, &blocks, sum, miss, "partition contributions do not sum to σ(a) − τ(a)");
            return Ok(violated(p, w, cases));
        }
    }
    Ok(PrincipleVerdict::satisfied(p, cases))
}

fn directionality(f: &dyn SetContribution, sc: &mut Scenario<'_>, o: &CheckOptions) -> Result<PrincipleVerdict> {
    let p = PrincipleId::Directionality;
    let infl = sc.influencers();
    let base: Vec<usize> = others(sc).into_iter().filter(|&i| !infl.contains(i)).collect();
    let (cands, exhaustive) = candidates(sc.graph().len(), &base, o.subset_bound, o, 2);
    let mut cases = 0;
    for x in &cands {
        cases += 1;
        let v = f.value(sc, x)?;
        if v.abs() > o.tolerance {
            let w = witness(sc, vec![x], &[("contribution", v)], v.abs(), "no member of X reaches a, yet the contribution is non-zero");
            return Ok(violated(p, w, cases));
        }
    }
    Ok(done(p, exhaustive, cases))
}

fn counterfactuality(f: &dyn SetContribution, sc: &mut Scenario<'_>, o: &CheckOptions, quantitative: bool) -> Result<PrincipleVerdict> {
    let p = if quantitative { PrincipleId::QuantitativeCounterfactuality } else { PrincipleId::Counterfactuality };
    let (cands, exhaustive) = candidates(sc.graph().len(), &others(sc), o.subset_bound, o, 3);
    let mut cases = 0;
    for x in &cands {
        cases += 1;
        let s = f.value(sc, x)?;
        let delta = sc.removal(x)?;
        let margin = if quantitative {
            let d = (s - delta).abs();
            if d > o.tolerance { Some(d) } else { None }
        } else if sign(s, o.tolerance) != sign(delta, o.tolerance) {
            Some(s.abs().max(delta.abs()))
        } else {
            None
        };
        if let Some(m) = margin {
            let note = if quantitative {
                "contribution differs from σ_g(a) − σ_{g↓A\\X}(a)"
            } else {
                "contribution sign differs from the sign of σ_g(a) − σ_{g↓A\\X}(a)"
            };
            let w = witness(sc, vec![x], &[("contribution", s), ("removal-delta", delta)], m, note);
            return Ok(violated(p, w, cases));
        }
    }
    Ok(done(p, exhaustive, cases))
}

fn consistency_violation(sx: f64, sy: f64, su: f64, tol: f64) -> Option<f64> {
    if sx <= tol && sy <= tol && su > tol {
        Some(su)
    } else if sx >= -tol && sy >= -tol && su < -tol {
        Some(-su)
    } else {
        None
    }
}

fn consistency(f: &dyn SetContribution, sc: &mut Scenario<'_>, o: &CheckOptions) -> Result<PrincipleVerdict> {
    let p = PrincipleId::Consistency;
    let n = sc.graph().len();
    let base = others(sc);
    let mut values = Values::new(f);
    let mut cases = 0;
    let report = |sc: &Scenario<'_>, x: &FixedBitSet, y: &FixedBitSet, sx: f64, sy: f64, su: f64, m: f64, cases: u64| {
        let w = witness(
            sc,
            vec![x, y],
            &[("contribution-x", sx), ("contribution-y", sy), ("contribution-union", su)],
            m,
            "X and Y agree in sign but X ∪ Y does not",
        );
        violated(p, w, cases)
    };
    if base.len() <= o.pair_bound {
        let (cands, _) = candidates(n, &base, o.pair_bound, o, 4);
        for i in 0..cands.len() {
            for j in (i + 1)..cands.len() {
                cases += 1;
                let (sx, sy) = (values.get(sc, &cands[i])?, values.get(sc, &cands[j])?);
                let mut u = cands[i].clone();
                u.union_with(&cands[j]);
                let su = values.get(sc, &u)?;
                if let Some(m) = consistency_violation(sx, sy, su, o.tolerance) {
                    return Ok(report(sc, &cands[i], &cands[j], sx, sy, su, m, cases));
                }
            }
        }
        return Ok(PrincipleVerdict::satisfied(p, cases));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ 5);
    for _ in 0..o.samples {
        cases += 1;
        let x = random_subset(&mut rng, n, &base);
        let y = random_subset(&mut rng, n, &base);
        let (sx, sy) = (values.get(sc, &x)?, values.get(sc, &y)?);
        let mut u = x.clone();
        u.union_with(&y);
        let su = values.get(sc, &u)?;
        if let Some(m) = consistency_violation(sx, sy, su, o.tolerance) {
            return Ok(report(sc, &x, &y, sx, sy, su, m, cases));
        }
    }
    Ok(PrincipleVerdict::inconclusive(p, cases))
}

fn monotonicity(f: &dyn SetContribution, sc: &mut Scenario<'_>, o: &CheckOptions) -> Result<PrincipleVerdict> {
    let p = PrincipleId::Monotonicity;
    let n = sc.graph().len();
    let base = others(sc);
    let mut values = Values::new(f);
    let mut cases = 0;
    let report = |sc: &Scenario<'_>, x: &FixedBitSet, y: &FixedBitSet, sx: f64, sy: f64, cases: u64| {
        let w = witness(sc, vec![x, y], &[("contribution-x", sx), ("contribution-y", sy)], sx - sy, "X ⊆ Y but S(X) > S(Y)");
        violated(p, w, cases)
    };
    if base.len() <= o.subset_bound.min(20) {
        let (cands, _) = candidates(n, &base, o.subset_bound, o, 6);
        for y in &cands {
            let sy = values.get(sc, y)?;
            // proper, non-empty subsets of y, smallest first
            let members: Vec<usize> = y.ones().collect();
            let (subs, _) = candidates(n, &members, members.len(), o, 6);
            for x in subs.iter().filter(|x| *x != y) {
                cases += 1;
                let sx = values.get(sc, x)?;
                if sx > sy + o.tolerance {
                    return Ok(report(sc, x, y, sx, sy, cases));
                }
            }
        }
        return Ok(PrincipleVerdict::satisfied(p, cases));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ 7);
    for _ in 0..o.samples {
        cases += 1;
        let y = random_subset(&mut rng, n, &base);
        let members: Vec<usize> = y.ones().collect();
        let x = random_subset(&mut rng, n, &members);
        let (sx, sy) = (values.get(sc, &x)?, values.get(sc, &y)?);
        if sx > sy + o.tolerance {
            return Ok(report(sc, &x, &y, sx, sy, cases));
        }
    }
    Ok(PrincipleVerdict::inconclusive(p, cases))
}

fn scenario<'g>(g: &'g Qbag, spec: &SemanticsSpec, a: &str) -> Result<Scenario<'g>> {
    Scenario::new(g, spec, a, ContributionConfig::default())
}

/// Generalization: `single(x)(a)` equals `f({x})(a)` for every pair x ≠ a.
pub fn check_generalization(
    single: SingleKind,
    f: &dyn SetContribution,
    g: &Qbag,
    spec: &SemanticsSpec,
    o: &CheckOptions,
) -> Result<PrincipleVerdict> {
    let mut cases = 0;
    for a in g.ids() {
        let mut sc = scenario(g, spec, a.as_str())?;
        let v = generalization(single, f, &mut sc, o)?;
        cases += v.cases_examined;
        if v.is_violated() {
            return Ok(PrincipleVerdict { cases_examined: cases, ..v });
        }
    }
    Ok(PrincipleVerdict::satisfied(PrincipleId::CtrbGeneralization, cases))
}

pub fn check_contribution_existence(f: &dyn SetContribution, g: &Qbag, spec: &SemanticsSpec, a: &str, o: &CheckOptions) -> Result<PrincipleVerdict> {
    contribution_existence(f, &mut scenario(g, spec, a)?, o)
}

/// `weak = false`: every partition must sum to σ(a) − τ(a);
/// `weak = true`: some partition must.
pub fn check_quantitative_contribution_existence(
    f: &dyn SetContribution,
    g: &Qbag,
    spec: &SemanticsSpec,
    a: &str,
    weak: bool,
    o: &CheckOptions,
) -> Result<PrincipleVerdict> {
    quantitative_existence(f, &mut scenario(g, spec, a)?, o, weak)
}

pub fn check_directionality(f: &dyn SetContribution, g: &Qbag, spec: &SemanticsSpec, a: &str, o: &CheckOptions) -> Result<PrincipleVerdict> {
    directionality(f, &mut scenario(g, spec, a)?, o)
}

pub fn check_counterfactuality(
    f: &dyn SetContribution,
    g: &Qbag,
    spec: &SemanticsSpec,
    a: &str,
    quantitative: bool,
    o: &CheckOptions,
) -> Result<PrincipleVerdict> {
    counterfactuality(f, &mut scenario(g, spec, a)?, o, quantitative)
}

pub fn check_consistency(f: &dyn SetContribution, g: &Qbag, spec: &SemanticsSpec, a: &str, o: &CheckOptions) -> Result<PrincipleVerdict> {
    consistency(f, &mut scenario(g, spec, a)?, o)
}

pub fn check_monotonicity(f: &dyn SetContribution, g: &Qbag, spec: &SemanticsSpec, a: &str, o: &CheckOptions) -> Result<PrincipleVerdict> {
    monotonicity(f, &mut scenario(g, spec, a)?, o)
}

/// Re-evaluates a violation witness from scratch. Returns the margin by
/// which the violated relation still fails, or `None` if it no longer does.
pub fn replay(
    verdict: &PrincipleVerdict,
    f: &dyn SetContribution,
    spec: &SemanticsSpec,
    o: &CheckOptions,
) -> Result<Option<f64>> {
    let Some(w) = &verdict.witness else { return Ok(None) };
    let g = &w.graph;
    let topic = w.topic.as_ref().map(ArgumentId::as_str).ok_or_else(|| Error::InvalidConfig("witness has no topic".to_string()))?;
    let tol = o.tolerance;
    let keep = |m: f64| if m > tol { Some(m) } else { None };
    let set = |i: usize| g.mask(w.sets[i].iter().map(ArgumentId::as_str));
    let mut sc = scenario(g, spec, topic)?;
    Ok(match verdict.principle {
        PrincipleId::Stability => {
            let i = g.require(topic)?;
            if !g.parents(i).is_empty() {
                return Ok(None);
            }
            let s = crate::semantics::evaluate(g, spec)?.values()[i];
            keep((s - g.tau()[i]).abs())
        }
        PrincipleId::CtrbGeneralization => {
            let kind = f.single_kind().ok_or_else(|| Error::InvalidConfig("no single-argument counterpart".to_string()))?;
            let x = set(0)?;
            let xi = x.ones().next().ok_or(Error::EmptyContributor)?;
            let single = single_ctrb(kind, g, spec, g.id(xi), topic, ContributionConfig::default())?.value;
            keep((single - f.value(&mut sc, &x)?).abs())
        }
        PrincipleId::ContributionExistence | PrincipleId::WeakQuantitativeContributionExistence => {
            let v = check(verdict.principle, f, &mut sc, o)?;
            if v.is_violated() { v.witness.map(|w| w.margin) } else { None }
        }
        PrincipleId::QuantitativeContributionExistence => {
            let blocks = w.partition.as_ref().ok_or_else(|| Error::InvalidConfig("witness has no partition".to_string()))?;
            let mut sum = 0.0;
            for b in blocks {
                sum += f.value(&mut sc, &g.mask(b.iter().map(ArgumentId::as_str))?)?;
            }
            let target = sc.sigma()? - g.tau()[sc.topic()];
            keep((sum - target).abs())
        }
        PrincipleId::Directionality => {
            let x = set(0)?;
            if !x.is_disjoint(&sc.influencers()) {
                return Ok(None);
            }
            keep(f.value(&mut sc, &x)?.abs())
        }
        PrincipleId::Counterfactuality | PrincipleId::QuantitativeCounterfactuality => {
            let x = set(0)?;
            let s = f.value(&mut sc, &x)?;
            let delta = sc.removal(&x)?;
            if verdict.principle == PrincipleId::QuantitativeCounterfactuality {
                keep((s - delta).abs())
            } else if sign(s, tol) != sign(delta, tol) {
                keep(s.abs().max(delta.abs()))
            } else {
                None
            }
        }
        PrincipleId::Consistency => {
            let (x, y) = (set(0)?, set(1)?);
            let mut u = x.clone();
            u.union_with(&y);
            let (sx, sy, su) = (f.value(&mut sc, &x)?, f.value(&mut sc, &y)?, f.value(&mut sc, &u)?);
            consistency_violation(sx, sy, su, tol)
        }
        PrincipleId::Monotonicity => {
            let (x, y) = (set(0)?, set(1)?);
            if !x.is_subset(&y) {
                return Ok(None);
            }
            keep(f.value(&mut sc, &x)? - f.value(&mut sc, &y)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contribution::{GradientAggregator, SetFunction};
    use crate::fixtures::fixture;
    use crate::semantics::Preset;

    const GRAD: SetFunction = SetFunction::Gradient(GradientAggregator::Max);

    fn o() -> CheckOptions {
        CheckOptions::default()
    }

    fn names(w: &Witness, i: usize) -> Vec<&str> {
        w.sets[i].iter().map(ArgumentId::as_str).collect()
    }

    #[test]
    fn generalization_examples() {
        let g = fixture("fig1a").unwrap().graph;
        let v = check_generalization(SingleKind::Removal, &SetFunction::Removal, &g, &SemanticsSpec::qe(), &o()).unwrap();
        assert_eq!(v.status, Status::SatisfiedOnInstance);
        let g = fixture("table4").unwrap().graph;
        let v = check_generalization(SingleKind::Gradient, &GRAD, &g, &SemanticsSpec::dfquad(), &o()).unwrap();
        assert_eq!(v.status, Status::SatisfiedOnInstance);
        let g = fixture("fig4").unwrap().graph;
        let v = check_generalization(SingleKind::Removal, &SetFunction::Shapley, &g, &SemanticsSpec::qe(), &o()).unwrap();
        assert!(v.is_violated());
        let w = v.witness.unwrap();
        assert!((w.value("single").unwrap() - w.value("set").unwrap()).abs() > 1e-9);
    }

    #[test]
    fn existence_examples() {
        let g = fixture("fig3").unwrap().graph;
        let df = SemanticsSpec::dfquad();
        assert!(check_contribution_existence(&GRAD, &g, &df, "a", &o()).unwrap().is_violated());
        let v = check_contribution_existence(&SetFunction::Removal, &g, &df, "a", &o()).unwrap();
        assert_eq!(v.status, Status::SatisfiedOnInstance);
        // σ(b) = τ(b): vacuous
        let v = check_contribution_existence(&GRAD, &g, &df, "b", &o()).unwrap();
        assert_eq!((v.status, v.cases_examined), (Status::SatisfiedOnInstance, 0));
    }

    #[test]
    fn quantitative_existence_examples() {
        let g = fixture("fig4").unwrap().graph;
        for p in Preset::ALL {
            let v = check_quantitative_contribution_existence(&SetFunction::Shapley, &g, &p.spec(), "a", false, &o()).unwrap();
            assert!(v.is_violated(), "{p}");
            let part = v.witness.unwrap().partition.unwrap();
            let part: Vec<Vec<&str>> = part.iter().map(|b| b.iter().map(ArgumentId::as_str).collect()).collect();
            assert_eq!(part, [vec!["b", "c"], vec!["d"]]);
        }
        let g = fixture("fig3").unwrap().graph;
        assert!(check_quantitative_contribution_existence(&SetFunction::Removal, &g, &SemanticsSpec::qe(), "a", false, &o()).unwrap().is_violated());
        for id in ["fig1a", "fig3", "fig4", "fig7", "figA2", "figA8"] {
            let fx = fixture(id).unwrap();
            let v = check_quantitative_contribution_existence(&SetFunction::Removal, &fx.graph, &SemanticsSpec::qe(), fx.topic, true, &o()).unwrap();
            assert_eq!((v.status, v.cases_examined), (Status::SatisfiedOnInstance, 1), "{id}");
        }
    }

    #[test]
    fn directionality_examples() {
        let g = fixture("fig1a").unwrap().graph;
        for p in Preset::ALL {
            for f in SetFunction::PAPER {
                // topic c: a, b, e cannot reach c
                let v = check_directionality(&f, &g, &p.spec(), "c", &o()).unwrap();
                assert_eq!(v.status, Status::SatisfiedOnInstance);
                assert_eq!(v.cases_examined, 7);
            }
        }
        struct Cardinality;
        impl SetContribution for Cardinality {
            fn name(&self) -> alloc::string::String {
                "cardinality".into()
            }
            fn value(&self, _: &mut Scenario<'_>, x: &FixedBitSet) -> Result<f64> {
                Ok(x.count_ones(..) as f64)
            }
        }
        assert!(check_directionality(&Cardinality, &g, &SemanticsSpec::qe(), "c", &o()).unwrap().is_violated());
    }

    #[test]
    fn counterfactuality_examples() {
        let fx = fixture("fig1a").unwrap();
        for p in Preset::ALL {
            for q in [false, true] {
                let v = check_counterfactuality(&SetFunction::Removal, &fx.graph, &p.spec(), "a", q, &o()).unwrap();
                assert_eq!(v.status, Status::SatisfiedOnInstance);
            }
        }
        let g = fixture("figA1").unwrap().graph;
        let v = check_counterfactuality(&SetFunction::IntrinsicRemoval, &g, &SemanticsSpec::qe(), "a", false, &o()).unwrap();
        assert!(v.is_violated());
        let g = fixture("figA12").unwrap().graph;
        for spec in [SemanticsSpec::eb(), SemanticsSpec::ebt()] {
            let v = check_counterfactuality(&GRAD, &g, &spec, "a", false, &o()).unwrap();
            assert!(v.is_violated());
        }
    }

    #[test]
    fn consistency_examples() {
        let fx = fixture("fig6-qe").unwrap();
        let qe = SemanticsSpec::qe();
        let v = check_consistency(&SetFunction::Removal, &fx.graph, &qe, "a", &o()).unwrap();
        assert!(v.is_violated());
        let w = v.witness.as_ref().unwrap();
        assert_eq!((names(w, 0), names(w, 1)), (vec!["d"], vec!["f"]));
        assert!(replay(&v, &SetFunction::Removal, &qe, &o()).unwrap().unwrap() > 1e-9);
        let fx = fixture("fig6-shapley-qe").unwrap();
        assert!(check_consistency(&SetFunction::Shapley, &fx.graph, &qe, "a", &o()).unwrap().is_violated());
        for p in Preset::ALL {
            let v = check_consistency(&GRAD, &fx.graph, &p.spec(), "a", &o()).unwrap();
            assert_eq!(v.status, Status::SatisfiedOnInstance);
        }
    }

    #[test]
    fn monotonicity_examples() {
        let g = fixture("fig7").unwrap().graph;
        for p in Preset::ALL {
            let v = check_monotonicity(&SetFunction::Removal, &g, &p.spec(), "a", &o()).unwrap();
            let w = v.witness.as_ref().unwrap();
            assert_eq!((names(w, 0), names(w, 1)), (vec!["c"], vec!["b", "c"]));
            assert!(replay(&v, &SetFunction::Removal, &p.spec(), &o()).unwrap().unwrap() > 1e-9);
            assert_eq!(check_monotonicity(&GRAD, &g, &p.spec(), "a", &o()).unwrap().status, Status::SatisfiedOnInstance);
        }
    }
}
