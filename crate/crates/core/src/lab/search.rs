//! Seeded random QBAGs and counterexample search with greedy shrinking.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checks::check;
use super::{PrincipleId, PrincipleVerdict, SearchConfig, Status};
use crate::contribution::{ContributionConfig, Scenario, SetContribution};
use crate::error::Result;
use crate::graph::{Qbag, QbagDraft};
use crate::semantics::SemanticsSpec;

fn label(i: usize) -> String {
    let c = char::from(b'a' + (i % 26) as u8);
    if i < 26 { c.into() } else { alloc::format!("{c}{}", i / 26) }
}

/// A random acyclic QBAG on `n` arguments named `a`, `b`, …. Edges follow a
/// random permutation (so acyclicity holds by construction), each present
/// with probability `p` and equally likely to be an attack or a support.
/// Initial strengths are drawn uniformly from `grid`.
pub fn random_qbag<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64, grid: &[f64]) -> Qbag {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut draft = QbagDraft::new();
    for i in 0..n {
        let tau = if grid.is_empty() { 0.5 } else { grid[rng.random_range(0..grid.len())] };
        draft = draft.argument(&label(i), tau);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                let (from, to) = (label(perm[i]), label(perm[j]));
                draft = if rng.random_bool(0.5) { draft.attack(&from, &to) } else { draft.support(&from, &to) };
            }
        }
    }
    draft.build().expect("random graphs are valid by construction")
}

/// `count` random graphs with 2..=`max_args` arguments, reproducible from `seed`.
pub fn random_corpus(seed: u64, count: usize, max_args: usize, grid: &[f64]) -> Vec<Qbag> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=max_args.max(2));
            let p = [0.2, 0.4, 0.6][rng.random_range(0..3)];
            random_qbag(&mut rng, n, p, grid)
        })
        .collect()
}

fn violation(principle: PrincipleId, f: &dyn SetContribution, g: &Qbag, spec: &SemanticsSpec, topic: &str, cfg: &SearchConfig) -> Result<Option<PrincipleVerdict>> {
    let cc = ContributionConfig { budget: cfg.budget, ..ContributionConfig::default() };
    let mut sc = Scenario::new(g, spec, topic, cc)?;
    let v = check(principle, f, &mut sc, &cfg.check)?;
    Ok(if v.is_violated() { Some(v) } else { None })
}

/// Greedily drops arguments, then edges, while the violation persists.
fn shrink(
    principle: PrincipleId,
    f: &dyn SetContribution,
    spec: &SemanticsSpec,
    topic: &str,
    cfg: &SearchConfig,
    mut g: Qbag,
    mut best: PrincipleVerdict,
) -> Result<PrincipleVerdict> {
    loop {
        let mut progressed = false;
        for id in g.ids().to_vec() {
            if id.as_str() == topic {
                continue;
            }
            let h = g.restrict(g.ids().iter().filter(|k| **k != id).map(|k| k.as_str()))?;
            if let Some(v) = violation(principle, f, &h, spec, topic, cfg)? {
                (g, best, progressed) = (h, v, true);
                break;
            }
        }
        if progressed {
            continue;
        }
        let draft = g.to_draft();
        let edges = draft.attacks.len() + draft.supports.len();
        for e in 0..edges {
            let mut d = draft.clone();
            if e < d.attacks.len() {
                d.attacks.remove(e);
            } else {
                d.supports.remove(e - d.attacks.len());
            }
            let h = d.build()?;
            if let Some(v) = violation(principle, f, &h, spec, topic, cfg)? {
                (g, best, progressed) = (h, v, true);
                break;
            }
        }
        if !progressed {
            return Ok(best);
        }
    }
}

/// Checks `principle` on every topic of a seeded random corpus; the first
/// violation found is shrunk to a small witness. Deterministic in `cfg.seed`.
/// Without a violation the verdict is `SatisfiedOnInstance` if every corpus
/// instance was checked exhaustively, `Inconclusive` otherwise; either way it
/// says nothing beyond the corpus.
pub fn search_counterexample(
    principle: PrincipleId,
    f: &dyn SetContribution,
    spec: &SemanticsSpec,
    cfg: &SearchConfig,
) -> Result<PrincipleVerdict> {
    cfg.validate()?;
    let mut cases = 0;
    let mut sampled = false;
    for g in random_corpus(cfg.seed, cfg.graphs, cfg.max_arguments, &cfg.grid) {
        for topic in g.ids() {
            let cc = ContributionConfig { budget: cfg.budget, ..ContributionConfig::default() };
            let mut sc = Scenario::new(&g, spec, topic.as_str(), cc)?;
            let v = check(principle, f, &mut sc, &cfg.check)?;
            cases += v.cases_examined;
            sampled |= v.status == Status::Inconclusive;
            if v.status == Status::ViolatedOnInstance {
                let topic = String::from(topic.as_str());
                let shrunk = shrink(principle, f, spec, &topic, cfg, g.clone(), v)?;
                return Ok(PrincipleVerdict { cases_examined: cases, ..shrunk });
            }
        }
    }
    Ok(if sampled {
        PrincipleVerdict::inconclusive(principle, cases)
    } else {
        PrincipleVerdict::satisfied(principle, cases)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contribution::{GradientAggregator, SetFunction};
    use crate::lab::CheckOptions;

    const GRAD: SetFunction = SetFunction::Gradient(GradientAggregator::Max);

    #[test]
    fn corpus_is_reproducible_and_valid() {
        let grid = [0.0, 0.5, 1.0];
        let a = random_corpus(7, 20, 6, &grid);
        assert_eq!(a, random_corpus(7, 20, 6, &grid));
        assert_ne!(a, random_corpus(8, 20, 6, &grid));
        for g in &a {
            assert!((2..=6).contains(&g.len()));
            assert!(g.tau().iter().all(|t| grid.contains(t)));
            assert!(crate::graph::validate(&g.to_draft()).ok);
        }
    }

    #[test]
    fn finds_and_shrinks_monotonicity_violation() {
        let cfg = SearchConfig { graphs: 60, ..SearchConfig::default() };
        let v = search_counterexample(PrincipleId::Monotonicity, &SetFunction::Removal, &SemanticsSpec::qe(), &cfg).unwrap();
        assert!(v.is_violated());
        let w = v.witness.unwrap();
        assert!(w.margin > 1e-9);
        // locally minimal: dropping any further argument or edge loses the violation
        let topic = w.topic.as_ref().unwrap().as_str();
        let qe = SemanticsSpec::qe();
        for id in w.graph.ids().iter().filter(|k| k.as_str() != topic) {
            let h = w.graph.restrict(w.graph.ids().iter().filter(|k| *k != id).map(|k| k.as_str())).unwrap();
            assert!(violation(PrincipleId::Monotonicity, &SetFunction::Removal, &h, &qe, topic, &cfg).unwrap().is_none());
        }
        let d = w.graph.to_draft();
        for e in 0..d.attacks.len() {
            let mut d2 = d.clone();
            d2.attacks.remove(e);
            let h = d2.build().unwrap();
            assert!(violation(PrincipleId::Monotonicity, &SetFunction::Removal, &h, &qe, topic, &cfg).unwrap().is_none());
        }
    }

    #[test]
    fn no_counterexample_over_corpus() {
        let cfg = SearchConfig { graphs: 10, max_arguments: 4, ..SearchConfig::default() };
        let v = search_counterexample(PrincipleId::Directionality, &SetFunction::Shapley, &SemanticsSpec::eb(), &cfg).unwrap();
        assert_eq!(v.status, Status::SatisfiedOnInstance);
        assert!(v.witness.is_none() && v.cases_examined > 0);
        // beyond the pair bound consistency is sampled
        let cfg = SearchConfig { graphs: 5, max_arguments: 10, check: CheckOptions { pair_bound: 2, ..CheckOptions::default() }, ..cfg };
        let v = search_counterexample(PrincipleId::Consistency, &GRAD, &SemanticsSpec::qe(), &cfg).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
    }

    #[test]
    fn consistency_found_with_seed_one() {
        let cfg = SearchConfig { seed: 1, ..SearchConfig::default() };
        let a = search_counterexample(PrincipleId::Consistency, &SetFunction::Removal, &SemanticsSpec::qe(), &cfg).unwrap();
        assert!(a.is_violated());
        let w = a.witness.as_ref().unwrap();
        let m = crate::lab::replay(&a, &SetFunction::Removal, &SemanticsSpec::qe(), &cfg.check).unwrap();
        assert!(m.unwrap() > 1e-9, "{w:?}");
        assert_eq!(a, search_counterexample(PrincipleId::Consistency, &SetFunction::Removal, &SemanticsSpec::qe(), &cfg).unwrap());
    }
}
