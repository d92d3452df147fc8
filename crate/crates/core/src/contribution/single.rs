//! Single-argument contribution functions.
//!
//! Deliberately written against the public surgery operations and
//! [`evaluate`] rather than the set functions' memoized fast path, so that
//! comparing the two is a genuine cross-check.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{ContributionConfig, ContributionResult, FunctionId, GradientAggregator, SingleKind};
use crate::error::{Error, Result};
use crate::graph::Qbag;
use crate::semantics::{SemanticsSpec, evaluate, evaluate_dual};

fn sigma_of(g: &Qbag, spec: &SemanticsSpec, a: &str) -> Result<f64> {
    Ok(evaluate(g, spec)?.get(a).expect("topic kept"))
}

fn without<'a>(g: &'a Qbag, dropped: &[&str]) -> Vec<&'a str> {
    g.ids().iter().map(|i| i.as_str()).filter(|i| !dropped.contains(i)).collect()
}

/// Contribution of the single argument `x` to topic `a`.
pub fn single_ctrb(
    kind: SingleKind,
    g: &Qbag,
    spec: &SemanticsSpec,
    x: &str,
    a: &str,
    config: ContributionConfig,
) -> Result<ContributionResult> {
    g.require(x)?;
    g.require(a)?;
    if x == a {
        return Err(Error::TopicInContributor(a.to_string()));
    }
    let mut evaluations = 0u64;
    let mut sigma = |h: &Qbag| {
        evaluations += 1;
        sigma_of(h, spec, a)
    };
    let (value, function) = match kind {
        SingleKind::Removal => {
            let full = sigma(g)?;
            (full - sigma(&g.restrict(without(g, &[x]))?)?, FunctionId::Removal)
        }
        SingleKind::IntrinsicRemoval => {
            let detached = sigma(&g.detach_incoming([x])?)?;
            (detached - sigma(&g.restrict(without(g, &[x]))?)?, FunctionId::IntrinsicRemoval)
        }
        SingleKind::Shapley => {
            // Σ_{S ⊆ A\{x,a}} |S|!(n−|S|−1)!/n! (σ_{g↓A\S}(a) − σ_{g↓A\(S∪{x})}(a)), n = |A\{a}|
            let others: Vec<&str> = without(g, &[x, a]);
            let n = others.len() + 1;
            let required = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
            if required > u128::from(config.budget) {
                return Err(Error::BudgetExceeded { required, budget: config.budget });
            }
            let mut fact = vec![1.0f64; n + 1];
            for i in 1..=n {
                fact[i] = fact[i - 1] * i as f64;
            }
            let mut total = 0.0;
            for mask in 0u64..(1u64 << others.len()) {
                let s: Vec<&str> =
                    others.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, o)| *o).collect();
                let weight = fact[s.len()] * fact[n - s.len() - 1] / fact[n];
                let mut dropped = s.clone();
                let keep_s = without(g, &dropped);
                dropped.push(x);
                let keep_sx = without(g, &dropped);
                total += weight * (sigma(&g.restrict(keep_s)?)? - sigma(&g.restrict(keep_sx)?)?);
            }
            (total, FunctionId::Shapley)
        }
        SingleKind::Gradient => {
            evaluations += 1;
            let d = evaluate_dual(g, spec, x)?.derivative(a).expect("topic present");
            (d, FunctionId::Gradient(GradientAggregator::Max))
        }
    };
    Ok(ContributionResult {
        value,
        function,
        semantics: spec.label(),
        contributor: vec![g.ids()[g.require(x)?].clone()],
        topic: g.ids()[g.require(a)?].clone(),
        evaluations,
        standard_error: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::graph::QbagDraft;
    use crate::semantics::Preset;

    fn ctrb(kind: SingleKind, g: &Qbag, spec: &SemanticsSpec, x: &str, a: &str) -> f64 {
        single_ctrb(kind, g, spec, x, a, ContributionConfig::default()).unwrap().value
    }

    #[test]
    fn table4_single_values() {
        let g = fixture("table4").unwrap().graph;
        let spec = SemanticsSpec::dfquad();
        assert!((ctrb(SingleKind::Removal, &g, &spec, "NOV", "D") - 0.12).abs() < 1e-12);
        assert!((ctrb(SingleKind::Gradient, &g, &spec, "CMP", "D") + 0.25).abs() < 1e-12);
        assert!((ctrb(SingleKind::Shapley, &g, &spec, "NOV", "D") - 0.21).abs() < 1e-12);
    }

    #[test]
    fn shapley_on_two_arguments_is_removal() {
        let g = QbagDraft::new().argument("a", 0.4).argument("b", 0.7).attack("b", "a").build().unwrap();
        for p in Preset::ALL {
            let spec = p.spec();
            assert_eq!(
                ctrb(SingleKind::Shapley, &g, &spec, "b", "a"),
                ctrb(SingleKind::Removal, &g, &spec, "b", "a")
            );
        }
    }

    #[test]
    fn rejects_topic_as_contributor() {
        let g = fixture("fig3").unwrap().graph;
        let r = single_ctrb(SingleKind::Removal, &g, &SemanticsSpec::qe(), "a", "a", ContributionConfig::default());
        assert!(matches!(r, Err(Error::TopicInContributor(_))));
    }
}
