//! Single-argument versions of the existence, directionality and
//! counterfactuality principles.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{PrincipleId, PrincipleVerdict, Status, Witness, named};
use crate::contribution::{ContributionConfig, SingleKind, sign, single_ctrb};
use crate::error::Result;
use crate::graph::{ArgumentId, Qbag};
use crate::semantics::{SemanticsSpec, evaluate};

struct Ctx<'a> {
    g: &'a Qbag,
    spec: &'a SemanticsSpec,
    a: &'a str,
    tol: f64,
}

impl Ctx<'_> {
    fn others(&self) -> Vec<&str> {
        self.g.ids().iter().map(ArgumentId::as_str).filter(|x| *x != self.a).collect()
    }

    fn ctrb(&self, kind: SingleKind, x: &str) -> Result<f64> {
        Ok(single_ctrb(kind, self.g, self.spec, x, self.a, ContributionConfig::default())?.value)
    }

    fn sigma_tau(&self) -> Result<(f64, f64)> {
        let i = self.g.require(self.a)?;
        Ok((evaluate(self.g, self.spec)?.values()[i], self.g.tau()[i]))
    }

    fn violated(&self, p: PrincipleId, sets: Vec<Vec<ArgumentId>>, values: &[(&str, f64)], margin: f64, note: &str, cases: u64) -> PrincipleVerdict {
        PrincipleVerdict {
            principle: p,
            status: Status::ViolatedOnInstance,
            witness: Some(Witness {
                graph: self.g.clone(),
                topic: ArgumentId::new(self.a),
                sets,
                partition: None,
                values: named(values),
                margin,
                note: note.to_string(),
            }),
            cases_examined: cases,
            violations_found: 1,
        }
    }
}

fn single(x: &str) -> Vec<Vec<ArgumentId>> {
    vec![vec![ArgumentId::new(x).expect("non-empty id")]]
}

/// σ(a) ≠ τ(a) implies some argument has a non-zero contribution.
pub fn contribution_existence(kind: SingleKind, g: &Qbag, spec: &SemanticsSpec, a: &str, tol: f64) -> Result<PrincipleVerdict> {
    let cx = Ctx { g, spec, a, tol };
    let p = PrincipleId::ContributionExistence;
    let (sigma, tau) = cx.sigma_tau()?;
    if (sigma - tau).abs() <= tol {
        return Ok(PrincipleVerdict::satisfied(p, 0));
    }
    let mut cases = 0;
    for x in cx.others() {
        cases += 1;
        if cx.ctrb(kind, x)?.abs() > tol {
            return Ok(PrincipleVerdict::satisfied(p, cases));
        }
    }
    Ok(cx.violated(p, vec![], &[("sigma", sigma), ("tau", tau)], (sigma - tau).abs(), "every argument contributes zero", cases))
}

/// The contributions of all other arguments sum to σ(a) − τ(a).
pub fn quantitative_contribution_existence(kind: SingleKind, g: &Qbag, spec: &SemanticsSpec, a: &str, tol: f64) -> Result<PrincipleVerdict> {
    let cx = Ctx { g, spec, a, tol };
    let p = PrincipleId::QuantitativeContributionExistence;
    let (sigma, tau) = cx.sigma_tau()?;
    let mut sum = 0.0;
    let others = cx.others();
    for x in &others {
        sum += cx.ctrb(kind, x)?;
    }
    let miss = (sum - (sigma - tau)).abs();
    if miss > tol {
        return Ok(cx.violated(p, vec![], &[("sum", sum), ("sigma-minus-tau", sigma - tau)], miss, "contributions do not sum to σ(a) − τ(a)", others.len() as u64));
    }
    Ok(PrincipleVerdict::satisfied(p, others.len() as u64))
}

/// Arguments with no path to a contribute zero.
pub fn directionality(kind: SingleKind, g: &Qbag, spec: &SemanticsSpec, a: &str, tol: f64) -> Result<PrincipleVerdict> {
    let cx = Ctx { g, spec, a, tol };
    let p = PrincipleId::Directionality;
    let mut cases = 0;
    for x in cx.others() {
        if g.can_reach(x, a)? {
            continue;
        }
        cases += 1;
        let v = cx.ctrb(kind, x)?;
        if v.abs() > tol {
            return Ok(cx.violated(p, single(x), &[("contribution", v)], v.abs(), "x cannot reach a", cases));
        }
    }
    Ok(PrincipleVerdict::satisfied(p, cases))
}

/// The contribution agrees with removal, in sign (`quantitative = false`)
/// or in value.
pub fn counterfactuality(kind: SingleKind, g: &Qbag, spec: &SemanticsSpec, a: &str, quantitative: bool, tol: f64) -> Result<PrincipleVerdict> {
    let cx = Ctx { g, spec, a, tol };
    let p = if quantitative { PrincipleId::QuantitativeCounterfactuality } else { PrincipleId::Counterfactuality };
    let mut cases = 0;
    for x in cx.others() {
        cases += 1;
        let s = cx.ctrb(kind, x)?;
        let delta = cx.ctrb(SingleKind::Removal, x)?;
        let margin = if quantitative {
            (s - delta).abs()
        } else if sign(s, cx.tol) != sign(delta, cx.tol) {
            s.abs().max(delta.abs())
        } else {
            0.0
        };
        if margin > cx.tol {
            return Ok(cx.violated(p, single(x), &[("contribution", s), ("removal-delta", delta)], margin, "disagrees with removal", cases));
        }
    }
    Ok(PrincipleVerdict::satisfied(p, cases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    #[test]
    fn removal_on_fig1a() {
        let g = fixture("fig1a").unwrap().graph;
        let qe = SemanticsSpec::qe();
        assert!(contribution_existence(SingleKind::Removal, &g, &qe, "a", 1e-9).unwrap().satisfied_status());
        assert!(counterfactuality(SingleKind::Removal, &g, &qe, "a", true, 1e-9).unwrap().satisfied_status());
        assert!(directionality(SingleKind::Shapley, &g, &qe, "c", 1e-9).unwrap().satisfied_status());
        assert!(quantitative_contribution_existence(SingleKind::Removal, &g, &qe, "a", 1e-9).unwrap().is_violated());
    }

    #[test]
    fn gradient_existence_fails_on_fig3() {
        let g = fixture("fig3").unwrap().graph;
        let v = contribution_existence(SingleKind::Gradient, &g, &SemanticsSpec::dfquad(), "a", 1e-9).unwrap();
        assert!(v.is_violated());
    }

    impl PrincipleVerdict {
        fn satisfied_status(&self) -> bool {
            self.status == Status::SatisfiedOnInstance
        }
    }
}
