//! Sign maps: contribution signs while two initial strengths sweep [0,1]².

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{ContributionConfig, Scenario, SetContribution, SetContributor};
use crate::error::{Error, Result};
use crate::graph::{ArgumentId, Qbag};
use crate::semantics::SemanticsSpec;

/// −1, 0 or 1, with |v| ≤ `tol` counted as 0.
pub fn sign(v: f64, tol: f64) -> i8 {
    if v > tol {
        1
    } else if v < -tol {
        -1
    } else {
        0
    }
}

/// Two swept arguments and the grid step.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub first: String,
    pub second: String,
    pub step: f64,
}

impl Sweep {
    /// Grid values in [0,1]. When 1/step is (numerically) an integer n the
    /// points are k/n, so 0.55 comes out as the double nearest 0.55.
    pub fn grid(&self) -> Result<Vec<f64>> {
        let step = self.step;
        if !(step > 0.0 && step <= 0.5) {
            return Err(Error::InvalidSweep(format!("step {step} is outside (0, 0.5]")));
        }
        let inv = 1.0 / step;
        let n = libm::round(inv);
        if (inv - n).abs() < 1e-9 {
            let n = n as u32;
            return Ok((0..=n).map(|k| f64::from(k) / f64::from(n)).collect());
        }
        let mut out = Vec::new();
        let mut k = 0u32;
        loop {
            let v = f64::from(k) * step;
            if v > 1.0 + 1e-12 {
                break;
            }
            out.push(v.min(1.0));
            k += 1;
        }
        Ok(out)
    }
}

/// Grid of signs; one row per (ε₁, ε₂), one column per contributor set.
#[derive(Clone, Debug, PartialEq)]
pub struct SignMap {
    pub labels: Vec<String>,
    pub rows: Vec<(f64, f64, Vec<i8>)>,
}

/// `{d,f}`-style label.
pub fn set_label<'a>(members: impl IntoIterator<Item = &'a ArgumentId>) -> String {
    let names: Vec<&str> = members.into_iter().map(ArgumentId::as_str).collect();
    format!("{{{}}}", names.join(","))
}

/// For each grid point set τ(first)←ε₁, τ(second)←ε₂ and record the sign of
/// every listed contribution under `function`.
pub fn sign_map(
    g: &Qbag,
    spec: &SemanticsSpec,
    topic: &str,
    sets: &[SetContributor],
    sweep: &Sweep,
    function: &dyn SetContribution,
    tol: f64,
) -> Result<SignMap> {
    g.require(topic)?;
    g.require(&sweep.first)?;
    g.require(&sweep.second)?;
    if sweep.first == sweep.second {
        return Err(Error::InvalidSweep("the two swept arguments must differ".to_string()));
    }
    if sweep.first == topic || sweep.second == topic {
        return Err(Error::InvalidSweep("the topic cannot be swept".to_string()));
    }
    let grid = sweep.grid()?;
    let mut masks = Vec::with_capacity(sets.len());
    for s in sets {
        if s.members.iter().any(|m| m.as_str() == topic) {
            return Err(Error::TopicInContributor(topic.to_string()));
        }
        masks.push(g.mask(s.members.iter().map(ArgumentId::as_str))?);
    }
    let labels = sets.iter().map(|s| set_label(&s.members)).collect();
    let mut rows = Vec::with_capacity(grid.len() * grid.len());
    for &e1 in &grid {
        let g1 = g.set_initial_strength(&sweep.first, e1)?;
        for &e2 in &grid {
            let h = g1.set_initial_strength(&sweep.second, e2)?;
            let mut sc = Scenario::new(&h, spec, topic, ContributionConfig::default())?;
            let signs = masks
                .iter()
                .map(|m| function.value(&mut sc, m).map(|v| sign(v, tol)))
                .collect::<Result<Vec<_>>>()?;
            rows.push((e1, e2, signs));
        }
    }
    Ok(SignMap { labels, rows })
}
