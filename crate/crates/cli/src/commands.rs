use std::io::Write;

use qbag_core::claims::{self, ClaimOutcome};
use qbag_core::fixtures;
use qbag_core::lab::{self, CheckOptions, run_matrix, search_counterexample};
use qbag_core::review::run_pipeline;
use qbag_core::{
    ContributionConfig, MonteCarlo, PrincipleId, PrincipleVerdict, Scenario, SearchConfig,
    SetContributor, SetFunction, evaluate, sign_map,
};
use qbag_core::contribution::Sweep;

use crate::args::*;
use crate::error::CliError;
use crate::format::{self, load_graph, load_semantics};
use crate::report::*;

/// Environment variable overriding the evaluation budget of exact Shapley sums.
pub const BUDGET_VAR: &str = "QBAG_EVAL_BUDGET";

type Out<'a> = &'a mut dyn Write;

fn io(e: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source: e }
}

fn json<T: serde::Serialize>(out: Out<'_>, v: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| io(e.into()))?;
    writeln!(out).map_err(io)
}

fn budget() -> Result<u64, CliError> {
    match std::env::var(BUDGET_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{BUDGET_VAR}={s} is not a non-negative integer"))),
        Err(_) => Ok(ContributionConfig::default().budget),
    }
}

fn members(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|m| !m.is_empty()).collect()
}

fn topic_of(explicit: &Option<String>, fixture_topic: Option<&'static str>) -> Result<String, CliError> {
    explicit
        .clone()
        .or(fixture_topic.map(str::to_string))
        .ok_or_else(|| CliError::Usage("--topic is required for graph files".into()))
}

pub fn run(cli: Cli, out: Out<'_>) -> Result<(), CliError> {
    match cli.command {
        Command::Eval(a) => eval(a, out),
        Command::Contrib(a) => contrib(a, out),
        Command::Principles(a) => principles(a, out),
        Command::Signmap(a) => signmap(a, out),
        Command::Pipeline(a) => pipeline(a, out),
        Command::Reproduce(a) => reproduce(a, out),
        Command::Fixture(a) => fixture(a, out),
    }
}

fn eval(a: EvalArgs, out: Out<'_>) -> Result<(), CliError> {
    let (g, _) = load_graph(&a.graph)?;
    let spec = load_semantics(&a.semantics)?;
    let sigma = evaluate(&g, &spec)?;
    let report = EvalOutput::new(&g, spec.label(), &sigma);
    if a.json {
        return json(out, &report);
    }
    if a.csv {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["id", "initial_strength", "final_strength", "display"]).map_err(|e| io(e.into()))?;
        for r in &report.arguments {
            w.write_record([r.id.clone(), format!("{:?}", r.initial_strength), format!("{:?}", r.final_strength), r.display.clone()])
                .map_err(|e| io(e.into()))?;
        }
        return w.flush().map_err(io);
    }
    out.write_all(report.text().as_bytes()).map_err(io)
}

fn contrib(a: ContribArgs, out: Out<'_>) -> Result<(), CliError> {
    let (g, fx_topic) = load_graph(&a.graph)?;
    let spec = load_semantics(&a.semantics)?;
    let function = SetFunction::parse(&a.function)?;
    let topic = topic_of(&a.topic, fx_topic)?;
    let set = members(&a.set);
    if a.partition.is_some() && function != SetFunction::Shapley {
        return Err(qbag_core::Error::InvalidConfig("--partition only applies to --function shapley".into()).into());
    }
    let config = ContributionConfig {
        budget: budget()?,
        monte_carlo: a.monte_carlo.map(|samples| MonteCarlo { samples, seed: a.seed }),
    };
    let mut sc = Scenario::new(&g, &spec, &topic, config)?;
    let x = g.mask(set.iter().copied())?;
    if x.contains(sc.topic()) {
        return Err(qbag_core::Error::TopicInContributor(topic).into());
    }
    let blocks: Option<Vec<Vec<&str>>> = a.partition.as_deref().map(|p| p.split('|').map(members).collect());
    let (value, standard_error) = match (&blocks, function) {
        (Some(blocks), _) => {
            let masks = blocks.iter().map(|b| g.mask(b.iter().copied())).collect::<Result<Vec<_>, _>>()?;
            sc.partition_shapley(&x, &masks)?
        }
        (None, SetFunction::Removal) => (sc.removal(&x)?, None),
        (None, SetFunction::IntrinsicRemoval) => (sc.intrinsic_removal(&x)?, None),
        (None, SetFunction::Shapley) => sc.shapley(&x)?,
        (None, SetFunction::Gradient(psi)) => (sc.gradient(&x, psi)?, None),
    };
    let mut sorted: Vec<String> = x.ones().map(|i| g.id(i).to_string()).collect();
    sorted.sort();
    let report = ContribOutput {
        function: if blocks.is_some() { "partition-shapley".into() } else { function.to_string() },
        semantics: spec.label(),
        topic,
        set: sorted,
        partition: blocks.map(|bs| bs.iter().map(|b| b.iter().map(|s| s.to_string()).collect()).collect()),
        value,
        evaluations: sc.evaluations(),
        standard_error,
    };
    if a.json { json(out, &report) } else { out.write_all(report.text().as_bytes()).map_err(io) }
}

/// `seed=7,n=5,graphs=200`
fn parse_random(spec: &str) -> Result<SearchConfig, CliError> {
    let mut cfg = SearchConfig::default();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| CliError::Usage(format!("--random: expected key=value, got `{part}`")))?;
        let bad = || CliError::Usage(format!("--random: bad value for `{k}`: `{v}`"));
        match k.trim() {
            "seed" => cfg.seed = v.trim().parse().map_err(|_| bad())?,
            "n" => cfg.max_arguments = v.trim().parse().map_err(|_| bad())?,
            "graphs" => cfg.graphs = v.trim().parse().map_err(|_| bad())?,
            _ => return Err(CliError::Usage(format!("--random: unknown key `{k}` (seed, n, graphs)"))),
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn principle_list(name: &str) -> Result<Vec<PrincipleId>, CliError> {
    if name == "all" { Ok(PrincipleId::ALL.to_vec()) } else { Ok(vec![name.parse()?]) }
}

fn principles(a: PrinciplesArgs, out: Out<'_>) -> Result<(), CliError> {
    let spec = load_semantics(&a.semantics)?;
    let function = SetFunction::parse(&a.function)?;
    let list = principle_list(&a.principle)?;
    let check = CheckOptions { seed: a.sample_seed, ..CheckOptions::default() };
    let budget = budget()?;
    let mut verdicts: Vec<(PrincipleVerdict, Option<String>)> = Vec::new();
    if let Some(r) = &a.random {
        let cfg = SearchConfig { budget, check, ..parse_random(r)? };
        for p in list {
            verdicts.push((search_counterexample(p, &function, &spec, &cfg)?, None));
        }
    } else {
        let (g, fx_topic) = load_graph(a.graph.as_deref().expect("clap requires GRAPH without --random"))?;
        let topics: Vec<String> = match (&a.topic, fx_topic) {
            (Some(t), _) => vec![t.clone()],
            (None, Some(t)) => vec![t.to_string()],
            (None, None) => g.ids().iter().map(|i| i.as_str().to_string()).collect(),
        };
        for t in topics {
            let mut sc = Scenario::new(&g, &spec, &t, ContributionConfig { budget, monte_carlo: None })?;
            for &p in &list {
                verdicts.push((lab::check(p, &function, &mut sc, &check)?, Some(t.clone())));
            }
        }
    }
    let label = spec.label();
    let report = PrinciplesOutput {
        verdicts: verdicts.iter().map(|(v, t)| VerdictOutput::new(v, &function, &label, t.as_deref())).collect(),
    };
    if a.json {
        json(out, &report)?;
    } else {
        for v in &report.verdicts {
            out.write_all(v.text().as_bytes()).map_err(io)?;
        }
    }
    let violated = verdicts.iter().filter(|(v, _)| v.is_violated()).count();
    if a.expect_satisfied && violated > 0 {
        return Err(CliError::Expectation(format!("{violated} violation(s) found, expected none")));
    }
    if a.expect_violated && violated == 0 {
        return Err(CliError::Expectation("no violation found, expected one".into()));
    }
    Ok(())
}

fn signmap(a: SignmapArgs, out: Out<'_>) -> Result<(), CliError> {
    let (g, fx_topic) = load_graph(&a.graph)?;
    let spec = load_semantics(&a.semantics)?;
    let function = SetFunction::parse(&a.function)?;
    let topic = topic_of(&a.topic, fx_topic)?;
    let swept = members(&a.sweep);
    let [first, second] = swept[..] else {
        return Err(CliError::Usage(format!("--sweep needs exactly two ids, got `{}`", a.sweep)));
    };
    let sets: Vec<SetContributor> = a.sets.split('|').map(|s| SetContributor::new(members(s), &topic)).collect();
    if sets.iter().any(|s| s.members.is_empty()) {
        return Err(qbag_core::Error::EmptyContributor.into());
    }
    let sweep = Sweep { first: first.into(), second: second.into(), step: a.step };
    let map = sign_map(&g, &spec, &topic, &sets, &sweep, &function, qbag_core::DEFAULT_TOLERANCE)?;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["eps1".to_string(), "eps2".to_string()];
    header.extend(map.labels.iter().cloned());
    w.write_record(&header).map_err(|e| io(e.into()))?;
    for (e1, e2, signs) in &map.rows {
        let mut rec = vec![e1.to_string(), e2.to_string()];
        rec.extend(signs.iter().map(i8::to_string));
        w.write_record(&rec).map_err(|e| io(e.into()))?;
    }
    w.flush().map_err(io)
}

fn pipeline(a: PipelineArgs, out: Out<'_>) -> Result<(), CliError> {
    let (text, _) = load_graph(&a.graph)?;
    let m = format::load_manifest(&a.manifest)?;
    let aspects: Vec<&str> = m.aspects.iter().map(String::as_str).collect();
    let groups: Vec<Vec<&str>> = m.groups.iter().map(|g| g.iter().map(String::as_str).collect()).collect();
    let r = run_pipeline(&text, &aspects, &m.decision, m.decision_tau, &groups)?;
    let report = PipelineOutput::new(&r);
    if a.json {
        return json(out, &report);
    }
    let csv = report.csv().map_err(|e| io(e.into()))?;
    out.write_all(csv.as_bytes()).map_err(io)
}

fn reproduce(a: ReproduceArgs, out: Out<'_>) -> Result<(), CliError> {
    let mut claim_ids: Vec<&str> = Vec::new();
    let mut with_matrix = a.all;
    if a.all {
        claim_ids.extend(fixtures::ids().iter().copied());
    }
    for id in &a.ids {
        if id == "matrix" {
            with_matrix = true;
        } else if let Some(&known) = fixtures::ids().iter().find(|k| **k == id.as_str()) {
            if !claim_ids.contains(&known) {
                claim_ids.push(known);
            }
        } else {
            return Err(CliError::Usage(format!("unknown fixture id `{id}` (see `qbag fixture --list`)")));
        }
    }
    let mut outcomes: Vec<ClaimOutcome> = Vec::new();
    for id in &claim_ids {
        for c in claims::claims_for(id) {
            outcomes.push(claims::check_claim(c)?);
        }
    }
    let matrix = if with_matrix {
        let cfg = SearchConfig { graphs: a.graphs, seed: a.seed, budget: budget()?, ..SearchConfig::default() };
        Some(run_matrix(&cfg)?)
    } else {
        None
    };
    let reproduced = outcomes.iter().filter(|o| o.reproduced).count();
    let matrix_ok = matrix.as_ref().is_none_or(|m| m.all_ok());
    let ok = reproduced == outcomes.len() && matrix_ok;
    let report = ReproduceOutput {
        claims: outcomes.iter().map(ClaimOutput::from).collect(),
        matrix: matrix.as_ref().map(MatrixOutput::new),
        reproduced,
        total: outcomes.len(),
        ok,
    };
    if a.json {
        json(out, &report)?;
    } else {
        for c in &report.claims {
            out.write_all(c.text().as_bytes()).map_err(io)?;
        }
        if !claim_ids.is_empty() {
            writeln!(out, "claims: {reproduced}/{} reproduced", outcomes.len()).map_err(io)?;
        }
        if let Some(m) = &matrix {
            let mismatches = m.mismatches().count();
            writeln!(out, "matrix: {} cells, {mismatches} mismatches", m.cells.len()).map_err(io)?;
            out.write_all(matrix_grid(m).as_bytes()).map_err(io)?;
            for c in m.mismatches() {
                writeln!(out, "MISMATCH {} [{}, {}]", c.principle, c.function, c.semantics.name()).map_err(io)?;
            }
        }
    }
    if ok {
        Ok(())
    } else {
        let failed = outcomes.len() - reproduced;
        Err(CliError::NotReproduced(format!(
            "{failed} claim(s) not reproduced{}",
            if matrix_ok { "" } else { "; matrix has mismatches" }
        )))
    }
}

fn fixture(a: FixtureArgs, out: Out<'_>) -> Result<(), CliError> {
    if a.list {
        for fx in fixtures::all() {
            writeln!(out, "{:<20} topic={:<4} {}", fx.id, fx.topic, fx.title).map_err(io)?;
        }
        return Ok(());
    }
    let id = a.id.expect("clap requires an id without --list");
    let fx = fixtures::fixture(&id).ok_or_else(|| CliError::Usage(format!("unknown fixture id `{id}`")))?;
    writeln!(out, "{}", format::write_graph(&fx.graph)).map_err(io)
}
