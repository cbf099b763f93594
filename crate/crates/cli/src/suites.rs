//! Verification suites over enumerated instances, run on a worker pool.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sandpile_core::enumerate::{describe, is_cycle_graph, is_multi_edge, plane_graphs, ribbon_graphs};
use sandpile_core::matroid::{conjecture_instances, examine, RegularMatroid};
use sandpile_core::moves::{
    leaf_swap_reachable, source_turn_moves, source_turn_reachable, telescope, verify_telescope_equivalence, StepSetup,
    TelescopeSpec,
};
use sandpile_core::rotor::{check_cycle_reversal, unicycle_summary};
use sandpile_core::torsor::{
    verify_consistency, verify_sink_invariance, verify_table, ActionTable, PairMode, TorsorAction, Variant,
};
use sandpile_core::RibbonGraph;
use serde_json::{json, Value};

use crate::report::{CliError, CliResult, Outcome, Pairs, Report, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Torsor,
    SinkInvariance,
    Consistency,
    Moves,
    Unicycle,
    Telescope,
    Matroid,
    RotorLemmas,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Torsor => "torsor",
            Suite::SinkInvariance => "sink-invariance",
            Suite::Consistency => "consistency",
            Suite::Moves => "moves",
            Suite::Unicycle => "unicycle",
            Suite::Telescope => "telescope",
            Suite::Matroid => "matroid",
            Suite::RotorLemmas => "rotor-lemmas",
        }
    }
}

enum Instance {
    Ribbon(RibbonGraph),
    Spec(TelescopeSpec),
    Matroid(RegularMatroid),
}

fn ribbon_instances(list: Vec<RibbonGraph>) -> Vec<(String, Instance)> {
    list.into_iter()
        .enumerate()
        .map(|(i, rg)| (format!("{i:05} {}", describe(&rg)), Instance::Ribbon(rg)))
        .collect()
}

fn instances(suite: Suite, cfg: &RunConfig) -> CliResult<Vec<(String, Instance)>> {
    let two_connected = |rg: &RibbonGraph| rg.graph().is_two_connected() && rg.num_vertices() >= 2;
    Ok(match suite {
        Suite::Torsor | Suite::Consistency | Suite::RotorLemmas => ribbon_instances(plane_graphs(cfg.max_edges)),
        Suite::SinkInvariance => {
            let all = ribbon_graphs(cfg.max_edges, !cfg.include_nonplanar)
                .into_iter()
                .skip(1)
                .flatten();
            ribbon_instances(all.collect())
        }
        Suite::Moves => ribbon_instances(plane_graphs(cfg.max_edges).into_iter().filter(two_connected).collect()),
        Suite::Unicycle => ribbon_instances(ribbon_graphs(cfg.max_edges, false).into_iter().flatten().collect()),
        Suite::Telescope => {
            let mut out = Vec::new();
            for n in 0..=cfg.telescope_n {
                let mut k = vec![0; n + 1];
                loop {
                    let spec = TelescopeSpec::new(n, k.clone())?;
                    out.push((format!("tele{n}{k:?}"), Instance::Spec(spec)));
                    let Some(i) = (0..=n).find(|&i| k[i] < cfg.telescope_k) else {
                        break;
                    };
                    k[i] += 1;
                    k[..i].fill(0);
                }
            }
            let plane: Vec<RibbonGraph> = plane_graphs(cfg.max_edges).into_iter().filter(two_connected).collect();
            out.extend(ribbon_instances(plane));
            out
        }
        Suite::Matroid => conjecture_instances(cfg.max_edges, cfg.max_elements)?
            .into_iter()
            .map(|(name, m)| (name, Instance::Matroid(m)))
            .collect(),
    })
}

fn sample<T>(items: Vec<T>, cfg: &RunConfig) -> Vec<T> {
    let Some(k) = cfg.sample.filter(|&k| k < items.len()) else {
        return items;
    };
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
    let mut keep: Vec<usize> = idx[..k].to_vec();
    keep.sort_unstable();
    let mut keep = keep.into_iter().peekable();
    items
        .into_iter()
        .enumerate()
        .filter_map(|(i, x)| {
            if keep.peek() == Some(&i) {
                keep.next();
                Some(x)
            } else {
                None
            }
        })
        .collect()
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> CliResult<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let asserted = !(suite == Suite::Matroid || (suite == Suite::Consistency && cfg.pairs == Pairs::All));
    let items = sample(instances(suite, cfg)?, cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::Input(format!("worker pool: {e}")))?;
    let outcomes: Vec<Outcome> = pool.install(|| {
        items
            .par_iter()
            .map(|(_, inst)| {
                check(suite, inst, cfg).unwrap_or_else(|e| Outcome {
                    checks: 1,
                    violations: vec![json!({ "error": e.to_string() })],
                    ..Default::default()
                })
            })
            .collect()
    });
    let mut report = Report::new(suite.name(), asserted, cfg);
    for ((name, _), o) in items.iter().zip(outcomes) {
        report.add(name, o);
    }
    if cfg.sample.is_some() {
        report.sampled = Some(items.iter().map(|(name, _)| name.clone()).collect());
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn check(suite: Suite, inst: &Instance, cfg: &RunConfig) -> CliResult<Outcome> {
    match (suite, inst) {
        (Suite::Torsor, Instance::Ribbon(rg)) => torsor(rg, cfg),
        (Suite::SinkInvariance, Instance::Ribbon(rg)) => sink_invariance(rg),
        (Suite::Consistency, Instance::Ribbon(rg)) => consistency(rg, cfg),
        (Suite::Moves, Instance::Ribbon(rg)) => moves(rg),
        (Suite::Unicycle, Instance::Ribbon(rg)) => unicycle(rg),
        (Suite::Telescope, Instance::Spec(spec)) => telescope_spec(spec),
        (Suite::Telescope, Instance::Ribbon(rg)) => telescope_other(rg),
        (Suite::Matroid, Instance::Matroid(m)) => matroid(m),
        (Suite::RotorLemmas, Instance::Ribbon(rg)) => rotor_lemmas(rg),
        _ => unreachable!("instance kinds follow the suite"),
    }
}

/// Expected number of distinct variant actions, where it is pinned down.
pub fn expected_distinct(rg: &RibbonGraph) -> Option<usize> {
    let m = rg.num_edges();
    if is_cycle_graph(rg) || is_multi_edge(rg) {
        Some(if m <= 2 { 1 } else { 2 })
    } else if rg.graph().is_two_connected() {
        Some(4)
    } else {
        None
    }
}

fn torsor(rg: &RibbonGraph, cfg: &RunConfig) -> CliResult<Outcome> {
    let mut o = Outcome::default();
    let mut tables = Vec::new();
    let all = Variant::ALL.iter().all(|v| cfg.variants.contains(v));
    for &v in &cfg.variants {
        let table = ActionTable::build(&TorsorAction::new(rg, v)?)?;
        let r = verify_table(&table);
        o.checks += r.checks;
        o.violations.extend(
            r.violations
                .into_iter()
                .map(|x| json!({ "variant": v, "violation": x })),
        );
        if !tables.contains(&table.table) {
            tables.push(table.table);
        }
    }
    if all {
        let expected = expected_distinct(rg);
        o.checks += 1;
        if expected.is_some_and(|e| e != tables.len()) {
            o.violations
                .push(json!({ "distinctVariants": tables.len(), "expected": expected }));
        }
        o.data = Some(json!({ "distinctVariants": tables.len(), "expected": expected }));
    }
    Ok(o)
}

fn sink_invariance(rg: &RibbonGraph) -> CliResult<Outcome> {
    let found = verify_sink_invariance(rg)?;
    let g = rg.graph();
    let mut o = Outcome {
        checks: g.num_vertices() * g.spanning_trees()?.len(),
        ..Default::default()
    };
    let entries = found.iter().map(|d| serde_json::to_value(d).expect("serializable"));
    if rg.is_plane() {
        o.violations.extend(entries);
    } else {
        o.data = Some(json!({ "genus": rg.genus(), "disagreements": found.len() }));
        o.findings.extend(entries.take(1));
    }
    Ok(o)
}

fn consistency(rg: &RibbonGraph, cfg: &RunConfig) -> CliResult<Outcome> {
    let mode = match cfg.pairs {
        Pairs::Adjacent => PairMode::Adjacent,
        Pairs::All => PairMode::AllPairs,
    };
    let mut o = Outcome::default();
    for &v in &cfg.variants {
        let r = verify_consistency(rg, v, mode)?;
        o.checks += r.checks;
        let entries = r.violations.iter().map(|x| json!({ "variant": v, "violation": x }));
        match cfg.pairs {
            Pairs::Adjacent => o.violations.extend(entries),
            Pairs::All => o.findings.extend(entries),
        }
    }
    Ok(o)
}

fn moves(rg: &RibbonGraph) -> CliResult<Outcome> {
    let g = rg.graph();
    let trees = g.spanning_trees()?;
    let action = TorsorAction::rotor_routing(rg)?;
    let mut o = Outcome::default();
    for &t in &trees {
        o.checks += 2 * trees.len();
        let reach = source_turn_reachable(rg, t).len();
        if reach != trees.len() {
            o.violations
                .push(json!({ "mode": "source-turn", "from": g.tree_ids(t), "reached": reach, "trees": trees.len() }));
        }
        let reach = leaf_swap_reachable(g, t).len();
        if reach != trees.len() {
            o.violations
                .push(json!({ "mode": "leaf-swap", "from": g.tree_ids(t), "reached": reach, "trees": trees.len() }));
        }
        for m in source_turn_moves(rg, t) {
            o.checks += 1;
            let routed = action.act_pair(m.c, m.s, t)?;
            if routed != m.output() {
                o.violations
                    .push(json!({ "move": m.to_json(g), "routed": g.tree_ids(routed) }));
            }
        }
    }
    Ok(o)
}

fn unicycle(rg: &RibbonGraph) -> CliResult<Outcome> {
    let s = unicycle_summary(rg);
    let mut o = Outcome {
        checks: s.unicycles,
        ..Default::default()
    };
    o.violations
        .extend(s.spin_failures.iter().map(|f| json!({ "fullSpin": f })));
    if (s.missing_reversals == 0) != rg.is_plane() {
        o.violations.push(json!({
            "genus": rg.genus(),
            "unicyclesWithoutReversal": s.missing_reversals,
        }));
    }
    Ok(o)
}

fn telescope_spec(spec: &TelescopeSpec) -> CliResult<Outcome> {
    let t = telescope(spec)?;
    let check = verify_telescope_equivalence(&t.ribbon, &t.setup)?;
    let mut o = Outcome {
        checks: 1,
        data: Some(json!({ "singleStepTrees": check.single_step_trees })),
        ..Default::default()
    };
    if check.telescope.as_ref() != Some(spec) || check.bad_complement.is_some() {
        o.violations.push(json!({
            "matched": check.telescope,
            "badComplement": check.bad_complement.map(|b| t.ribbon.graph().edge_set_ids(b)),
        }));
    }
    Ok(o)
}

fn telescope_other(rg: &RibbonGraph) -> CliResult<Outcome> {
    let g = rg.graph();
    let mut o = Outcome::default();
    let mut failures = 0;
    for c in 0..g.num_vertices() {
        for &e in g.incident(c) {
            let Ok(setup) = StepSetup::new(rg, c, e) else {
                continue;
            };
            let check = verify_telescope_equivalence(rg, &setup)?;
            o.checks += 1;
            if check.telescope.is_none() && check.bad_complement.is_some() {
                failures += 1;
            }
            if !check.holds() {
                o.violations.push(json!({
                    "c": g.vertex_id(c),
                    "g": g.edge_id(e),
                    "matched": check.telescope,
                    "badComplement": check.bad_complement.map(|b| g.edge_set_ids(b)),
                }));
            }
        }
    }
    o.data = Some(json!({ "setups": o.checks, "nonTelescopeFailures": failures }));
    Ok(o)
}

fn matroid(m: &RegularMatroid) -> CliResult<Outcome> {
    let found = examine("", m)?;
    let mut o = Outcome {
        checks: 3 + found.variants.iter().map(|v| v.checks).sum::<usize>(),
        ..Default::default()
    };
    if found.group_order != found.bases.to_string() {
        o.violations
            .push(json!({ "groupOrder": found.group_order, "bases": found.bases }));
    }
    if !found.default_acyclic {
        o.violations.push(json!({ "defaultSignaturesCyclic": true }));
    }
    o.violations
        .extend(found.torsor_violations.iter().map(|v| json!({ "torsor": v })));
    for v in &found.variants {
        o.findings.extend(
            v.violations
                .iter()
                .map(|x| json!({ "variant": v.variant, "counterexample": x })),
        );
    }
    o.data = Some(json!({
        "elements": found.elements,
        "rank": found.rank,
        "bases": found.bases,
        "distinctActions": found.distinct_actions,
        "consistentVariants": found.consistent_variants(),
    }));
    Ok(o)
}

fn rotor_lemmas(rg: &RibbonGraph) -> CliResult<Outcome> {
    let g = rg.graph();
    let mut o = Outcome::default();
    for t in g.spanning_trees()? {
        for c in 0..g.num_vertices() {
            for s in 0..g.num_vertices() {
                if c == s || g.edges_between(c, s).is_empty() {
                    continue;
                }
                let r = check_cycle_reversal(rg, t, c, s)?;
                o.checks += r.checks;
                o.violations.extend(r.violations.into_iter().map(
                    |v| json!({ "tree": g.tree_ids(t), "c": g.vertex_id(c), "s": g.vertex_id(s), "violation": v }),
                ));
            }
        }
    }
    Ok(o)
}

/// Serializes a report the same way for stdout and files.
pub fn render(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("serializable")
}

pub fn to_value(report: &Report) -> Value {
    serde_json::to_value(report).expect("serializable")
}
