//! One function per subcommand; each returns the JSON printed on stdout.

use std::path::Path;

use sandpile_core::matroid::{bby_vector, Bby, MatroidVariant};
use sandpile_core::moves::{
    leaf_swap_path, source_turn_path, telescope, verify_telescope_equivalence, StepSetup, TelescopeSpec,
};
use sandpile_core::rotor::route_chip;
use sandpile_core::sandpile::group_structure;
use sandpile_core::torsor::{TorsorAction, Variant};
use sandpile_core::{Divisor, RibbonGraph};
use serde_json::{json, Value};

use crate::input::*;
use crate::report::{CliError, CliResult};

pub fn group(graph: &Path) -> CliResult<Value> {
    let g = load_graph(graph)?;
    let s = group_structure(&g)?;
    let trees = g.spanning_trees()?.len();
    let order = s.order();
    if order != trees.into() {
        return Err(CliError::Invariant(format!(
            "group order {order} but {trees} spanning trees"
        )));
    }
    Ok(json!({
        "invariantFactors": s.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "order": order.to_string(),
        "spanningTrees": trees,
    }))
}

pub fn trees(graph: &Path) -> CliResult<Value> {
    let g = load_graph(graph)?;
    let trees: Vec<Vec<String>> = g.spanning_trees()?.into_iter().map(|t| g.tree_ids(t)).collect();
    Ok(json!({ "count": trees.len(), "trees": trees }))
}

pub fn genus(graph: &Path) -> CliResult<Value> {
    let rg = load_ribbon(graph)?;
    Ok(json!({
        "faces": rg.num_faces(),
        "genus": rg.genus(),
        "plane": rg.is_plane(),
    }))
}

fn vertex(rg: &RibbonGraph, id: &str) -> CliResult<usize> {
    Ok(rg.graph().vertex_index(id)?)
}

pub fn route(graph: &Path, chip: &str, sink: &str, tree: &str, variant: Variant, trace: bool) -> CliResult<Value> {
    let rg = load_ribbon(graph)?;
    let g = rg.graph();
    let t = parse_tree(g, tree)?;
    let (c, s) = (vertex(&rg, chip)?, vertex(&rg, sink)?);
    if variant == Variant::R {
        let (out, tr) = route_chip(&rg, t, c, s, trace)?;
        let mut v = json!({ "tree": g.tree_ids(out) });
        if let Some(tr) = tr {
            v["steps"] = tr.to_json(&rg);
        }
        return Ok(v);
    }
    if trace {
        return Err(CliError::Input("traces are only available for the variant r".into()));
    }
    let out = TorsorAction::new(&rg, variant)?.act_pair(c, s, t)?;
    Ok(json!({ "tree": g.tree_ids(out) }))
}

pub fn act(graph: &Path, tree: &str, divisor: &Divisor, variant: Variant) -> CliResult<Value> {
    let rg = load_ribbon(graph)?;
    let g = rg.graph();
    let t = parse_tree(g, tree)?;
    let out = TorsorAction::new(&rg, variant)?.act_divisor(divisor, t)?;
    Ok(json!({ "tree": g.tree_ids(out), "variant": variant }))
}

pub fn moves_path(graph: &Path, from: &str, to: &str, leaf_swap: bool) -> CliResult<Value> {
    let rg = load_ribbon(graph)?;
    let g = rg.graph();
    let (a, b) = (parse_tree(g, from)?, parse_tree(g, to)?);
    if leaf_swap {
        let path = leaf_swap_path(g, a, b)?;
        let trees: Vec<Vec<String>> = path.into_iter().map(|t| g.tree_ids(t)).collect();
        return Ok(json!({ "mode": "leaf-swap", "length": trees.len() - 1, "trees": trees }));
    }
    let path = source_turn_path(&rg, a, b)?;
    let moves: Vec<Value> = path.iter().map(|m| m.to_json(g)).collect();
    Ok(json!({ "mode": "source-turn", "length": moves.len(), "moves": moves }))
}

pub fn telescope_build(k: &[usize]) -> CliResult<RibbonGraph> {
    let spec = TelescopeSpec::new(k.len().saturating_sub(1), k.to_vec())?;
    Ok(telescope(&spec)?.ribbon)
}

pub fn telescope_check(graph: &Path, c: &str, g_edge: &str) -> CliResult<Value> {
    let rg = load_ribbon(graph)?;
    let g = rg.graph();
    let setup = StepSetup::new(&rg, vertex(&rg, c)?, g.edge_index(g_edge)?)?;
    let check = verify_telescope_equivalence(&rg, &setup)?;
    Ok(json!({
        "badComplement": check.bad_complement.map(|b| g.edge_set_ids(b)),
        "holds": check.holds(),
        "singleStepTrees": check.single_step_trees,
        "telescope": check.telescope,
    }))
}

pub fn bby_act(
    matroid: &Path,
    signatures: Option<&Path>,
    class: &str,
    basis: &str,
    variant: MatroidVariant,
) -> CliResult<Value> {
    let m = load_matroid(matroid)?;
    let pair = load_signatures(&m, signatures)?;
    let b = m.set_from_labels(&parse_ids(basis)?)?;
    let class = m.class_of_labels(&parse_class_labels(class))?;
    let bby = Bby::new(&m, &pair, variant)?;
    let out = bby.act_set(&class, b)?;
    Ok(json!({
        "basis": m.set_labels(out),
        "inputVector": bby_vector(&m, &bby.pair, b)?,
        "outputVector": bby_vector(&m, &bby.pair, out)?,
        "variant": variant,
    }))
}

pub fn bby_info(matroid: &Path, signatures: Option<&Path>) -> CliResult<Value> {
    let m = load_matroid(matroid)?;
    let pair = load_signatures(&m, signatures)?;
    let bases: Vec<Vec<String>> = m.bases().iter().map(|&b| m.set_labels(b)).collect();
    Ok(json!({
        "acyclic": pair.is_acyclic(),
        "bases": bases,
        "circuits": pair.circuits,
        "cocircuits": pair.cocircuits,
        "groupOrder": m.group_order().to_string(),
        "labels": m.labels(),
        "rank": m.rank(),
    }))
}
