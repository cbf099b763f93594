//! Reading graphs, trees, divisors, matroids and signatures from files or
//! inline arguments.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use sandpile_core::graph::GraphJson;
use sandpile_core::matroid::{MatrixJson, RegularMatroid, SignaturePair, SignedVector};
use sandpile_core::{Divisor, Multigraph, RibbonGraph, SpanningTree};
use serde::Deserialize;

use crate::report::{CliError, CliResult};

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> CliResult<Multigraph> {
    Ok(Multigraph::from_json(&read_json::<GraphJson>(path)?)?)
}

pub fn load_ribbon(path: &Path) -> CliResult<RibbonGraph> {
    Ok(RibbonGraph::from_json(&read_json::<GraphJson>(path)?)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IdList {
    Plain(Vec<String>),
    Tree { tree: Vec<String> },
}

/// A comma-separated list, or a JSON file with an array of ids or `{"tree": [...]}`.
pub fn parse_ids(arg: &str) -> CliResult<Vec<String>> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(match read_json::<IdList>(path)? {
            IdList::Plain(ids) | IdList::Tree { tree: ids } => ids,
        });
    }
    Ok(arg
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect())
}

pub fn parse_tree(g: &Multigraph, arg: &str) -> CliResult<SpanningTree> {
    Ok(g.tree_from_ids(&parse_ids(arg)?)?)
}

/// `v:k` pairs separated by commas, or a JSON file mapping vertex ids to chips.
pub fn parse_divisor(g: &Multigraph, arg: &str) -> CliResult<Divisor> {
    let path = Path::new(arg);
    let map: BTreeMap<String, i64> = if path.is_file() {
        read_json(path)?
    } else {
        arg.split(',')
            .map(|part| {
                let (v, k) = part
                    .split_once(':')
                    .ok_or_else(|| CliError::Input(format!("expected vertex:count, got {part:?}")))?;
                let k = k
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad chip count in {part:?}")))?;
                Ok((v.trim().to_string(), k))
            })
            .collect::<CliResult<_>>()?
    };
    Ok(Divisor::from_map(g, &map)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatroidFile {
    Matrix(MatrixJson),
    Graph {
        graph: GraphJson,
        #[serde(default)]
        orientation: Option<HashMap<String, [String; 2]>>,
    },
}

pub fn load_matroid(path: &Path) -> CliResult<RegularMatroid> {
    Ok(match read_json::<MatroidFile>(path)? {
        MatroidFile::Matrix(m) => RegularMatroid::from_json(&m)?,
        MatroidFile::Graph { graph, orientation } => {
            RegularMatroid::from_graph(&Multigraph::from_json(&graph)?, orientation.as_ref())?
        }
    })
}

#[derive(Deserialize)]
struct SignatureFile {
    circuits: Vec<SignedVector>,
    cocircuits: Vec<SignedVector>,
}

/// Explicit signatures from a file, or the default ones.
pub fn load_signatures(m: &RegularMatroid, path: Option<&Path>) -> CliResult<SignaturePair> {
    let Some(path) = path else {
        return Ok(SignaturePair::default_for(m));
    };
    let f: SignatureFile = read_json(path)?;
    let pair = SignaturePair::new(m, f.circuits, f.cocircuits)?;
    if !pair.is_acyclic() {
        return Err(CliError::Input("signatures are not acyclic".into()));
    }
    Ok(pair)
}

/// Element labels separated by `+` or `,`; repeated labels add up.
pub fn parse_class_labels(arg: &str) -> Vec<String> {
    arg.split(['+', ','])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}
