//! Sandpile torsor actions on plane ribbon graphs: rotor-routing and its three
//! relatives, with exhaustive checkers for the torsor axioms, independence of
//! the sink, and compatibility with minors.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::enumerate::describe;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, SpanningTree};
use crate::ribbon::RibbonGraph;
use crate::rotor::route_divisor;
use crate::sandpile::{group_elements, reduce, Divisor, SandpileClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    R,
    RBar,
    RInv,
    RBarInv,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::R, Variant::RBar, Variant::RInv, Variant::RBarInv];

    pub fn reversed(self) -> bool {
        matches!(self, Variant::RBar | Variant::RBarInv)
    }

    pub fn inverse(self) -> bool {
        matches!(self, Variant::RInv | Variant::RBarInv)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::R => "r",
            Variant::RBar => "rbar",
            Variant::RInv => "rinv",
            Variant::RBarInv => "rbarinv",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variant {s:?}")))
    }
}

/// A torsor action of the sandpile group on spanning trees of a fixed plane
/// ribbon graph. Results are memoized per (class, tree).
pub struct TorsorAction {
    rg: RibbonGraph,
    routed: RibbonGraph,
    variant: Variant,
    memo: Mutex<HashMap<(SandpileClass, SpanningTree), SpanningTree>>,
}

impl TorsorAction {
    pub fn new(rg: &RibbonGraph, variant: Variant) -> Result<Self> {
        if !rg.is_plane() {
            return Err(Error::NotPlane(rg.genus()));
        }
        Ok(Self::unchecked(rg, variant))
    }

    /// The same evaluator without the planarity check. On non-plane graphs
    /// the result may depend on representatives and need not be an action.
    pub fn unchecked(rg: &RibbonGraph, variant: Variant) -> Self {
        let routed = if variant.reversed() { rg.reverse() } else { rg.clone() };
        TorsorAction {
            rg: rg.clone(),
            routed,
            variant,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn rotor_routing(rg: &RibbonGraph) -> Result<Self> {
        Self::new(rg, Variant::R)
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        Self::unchecked(&self.rg, variant)
    }

    pub fn ribbon(&self) -> &RibbonGraph {
        &self.rg
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn act(&self, class: &SandpileClass, t: SpanningTree) -> Result<SpanningTree> {
        let key = (class.clone(), t);
        if let Some(&out) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(out);
        }
        let g = self.rg.graph();
        let class = if self.variant.inverse() {
            class.neg(g)
        } else {
            class.clone()
        };
        // the stored representative is reduced at vertex 0, so it is already
        // a chip configuration with the sink at 0
        let out = route_divisor(&self.routed, t, class.representative(), 0)?;
        self.memo.lock().expect("memo lock").insert(key, out);
        Ok(out)
    }

    pub fn act_divisor(&self, d: &Divisor, t: SpanningTree) -> Result<SpanningTree> {
        self.act(&SandpileClass::new(self.rg.graph(), d)?, t)
    }

    /// Action of `[c - s]`.
    pub fn act_pair(&self, c: usize, s: usize, t: SpanningTree) -> Result<SpanningTree> {
        self.act(&SandpileClass::of_pair(self.rg.graph(), c, s), t)
    }
}

/// An action tabulated over all classes and trees, by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    pub classes: Vec<SandpileClass>,
    pub trees: Vec<SpanningTree>,
    /// `table[i][j]` is the index of the tree obtained by acting with class `i` on tree `j`.
    pub table: Vec<Vec<usize>>,
    /// `sum[i][j]` is the index of `classes[i] + classes[j]`.
    pub sum: Vec<Vec<usize>>,
    pub identity: usize,
}

impl ActionTable {
    pub fn build(action: &TorsorAction) -> Result<Self> {
        let g = action.ribbon().graph();
        let classes = group_elements(g)?;
        let trees = g.spanning_trees()?;
        let tree_index: HashMap<SpanningTree, usize> = trees.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let class_index: HashMap<&SandpileClass, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut table = Vec::with_capacity(classes.len());
        for class in &classes {
            let row = trees
                .iter()
                .map(|&t| {
                    let out = action.act(class, t)?;
                    tree_index
                        .get(&out)
                        .copied()
                        .ok_or_else(|| Error::Invariant("action left the set of spanning trees".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let sum = classes
            .iter()
            .map(|a| classes.iter().map(|b| class_index[&a.add(g, b)]).collect())
            .collect();
        let identity = class_index[&SandpileClass::identity(g)];
        Ok(ActionTable {
            classes,
            trees,
            table,
            sum,
            identity,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_torsor_axioms(action: &TorsorAction) -> Result<AxiomReport> {
    Ok(verify_table(&ActionTable::build(action)?))
}

/// Identity, compatibility with addition, freeness and transitivity.
pub fn verify_table(t: &ActionTable) -> AxiomReport {
    verify_action_indices(&t.table, &t.sum, t.identity, t.trees.len())
}

/// Identity, compatibility, freeness and transitivity of `table[class][element]`,
/// where `sum[a][b]` indexes the class `a + b`.
pub fn verify_action_indices(table: &[Vec<usize>], sum: &[Vec<usize>], identity: usize, nt: usize) -> AxiomReport {
    let mut r = AxiomReport::default();
    let nc = table.len();
    if nc != nt {
        r.violations.push(format!("{nc} classes but {nt} elements"));
    }
    for j in 0..nt {
        r.checks += 1;
        if table[identity][j] != j {
            r.violations.push(format!("identity moves tree {j}"));
        }
    }
    for a in 0..nc {
        for b in 0..nc {
            for j in 0..nt {
                r.checks += 1;
                if table[sum[a][b]][j] != table[a][table[b][j]] {
                    r.violations
                        .push(format!("compatibility fails for classes {a}, {b} on tree {j}"));
                }
            }
        }
    }
    for j in 0..nt {
        for a in 0..nc {
            r.checks += 1;
            if a != identity && table[a][j] == j {
                r.violations.push(format!("class {a} fixes tree {j}"));
            }
        }
        r.checks += 1;
        let mut hit = vec![false; nt];
        for a in 0..nc {
            hit[table[a][j]] = true;
        }
        if hit.iter().any(|&h| !h) {
            r.violations.push(format!("orbit of tree {j} misses trees"));
        }
    }
    r
}

/// Number of pairwise different actions among the four variants.
pub fn distinct_variant_count(rg: &RibbonGraph) -> Result<usize> {
    let mut tables: Vec<Vec<Vec<usize>>> = Vec::new();
    for v in Variant::ALL {
        let t = ActionTable::build(&TorsorAction::new(rg, v)?)?.table;
        if !tables.contains(&t) {
            tables.push(t);
        }
    }
    Ok(tables.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SinkDisagreement {
    pub class: Vec<i64>,
    pub tree: Vec<String>,
    pub sinks: [String; 2],
    pub outputs: [Vec<String>; 2],
}

/// Routes every class from every sink, using the reduced representative at
/// that sink, and reports trees on which two sinks disagree.
pub fn verify_sink_invariance(rg: &RibbonGraph) -> Result<Vec<SinkDisagreement>> {
    let g = rg.graph();
    let classes = group_elements(g)?;
    let trees = g.spanning_trees()?;
    let mut out = Vec::new();
    for class in &classes {
        let reps: Vec<Divisor> = (0..g.num_vertices())
            .map(|s| reduce(g, class.representative(), s))
            .collect::<Result<_>>()?;
        for &t in &trees {
            let base = route_divisor(rg, t, &reps[0], 0)?;
            for (s, rep) in reps.iter().enumerate().skip(1) {
                let other = route_divisor(rg, t, rep, s)?;
                if other != base {
                    out.push(SinkDisagreement {
                        class: class.representative().0.clone(),
                        tree: g.tree_ids(t),
                        sinks: [g.vertex_id(0).to_string(), g.vertex_id(s).to_string()],
                        outputs: [g.tree_ids(base), g.tree_ids(other)],
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Which `(c, s)` pairs the consistency check ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    /// Ends of an edge `f`, in both orders.
    Adjacent,
    /// Every ordered pair of distinct vertices; only conditions 1 and 2 apply.
    AllPairs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyViolation {
    pub graph: String,
    pub f: Option<String>,
    pub c: String,
    pub s: String,
    pub tree: Vec<String>,
    pub e: String,
    pub condition: u8,
    pub expected: Vec<String>,
    pub actual: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub checks: usize,
    pub violations: Vec<ConsistencyViolation>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: ConsistencyReport) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }
}

/// Checks that `variant` commutes with contraction of shared tree edges,
/// with deletion of shared non-edges, and leaves edges beyond a cut vertex
/// alone.
pub fn verify_consistency(rg: &RibbonGraph, variant: Variant, mode: PairMode) -> Result<ConsistencyReport> {
    let g = rg.graph();
    let action = TorsorAction::new(rg, variant)?;
    let trees = g.spanning_trees()?;
    let m = g.num_edges();
    let contracted: Vec<_> = (0..m).map(|e| rg.contract(e)).collect();
    let deleted: Vec<_> = (0..m).map(|e| rg.delete(e)).collect();
    let minor_actions: Vec<[TorsorAction; 2]> = (0..m)
        .map(|e| {
            [
                TorsorAction::unchecked(&contracted[e].ribbon, variant),
                TorsorAction::unchecked(&deleted[e].ribbon, variant),
            ]
        })
        .collect();

    // (c, s, f) triples; in adjacent mode one f per parallel class suffices
    // except for condition 3, which ranges over every f
    let mut pairs: Vec<(usize, usize, Option<usize>)> = Vec::new();
    match mode {
        PairMode::Adjacent => {
            for f in 0..m {
                let [a, b] = g.ends(f);
                pairs.push((a, b, Some(f)));
                pairs.push((b, a, Some(f)));
            }
        }
        PairMode::AllPairs => {
            for c in 0..g.num_vertices() {
                for s in 0..g.num_vertices() {
                    if c != s {
                        pairs.push((c, s, None));
                    }
                }
            }
        }
    }

    let mut report = ConsistencyReport::default();
    let name = describe(rg);
    for &(c, s, f) in &pairs {
        let first_of_class = f.is_none_or(|f| g.parallel_class(f).iter().next() == Some(f));
        for &t in &trees {
            let out = action.act_pair(c, s, t)?;
            let mut violation = |e: usize, condition: u8, expected: Vec<String>, actual: Vec<String>| {
                report.violations.push(ConsistencyViolation {
                    graph: name.clone(),
                    f: f.map(|f| g.edge_id(f).to_string()),
                    c: g.vertex_id(c).to_string(),
                    s: g.vertex_id(s).to_string(),
                    tree: g.tree_ids(t),
                    e: g.edge_id(e).to_string(),
                    condition,
                    expected,
                    actual,
                })
            };
            for e in 0..m {
                if first_of_class {
                    let ends = g.ends(e);
                    let joins_pair = ends.contains(&c) && ends.contains(&s);
                    if !joins_pair && t.contains(e) && out.contains(e) {
                        let minor = &contracted[e];
                        let mg = minor.ribbon.graph();
                        let expected = SpanningTree(minor.map_edges(out.edges()));
                        let actual = minor_actions[e][0].act_pair(
                            minor.vertex_map[c],
                            minor.vertex_map[s],
                            SpanningTree(minor.map_edges(t.edges())),
                        )?;
                        report.checks += 1;
                        if actual != expected {
                            violation(e, 1, mg.tree_ids(expected), mg.tree_ids(actual));
                        }
                    }
                    if !t.contains(e) && !out.contains(e) {
                        let minor = &deleted[e];
                        let mg = minor.ribbon.graph();
                        let expected = SpanningTree(minor.map_edges(out.edges()));
                        let actual = minor_actions[e][1].act_pair(
                            minor.vertex_map[c],
                            minor.vertex_map[s],
                            SpanningTree(minor.map_edges(t.edges())),
                        )?;
                        report.checks += 1;
                        if actual != expected {
                            violation(e, 2, mg.tree_ids(expected), mg.tree_ids(actual));
                        }
                    }
                }
                if let Some(f) = f {
                    if e != f && g.separating_cut_vertex(e, f).is_some() {
                        report.checks += 1;
                        if t.contains(e) != out.contains(e) {
                            violation(e, 3, g.tree_ids(t), g.tree_ids(out));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Trees obtained by acting on `t` with every class, as edge sets.
pub fn orbit(action: &TorsorAction, t: SpanningTree) -> Result<Vec<EdgeSet>> {
    let g = action.ribbon().graph();
    group_elements(g)?
        .iter()
        .map(|c| action.act(c, t).map(SpanningTree::edges))
        .collect()
}
