//! Single-step, source-turn and reverse single-step moves between spanning
//! trees, searches for move sequences, and the telescope family.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Multigraph, SpanningTree};
use crate::ribbon::{dart_edge, RibbonGraph};
use crate::rotor::{route_chip, RotorConfiguration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    SingleStep,
    SourceTurn,
    ReverseSingleStep,
}

/// A move at `c` that trades `g` for `f`, where `f` joins `c` and `s`.
///
/// For the single-step kinds the chip goes from `c` to `s` and the result
/// is `T - g + f`. For a reverse move the tree contains `f`, the chip goes
/// from `s` to `c`, and the result is `T - f + g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MovePair {
    pub kind: MoveKind,
    pub c: usize,
    pub s: usize,
    pub tree: SpanningTree,
    pub g: usize,
    pub f: usize,
}

impl MovePair {
    pub fn output(&self) -> SpanningTree {
        let t = self.tree.edges();
        SpanningTree(match self.kind {
            MoveKind::ReverseSingleStep => t.without(self.f).with(self.g),
            _ => t.without(self.g).with(self.f),
        })
    }

    pub fn to_json(&self, g: &Multigraph) -> serde_json::Value {
        serde_json::json!({
            "c": g.vertex_id(self.c),
            "f": g.edge_id(self.f),
            "from": g.tree_ids(self.tree),
            "g": g.edge_id(self.g),
            "kind": self.kind,
            "s": g.vertex_id(self.s),
            "to": g.tree_ids(self.output()),
        })
    }
}

/// Parent edge and vertex of every vertex on its path to `root` in `t`.
fn parents(g: &Multigraph, t: SpanningTree, root: usize) -> Vec<Option<(usize, usize)>> {
    let mut parent = vec![None; g.num_vertices()];
    let mut seen = vec![false; g.num_vertices()];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &e in g.incident(v) {
            let w = g.other_end(e, v);
            if t.contains(e) && !seen[w] {
                seen[w] = true;
                parent[w] = Some((e, v));
                stack.push(w);
            }
        }
    }
    parent
}

/// `a` strictly precedes `b`: the path from `a` to `root` in `t` passes through `b`.
pub fn precedes(g: &Multigraph, t: SpanningTree, root: usize, a: usize, b: usize) -> bool {
    let parent = parents(g, t, root);
    let mut v = a;
    while let Some((_, p)) = parent[v] {
        if p == b {
            return true;
        }
        v = p;
    }
    false
}

pub fn tree_degree(g: &Multigraph, t: SpanningTree, v: usize) -> usize {
    g.incident(v).iter().filter(|&&e| t.contains(e)).count()
}

/// Recognizes a single-step or source-turn pair `(c - s, T)` from the rotor at
/// `c` and the position of `c` below the far end of that rotor.
pub fn classify_pair(rg: &RibbonGraph, t: SpanningTree, c: usize, s: usize) -> Option<MovePair> {
    let g = rg.graph();
    if c == s {
        return None;
    }
    let rho = RotorConfiguration::from_tree(rg, t, s);
    let ge = dart_edge(rho.rotor(c)?);
    let f = rg.next_edge(c, ge).ok()?;
    if f == ge || g.other_end(f, c) != s {
        return None;
    }
    let x = g.other_end(ge, c);
    if !precedes(g, t, s, c, x) {
        return None;
    }
    let kind = if tree_degree(g, t, c) == 1 {
        MoveKind::SourceTurn
    } else {
        MoveKind::SingleStep
    };
    Some(MovePair {
        kind,
        c,
        s,
        tree: t,
        g: ge,
        f,
    })
}

/// Whether routing `c - s` from `t` takes exactly one rotor turn.
pub fn simulate_single_step(rg: &RibbonGraph, t: SpanningTree, c: usize, s: usize) -> Result<bool> {
    let (_, trace) = route_chip(rg, t, c, s, true)?;
    Ok(trace.expect("trace requested").steps.len() == 1)
}

/// A reverse single-step pair `(s - c, T)`: some `f` in `T` joining `c` and
/// `s` such that `(c - s, T - f + g)` is a single-step pair from `g` to `f`.
pub fn classify_reverse(rg: &RibbonGraph, t: SpanningTree, c: usize, s: usize) -> Option<MovePair> {
    let g = rg.graph();
    for f in g.edges_between(c, s).iter().filter(|&f| t.contains(f)) {
        let ge = dart_edge(rg.prev_dart(rg.dart(c, f).ok()?));
        if ge == f || t.contains(ge) {
            continue;
        }
        let swapped = t.edges().without(f).with(ge);
        if !g.is_spanning_tree(swapped) {
            continue;
        }
        if let Some(p) = classify_pair(rg, SpanningTree(swapped), c, s) {
            if p.g == ge && p.f == f {
                return Some(
                    MovePair {
                        kind: MoveKind::ReverseSingleStep,
                        ..p
                    }
                    .with_tree(t),
                );
            }
        }
    }
    None
}

impl MovePair {
    fn with_tree(mut self, t: SpanningTree) -> Self {
        self.tree = t;
        self
    }
}

/// A rotation of the rotor at `c` in `T_root`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub g: usize,
    pub f: usize,
    pub source: bool,
}

/// Whether turning the rotor at `c` one position keeps `T_root` acyclic.
pub fn is_rotatable(rg: &RibbonGraph, t: SpanningTree, root: usize, c: usize) -> Option<Rotation> {
    if c == root {
        return None;
    }
    let rho = RotorConfiguration::from_tree(rg, t, root);
    let turned = rho.rotate_one(rg, c).ok()?;
    turned.to_tree(rg)?;
    let ge = dart_edge(rho.rotor(c)?);
    let f = dart_edge(turned.rotor(c)?);
    Some(Rotation {
        g: ge,
        f,
        source: tree_degree(rg.graph(), t, c) == 1,
    })
}

/// Source-turn moves available from `t`, ordered by source vertex.
pub fn source_turn_moves(rg: &RibbonGraph, t: SpanningTree) -> Vec<MovePair> {
    let g = rg.graph();
    (0..g.num_vertices())
        .filter(|&c| tree_degree(g, t, c) == 1)
        .filter_map(|c| {
            let ge = g.incident(c).iter().copied().find(|&e| t.contains(e))?;
            let f = rg.next_edge(c, ge).ok()?;
            if f == ge {
                return None;
            }
            let s = g.other_end(f, c);
            classify_pair(rg, t, c, s).filter(|p| p.kind == MoveKind::SourceTurn)
        })
        .collect()
}

fn bfs<N>(
    start: SpanningTree,
    goal: Option<SpanningTree>,
    neighbors: impl Fn(SpanningTree) -> Vec<(N, SpanningTree)>,
) -> HashMap<SpanningTree, Option<(N, SpanningTree)>>
where
    N: Clone,
{
    let mut parent = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        if Some(t) == goal {
            break;
        }
        for (label, u) in neighbors(t) {
            if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(u) {
                slot.insert(Some((label, t)));
                queue.push_back(u);
            }
        }
    }
    parent
}

fn unwind<N: Clone>(parent: &HashMap<SpanningTree, Option<(N, SpanningTree)>>, goal: SpanningTree) -> Option<Vec<N>> {
    let mut out = Vec::new();
    let mut t = goal;
    loop {
        match parent.get(&t)? {
            None => break,
            Some((label, prev)) => {
                out.push(label.clone());
                t = *prev;
            }
        }
    }
    out.reverse();
    Some(out)
}

fn require_two_connected(g: &Multigraph) -> Result<()> {
    if g.is_two_connected() {
        Ok(())
    } else {
        Err(Error::InvalidInput("graph must be 2-connected".into()))
    }
}

/// A shortest sequence of source-turn moves from `start` to `goal`.
pub fn source_turn_path(rg: &RibbonGraph, start: SpanningTree, goal: SpanningTree) -> Result<Vec<MovePair>> {
    require_two_connected(rg.graph())?;
    let parent = bfs(start, Some(goal), |t| {
        source_turn_moves(rg, t).into_iter().map(|m| (m, m.output())).collect()
    });
    unwind(&parent, goal).ok_or_else(|| Error::Invariant("no source-turn path between the trees".into()))
}

/// Every tree reachable from `start` by source-turn moves.
pub fn source_turn_reachable(rg: &RibbonGraph, start: SpanningTree) -> Vec<SpanningTree> {
    let parent = bfs(start, None, |t| {
        source_turn_moves(rg, t).into_iter().map(|m| (m, m.output())).collect()
    });
    parent.into_keys().collect()
}

fn leaf_swaps(g: &Multigraph, t: SpanningTree) -> Vec<((usize, usize), SpanningTree)> {
    let mut out = Vec::new();
    for v in (0..g.num_vertices()).filter(|&v| tree_degree(g, t, v) == 1) {
        let leaf = *g.incident(v).iter().find(|&&e| t.contains(e)).expect("leaf edge");
        for &e in g.incident(v) {
            if e != leaf {
                out.push(((leaf, e), SpanningTree(t.edges().without(leaf).with(e))));
            }
        }
    }
    out
}

/// Trees from `start` to `goal`, each obtained from the previous one by
/// replacing a leaf edge with another edge.
pub fn leaf_swap_path(g: &Multigraph, start: SpanningTree, goal: SpanningTree) -> Result<Vec<SpanningTree>> {
    require_two_connected(g)?;
    let parent = bfs(start, Some(goal), |t| leaf_swaps(g, t));
    let swaps = unwind(&parent, goal).ok_or_else(|| Error::Invariant("no leaf-swap path between the trees".into()))?;
    let mut out = vec![start];
    for (removed, added) in swaps {
        let last = *out.last().expect("nonempty");
        out.push(SpanningTree(last.edges().without(removed).with(added)));
    }
    Ok(out)
}

pub fn leaf_swap_reachable(g: &Multigraph, start: SpanningTree) -> Vec<SpanningTree> {
    bfs(start, None, |t| leaf_swaps(g, t)).into_keys().collect()
}

/// Checks that consecutive trees differ by one swapped leaf edge.
pub fn is_leaf_swap_sequence(g: &Multigraph, trees: &[SpanningTree]) -> bool {
    trees.iter().all(|t| g.is_spanning_tree(t.edges()))
        && trees.windows(2).all(|w| {
            let removed = w[0].edges().difference(w[1].edges());
            let added = w[1].edges().difference(w[0].edges());
            removed.len() == 1
                && added.len() == 1
                && removed
                    .iter()
                    .all(|e| g.ends(e).iter().any(|&v| tree_degree(g, w[0], v) == 1))
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TelescopeSpec {
    pub n: usize,
    pub k: Vec<usize>,
}

impl TelescopeSpec {
    pub fn new(n: usize, k: Vec<usize>) -> Result<Self> {
        if k.len() != n + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} entries in k, got {}",
                n + 1,
                k.len()
            )));
        }
        Ok(TelescopeSpec { n, k })
    }

    pub fn num_edges(&self) -> usize {
        2 * self.n + 2 + 2 * self.k.iter().sum::<usize>()
    }

    /// Every spec with the given number of edges.
    pub fn with_edges(m: usize) -> Vec<TelescopeSpec> {
        let mut out = Vec::new();
        if m < 2 || m % 2 == 1 {
            return out;
        }
        for n in 0..=(m - 2) / 2 {
            let total = (m - 2 - 2 * n) / 2;
            compositions(total, n + 1, &mut Vec::new(), &mut |k| {
                out.push(TelescopeSpec { n, k: k.to_vec() })
            });
        }
        out
    }
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if parts == 1 {
        prefix.push(total);
        visit(prefix);
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, visit);
        prefix.pop();
    }
}

/// A plane graph with the roles used by single-step trees: `f` follows `g`
/// counterclockwise at `c`, `f` joins `c` to `s` and `g` joins `c` to `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepSetup {
    pub c: usize,
    pub s: usize,
    pub x: usize,
    pub f: usize,
    pub g: usize,
}

impl StepSetup {
    pub fn new(rg: &RibbonGraph, c: usize, g: usize) -> Result<Self> {
        let f = rg.next_edge(c, g)?;
        if f == g {
            return Err(Error::InvalidInput("c needs at least two edges".into()));
        }
        let gr = rg.graph();
        Ok(StepSetup {
            c,
            s: gr.other_end(f, c),
            x: gr.other_end(g, c),
            f,
            g,
        })
    }
}

pub struct Telescope {
    pub spec: TelescopeSpec,
    pub ribbon: RibbonGraph,
    pub setup: StepSetup,
}

/// Builds the telescope graph with vertices `c`, `z0..zn`, `w{i}_{j}` and edges
/// `f`, `g`, `e{i}`, `ehat{i}`, `h{i}_{j}`, `hhat{i}_{j}`.
pub fn telescope(spec: &TelescopeSpec) -> Result<Telescope> {
    let TelescopeSpec { n, k } = spec;
    let n = *n;
    if k.len() != n + 1 {
        return Err(Error::InvalidInput("k must have n + 1 entries".into()));
    }
    let z = |i: usize| format!("z{i}");
    let w = |i: usize, j: usize| format!("w{i}_{j}");
    let h = |i: usize, j: usize| format!("h{i}_{j}");
    let hh = |i: usize, j: usize| format!("hhat{i}_{j}");
    let e = |i: usize| format!("e{i}");
    let eh = |i: usize| format!("ehat{i}");

    let mut vertices = vec!["c".to_string()];
    let mut edges = vec![
        ("g".to_string(), "c".to_string(), z(0)),
        ("f".to_string(), "c".to_string(), z(n)),
    ];
    let mut rot: Vec<(String, Vec<String>)> = Vec::new();
    let mut at_c = vec!["f".to_string()];
    for i in (0..=n).rev() {
        for j in (1..=k[i]).rev() {
            at_c.push(hh(i, j));
        }
    }
    at_c.push("g".to_string());
    rot.push(("c".into(), at_c));
    for i in 0..=n {
        vertices.push(z(i));
        if i >= 1 {
            edges.push((e(i), z(i - 1), z(i)));
            edges.push((eh(i), z(i - 1), z(i)));
        }
        let hs: Vec<String> = (1..=k[i]).map(|j| h(i, j)).collect();
        let mut order = Vec::new();
        if i == 0 {
            order.push("g".to_string());
        } else {
            order.push(e(i));
        }
        order.extend(hs);
        if i < n {
            order.push(e(i + 1));
            order.push(eh(i + 1));
        }
        if i == n {
            order.push("f".to_string());
        }
        if i >= 1 {
            order.push(eh(i));
        }
        rot.push((z(i), order));
        for j in 1..=k[i] {
            vertices.push(w(i, j));
            edges.push((h(i, j), z(i), w(i, j)));
            edges.push((hh(i, j), "c".to_string(), w(i, j)));
            rot.push((w(i, j), vec![h(i, j), hh(i, j)]));
        }
    }
    let graph = Multigraph::new(vertices, edges)?;
    let rot = rot.into_iter().collect();
    let ribbon = RibbonGraph::from_ids(graph, &rot)?;
    let gr = ribbon.graph();
    let c = gr.vertex_index("c")?;
    let setup = StepSetup::new(&ribbon, c, gr.edge_index("g")?)?;
    debug_assert_eq!(gr.edge_id(setup.f), "f");
    Ok(Telescope {
        spec: spec.clone(),
        ribbon,
        setup,
    })
}

/// The criterion: exactly one of `f`, `g`, and a path from `x` to `s` in `t` avoiding `c`.
pub fn is_single_step_tree(rg: &RibbonGraph, t: SpanningTree, setup: &StepSetup) -> bool {
    let g = rg.graph();
    if t.contains(setup.f) == t.contains(setup.g) {
        return false;
    }
    if setup.x == setup.s {
        return true;
    }
    let mut seen = vec![false; g.num_vertices()];
    seen[setup.x] = true;
    let mut stack = vec![setup.x];
    while let Some(v) = stack.pop() {
        for &e in g.incident(v) {
            let u = g.other_end(e, v);
            if t.contains(e) && u != setup.c && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen[setup.s]
}

/// The definition: a single-step pair from `g` to `f`, or a reverse pair from `f` to `g`.
pub fn is_single_step_tree_by_moves(rg: &RibbonGraph, t: SpanningTree, setup: &StepSetup) -> bool {
    let forward = classify_pair(rg, t, setup.c, setup.s).is_some_and(|p| p.g == setup.g && p.f == setup.f);
    let reverse = classify_reverse(rg, t, setup.c, setup.s).is_some_and(|p| p.g == setup.g && p.f == setup.f);
    forward || reverse
}

/// The telescope spec whose graph matches `rg` with `c` and `g` in place, if any.
pub fn match_telescope(rg: &RibbonGraph, setup: &StepSetup) -> Option<TelescopeSpec> {
    let d = rg.dart(setup.c, setup.g).ok()?;
    TelescopeSpec::with_edges(rg.num_edges()).into_iter().find(|spec| {
        let t = telescope(spec).expect("valid spec");
        let d2 = t.ribbon.dart(t.setup.c, t.setup.g).expect("incident");
        rg.find_isomorphism_anchored(&t.ribbon, d, d2).is_some()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TelescopeCheck {
    pub single_step_trees: usize,
    /// A single-step tree whose complement is not a spanning tree.
    pub bad_complement: Option<EdgeSet>,
    pub telescope: Option<TelescopeSpec>,
}

impl TelescopeCheck {
    /// Complements of single-step trees are trees exactly for telescopes.
    pub fn holds(&self) -> bool {
        self.bad_complement.is_none() == self.telescope.is_some()
    }
}

pub fn verify_telescope_equivalence(rg: &RibbonGraph, setup: &StepSetup) -> Result<TelescopeCheck> {
    let g = rg.graph();
    let mut count = 0;
    let mut bad = None;
    for t in g.spanning_trees()? {
        let by_criterion = is_single_step_tree(rg, t, setup);
        if by_criterion != is_single_step_tree_by_moves(rg, t, setup) {
            return Err(Error::Invariant(format!(
                "single-step tree criterion disagrees with the moves on {:?}",
                g.tree_ids(t)
            )));
        }
        if by_criterion {
            count += 1;
            let complement = g.all_edges().difference(t.edges());
            if bad.is_none() && !g.is_spanning_tree(complement) {
                bad = Some(t.edges());
            }
        }
    }
    Ok(TelescopeCheck {
        single_step_trees: count,
        bad_complement: bad,
        telescope: match_telescope(rg, setup),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{diamond, swap_square};

    fn v(g: &Multigraph, id: &str) -> usize {
        g.vertex_index(id).unwrap()
    }

    fn e(g: &Multigraph, id: &str) -> usize {
        g.edge_index(id).unwrap()
    }

    #[test]
    fn square_pairs() {
        let r = swap_square();
        let g = r.graph();
        let t = g.tree_from_ids(&["ab", "ad", "cd"]).unwrap();
        let p = classify_pair(&r, t, v(g, "c"), v(g, "a")).unwrap();
        assert_eq!((p.kind, p.g, p.f), (MoveKind::SourceTurn, e(g, "cd"), e(g, "ac")));
        let p = classify_pair(&r, t, v(g, "a"), v(g, "c")).unwrap();
        assert_eq!((p.kind, p.g, p.f), (MoveKind::SingleStep, e(g, "ad"), e(g, "ac")));
        assert!(classify_pair(&r, t, v(g, "c"), v(g, "d")).is_none());
        let rev = classify_reverse(&r, t, v(g, "c"), v(g, "d")).unwrap();
        assert_eq!((rev.f, rev.g), (e(g, "cd"), e(g, "ac")));
        let (out, _) = route_chip(&r, t, v(g, "d"), v(g, "c"), false).unwrap();
        assert_eq!(out, rev.output());
    }

    #[test]
    fn precedes_basics() {
        let r = swap_square();
        let g = r.graph();
        let t = g.tree_from_ids(&["ab", "ad", "cd"]).unwrap();
        let (a, b, c, d) = (v(g, "a"), v(g, "b"), v(g, "c"), v(g, "d"));
        assert!(precedes(g, t, a, c, d));
        assert!(precedes(g, t, a, c, a));
        assert!(!precedes(g, t, a, c, c));
        assert!(!precedes(g, t, a, d, c));
        assert!(!precedes(g, t, a, b, d));
    }

    #[test]
    fn criterion_matches_simulation_and_rotatability() {
        for r in [
            diamond(),
            swap_square(),
            crate::enumerate::cycle(4),
            crate::enumerate::multi_edge(3),
        ] {
            let g = r.graph();
            for t in g.spanning_trees().unwrap() {
                for c in 0..g.num_vertices() {
                    for s in 0..g.num_vertices() {
                        if c == s {
                            continue;
                        }
                        let p = classify_pair(&r, t, c, s);
                        assert_eq!(p.is_some(), simulate_single_step(&r, t, c, s).unwrap());
                        if let Some(p) = p {
                            assert_eq!(route_chip(&r, t, c, s, false).unwrap().0, p.output());
                        }
                        if let Some(p) = classify_reverse(&r, t, c, s) {
                            assert_eq!(route_chip(&r, t, s, c, false).unwrap().0, p.output());
                        }
                    }
                    for root in 0..g.num_vertices() {
                        let rot = is_rotatable(&r, t, root, c);
                        let rho = RotorConfiguration::from_tree(&r, t, root);
                        let via_pair = rho.rotor(c).and_then(|d| {
                            let ge = dart_edge(d);
                            let f = r.next_edge(c, ge).ok()?;
                            (f != ge)
                                .then(|| classify_pair(&r, t, c, g.other_end(f, c)))
                                .flatten()
                                .filter(|p| p.g == ge)
                        });
                        assert_eq!(rot.map(|x| (x.g, x.f)), via_pair.map(|p| (p.g, p.f)));
                    }
                }
            }
        }
    }

    #[test]
    fn paths_connect_every_pair() {
        let r = diamond();
        let g = r.graph();
        let trees = g.spanning_trees().unwrap();
        for &a in &trees {
            assert_eq!(source_turn_reachable(&r, a).len(), 8);
            for &b in &trees {
                let path = source_turn_path(&r, a, b).unwrap();
                let mut t = a;
                for m in &path {
                    assert_eq!(m.tree, t);
                    assert_eq!(route_chip(&r, t, m.c, m.s, false).unwrap().0, m.output());
                    t = m.output();
                }
                assert_eq!(t, b);
                let seq = leaf_swap_path(g, a, b).unwrap();
                assert!(is_leaf_swap_sequence(g, &seq));
                assert_eq!((seq[0], *seq.last().unwrap()), (a, b));
            }
        }
        assert!(source_turn_path(&r, trees[0], trees[0]).unwrap().is_empty());
        assert!(source_turn_path(&crate::fixtures::lollipop(), trees[0], trees[0]).is_err());
    }

    #[test]
    fn telescope_shapes() {
        let t = telescope(&TelescopeSpec::new(0, vec![0]).unwrap()).unwrap();
        assert_eq!((t.ribbon.num_vertices(), t.ribbon.num_edges()), (2, 2));
        let t = telescope(&TelescopeSpec::new(5, vec![1, 0, 0, 2, 1, 0]).unwrap()).unwrap();
        assert_eq!((t.ribbon.num_vertices(), t.ribbon.num_edges()), (11, 20));
        for spec in (2..=10).step_by(2).flat_map(TelescopeSpec::with_edges) {
            let t = telescope(&spec).unwrap();
            assert!(t.ribbon.is_plane());
            assert!(t.ribbon.graph().is_two_connected());
            assert_eq!(t.ribbon.num_edges(), 2 * t.ribbon.num_vertices() - 2);
            assert_eq!(match_telescope(&t.ribbon, &t.setup), Some(spec));
        }
    }

    #[test]
    fn telescope_equivalence() {
        let t = telescope(&TelescopeSpec::new(0, vec![1]).unwrap()).unwrap();
        let check = verify_telescope_equivalence(&t.ribbon, &t.setup).unwrap();
        assert!(check.single_step_trees > 0 && check.bad_complement.is_none() && check.holds());
        let k4 = crate::fixtures::k4(true);
        let g = k4.graph();
        let setup = StepSetup::new(&k4, v(g, "o"), e(g, "ao")).unwrap();
        let check = verify_telescope_equivalence(&k4, &setup).unwrap();
        assert!(check.bad_complement.is_some() && check.telescope.is_none() && check.holds());
    }
}
