//! Exhaustive generation of small connected multigraphs and ribbon graphs,
//! one representative per isomorphism class, plus a few named families.

use std::collections::{BTreeMap, HashSet};

use crate::graph::Multigraph;
use crate::ribbon::RibbonGraph;

/// Ids `prefix0 .. prefix{count-1}`, zero-padded so they sort in index order.
pub fn sorted_ids(prefix: &str, count: usize) -> Vec<String> {
    let width = count.saturating_sub(1).to_string().len();
    (0..count).map(|i| format!("{prefix}{i:0width$}")).collect()
}

/// Builds a graph on vertices `v0..` with edges `e0..` in the given order.
pub fn indexed_graph(n: usize, ends: &[[usize; 2]]) -> Multigraph {
    let vs = sorted_ids("v", n);
    let es = sorted_ids("e", ends.len());
    Multigraph::new(
        vs.clone(),
        ends.iter()
            .zip(es)
            .map(|(&[a, b], id)| (id, vs[a].clone(), vs[b].clone())),
    )
    .expect("valid indexed graph")
}

/// The cycle with `k` edges; `k = 1, 2` give a single and a double edge.
pub fn cycle(k: usize) -> RibbonGraph {
    assert!(k >= 1);
    if k <= 2 {
        return multi_edge(k);
    }
    let ends: Vec<[usize; 2]> = (0..k).map(|i| [i, (i + 1) % k]).collect();
    RibbonGraph::with_incidence_order(indexed_graph(k, &ends))
}

/// Two vertices joined by `k` parallel edges, embedded in the plane.
pub fn multi_edge(k: usize) -> RibbonGraph {
    let g = indexed_graph(2, &vec![[0, 1]; k]);
    let rot = vec![(0..k).collect(), (0..k).rev().collect()];
    RibbonGraph::new(g, rot).expect("valid rotation")
}

struct Proto {
    n: usize,
    ends: Vec<[usize; 2]>,
    rot: Vec<Vec<usize>>,
}

impl Proto {
    fn of(rg: &RibbonGraph) -> Proto {
        Proto {
            n: rg.num_vertices(),
            ends: (0..rg.num_edges()).map(|e| rg.graph().ends(e)).collect(),
            rot: (0..rg.num_vertices()).map(|v| rg.rotation(v).to_vec()).collect(),
        }
    }

    fn build(self) -> RibbonGraph {
        RibbonGraph::new(indexed_graph(self.n, &self.ends), self.rot).expect("valid rotation")
    }
}

/// Connected loopless ribbon graphs with exactly `e` edges for each
/// `e <= max_edges`, one per isomorphism class. With `plane_only`, only genus 0.
pub fn ribbon_graphs(max_edges: usize, plane_only: bool) -> Vec<Vec<RibbonGraph>> {
    let point = RibbonGraph::new(indexed_graph(1, &[]), vec![Vec::new()]).expect("point");
    let mut levels = vec![vec![point]];
    for _ in 0..max_edges {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for rg in levels.last().expect("nonempty") {
            for child in children(rg) {
                if plane_only && !child.is_plane() {
                    continue;
                }
                if seen.insert(child.canonical_code()) {
                    next.push(child);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// All ways to add one edge: a pendant edge into any corner, or an edge
/// between corners at two distinct vertices.
fn children(rg: &RibbonGraph) -> Vec<RibbonGraph> {
    let m = rg.num_edges();
    // a corner is a vertex and a position after which the new edge is inserted
    let corners: Vec<(usize, usize)> = (0..rg.num_vertices())
        .flat_map(|v| {
            let k = rg.rotation(v).len().max(1);
            (0..k).map(move |i| (v, i))
        })
        .collect();
    let insert = |rot: &mut Vec<Vec<usize>>, (v, i): (usize, usize)| {
        let at = if rot[v].is_empty() { 0 } else { i + 1 };
        rot[v].insert(at, m);
    };
    let mut out = Vec::new();
    for &corner in &corners {
        let mut p = Proto::of(rg);
        p.ends.push([corner.0, p.n]);
        p.rot.push(vec![m]);
        insert(&mut p.rot, corner);
        p.n += 1;
        out.push(p.build());
    }
    for (i, &a) in corners.iter().enumerate() {
        for &b in &corners[i + 1..] {
            if a.0 == b.0 {
                continue;
            }
            let mut p = Proto::of(rg);
            p.ends.push([a.0.min(b.0), a.0.max(b.0)]);
            insert(&mut p.rot, a);
            insert(&mut p.rot, b);
            out.push(p.build());
        }
    }
    out
}

/// Plane ribbon graphs with `1..=max_edges` edges, smallest first.
pub fn plane_graphs(max_edges: usize) -> Vec<RibbonGraph> {
    ribbon_graphs(max_edges, true).into_iter().skip(1).flatten().collect()
}

/// Every rotation system of `g`, listed by fixing each vertex's smallest edge first.
pub fn rotation_systems(g: &Multigraph) -> Vec<RibbonGraph> {
    let per_vertex: Vec<Vec<Vec<usize>>> = (0..g.num_vertices()).map(|v| cyclic_orders(g.incident(v))).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_vertex.len()];
    loop {
        let rot = per_vertex.iter().zip(&idx).map(|(o, &i)| o[i].clone()).collect();
        out.push(RibbonGraph::new(g.clone(), rot).expect("valid rotation"));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < per_vertex[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn cyclic_orders(edges: &[usize]) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = edges.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    let mut rest = rest.to_vec();
    permutations(&mut rest, 0, &mut |p| {
        out.push(std::iter::once(first).chain(p.iter().copied()).collect())
    });
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Edge-multiplicity matrix, minimized over vertex relabelings that keep
/// vertices sorted by degree. Equal codes mean isomorphic graphs.
pub fn multigraph_code(g: &Multigraph) -> Vec<u8> {
    let n = g.num_vertices();
    let mut mult = vec![vec![0u8; n]; n];
    for e in 0..g.num_edges() {
        let [a, b] = g.ends(e);
        mult[a][b] += 1;
        mult[b][a] += 1;
    }
    let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_degree.entry(g.degree(v)).or_default().push(v);
    }
    let blocks: Vec<Vec<usize>> = by_degree.into_values().collect();
    let mut best: Option<Vec<u8>> = None;
    let mut order = Vec::with_capacity(n);
    block_orders(&blocks, 0, &mut order, &mut |order| {
        let code: Vec<u8> = order
            .iter()
            .flat_map(|&a| order.iter().map(move |&b| (a, b)))
            .map(|(a, b)| mult[a][b])
            .collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    let mut code = vec![n as u8];
    code.extend(best.unwrap_or_default());
    code
}

fn block_orders(blocks: &[Vec<usize>], k: usize, order: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if k == blocks.len() {
        visit(order);
        return;
    }
    let mut block = blocks[k].clone();
    permutations(&mut block, 0, &mut |p| {
        let len = order.len();
        order.extend_from_slice(p);
        block_orders(blocks, k + 1, order, visit);
        order.truncate(len);
    });
}

/// Connected loopless multigraphs with `1..=max_edges` edges, one per isomorphism class.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Multigraph> {
    let mut level = vec![indexed_graph(1, &[])];
    let mut out = Vec::new();
    for _ in 0..max_edges {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let n = g.num_vertices();
            let ends: Vec<[usize; 2]> = (0..g.num_edges()).map(|e| g.ends(e)).collect();
            let mut candidates = Vec::new();
            for v in 0..n {
                let mut es = ends.clone();
                es.push([v, n]);
                candidates.push(indexed_graph(n + 1, &es));
            }
            for a in 0..n {
                for b in a + 1..n {
                    let mut es = ends.clone();
                    es.push([a, b]);
                    candidates.push(indexed_graph(n, &es));
                }
            }
            for c in candidates {
                if seen.insert(multigraph_code(&c)) {
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Whether `rg` is a cycle `C_k` (including the single and double edge).
pub fn is_cycle_graph(rg: &RibbonGraph) -> bool {
    let g = rg.graph();
    g.is_connected() && g.num_edges() == g.num_vertices() && (0..g.num_vertices()).all(|v| g.degree(v) == 2)
        || g.num_vertices() == 2 && g.num_edges() <= 2 && g.num_edges() >= 1
}

/// Whether `rg` has two vertices and only parallel edges between them.
pub fn is_multi_edge(rg: &RibbonGraph) -> bool {
    rg.num_vertices() == 2 && rg.num_edges() >= 1
}

/// Edge list and rotations as a one-line string.
pub fn describe(rg: &RibbonGraph) -> String {
    let g = rg.graph();
    let rot: Vec<String> = (0..g.num_vertices())
        .map(|v| {
            let es: Vec<&str> = rg.rotation(v).iter().map(|&e| g.edge_id(e)).collect();
            format!("{}:({})", g.vertex_id(v), es.join(","))
        })
        .collect();
    let edges: Vec<String> = (0..g.num_edges())
        .map(|e| {
            let [a, b] = g.ends(e);
            format!("{}={}{}", g.edge_id(e), g.vertex_id(a), g.vertex_id(b))
        })
        .collect();
    format!("[{}] {}", edges.join(" "), rot.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let all = ribbon_graphs(3, false);
        let counts: Vec<usize> = all.iter().map(Vec::len).collect();
        // 1 edge: K2; 2 edges: path, double edge; 3 edges: path, star,
        // triangle, double edge with a pendant, and two triple edges
        assert_eq!(&counts[..3], &[1, 1, 2]);
        assert_eq!(ribbon_graphs(3, true)[3].len(), counts[3] - 1);
        assert!(all[3].iter().any(|r| r.genus() == 1));
    }

    #[test]
    fn plane_enumeration_agrees_with_rotation_systems() {
        for max in 1..=4 {
            let grown: HashSet<Vec<u16>> = ribbon_graphs(max, true)[max]
                .iter()
                .map(RibbonGraph::canonical_code)
                .collect();
            let all: HashSet<Vec<u16>> = ribbon_graphs(max, false)[max]
                .iter()
                .filter(|r| r.is_plane())
                .map(RibbonGraph::canonical_code)
                .collect();
            let from_graphs: HashSet<Vec<u16>> = connected_multigraphs(max)
                .iter()
                .filter(|g| g.num_edges() == max)
                .flat_map(rotation_systems)
                .filter(RibbonGraph::is_plane)
                .map(|r| r.canonical_code())
                .collect();
            assert_eq!(grown, all);
            assert_eq!(grown, from_graphs);
        }
    }

    #[test]
    fn multigraph_counts() {
        // connected loopless multigraphs by edge count
        let gs = connected_multigraphs(4);
        let count = |m| gs.iter().filter(|g| g.num_edges() == m).count();
        assert_eq!((count(1), count(2), count(3)), (1, 2, 5));
    }

    #[test]
    fn named_families() {
        assert!(cycle(5).is_plane());
        assert!(multi_edge(4).is_plane());
        assert!(is_cycle_graph(&cycle(1)) && is_cycle_graph(&cycle(2)) && is_cycle_graph(&cycle(4)));
        assert!(!is_cycle_graph(&multi_edge(3)));
        assert_eq!(sorted_ids("e", 12)[2], "e02");
    }
}
