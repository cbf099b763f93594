//! Ribbon graphs: a multigraph with a counterclockwise cyclic order of the
//! incident edges at every vertex.
//!
//! Internally everything is phrased in darts. Dart `2e` runs from the
//! smaller-index end of `e` to the larger one, dart `2e + 1` the other way,
//! and the tail of a dart is the vertex whose cyclic order it sits in.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Dsu, EdgeSet, GraphJson, Multigraph};

pub type Dart = usize;

pub fn dart_edge(d: Dart) -> usize {
    d / 2
}

pub fn reverse_dart(d: Dart) -> Dart {
    d ^ 1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    graph: Multigraph,
    /// Per vertex, incident edges in counterclockwise order, smallest edge first.
    rotation: Vec<Vec<usize>>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
}

/// A ribbon minor together with the index maps from its parent.
#[derive(Clone, Debug)]
pub struct RibbonMinor {
    pub ribbon: RibbonGraph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<Option<usize>>,
}

impl RibbonMinor {
    pub fn map_edges(&self, set: EdgeSet) -> EdgeSet {
        set.iter().filter_map(|e| self.edge_map[e]).collect()
    }
}

/// Vertex and edge bijections between two ribbon graphs, by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonIsomorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

/// The two sides of a directed cycle in a plane ribbon graph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Sides {
    pub left_edges: EdgeSet,
    pub right_edges: EdgeSet,
    pub left_vertices: BTreeSet<usize>,
    pub right_vertices: BTreeSet<usize>,
}

impl RibbonGraph {
    /// `rotation[v]` lists the edges at `v` in counterclockwise order.
    pub fn new(graph: Multigraph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != graph.num_vertices() {
            return Err(Error::InvalidRotation(format!(
                "expected {} vertices, got {}",
                graph.num_vertices(),
                rotation.len()
            )));
        }
        let mut rotation = rotation;
        for (v, order) in rotation.iter_mut().enumerate() {
            let mut seen: Vec<usize> = order.clone();
            seen.sort_unstable();
            if seen != graph.incident(v) {
                return Err(Error::InvalidRotation(format!(
                    "order at `{}` must list each incident edge exactly once",
                    graph.vertex_id(v)
                )));
            }
            if let Some(k) = (0..order.len()).min_by_key(|&i| order[i]) {
                order.rotate_left(k);
            }
        }
        let m = graph.num_edges();
        let mut next = vec![0; 2 * m];
        let mut prev = vec![0; 2 * m];
        for (v, order) in rotation.iter().enumerate() {
            for (i, &e) in order.iter().enumerate() {
                let d = dart_of(&graph, v, e);
                let n = dart_of(&graph, v, order[(i + 1) % order.len()]);
                next[d] = n;
                prev[n] = d;
            }
        }
        Ok(RibbonGraph {
            graph,
            rotation,
            next,
            prev,
        })
    }

    /// Builds from a map of vertex id to counterclockwise edge ids.
    pub fn from_ids<S: AsRef<str>>(graph: Multigraph, rotation: &BTreeMap<String, Vec<S>>) -> Result<Self> {
        let mut rot = vec![Vec::new(); graph.num_vertices()];
        for (v, order) in rotation {
            let vi = graph.vertex_index(v)?;
            rot[vi] = order
                .iter()
                .map(|e| graph.edge_index(e.as_ref()))
                .collect::<Result<_>>()?;
        }
        RibbonGraph::new(graph, rot)
    }

    /// Rotation taken from the incidence order; fine whenever every vertex has degree at most 2.
    pub fn with_incidence_order(graph: Multigraph) -> Self {
        let rot = (0..graph.num_vertices()).map(|v| graph.incident(v).to_vec()).collect();
        RibbonGraph::new(graph, rot).expect("incidence order is a valid rotation")
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn num_darts(&self) -> usize {
        2 * self.graph.num_edges()
    }

    /// Counterclockwise order at `v`, starting from its smallest edge.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn tail(&self, d: Dart) -> usize {
        self.graph.ends(dart_edge(d))[d & 1]
    }

    pub fn head(&self, d: Dart) -> usize {
        self.graph.ends(dart_edge(d))[1 - (d & 1)]
    }

    /// The dart of `e` leaving `v`.
    pub fn dart(&self, v: usize, e: usize) -> Result<Dart> {
        if !self.graph.is_incident(v, e) {
            return Err(Error::InvalidInput(format!(
                "vertex `{}` is not an end of edge `{}`",
                self.graph.vertex_id(v),
                self.graph.edge_id(e)
            )));
        }
        Ok(dart_of(&self.graph, v, e))
    }

    /// Next dart counterclockwise around the tail of `d`.
    pub fn next_dart(&self, d: Dart) -> Dart {
        self.next[d]
    }

    pub fn prev_dart(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    /// The edge after `e` in the cyclic order at `x`.
    pub fn next_edge(&self, x: usize, e: usize) -> Result<usize> {
        Ok(dart_edge(self.next[self.dart(x, e)?]))
    }

    /// The face successor of a dart: arrive at the head, leave along the next edge there.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.next[reverse_dart(d)]
    }

    /// Face boundaries as dart cycles, each starting at its smallest dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.num_darts()];
        let mut faces = Vec::new();
        for start in 0..self.num_darts() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.face_next(d);
            }
            faces.push(face);
        }
        faces
    }

    pub fn num_faces(&self) -> usize {
        // a single vertex without edges still bounds one face
        self.faces().len().max(1)
    }

    /// Orientable genus `(2 - V + E - F) / 2` of a connected ribbon graph.
    pub fn genus(&self) -> usize {
        let chi = self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64;
        let g = 2 - chi;
        debug_assert!(g >= 0 && g % 2 == 0, "Euler characteristic {chi}");
        (g / 2) as usize
    }

    pub fn is_plane(&self) -> bool {
        self.genus() == 0
    }

    /// The same graph with every cyclic order reversed.
    pub fn reverse(&self) -> RibbonGraph {
        let rot = self
            .rotation
            .iter()
            .map(|o| o.iter().rev().copied().collect())
            .collect();
        RibbonGraph::new(self.graph.clone(), rot).expect("reversal of a valid rotation")
    }

    /// Removes `e` from the graph and from both cyclic orders.
    pub fn delete(&self, e: usize) -> RibbonMinor {
        let minor = self.graph.delete(e);
        let rot = self
            .rotation
            .iter()
            .map(|o| o.iter().filter_map(|&f| minor.edge_map[f]).collect())
            .collect();
        RibbonMinor {
            ribbon: RibbonGraph::new(minor.graph, rot).expect("deletion keeps a valid rotation"),
            vertex_map: minor.vertex_map,
            edge_map: minor.edge_map,
        }
    }

    /// Contracts `e`: parallels of `e` are dropped, then the orders at the
    /// two ends, each read from `e`, are spliced one after the other.
    pub fn contract(&self, e: usize) -> RibbonMinor {
        let [x, y] = self.graph.ends(e);
        let parallel = self.graph.parallel_class(e);
        let read_from = |v: usize| -> Vec<usize> {
            let order = &self.rotation[v];
            let k = order.iter().position(|&f| f == e).expect("e is incident");
            order[k + 1..]
                .iter()
                .chain(&order[..k])
                .copied()
                .filter(|&f| !parallel.contains(f))
                .collect()
        };
        let merged: Vec<usize> = read_from(x).into_iter().chain(read_from(y)).collect();
        let minor = self.graph.contract(e);
        let mut rot = vec![Vec::new(); minor.graph.num_vertices()];
        for v in 0..self.num_vertices() {
            if v == y {
                continue;
            }
            let order = if v == x { &merged } else { &self.rotation[v] };
            rot[minor.vertex_map[v]] = order.iter().filter_map(|&f| minor.edge_map[f]).collect();
        }
        RibbonMinor {
            ribbon: RibbonGraph::new(minor.graph, rot).expect("contraction keeps a valid rotation"),
            vertex_map: minor.vertex_map,
            edge_map: minor.edge_map,
        }
    }

    /// Extends `d -> d2` to a dart bijection if it defines an isomorphism.
    fn extend_from(&self, other: &RibbonGraph, d: Dart, d2: Dart) -> Option<Vec<Dart>> {
        let n = self.num_darts();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[d] = d2;
        used[d2] = true;
        let mut stack = vec![d];
        while let Some(a) = stack.pop() {
            let b = map[a];
            for (a2, b2) in [(self.next[a], other.next[b]), (reverse_dart(a), reverse_dart(b))] {
                if map[a2] == usize::MAX {
                    if used[b2] {
                        return None;
                    }
                    map[a2] = b2;
                    used[b2] = true;
                    stack.push(a2);
                } else if map[a2] != b2 {
                    return None;
                }
            }
        }
        map.iter().all(|&x| x != usize::MAX).then_some(map)
    }

    fn isomorphism_from_darts(&self, other: &RibbonGraph, map: &[Dart]) -> RibbonIsomorphism {
        let mut vertex_map = vec![0; self.num_vertices()];
        for (d, &d2) in map.iter().enumerate() {
            vertex_map[self.tail(d)] = other.tail(d2);
        }
        let edge_map = (0..self.num_edges()).map(|e| dart_edge(map[2 * e])).collect();
        RibbonIsomorphism { vertex_map, edge_map }
    }

    /// An isomorphism sending dart `d` to dart `d2`, if there is one. The
    /// graphs must be connected.
    pub fn find_isomorphism_anchored(&self, other: &RibbonGraph, d: Dart, d2: Dart) -> Option<RibbonIsomorphism> {
        if self.num_vertices() != other.num_vertices() || self.num_edges() != other.num_edges() {
            return None;
        }
        let map = self.extend_from(other, d, d2)?;
        Some(self.isomorphism_from_darts(other, &map))
    }

    /// Some ribbon isomorphism onto `other`. Both graphs must be connected.
    pub fn find_isomorphism(&self, other: &RibbonGraph) -> Option<RibbonIsomorphism> {
        if self.num_vertices() != other.num_vertices() || self.num_edges() != other.num_edges() {
            return None;
        }
        if self.num_edges() == 0 {
            return (self.num_vertices() <= 1).then(|| RibbonIsomorphism {
                vertex_map: (0..self.num_vertices()).collect(),
                edge_map: Vec::new(),
            });
        }
        (0..other.num_darts()).find_map(|d2| self.find_isomorphism_anchored(other, 0, d2))
    }

    /// Checks the defining properties of an isomorphism edge by edge.
    pub fn is_isomorphism(&self, other: &RibbonGraph, phi: &RibbonIsomorphism) -> bool {
        let bijective = |map: &[usize], n: usize| {
            map.len() == n && {
                let mut s = map.to_vec();
                s.sort_unstable();
                s.iter().enumerate().all(|(i, &x)| i == x)
            }
        };
        if !bijective(&phi.vertex_map, other.num_vertices())
            || !bijective(&phi.edge_map, other.num_edges())
            || self.num_vertices() != other.num_vertices()
        {
            return false;
        }
        (0..self.num_edges()).all(|e| {
            let e2 = phi.edge_map[e];
            let [x, y] = self.graph.ends(e);
            let mut ends = [phi.vertex_map[x], phi.vertex_map[y]];
            ends.sort_unstable();
            ends == other.graph.ends(e2)
                && [x, y].iter().all(|&v| {
                    let next = self.next_edge(v, e).expect("incident");
                    other.next_edge(phi.vertex_map[v], e2).ok() == Some(phi.edge_map[next])
                })
        })
    }

    pub fn is_automorphism(&self, phi: &RibbonIsomorphism) -> bool {
        self.is_isomorphism(self, phi)
    }

    /// A complete isomorphism invariant of connected ribbon graphs.
    pub fn canonical_code(&self) -> Vec<u16> {
        let n = self.num_darts();
        let mut best: Option<Vec<u16>> = None;
        let mut label = vec![u16::MAX; n];
        let mut order = Vec::with_capacity(n);
        for start in 0..n {
            label.iter_mut().for_each(|l| *l = u16::MAX);
            order.clear();
            label[start] = 0;
            order.push(start);
            let mut i = 0;
            let mut code = Vec::with_capacity(2 * n + 2);
            code.push(self.num_vertices() as u16);
            code.push(self.num_edges() as u16);
            let mut worse = false;
            while i < order.len() {
                let d = order[i];
                for nb in [self.next[d], reverse_dart(d)] {
                    if label[nb] == u16::MAX {
                        label[nb] = order.len() as u16;
                        order.push(nb);
                    }
                    code.push(label[nb]);
                }
                if let Some(b) = &best {
                    let k = code.len();
                    match code[..k].cmp(&b[..k]) {
                        std::cmp::Ordering::Greater => {
                            worse = true;
                            break;
                        }
                        std::cmp::Ordering::Less => {}
                        std::cmp::Ordering::Equal => {}
                    }
                }
                i += 1;
            }
            if worse {
                continue;
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        best.unwrap_or_else(|| vec![self.num_vertices() as u16, 0])
    }

    /// Splits the edges and vertices off a directed cycle into its left and
    /// right sides. For a counterclockwise cycle the left side is the
    /// interior.
    pub fn classify_sides(&self, cycle: &[Dart]) -> Result<Sides> {
        if !self.is_plane() {
            return Err(Error::NotPlane(self.genus()));
        }
        self.check_cycle(cycle)?;
        let faces = self.faces();
        let mut face_of = vec![0; self.num_darts()];
        for (i, f) in faces.iter().enumerate() {
            for &d in f {
                face_of[d] = i;
            }
        }
        let on_cycle: EdgeSet = cycle.iter().map(|&d| dart_edge(d)).collect();
        let mut dsu = Dsu::new(faces.len());
        for e in 0..self.num_edges() {
            if !on_cycle.contains(e) {
                dsu.union(face_of[2 * e], face_of[2 * e + 1]);
            }
        }
        // the face traced through a dart lies on the dart's right
        let right: BTreeSet<usize> = cycle.iter().map(|&d| dsu.find(face_of[d])).collect();
        let left: BTreeSet<usize> = cycle.iter().map(|&d| dsu.find(face_of[reverse_dart(d)])).collect();
        if !right.is_disjoint(&left) {
            return Err(Error::InvalidInput("cycle does not separate the embedding".into()));
        }
        let mut sides = Sides::default();
        for e in 0..self.num_edges() {
            if on_cycle.contains(e) {
                continue;
            }
            let r = dsu.find(face_of[2 * e]);
            if left.contains(&r) {
                sides.left_edges.insert(e);
            } else {
                debug_assert!(right.contains(&r));
                sides.right_edges.insert(e);
            }
        }
        let cycle_vertices: BTreeSet<usize> = cycle.iter().map(|&d| self.tail(d)).collect();
        for v in 0..self.num_vertices() {
            if cycle_vertices.contains(&v) {
                continue;
            }
            let e = self.graph.incident(v)[0];
            if sides.left_edges.contains(e) {
                sides.left_vertices.insert(v);
            } else {
                sides.right_vertices.insert(v);
            }
        }
        Ok(sides)
    }

    fn check_cycle(&self, cycle: &[Dart]) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidInput(format!("not a directed cycle: {msg}")));
        if cycle.len() < 2 {
            return bad("fewer than two edges");
        }
        if cycle.iter().any(|&d| d >= self.num_darts()) {
            return bad("unknown dart");
        }
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for (i, &d) in cycle.iter().enumerate() {
            if self.head(d) != self.tail(cycle[(i + 1) % cycle.len()]) {
                return bad("consecutive darts do not meet");
            }
            if !vertices.insert(self.tail(d)) || !edges.insert(dart_edge(d)) {
                return bad("repeated vertex or edge");
            }
        }
        Ok(())
    }

    /// The directed cycle visiting `vertices` in order, through `edges`.
    pub fn cycle_darts(&self, edges: &[usize], start: usize) -> Result<Vec<Dart>> {
        let mut v = start;
        let mut darts = Vec::with_capacity(edges.len());
        for &e in edges {
            let d = self.dart(v, e)?;
            darts.push(d);
            v = self.head(d);
        }
        Ok(darts)
    }

    pub fn to_json(&self) -> GraphJson {
        let mut json = self.graph.to_json();
        json.rotation = Some(
            (0..self.num_vertices())
                .map(|v| {
                    (
                        self.graph.vertex_id(v).to_string(),
                        self.rotation[v]
                            .iter()
                            .map(|&e| self.graph.edge_id(e).to_string())
                            .collect(),
                    )
                })
                .collect(),
        );
        json
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let graph = Multigraph::from_json(json)?;
        match &json.rotation {
            Some(rot) => RibbonGraph::from_ids(graph, rot),
            None => Err(Error::InvalidInput("graph has no \"rotation\" field".into())),
        }
    }

    /// Graphviz rendering; the rotation is kept in comments.
    pub fn to_dot(&self) -> String {
        let g = &self.graph;
        let mut out = String::from("graph G {\n");
        for v in 0..self.num_vertices() {
            let order: Vec<&str> = self.rotation[v].iter().map(|&e| g.edge_id(e)).collect();
            let _ = writeln!(out, "  // rotation {}: {}", g.vertex_id(v), order.join(" "));
        }
        for v in 0..self.num_vertices() {
            let _ = writeln!(out, "  \"{}\";", g.vertex_id(v));
        }
        for e in 0..self.num_edges() {
            let [a, b] = g.ends(e);
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [label=\"{}\"];",
                g.vertex_id(a),
                g.vertex_id(b),
                g.edge_id(e)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn dart_of(graph: &Multigraph, v: usize, e: usize) -> Dart {
    if graph.ends(e)[0] == v {
        2 * e
    } else {
        2 * e + 1
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn rg(vertices: &[&str], edges: &[(&str, &str, &str)], rot: &[(&str, &[&str])]) -> RibbonGraph {
        let g = Multigraph::from_edges(vertices, edges).unwrap();
        let rot: BTreeMap<String, Vec<&str>> = rot.iter().map(|(v, o)| (v.to_string(), o.to_vec())).collect();
        RibbonGraph::from_ids(g, &rot).unwrap()
    }

    pub(crate) fn triple_edge(plane: bool) -> RibbonGraph {
        crate::fixtures::triple_edge(plane)
    }

    pub(crate) fn k4e() -> RibbonGraph {
        crate::fixtures::diamond()
    }

    fn triangle() -> RibbonGraph {
        rg(
            &["a", "b", "c"],
            &[("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")],
            &[("a", &["ab", "ca"]), ("b", &["ab", "bc"]), ("c", &["bc", "ca"])],
        )
    }

    #[test]
    fn rotation_is_canonicalized() {
        let r = k4e();
        let a = r.graph().vertex_index("a").unwrap();
        let ids: Vec<&str> = r.rotation(a).iter().map(|&e| r.graph().edge_id(e)).collect();
        assert_eq!(ids, ["ab", "ad", "ac"]);
    }

    #[test]
    fn rejects_bad_rotation() {
        let g = Multigraph::from_edges(&["a", "b"], &[("e", "a", "b")]).unwrap();
        assert!(RibbonGraph::new(g.clone(), vec![vec![0, 0], vec![0]]).is_err());
        assert!(RibbonGraph::new(g, vec![vec![], vec![0]]).is_err());
    }

    #[test]
    fn next_edge_wraps() {
        let r = triangle();
        let g = r.graph();
        let a = g.vertex_index("a").unwrap();
        let (ab, ca) = (g.edge_index("ab").unwrap(), g.edge_index("ca").unwrap());
        assert_eq!(r.next_edge(a, ca).unwrap(), ab);
        assert_eq!(r.next_edge(a, ab).unwrap(), ca);
        assert!(r.next_edge(a, g.edge_index("bc").unwrap()).is_err());
        let e = RibbonGraph::with_incidence_order(Multigraph::from_edges(&["a", "b"], &[("e", "a", "b")]).unwrap());
        assert_eq!(e.next_edge(0, 0).unwrap(), 0);
    }

    #[test]
    fn genus_examples() {
        let t = triangle();
        assert_eq!((t.faces().len(), t.genus()), (2, 0));
        assert_eq!(triple_edge(true).genus(), 0);
        assert_eq!(triple_edge(false).genus(), 1);
        assert!(k4e().is_plane());
        let faces = k4e().faces();
        assert_eq!(faces.iter().map(Vec::len).sum::<usize>(), 10);
    }

    #[test]
    fn reverse_is_involution_and_keeps_plane() {
        let r = k4e();
        assert_eq!(r.reverse().reverse(), r);
        assert!(r.reverse().is_plane());
    }

    #[test]
    fn plane_triple_edge_reversal_is_isomorphic() {
        let r = triple_edge(true);
        let rev = r.reverse();
        let phi = r.find_isomorphism(&rev).expect("isomorphic");
        assert!(r.is_isomorphism(&rev, &phi));
        // the non-planar structure equals its own reversal only up to swapping x and y
        let np = triple_edge(false);
        let swap = RibbonIsomorphism {
            vertex_map: vec![1, 0],
            edge_map: vec![0, 1, 2],
        };
        assert!(np.is_automorphism(&swap));
        let identity = RibbonIsomorphism {
            vertex_map: vec![0, 1],
            edge_map: vec![0, 1, 2],
        };
        assert!(np.is_automorphism(&identity));
    }

    #[test]
    fn cycles_of_different_length_are_not_isomorphic() {
        let c4 = RibbonGraph::with_incidence_order(
            Multigraph::from_edges(
                &["a", "b", "c", "d"],
                &[("1", "a", "b"), ("2", "b", "c"), ("3", "c", "d"), ("4", "d", "a")],
            )
            .unwrap(),
        );
        assert!(triangle().find_isomorphism(&c4).is_none());
        assert_ne!(triangle().canonical_code(), c4.canonical_code());
    }

    #[test]
    fn canonical_code_matches_isomorphism() {
        let r = k4e();
        assert_eq!(r.canonical_code(), r.reverse().canonical_code());
        assert_ne!(triple_edge(true).canonical_code(), triple_edge(false).canonical_code());
    }

    #[test]
    fn double_edge_contracts_to_point() {
        let r = rg(
            &["a", "b"],
            &[("e1", "a", "b"), ("e2", "a", "b")],
            &[("a", &["e1", "e2"]), ("b", &["e1", "e2"])],
        );
        let m = r.contract(0);
        assert_eq!((m.ribbon.num_vertices(), m.ribbon.num_edges()), (1, 0));
    }

    #[test]
    fn minors_of_plane_graphs_are_plane() {
        let r = k4e();
        for e in 0..r.num_edges() {
            assert!(r.contract(e).ribbon.is_plane());
            assert!(r.delete(e).ribbon.is_plane());
            assert_eq!(r.contract(e).ribbon.graph(), &r.graph().contract(e).graph);
            assert_eq!(r.delete(e).ribbon.graph(), &r.graph().delete(e).graph);
        }
    }

    #[test]
    fn diagonal_is_left_of_counterclockwise_square() {
        let r = k4e();
        let g = r.graph();
        let ids = |v: &[&str]| -> Vec<usize> { v.iter().map(|e| g.edge_index(e).unwrap()).collect() };
        let a = g.vertex_index("a").unwrap();
        // counterclockwise: a(0,0) -> d(3,0) -> c(3,3) -> b(0,3)
        let ccw = r.cycle_darts(&ids(&["ad", "cd", "bc", "ab"]), a).unwrap();
        let sides = r.classify_sides(&ccw).unwrap();
        assert_eq!(sides.left_edges, ids(&["ac"]).into_iter().collect());
        assert!(sides.right_edges.is_empty());
        let cw = r.cycle_darts(&ids(&["ab", "bc", "cd", "ad"]), a).unwrap();
        let flipped = r.classify_sides(&cw).unwrap();
        assert_eq!(flipped.right_edges, sides.left_edges);
        assert!(r.classify_sides(&ccw[..2]).is_err());
        let tri = triangle();
        let t = tri.cycle_darts(&[0, 1, 2], 0).unwrap();
        assert_eq!(tri.classify_sides(&t).unwrap(), Sides::default());
    }

    #[test]
    fn json_round_trip() {
        let r = k4e();
        let json = r.to_json();
        assert_eq!(RibbonGraph::from_json(&json).unwrap(), r);
        assert!(r.to_dot().contains("// rotation a: ab ad ac"));
    }
}
