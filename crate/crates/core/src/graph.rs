//! Finite loopless multigraphs with string ids, minors and spanning trees.
//!
//! Vertices and edges are stored sorted by id, so an index is also a rank in
//! lexicographic id order. Minors keep the surviving ids, which keeps the
//! indices of a minor sorted as well.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of edge indices of one graph. Graphs are limited to 64 edges.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub const fn empty() -> Self {
        EdgeSet(0)
    }

    pub fn from_bits(bits: u64) -> Self {
        EdgeSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn full(m: usize) -> Self {
        if m == 64 {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << m) - 1)
        }
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1 << e;
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1 << e);
    }

    pub fn with(mut self, e: usize) -> Self {
        self.insert(e);
        self
    }

    pub fn without(mut self, e: usize) -> Self {
        self.remove(e);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        EdgeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        EdgeSet(self.0 & !other.0)
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = EdgeSet::empty();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A spanning tree, stored as a set of edge indices of its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree(pub EdgeSet);

impl SpanningTree {
    pub fn edges(self) -> EdgeSet {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        self.0.contains(e)
    }
}

/// The result of a contraction or deletion, with index maps from the parent.
#[derive(Clone, Debug)]
pub struct Minor {
    pub graph: Multigraph,
    /// Parent vertex index to minor vertex index.
    pub vertex_map: Vec<usize>,
    /// Parent edge index to minor edge index, `None` for removed edges.
    pub edge_map: Vec<Option<usize>>,
}

impl Minor {
    pub fn map_edges(&self, set: EdgeSet) -> EdgeSet {
        set.iter().filter_map(|e| self.edge_map[e]).collect()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<String>,
    ends: Vec<[usize; 2]>,
    incidence: Vec<Vec<usize>>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = (0..self.num_edges())
            .map(|e| {
                let [a, b] = self.ends[e];
                format!("{}:{}-{}", self.edges[e], self.vertices[a], self.vertices[b])
            })
            .collect();
        f.debug_struct("Multigraph")
            .field("vertices", &self.vertices)
            .field("edges", &edges)
            .finish()
    }
}

impl Multigraph {
    /// Builds a graph from vertex ids and `(edge id, end, end)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut vs: Vec<String> = vertices.into_iter().map(Into::into).collect();
        vs.sort();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId(w[0].clone()));
        }
        let mut es: Vec<(String, String, String)> = edges.into_iter().collect();
        es.sort();
        if let Some(w) = es.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateId(w[0].0.clone()));
        }
        let index = |v: &str| {
            vs.binary_search_by(|x| x.as_str().cmp(v))
                .map_err(|_| Error::UnknownVertex(v.to_string()))
        };
        let mut ids = Vec::with_capacity(es.len());
        let mut ends = Vec::with_capacity(es.len());
        for (id, u, v) in es {
            let (a, b) = (index(&u)?, index(&v)?);
            if a == b {
                return Err(Error::Loop(id));
            }
            ids.push(id);
            ends.push([a.min(b), a.max(b)]);
        }
        Self::from_parts(vs, ids, ends)
    }

    /// Convenience constructor from string slices.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().copied(),
            edges
                .iter()
                .map(|(id, u, v)| (id.to_string(), u.to_string(), v.to_string())),
        )
    }

    /// `vertices` and `edges` must already be sorted and unique.
    pub(crate) fn from_parts(vertices: Vec<String>, edges: Vec<String>, ends: Vec<[usize; 2]>) -> Result<Self> {
        if edges.len() > 64 {
            return Err(Error::TooManyEdges(edges.len()));
        }
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (e, &[a, b]) in ends.iter().enumerate() {
            incidence[a].push(e);
            incidence[b].push(e);
        }
        Ok(Multigraph {
            vertices,
            edges,
            ends,
            incidence,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_ids(&self) -> &[String] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .binary_search_by(|x| x.as_str().cmp(id))
            .map_err(|_| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges
            .binary_search_by(|x| x.as_str().cmp(id))
            .map_err(|_| Error::UnknownEdge(id.to_string()))
    }

    /// Endpoints of `e`, smaller index first.
    pub fn ends(&self, e: usize) -> [usize; 2] {
        self.ends[e]
    }

    pub fn is_incident(&self, v: usize, e: usize) -> bool {
        self.ends[e].contains(&v)
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Incident edges of `v` in increasing index order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.num_edges())
    }

    pub fn are_parallel(&self, e: usize, f: usize) -> bool {
        self.ends[e] == self.ends[f]
    }

    /// `e` together with every edge parallel to it.
    pub fn parallel_class(&self, e: usize) -> EdgeSet {
        (0..self.num_edges())
            .filter(|&f| self.ends[f] == self.ends[e])
            .collect()
    }

    /// Edges joining `u` and `v`.
    pub fn edges_between(&self, u: usize, v: usize) -> EdgeSet {
        self.incidence[u]
            .iter()
            .copied()
            .filter(|&e| self.other_end(e, u) == v)
            .collect()
    }

    pub fn edge_set_ids(&self, set: EdgeSet) -> Vec<String> {
        set.iter().map(|e| self.edges[e].clone()).collect()
    }

    pub fn edge_set_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<EdgeSet> {
        let mut set = EdgeSet::empty();
        for id in ids {
            let e = self.edge_index(id.as_ref())?;
            if set.contains(e) {
                return Err(Error::DuplicateId(id.as_ref().to_string()));
            }
            set.insert(e);
        }
        Ok(set)
    }

    pub fn tree_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<SpanningTree> {
        let set = self.edge_set_from_ids(ids)?;
        if !self.is_spanning_tree(set) {
            return Err(Error::InvalidInput(format!(
                "{:?} is not a spanning tree",
                ids.iter().map(|s| s.as_ref()).collect::<Vec<_>>()
            )));
        }
        Ok(SpanningTree(set))
    }

    pub fn tree_ids(&self, t: SpanningTree) -> Vec<String> {
        self.edge_set_ids(t.0)
    }

    /// Removes `e`; the result may be disconnected.
    pub fn delete(&self, e: usize) -> Minor {
        let edge_map = (0..self.num_edges())
            .map(|f| match f.cmp(&e) {
                std::cmp::Ordering::Less => Some(f),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(f - 1),
            })
            .collect();
        self.restrict(self.all_edges().without(e), edge_map)
    }

    fn restrict(&self, keep: EdgeSet, edge_map: Vec<Option<usize>>) -> Minor {
        let graph = Multigraph::from_parts(
            self.vertices.clone(),
            keep.iter().map(|f| self.edges[f].clone()).collect(),
            keep.iter().map(|f| self.ends[f]).collect(),
        )
        .expect("subgraph of a valid graph");
        Minor {
            graph,
            vertex_map: (0..self.num_vertices()).collect(),
            edge_map,
        }
    }

    /// Merges the ends of `e` into the one with the smaller id and drops `e`
    /// together with its parallel edges.
    pub fn contract(&self, e: usize) -> Minor {
        let [x, y] = self.ends[e];
        let removed = self.parallel_class(e);
        let vertex_map: Vec<usize> = (0..self.num_vertices())
            .map(|v| match v.cmp(&y) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Equal => x,
                std::cmp::Ordering::Greater => v - 1,
            })
            .collect();
        let mut edge_map = vec![None; self.num_edges()];
        let mut ids = Vec::new();
        let mut ends = Vec::new();
        for f in 0..self.num_edges() {
            if removed.contains(f) {
                continue;
            }
            edge_map[f] = Some(ids.len());
            ids.push(self.edges[f].clone());
            let [a, b] = self.ends[f];
            let (a, b) = (vertex_map[a], vertex_map[b]);
            ends.push([a.min(b), a.max(b)]);
        }
        let vertices = (0..self.num_vertices())
            .filter(|&v| v != y)
            .map(|v| self.vertices[v].clone())
            .collect();
        Minor {
            graph: Multigraph::from_parts(vertices, ids, ends).expect("minor of a valid graph"),
            vertex_map,
            edge_map,
        }
    }

    /// Vertices reachable from `start` using edges in `edges`, avoiding `blocked`.
    fn reach(&self, start: usize, edges: EdgeSet, blocked: Option<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.num_vertices()];
        if Some(start) == blocked {
            return seen;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.incidence[v] {
                if !edges.contains(e) {
                    continue;
                }
                let w = self.other_end(e, v);
                if !seen[w] && Some(w) != blocked {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Whether the spanning subgraph with edge set `edges` is connected.
    pub fn is_connected_with(&self, edges: EdgeSet) -> bool {
        self.num_vertices() == 0 || self.reach(0, edges, None).iter().all(|&b| b)
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_with(self.all_edges())
    }

    pub fn is_spanning_tree(&self, set: EdgeSet) -> bool {
        self.num_vertices() > 0
            && set.len() == self.num_vertices() - 1
            && set.bits() >> self.num_edges() == 0
            && self.is_connected_with(set)
    }

    /// All spanning trees, in lexicographic order of their sorted edge ids.
    pub fn spanning_trees(&self) -> Result<Vec<SpanningTree>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut out = Vec::new();
        let mut dsu = Dsu::new(self.num_vertices());
        self.trees_rec(0, EdgeSet::empty(), self.all_edges(), &mut dsu, &mut out);
        Ok(out)
    }

    fn trees_rec(&self, i: usize, chosen: EdgeSet, available: EdgeSet, dsu: &mut Dsu, out: &mut Vec<SpanningTree>) {
        let need = self.num_vertices() - 1;
        if chosen.len() == need {
            out.push(SpanningTree(chosen));
            return;
        }
        if i == self.num_edges() || chosen.len() + (self.num_edges() - i) < need {
            return;
        }
        let [a, b] = self.ends[i];
        if dsu.find(a) != dsu.find(b) {
            let saved = dsu.clone();
            dsu.union(a, b);
            self.trees_rec(i + 1, chosen.with(i), available, dsu, out);
            *dsu = saved;
        }
        let without = available.without(i);
        if self.is_connected_with(without) {
            self.trees_rec(i + 1, chosen, without, dsu, out);
        }
    }

    pub fn cut_vertices(&self) -> BTreeSet<usize> {
        (0..self.num_vertices())
            .filter(|&x| {
                let Some(start) = (0..self.num_vertices()).find(|&v| v != x) else {
                    return false;
                };
                let seen = self.reach(start, self.all_edges(), Some(x));
                (0..self.num_vertices()).any(|v| v != x && !seen[v])
            })
            .collect()
    }

    /// Connected and without cut vertices.
    pub fn is_two_connected(&self) -> bool {
        self.is_connected() && self.cut_vertices().is_empty()
    }

    /// True iff every path between edges `a` and `b` passes through `x`.
    pub fn separates(&self, x: usize, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let from: Vec<usize> = self.ends[a].iter().copied().filter(|&v| v != x).collect();
        let to: Vec<usize> = self.ends[b].iter().copied().filter(|&v| v != x).collect();
        // an edge not touching x keeps both ends together, so one end suffices
        let seen = self.reach(from[0], self.all_edges(), Some(x));
        !to.iter().any(|&v| seen[v])
    }

    /// Some cut vertex separating edges `a` and `b`, if any.
    pub fn separating_cut_vertex(&self, a: usize, b: usize) -> Option<usize> {
        self.cut_vertices().into_iter().find(|&x| self.separates(x, a, b))
    }

    /// Laplacian `deg(G) - A`, rows and columns in vertex index order.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        let mut l = vec![vec![0i64; n]; n];
        for &[a, b] in &self.ends {
            l[a][a] += 1;
            l[b][b] += 1;
            l[a][b] -= 1;
            l[b][a] -= 1;
        }
        l
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            edges: (0..self.num_edges())
                .map(|e| EdgeJson {
                    ends: [
                        self.vertices[self.ends[e][0]].clone(),
                        self.vertices[self.ends[e][1]].clone(),
                    ],
                    id: self.edges[e].clone(),
                })
                .collect(),
            rotation: None,
            vertices: self.vertices.clone(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        Multigraph::new(
            json.vertices.iter().cloned(),
            json.edges
                .iter()
                .map(|e| (e.id.clone(), e.ends[0].clone(), e.ends[1].clone())),
        )
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Serialized graph. Fields are declared in key order so output keys are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<String>>>,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub ends: [String; 2],
    pub id: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k4e() -> Multigraph {
        Multigraph::from_edges(
            &["a", "b", "c", "d"],
            &[
                ("ab", "a", "b"),
                ("ac", "a", "c"),
                ("ad", "a", "d"),
                ("bc", "b", "c"),
                ("cd", "c", "d"),
            ],
        )
        .unwrap()
    }

    fn cycle(k: usize) -> Multigraph {
        let vs: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
        let es = (0..k).map(|i| (format!("e{i}"), vs[i].clone(), vs[(i + 1) % k].clone()));
        Multigraph::new(vs.clone(), es).unwrap()
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(
            Multigraph::from_edges(&["a"], &[("e", "a", "a")]),
            Err(Error::Loop(_))
        ));
        assert!(matches!(
            Multigraph::from_edges(&["a", "a"], &[]),
            Err(Error::DuplicateId(_))
        ));
        assert!(matches!(
            Multigraph::from_edges(&["a"], &[("e", "a", "z")]),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn contract_triangle_gives_double_edge() {
        let g = cycle(3);
        let m = g.contract(g.edge_index("e0").unwrap());
        assert_eq!(m.graph.num_vertices(), 2);
        assert_eq!(m.graph.num_edges(), 2);
        assert!(m.graph.are_parallel(0, 1));
        assert_eq!(m.graph.vertex_ids(), &["v0".to_string(), "v2".to_string()]);
    }

    #[test]
    fn contract_double_edge_drops_parallel() {
        let g = Multigraph::from_edges(&["a", "b"], &[("e1", "a", "b"), ("e2", "a", "b")]).unwrap();
        let m = g.contract(0);
        assert_eq!(m.graph.num_vertices(), 1);
        assert_eq!(m.graph.num_edges(), 0);
        assert_eq!(m.edge_map, vec![None, None]);
    }

    #[test]
    fn k4e_minors() {
        let g = k4e();
        for t in g.spanning_trees().unwrap() {
            for e in t.0.iter() {
                let m = g.contract(e);
                assert_eq!((m.graph.num_vertices(), m.graph.num_edges()), (3, 4));
            }
        }
        let m = g.delete(g.edge_index("ac").unwrap());
        assert_eq!(m.graph.num_edges(), 4);
        assert!(m.graph.is_connected());
    }

    #[test]
    fn tree_counts() {
        assert_eq!(k4e().spanning_trees().unwrap().len(), 8);
        assert_eq!(cycle(5).spanning_trees().unwrap().len(), 5);
        let e = Multigraph::from_edges(&["a", "b"], &[("e", "a", "b")]).unwrap();
        assert_eq!(e.spanning_trees().unwrap().len(), 1);
        let single = Multigraph::from_edges(&["a"], &[]).unwrap();
        assert_eq!(single.spanning_trees().unwrap(), vec![SpanningTree(EdgeSet::empty())]);
    }

    #[test]
    fn trees_are_lexicographic() {
        let g = k4e();
        let trees = g.spanning_trees().unwrap();
        let lists: Vec<Vec<usize>> = trees.iter().map(|t| t.0.iter().collect()).collect();
        let mut sorted = lists.clone();
        sorted.sort();
        assert_eq!(lists, sorted);
    }

    #[test]
    fn disconnected_has_no_trees() {
        let g = Multigraph::from_edges(&["a", "b", "c"], &[("e", "a", "b")]).unwrap();
        assert_eq!(g.spanning_trees(), Err(Error::Disconnected));
    }

    #[test]
    fn cut_vertices_and_separation() {
        let bowtie = Multigraph::from_edges(
            &["a", "b", "c", "d", "x"],
            &[
                ("ab", "a", "b"),
                ("ax", "a", "x"),
                ("bx", "b", "x"),
                ("cd", "c", "d"),
                ("cx", "c", "x"),
                ("dx", "d", "x"),
            ],
        )
        .unwrap();
        let x = bowtie.vertex_index("x").unwrap();
        assert_eq!(bowtie.cut_vertices(), BTreeSet::from([x]));
        let (l, r) = (bowtie.edge_index("ab").unwrap(), bowtie.edge_index("cd").unwrap());
        assert!(bowtie.separates(x, l, r));
        assert!(!bowtie.separates(x, l, bowtie.edge_index("ax").unwrap()));
        assert!(bowtie.separates(x, bowtie.edge_index("ax").unwrap(), r));
        assert!(cycle(4).cut_vertices().is_empty());
        assert!(k4e().is_two_connected());
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let l = k4e().laplacian();
        for (i, row) in l.iter().enumerate() {
            assert_eq!(row.iter().sum::<i64>(), 0);
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, l[j][i]);
            }
        }
        assert_eq!(l[0][0], 3);
    }

    #[test]
    fn json_round_trip_has_sorted_keys() {
        let g = k4e();
        let s = serde_json::to_string(&g.to_json()).unwrap();
        assert!(s.starts_with("{\"edges\":[{\"ends\":[\"a\",\"b\"],\"id\":\"ab\"}"));
        let back: GraphJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Multigraph::from_json(&back).unwrap(), g);
    }
}
