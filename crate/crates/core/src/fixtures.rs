//! Small named ribbon graphs used by tests, examples and the command line.

use std::collections::BTreeMap;

use crate::enumerate::rotation_systems;
use crate::graph::Multigraph;
use crate::ribbon::RibbonGraph;

/// A straight-line drawing: each vertex lists its edges counterclockwise by
/// the angle towards the other end.
pub fn from_positions(vertices: &[(&str, f64, f64)], edges: &[(&str, &str, &str)]) -> RibbonGraph {
    let ids: Vec<&str> = vertices.iter().map(|v| v.0).collect();
    let g = Multigraph::from_edges(&ids, edges).expect("valid drawing");
    let pos: BTreeMap<&str, (f64, f64)> = vertices.iter().map(|&(v, x, y)| (v, (x, y))).collect();
    let mut rot: BTreeMap<String, Vec<(f64, &str)>> = BTreeMap::new();
    for &(e, u, v) in edges {
        for (a, b) in [(u, v), (v, u)] {
            let (pa, pb) = (pos[a], pos[b]);
            let angle = (pb.1 - pa.1).atan2(pb.0 - pa.0);
            rot.entry(a.to_string()).or_default().push((angle, e));
        }
    }
    let rot: BTreeMap<String, Vec<&str>> = rot
        .into_iter()
        .map(|(v, mut es)| {
            es.sort_by(|a, b| a.0.total_cmp(&b.0));
            (v, es.into_iter().map(|x| x.1).collect())
        })
        .collect();
    RibbonGraph::from_ids(g, &rot).expect("valid drawing")
}

/// Builds a ribbon graph from explicit cyclic orders.
pub fn from_rotation(vertices: &[&str], edges: &[(&str, &str, &str)], rot: &[(&str, &[&str])]) -> RibbonGraph {
    let g = Multigraph::from_edges(vertices, edges).expect("valid graph");
    let rot: BTreeMap<String, Vec<&str>> = rot.iter().map(|(v, o)| (v.to_string(), o.to_vec())).collect();
    RibbonGraph::from_ids(g, &rot).expect("valid rotation")
}

/// The square a(0,0) b(0,3) c(3,3) d(3,0) with diagonal ac.
pub fn diamond() -> RibbonGraph {
    from_positions(
        &[("a", 0.0, 0.0), ("b", 0.0, 3.0), ("c", 3.0, 3.0), ("d", 3.0, 0.0)],
        &[
            ("ab", "a", "b"),
            ("ac", "a", "c"),
            ("ad", "a", "d"),
            ("bc", "b", "c"),
            ("cd", "c", "d"),
        ],
    )
}

/// Four vertices A, B, c, s with the edge `f = cs`; the tree
/// `{Ac, e1, f}` routes `[c - s]` to `{Ac, As, e1}` in two rotor turns.
pub fn routing_example() -> RibbonGraph {
    from_rotation(
        &["A", "B", "c", "s"],
        &[
            ("Ac", "A", "c"),
            ("As", "A", "s"),
            ("e1", "B", "c"),
            ("e2", "A", "B"),
            ("f", "c", "s"),
        ],
        &[
            ("c", &["f", "Ac", "e1"]),
            ("A", &["e2", "Ac", "As"]),
            ("s", &["f", "As"]),
            ("B", &["e1", "e2"]),
        ],
    )
}

/// A pentagon a c p s q with chord cq, where `c` and `s` are not adjacent
/// and the edge `e = ps` breaks contraction compatibility.
pub fn nonadjacent_example() -> RibbonGraph {
    from_positions(
        &[
            ("a", 0.0, 0.0),
            ("c", 1.0, 1.0),
            ("p", 2.0, 0.5),
            ("s", 2.0, -0.5),
            ("q", 1.0, -1.0),
        ],
        &[
            ("ac", "a", "c"),
            ("cp", "c", "p"),
            ("e", "p", "s"),
            ("sq", "s", "q"),
            ("qa", "q", "a"),
            ("cq", "c", "q"),
        ],
    )
}

/// The square a(0,0) b(2,0) c(0,2) d(2,2) with diagonal ad.
pub fn swap_square() -> RibbonGraph {
    from_positions(
        &[("a", 0.0, 0.0), ("b", 2.0, 0.0), ("c", 0.0, 2.0), ("d", 2.0, 2.0)],
        &[
            ("ab", "a", "b"),
            ("ac", "a", "c"),
            ("ad", "a", "d"),
            ("bd", "b", "d"),
            ("cd", "c", "d"),
        ],
    )
}

/// Two vertices joined by three edges; the plane structure reverses the
/// order at `y`, the other one repeats it and has genus 1.
pub fn triple_edge(plane: bool) -> RibbonGraph {
    let y: &[&str] = if plane {
        &["e3", "e2", "e1"]
    } else {
        &["e1", "e2", "e3"]
    };
    from_rotation(
        &["x", "y"],
        &[("e1", "x", "y"), ("e2", "x", "y"), ("e3", "x", "y")],
        &[("x", &["e1", "e2", "e3"]), ("y", y)],
    )
}

/// The complete graph on four vertices, drawn as a triangle around its
/// center, or with the first genus-1 rotation system.
pub fn k4(plane: bool) -> RibbonGraph {
    let drawn = from_positions(
        &[("a", 0.0, 0.0), ("b", 4.0, 0.0), ("c", 2.0, 3.0), ("o", 2.0, 1.0)],
        &[
            ("ab", "a", "b"),
            ("ac", "a", "c"),
            ("ao", "a", "o"),
            ("bc", "b", "c"),
            ("bo", "b", "o"),
            ("co", "c", "o"),
        ],
    );
    if plane {
        return drawn;
    }
    rotation_systems(drawn.graph())
        .into_iter()
        .find(|r| r.genus() == 1)
        .expect("K4 has toroidal embeddings")
}

/// A triangle with a pendant edge, which has a cut vertex.
pub fn lollipop() -> RibbonGraph {
    from_positions(
        &[("a", 0.0, 0.0), ("b", 2.0, 0.0), ("c", 1.0, 2.0), ("d", 4.0, 0.0)],
        &[("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a"), ("bd", "b", "d")],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genera() {
        assert!(diamond().is_plane());
        assert!(routing_example().is_plane());
        assert!(nonadjacent_example().is_plane());
        assert!(swap_square().is_plane());
        assert!(k4(true).is_plane());
        assert_eq!(k4(false).genus(), 1);
        assert_eq!(triple_edge(false).genus(), 1);
        assert!(lollipop().is_plane());
        assert!(!lollipop().graph().is_two_connected());
    }
}
