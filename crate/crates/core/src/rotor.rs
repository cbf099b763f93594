//! Rotor configurations, rotor-routing of chips, and unicycles.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, SpanningTree};
use crate::ribbon::{dart_edge, reverse_dart, Dart, RibbonGraph};
use crate::sandpile::Divisor;

/// A rotor (an outgoing dart) at every vertex except the sink.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotorConfiguration {
    pub sink: usize,
    pub rotors: Vec<Option<Dart>>,
}

impl RotorConfiguration {
    /// `T_s`: every tree edge oriented toward `s`.
    pub fn from_tree(rg: &RibbonGraph, t: SpanningTree, s: usize) -> Self {
        let g = rg.graph();
        let mut rotors = vec![None; g.num_vertices()];
        let mut seen = vec![false; g.num_vertices()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &e in g.incident(v) {
                let w = g.other_end(e, v);
                if t.contains(e) && !seen[w] {
                    seen[w] = true;
                    rotors[w] = Some(rg.dart(w, e).expect("incident"));
                    stack.push(w);
                }
            }
        }
        debug_assert!(seen.iter().all(|&b| b), "not a spanning tree");
        RotorConfiguration { sink: s, rotors }
    }

    pub fn rotor(&self, v: usize) -> Option<Dart> {
        self.rotors[v]
    }

    pub fn edges(&self) -> EdgeSet {
        self.rotors.iter().flatten().map(|&d| dart_edge(d)).collect()
    }

    /// The rotor edges as a spanning tree, or `None` if the rotors contain a cycle.
    pub fn to_tree(&self, rg: &RibbonGraph) -> Option<SpanningTree> {
        self.cycles(rg).is_empty().then(|| SpanningTree(self.edges()))
    }

    /// Directed cycles formed by the rotors, each as its list of darts.
    pub fn cycles(&self, rg: &RibbonGraph) -> Vec<Vec<Dart>> {
        functional_cycles(rg, |v| self.rotors[v])
    }

    /// Turns the rotor at `x` one position counterclockwise.
    pub fn rotate_one(&self, rg: &RibbonGraph, x: usize) -> Result<Self> {
        let Some(d) = self.rotors[x] else {
            return Err(Error::InvalidInput("the sink has no rotor".into()));
        };
        let mut out = self.clone();
        out.rotors[x] = Some(rg.next_dart(d));
        Ok(out)
    }

    /// Whether every rotor of the directed cycle `cycle` appears reversed.
    pub fn contains_reversal(&self, rg: &RibbonGraph, cycle: &[Dart]) -> bool {
        cycle.iter().all(|&d| self.rotors[rg.head(d)] == Some(reverse_dart(d)))
    }
}

fn functional_cycles(rg: &RibbonGraph, rotor: impl Fn(usize) -> Option<Dart>) -> Vec<Vec<Dart>> {
    let n = rg.num_vertices();
    // 0 = unvisited, 1 = on the current walk, 2 = finished
    let mut state = vec![0u8; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        let mut walk = Vec::new();
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            walk.push(v);
            match rotor(v) {
                Some(d) => v = rg.head(d),
                None => break,
            }
        }
        if state[v] == 1 && rotor(v).is_some() {
            let k = walk.iter().position(|&w| w == v).expect("on walk");
            cycles.push(walk[k..].iter().map(|&w| rotor(w).expect("rotor")).collect());
        }
        for w in walk {
            state[w] = 2;
        }
    }
    cycles
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceStep {
    pub step: usize,
    /// Chip position after the step.
    pub chip: usize,
    pub rotated_vertex: usize,
    pub new_rotor: usize,
}

/// The steps of one routing run, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RouteTrace {
    pub steps: Vec<TraceStep>,
    pub crossings: Vec<Dart>,
}

impl RouteTrace {
    /// The configuration before the first step and after each step.
    pub fn configurations(&self, rg: &RibbonGraph, start: &RotorConfiguration) -> Vec<RotorConfiguration> {
        let mut out = vec![start.clone()];
        let mut cur = start.clone();
        for &d in &self.crossings {
            cur.rotors[rg.tail(d)] = Some(d);
            out.push(cur.clone());
        }
        out
    }

    pub fn to_json(&self, rg: &RibbonGraph) -> serde_json::Value {
        let g = rg.graph();
        serde_json::Value::Array(
            self.steps
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "chip": g.vertex_id(s.chip),
                        "newRotor": g.edge_id(s.new_rotor),
                        "rotatedVertex": g.vertex_id(s.rotated_vertex),
                        "step": s.step,
                    })
                })
                .collect(),
        )
    }
}

fn step_bound(rg: &RibbonGraph, chips: usize) -> usize {
    2 * rg.num_edges() * (rg.num_vertices() + chips)
}

/// Routes one chip from `c` until it reaches the sink, updating `rho`.
fn route_in_place(
    rg: &RibbonGraph,
    rho: &mut RotorConfiguration,
    c: usize,
    bound: usize,
    mut trace: Option<&mut RouteTrace>,
) -> Result<()> {
    let mut x = c;
    let mut steps = 0;
    while x != rho.sink {
        if steps >= bound {
            return Err(Error::StepBound(bound));
        }
        let d = rg.next_dart(rho.rotors[x].expect("non-sink rotor"));
        rho.rotors[x] = Some(d);
        let rotated = x;
        x = rg.head(d);
        steps += 1;
        if let Some(t) = trace.as_deref_mut() {
            t.steps.push(TraceStep {
                step: t.steps.len() + 1,
                chip: x,
                rotated_vertex: rotated,
                new_rotor: dart_edge(d),
            });
            t.crossings.push(d);
        }
    }
    Ok(())
}

fn finish(rg: &RibbonGraph, rho: &RotorConfiguration) -> Result<SpanningTree> {
    rho.to_tree(rg)
        .ok_or_else(|| Error::Invariant("rotor-routing ended with a cyclic configuration".into()))
}

/// Routes the divisor `c - s` starting from `T_s` and returns the resulting tree.
pub fn route_chip(
    rg: &RibbonGraph,
    t: SpanningTree,
    c: usize,
    s: usize,
    trace: bool,
) -> Result<(SpanningTree, Option<RouteTrace>)> {
    let n = rg.num_vertices();
    if c >= n || s >= n {
        return Err(Error::InvalidInput("vertex out of range".into()));
    }
    let mut rho = RotorConfiguration::from_tree(rg, t, s);
    let mut tr = trace.then(RouteTrace::default);
    route_in_place(rg, &mut rho, c, step_bound(rg, 1), tr.as_mut())?;
    Ok((finish(rg, &rho)?, tr))
}

/// Routes `d`, which must be nonnegative away from `s`, chip by chip in
/// increasing vertex order.
pub fn route_divisor(rg: &RibbonGraph, t: SpanningTree, d: &Divisor, s: usize) -> Result<SpanningTree> {
    let order: Vec<usize> = (0..rg.num_vertices())
        .filter(|&v| v != s)
        .flat_map(|v| std::iter::repeat_n(v, d.0.get(v).copied().unwrap_or(0).max(0) as usize))
        .collect();
    route_divisor_in_order(rg, t, d, s, &order)
}

/// Routes the chips of `d` in the given order of source vertices.
pub fn route_divisor_in_order(
    rg: &RibbonGraph,
    t: SpanningTree,
    d: &Divisor,
    s: usize,
    order: &[usize],
) -> Result<SpanningTree> {
    if d.len() != rg.num_vertices() || d.degree() != 0 || !d.is_effective_off(s) {
        return Err(Error::InvalidInput(
            "divisor must have degree 0 and be nonnegative away from the sink".into(),
        ));
    }
    let mut counts = vec![0i64; rg.num_vertices()];
    for &v in order {
        counts[v] += 1;
    }
    if (0..rg.num_vertices()).any(|v| v != s && counts[v] != d.0[v]) {
        return Err(Error::InvalidInput("chip order does not match the divisor".into()));
    }
    let mut rho = RotorConfiguration::from_tree(rg, t, s);
    let bound = step_bound(rg, order.len());
    for &c in order {
        route_in_place(rg, &mut rho, c, bound, None)?;
    }
    finish(rg, &rho)
}

/// A rotor at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SinkFreeRotorConfiguration {
    pub rotors: Vec<Dart>,
}

impl SinkFreeRotorConfiguration {
    /// `T_s` extended by the rotor `f` at `s`.
    pub fn from_tree_and_edge(rg: &RibbonGraph, t: SpanningTree, s: usize, f: usize) -> Result<Self> {
        let base = RotorConfiguration::from_tree(rg, t, s);
        let mut rotors: Vec<Dart> = base.rotors.iter().map(|r| r.unwrap_or(usize::MAX)).collect();
        rotors[s] = rg.dart(s, f)?;
        Ok(SinkFreeRotorConfiguration { rotors })
    }

    pub fn cycles(&self, rg: &RibbonGraph) -> Vec<Vec<Dart>> {
        functional_cycles(rg, |v| Some(self.rotors[v]))
    }
}

/// A sink-free configuration with exactly one directed cycle and a chip on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unicycle {
    pub config: SinkFreeRotorConfiguration,
    pub chip: usize,
}

impl Unicycle {
    pub fn new(rg: &RibbonGraph, config: SinkFreeRotorConfiguration, chip: usize) -> Result<Self> {
        let cycles = config.cycles(rg);
        if cycles.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "expected exactly one directed cycle, found {}",
                cycles.len()
            )));
        }
        if !cycles[0].iter().any(|&d| rg.tail(d) == chip) {
            return Err(Error::InvalidInput("chip is not on the cycle".into()));
        }
        Ok(Unicycle { config, chip })
    }

    /// The unique cycle, starting at the chip.
    pub fn cycle(&self, rg: &RibbonGraph) -> Vec<Dart> {
        let mut out = Vec::new();
        let mut v = self.chip;
        loop {
            let d = self.config.rotors[v];
            out.push(d);
            v = rg.head(d);
            if v == self.chip {
                return out;
            }
        }
    }

    /// One step of the rotor-routing process: turn the rotor at the chip, then move along it.
    pub fn step(&self, rg: &RibbonGraph) -> Unicycle {
        let mut next = self.clone();
        next.step_in_place(rg);
        next
    }

    fn step_in_place(&mut self, rg: &RibbonGraph) -> Dart {
        let d = rg.next_dart(self.config.rotors[self.chip]);
        self.config.rotors[self.chip] = d;
        self.chip = rg.head(d);
        d
    }

    /// The first `steps` unicycles after this one.
    pub fn orbit(&self, rg: &RibbonGraph, steps: usize) -> Vec<Unicycle> {
        let mut cur = self.clone();
        (0..steps)
            .map(|_| {
                cur.step_in_place(rg);
                debug_assert!(cur.config.cycles(rg).len() == 1);
                cur.clone()
            })
            .collect()
    }

    /// The same unicycle with the rotors on its cycle reversed.
    pub fn reversed(&self, rg: &RibbonGraph) -> Unicycle {
        let mut out = self.clone();
        for d in self.cycle(rg) {
            out.config.rotors[rg.head(d)] = reverse_dart(d);
        }
        out
    }

    /// Runs `2|E|` steps and checks that every dart is crossed exactly once,
    /// every rotor turns exactly once around, and the walk closes up.
    pub fn check_full_spin(&self, rg: &RibbonGraph) -> std::result::Result<(), String> {
        let mut crossed = vec![0u32; rg.num_darts()];
        let mut turns = vec![0usize; rg.num_vertices()];
        let mut cur = self.clone();
        for _ in 0..rg.num_darts() {
            turns[cur.chip] += 1;
            let d = cur.step_in_place(rg);
            crossed[d] += 1;
        }
        if let Some(d) = crossed.iter().position(|&k| k != 1) {
            return Err(format!("dart {d} crossed {} times", crossed[d]));
        }
        if let Some(v) = (0..rg.num_vertices()).find(|&v| turns[v] != rg.graph().degree(v)) {
            return Err(format!("rotor at vertex {v} turned {} times", turns[v]));
        }
        if cur != *self {
            return Err("did not return to the starting unicycle".into());
        }
        Ok(())
    }

    /// Steps until the reversed unicycle appears, within one period. Returns
    /// the darts crossed on the way, or `None` if it never appears.
    pub fn run_to_reversal(&self, rg: &RibbonGraph) -> Option<Vec<Dart>> {
        let target = self.reversed(rg);
        let mut cur = self.clone();
        let mut crossed = Vec::new();
        for _ in 0..=rg.num_darts() {
            if cur == target {
                return Some(crossed);
            }
            crossed.push(cur.step_in_place(rg));
        }
        None
    }

    /// Compact key for visited-set bookkeeping.
    fn key(&self) -> (Vec<Dart>, usize) {
        (self.config.rotors.clone(), self.chip)
    }
}

/// Every unicycle of `rg`, in a deterministic order.
pub fn all_unicycles(rg: &RibbonGraph) -> Vec<Unicycle> {
    let n = rg.num_vertices();
    let darts: Vec<Vec<Dart>> = (0..n)
        .map(|v| {
            rg.graph()
                .incident(v)
                .iter()
                .map(|&e| rg.dart(v, e).expect("incident"))
                .collect()
        })
        .collect();
    if darts.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let config = SinkFreeRotorConfiguration {
            rotors: (0..n).map(|v| darts[v][idx[v]]).collect(),
        };
        let cycles = config.cycles(rg);
        if cycles.len() == 1 {
            let mut on: Vec<usize> = cycles[0].iter().map(|&d| rg.tail(d)).collect();
            on.sort_unstable();
            for x in on {
                out.push(Unicycle {
                    config: config.clone(),
                    chip: x,
                });
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < darts[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Outcome of checking full spins and reversals over every unicycle of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnicycleSummary {
    pub unicycles: usize,
    pub orbits: usize,
    pub spin_failures: Vec<String>,
    /// Unicycles whose orbit never reaches their reversal.
    pub missing_reversals: usize,
}

/// Checks the full-spin property orbit by orbit and counts unicycles whose
/// orbit omits their reversal.
pub fn unicycle_summary(rg: &RibbonGraph) -> UnicycleSummary {
    let all = all_unicycles(rg);
    let mut summary = UnicycleSummary {
        unicycles: all.len(),
        ..Default::default()
    };
    let mut seen: HashSet<(Vec<Dart>, usize)> = HashSet::new();
    let mut orbit_of = std::collections::HashMap::new();
    for u in &all {
        if seen.contains(&u.key()) {
            continue;
        }
        summary.orbits += 1;
        if let Err(msg) = u.check_full_spin(rg) {
            summary.spin_failures.push(msg);
        }
        let id = summary.orbits;
        for w in std::iter::once(u.clone()).chain(u.orbit(rg, rg.num_darts())) {
            orbit_of.insert(w.key(), id);
            seen.insert(w.key());
        }
    }
    for u in &all {
        let r = u.reversed(rg);
        if orbit_of.get(&u.key()) != orbit_of.get(&r.key()) {
            summary.missing_reversals += 1;
        }
    }
    summary
}

/// Findings of the rotor lemma checks on one routing instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub violations: Vec<String>,
    pub checks: usize,
}

/// Traces the routing of `c - s` from `T` with `c` and `s` adjacent and
/// checks: no dart crossed twice; each directed rotor cycle is later seen
/// reversed at some point of the run; the chip stays off the right side of the cycle
/// closed by any edge `f` between `c` and `s` missing from `T`; and the
/// associated unicycle sweeps exactly the left side before reversing.
pub fn check_cycle_reversal(rg: &RibbonGraph, t: SpanningTree, c: usize, s: usize) -> Result<LemmaReport> {
    if !rg.is_plane() {
        return Err(Error::NotPlane(rg.genus()));
    }
    let between = rg.graph().edges_between(c, s);
    if between.is_empty() {
        return Err(Error::InvalidInput("chip and sink must be adjacent".into()));
    }
    let mut report = LemmaReport::default();
    let start = RotorConfiguration::from_tree(rg, t, s);
    let (_, trace) = route_chip(rg, t, c, s, true)?;
    let trace = trace.expect("traced");

    report.checks += 1;
    let mut seen = HashSet::new();
    for &d in &trace.crossings {
        if !seen.insert(d) {
            report.violations.push(format!("dart {d} crossed twice"));
        }
    }

    let configs = trace.configurations(rg, &start);
    for (i, rho) in configs.iter().enumerate() {
        for cycle in rho.cycles(rg) {
            report.checks += 1;
            if !configs.iter().any(|r| r.contains_reversal(rg, &cycle)) {
                report
                    .violations
                    .push(format!("cycle {cycle:?} at step {i} is never reversed"));
            }
        }
    }

    for f in between.iter().filter(|&f| !t.contains(f)) {
        let mut cycle = Vec::new();
        let mut v = c;
        while v != s {
            let d = start.rotors[v].expect("non-sink");
            cycle.push(d);
            v = rg.head(d);
        }
        cycle.push(rg.dart(s, f)?);
        let sides = rg.classify_sides(&cycle)?;

        report.checks += 1;
        if let Some(&d) = trace
            .crossings
            .iter()
            .find(|&&d| sides.right_edges.contains(dart_edge(d)))
        {
            report
                .violations
                .push(format!("chip crossed edge {} right of the cycle", dart_edge(d)));
        }

        report.checks += 1;
        let uni = Unicycle::new(rg, SinkFreeRotorConfiguration::from_tree_and_edge(rg, t, s, f)?, c)?;
        match uni.run_to_reversal(rg) {
            None => report.violations.push("unicycle never reversed".into()),
            Some(crossed) => {
                if let Some(msg) = left_sweep_violation(rg, &cycle, &crossed)? {
                    report.violations.push(msg);
                }
            }
        }
    }
    Ok(report)
}

/// Checks that `crossed` uses every dart of every edge left of `cycle` and
/// no edge right of it.
pub fn left_sweep_violation(rg: &RibbonGraph, cycle: &[Dart], crossed: &[Dart]) -> Result<Option<String>> {
    let sides = rg.classify_sides(cycle)?;
    let used: HashSet<Dart> = crossed.iter().copied().collect();
    if let Some(e) = sides
        .left_edges
        .iter()
        .find(|&e| !used.contains(&(2 * e)) || !used.contains(&(2 * e + 1)))
    {
        return Ok(Some(format!("left edge {e} not crossed both ways")));
    }
    if let Some(&d) = crossed.iter().find(|&&d| sides.right_edges.contains(dart_edge(d))) {
        return Ok(Some(format!("right edge {} crossed", dart_edge(d))));
    }
    Ok(None)
}

/// The two arcs of the cyclic order at `x` strictly between `a` and `b`,
/// read counterclockwise: from `a` to `b`, then from `b` back to `a`.
pub fn arcs_between(rg: &RibbonGraph, x: usize, a: usize, b: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let order = rg.rotation(x);
    let pa = order.iter().position(|&e| e == a);
    let pb = order.iter().position(|&e| e == b);
    let (Some(pa), Some(pb)) = (pa, pb) else {
        return Err(Error::InvalidInput("edges are not incident to the vertex".into()));
    };
    if pa == pb {
        return Err(Error::InvalidInput("the two edges must differ".into()));
    }
    let k = order.len();
    let walk = |from: usize, to: usize| -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = (from + 1) % k;
        while i != to {
            out.push(order[i]);
            i = (i + 1) % k;
        }
        out
    };
    Ok((walk(pa, pb), walk(pb, pa)))
}

/// A copy of `rg` with the cyclic order at `x` replaced by `(a, first.., b, second..)`.
pub fn with_order_at(
    rg: &RibbonGraph,
    x: usize,
    a: usize,
    first: &[usize],
    b: usize,
    second: &[usize],
) -> Result<RibbonGraph> {
    let mut rot: Vec<Vec<usize>> = (0..rg.num_vertices()).map(|v| rg.rotation(v).to_vec()).collect();
    rot[x] = std::iter::once(a)
        .chain(first.iter().copied())
        .chain(std::iter::once(b))
        .chain(second.iter().copied())
        .collect();
    RibbonGraph::new(rg.graph().clone(), rot)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ribbon::tests::{k4e, triple_edge};

    pub(crate) fn fig3() -> RibbonGraph {
        crate::fixtures::routing_example()
    }

    fn ids(r: &RibbonGraph, t: SpanningTree) -> Vec<String> {
        r.graph().tree_ids(t)
    }

    #[test]
    fn path_rotors_point_to_sink() {
        let r = RibbonGraph::with_incidence_order(
            crate::graph::Multigraph::from_edges(&["a", "b", "c"], &[("ab", "a", "b"), ("bc", "b", "c")]).unwrap(),
        );
        let t = SpanningTree(r.graph().all_edges());
        let rho = RotorConfiguration::from_tree(&r, t, 2);
        assert_eq!(rho.rotors[0].map(|d| r.head(d)), Some(1));
        assert_eq!(rho.rotors[1].map(|d| r.head(d)), Some(2));
        assert_eq!(rho.rotors[2], None);
        assert_eq!(rho.to_tree(&r), Some(t));
        assert!(rho.rotate_one(&r, 2).is_err());
        assert_eq!(rho.rotate_one(&r, 0).unwrap(), rho);
    }

    #[test]
    fn round_trip_trees() {
        let r = k4e();
        for t in r.graph().spanning_trees().unwrap() {
            for s in 0..4 {
                assert_eq!(RotorConfiguration::from_tree(&r, t, s).to_tree(&r), Some(t));
            }
        }
    }

    #[test]
    fn cyclic_configuration_is_not_a_tree() {
        let r = RibbonGraph::with_incidence_order(
            crate::graph::Multigraph::from_edges(
                &["a", "b", "c"],
                &[("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")],
            )
            .unwrap(),
        );
        let rho = RotorConfiguration {
            sink: 2,
            rotors: vec![Some(r.dart(0, 0).unwrap()), Some(r.dart(1, 0).unwrap()), None],
        };
        assert_eq!(rho.to_tree(&r), None);
        assert_eq!(rho.cycles(&r).len(), 1);
    }

    #[test]
    fn fig3_routing() {
        let r = fig3();
        let g = r.graph();
        let t = g.tree_from_ids(&["Ac", "e1", "f"]).unwrap();
        let (c, s) = (g.vertex_index("c").unwrap(), g.vertex_index("s").unwrap());
        let (out, trace) = route_chip(&r, t, c, s, true).unwrap();
        assert_eq!(ids(&r, out), ["Ac", "As", "e1"]);
        let trace = trace.unwrap();
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.steps[0].rotated_vertex, c);
        assert_eq!(g.edge_id(trace.steps[0].new_rotor), "Ac");
        assert_eq!(route_chip(&r, t, s, s, true).unwrap().0, t);
        assert!(route_chip(&r, t, s, s, true).unwrap().1.unwrap().steps.is_empty());
    }

    #[test]
    fn divisor_routing_is_order_independent() {
        let r = k4e();
        let t = r.graph().spanning_trees().unwrap()[3];
        let d = Divisor(vec![-3, 2, 0, 1]);
        let a = route_divisor_in_order(&r, t, &d, 0, &[1, 1, 3]).unwrap();
        let b = route_divisor_in_order(&r, t, &d, 0, &[3, 1, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(route_divisor(&r, t, &d, 0).unwrap(), a);
        assert!(route_divisor(&r, t, &Divisor(vec![1, -1, 0, 0]), 0).is_err());
        assert_eq!(route_divisor(&r, t, &Divisor::zero(4), 0).unwrap(), t);
    }

    #[test]
    fn unicycles_spin_and_reverse() {
        for plane in [true, false] {
            let r = triple_edge(plane);
            let summary = unicycle_summary(&r);
            assert!(summary.unicycles > 0);
            assert!(summary.spin_failures.is_empty());
            assert_eq!(summary.missing_reversals == 0, plane);
        }
        let summary = unicycle_summary(&k4e());
        assert!(summary.spin_failures.is_empty());
        assert_eq!(summary.missing_reversals, 0);
    }

    #[test]
    fn unicycle_validation() {
        let r = k4e();
        let t = r.graph().spanning_trees().unwrap()[0];
        let config = SinkFreeRotorConfiguration::from_tree_and_edge(&r, t, 0, 0).unwrap();
        let head = r.graph().other_end(0, 0);
        assert!(Unicycle::new(&r, config.clone(), head).is_ok());
        let u = Unicycle::new(&r, config, head).unwrap();
        assert_eq!(u.reversed(&r).reversed(&r), u);
    }

    #[test]
    fn lemma_checks_on_small_plane_graphs() {
        for r in [k4e(), fig3(), triple_edge(true)] {
            let g = r.graph();
            for t in g.spanning_trees().unwrap() {
                for e in 0..g.num_edges() {
                    let [a, b] = g.ends(e);
                    for (c, s) in [(a, b), (b, a)] {
                        let rep = check_cycle_reversal(&r, t, c, s).unwrap();
                        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
                    }
                }
            }
        }
    }

    #[test]
    fn arcs_split_the_order() {
        let r = fig3();
        let g = r.graph();
        let c = g.vertex_index("c").unwrap();
        let (f, ac, e1) = (
            g.edge_index("f").unwrap(),
            g.edge_index("Ac").unwrap(),
            g.edge_index("e1").unwrap(),
        );
        assert_eq!(arcs_between(&r, c, f, e1).unwrap(), (vec![ac], vec![]));
        let r2 = with_order_at(&r, c, f, &[], ac, &[e1]).unwrap();
        assert_eq!(r2.next_edge(c, f).unwrap(), ac);
    }
}
