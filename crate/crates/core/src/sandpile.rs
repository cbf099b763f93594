//! Divisors, chip-firing, reduced divisors and the sandpile group.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::lattice::{smith_diagonal, to_big};

/// Chips per vertex, indexed like the vertices of the graph it lives on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    /// The divisor `c - s`.
    pub fn chip(n: usize, c: usize, s: usize) -> Self {
        let mut d = Divisor::zero(n);
        d.0[c] += 1;
        d.0[s] -= 1;
        d
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Divisor {
        Divisor(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor(self.0.iter().map(|a| a * k).collect())
    }

    /// Nonnegative away from `s`.
    pub fn is_effective_off(&self, s: usize) -> bool {
        self.0.iter().enumerate().all(|(v, &x)| v == s || x >= 0)
    }

    pub fn to_map(&self, g: &Multigraph) -> BTreeMap<String, i64> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(v, &x)| (g.vertex_id(v).to_string(), x))
            .collect()
    }

    /// Missing vertices count as zero.
    pub fn from_map(g: &Multigraph, map: &BTreeMap<String, i64>) -> Result<Self> {
        let mut d = Divisor::zero(g.num_vertices());
        for (v, &x) in map {
            d.0[g.vertex_index(v)?] = x;
        }
        Ok(d)
    }
}

fn check_len(g: &Multigraph, d: &Divisor) -> Result<()> {
    if d.len() != g.num_vertices() {
        return Err(Error::InvalidInput(format!(
            "divisor has {} entries for {} vertices",
            d.len(),
            g.num_vertices()
        )));
    }
    Ok(())
}

/// Fires `v` once.
pub fn fire(g: &Multigraph, d: &Divisor, v: usize) -> Result<Divisor> {
    check_len(g, d)?;
    if v >= g.num_vertices() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let mut out = d.clone();
    fire_in_place(g, &mut out, v, 1);
    Ok(out)
}

fn fire_in_place(g: &Multigraph, d: &mut Divisor, v: usize, times: i64) {
    for &e in g.incident(v) {
        d.0[v] -= times;
        d.0[g.other_end(e, v)] += times;
    }
}

/// Fires every vertex of `set` once.
fn fire_set(g: &Multigraph, d: &mut Divisor, set: &[bool], times: i64) {
    for e in 0..g.num_edges() {
        let [a, b] = g.ends(e);
        match (set[a], set[b]) {
            (true, false) => {
                d.0[a] -= times;
                d.0[b] += times;
            }
            (false, true) => {
                d.0[b] -= times;
                d.0[a] += times;
            }
            _ => {}
        }
    }
}

/// The `q`-reduced divisor equivalent to `d`. The graph must be connected.
pub fn reduce(g: &Multigraph, d: &Divisor, q: usize) -> Result<Divisor> {
    check_len(g, d)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.num_vertices();
    let mut d = d.clone();
    // clear debt level by level, farthest from q first
    let dist = bfs_levels(g, q);
    let depth = dist.iter().copied().max().unwrap_or(0);
    for k in (1..=depth).rev() {
        let outer: Vec<bool> = dist.iter().map(|&x| x >= k).collect();
        loop {
            let mut times = 0i64;
            for v in 0..n {
                if dist[v] == k && d.0[v] < 0 {
                    let gain = g.incident(v).iter().filter(|&&e| dist[g.other_end(e, v)] < k).count() as i64;
                    times = times.max((-d.0[v] + gain - 1) / gain);
                }
            }
            if times == 0 {
                break;
            }
            // the complement of `outer` fires, so every level-k vertex gains
            let inner: Vec<bool> = outer.iter().map(|&b| !b).collect();
            fire_set(g, &mut d, &inner, times);
        }
    }
    // Dhar's burning algorithm
    loop {
        let mut burnt = vec![false; n];
        burnt[q] = true;
        let mut queue = VecDeque::from([q]);
        let mut heat = vec![0i64; n];
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                let w = g.other_end(e, v);
                if burnt[w] {
                    continue;
                }
                heat[w] += 1;
                if heat[w] > d.0[w] {
                    burnt[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if burnt.iter().all(|&b| b) {
            return Ok(d);
        }
        let unburnt: Vec<bool> = burnt.iter().map(|&b| !b).collect();
        fire_set(g, &mut d, &unburnt, 1);
    }
}

fn bfs_levels(g: &Multigraph, q: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.num_vertices()];
    dist[q] = 0;
    let mut queue = VecDeque::from([q]);
    while let Some(v) = queue.pop_front() {
        for &e in g.incident(v) {
            let w = g.other_end(e, v);
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Whether two divisors differ by an element of the Laplacian image.
pub fn same_class(g: &Multigraph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    if d1.degree() != d2.degree() {
        return Ok(false);
    }
    Ok(reduce(g, &d1.sub(d2), 0)?.is_zero())
}

const STABILIZE_LIMIT: usize = 10_000_000;

/// Fires vertices other than `s` holding at least their degree in chips until none does.
pub fn stabilize(g: &Multigraph, d: &Divisor, s: usize) -> Result<Divisor> {
    check_len(g, d)?;
    if !d.is_effective_off(s) {
        return Err(Error::InvalidInput("stabilize needs chips >= 0 off the sink".into()));
    }
    let mut d = d.clone();
    let mut firings = 0usize;
    loop {
        let mut stable = true;
        for v in 0..g.num_vertices() {
            let deg = g.degree(v) as i64;
            if v != s && deg > 0 && d.0[v] >= deg {
                let times = d.0[v] / deg;
                fire_in_place(g, &mut d, v, times);
                firings += times as usize;
                stable = false;
            }
        }
        if stable {
            return Ok(d);
        }
        if firings > STABILIZE_LIMIT {
            return Err(Error::StepBound(STABILIZE_LIMIT));
        }
    }
}

/// An equivalent divisor that is nonnegative off `s`, built from the
/// stabilization of the divisor with `deg(v)` chips on each `v != s`.
pub fn move_to_sink(g: &Multigraph, d: &Divisor, s: usize) -> Result<Divisor> {
    check_len(g, d)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if d.degree() != 0 {
        return Err(Error::InvalidInput("divisor must have degree 0".into()));
    }
    let n = g.num_vertices();
    let mut delta = Divisor::zero(n);
    for v in 0..n {
        if v != s {
            delta.0[v] = g.degree(v) as i64;
        }
    }
    delta.0[s] = -delta.degree();
    let stable = stabilize(g, &delta, s)?;
    let m = -d.0.iter().copied().min().unwrap_or(0);
    Ok(d.add(&delta.sub(&stable).scale(m)))
}

/// An element of the sandpile group, stored as its reduced divisor with
/// respect to the vertex of smallest id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SandpileClass(Divisor);

impl SandpileClass {
    pub fn new(g: &Multigraph, d: &Divisor) -> Result<Self> {
        if d.degree() != 0 {
            return Err(Error::InvalidInput("sandpile classes have degree 0".into()));
        }
        Ok(SandpileClass(reduce(g, d, 0)?))
    }

    pub fn identity(g: &Multigraph) -> Self {
        SandpileClass(Divisor::zero(g.num_vertices()))
    }

    /// The class of `c - s`.
    pub fn of_pair(g: &Multigraph, c: usize, s: usize) -> Self {
        SandpileClass::new(g, &Divisor::chip(g.num_vertices(), c, s)).expect("degree 0")
    }

    pub fn representative(&self) -> &Divisor {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, g: &Multigraph, other: &SandpileClass) -> Self {
        SandpileClass::new(g, &self.0.add(&other.0)).expect("degree 0")
    }

    pub fn neg(&self, g: &Multigraph) -> Self {
        SandpileClass::new(g, &self.0.neg()).expect("degree 0")
    }

    /// The reduced representative with respect to another sink.
    pub fn representative_at(&self, g: &Multigraph, s: usize) -> Divisor {
        reduce(g, &self.0, s).expect("connected")
    }
}

/// All elements of the sandpile group, sorted.
pub fn group_elements(g: &Multigraph) -> Result<Vec<SandpileClass>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.num_vertices();
    let generators: Vec<SandpileClass> = (1..n).map(|v| SandpileClass::of_pair(g, v, 0)).collect();
    let mut seen = BTreeSet::from([SandpileClass::identity(g)]);
    let mut queue = VecDeque::from([SandpileClass::identity(g)]);
    while let Some(x) = queue.pop_front() {
        for gen in &generators {
            let y = x.add(g, gen);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    /// Invariant factors greater than one, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl GroupStructure {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().fold(BigInt::one(), |acc, x| acc * x)
    }
}

/// Laplacian with the row and column of the vertex of smallest id removed.
pub fn reduced_laplacian(g: &Multigraph) -> Vec<Vec<i64>> {
    g.laplacian()
        .into_iter()
        .skip(1)
        .map(|row| row.into_iter().skip(1).collect())
        .collect()
}

pub fn group_structure(g: &Multigraph) -> Result<GroupStructure> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let diag = smith_diagonal(&to_big(&reduced_laplacian(g)));
    Ok(GroupStructure {
        invariant_factors: diag.into_iter().filter(|x| !x.is_one()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4e() -> Multigraph {
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
    fn fire_triangle() {
        let g = cycle(3);
        let d = fire(&g, &Divisor::zero(3), 0).unwrap();
        assert_eq!(d, Divisor(vec![-2, 1, 1]));
        let all = (1..3).try_fold(d, |d, v| fire(&g, &d, v)).unwrap();
        assert!(all.is_zero());
    }

    #[test]
    fn fire_matches_laplacian_row() {
        let g = k4e();
        let l = g.laplacian();
        let d = fire(&g, &Divisor::zero(4), 0).unwrap();
        assert_eq!(d.0, l[0].iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn triangle_classes() {
        let g = cycle(3);
        let a = Divisor(vec![1, -1, 0]);
        // -2 = 1 in Z/3, so these agree, while the doubled class does not
        assert!(same_class(&g, &a, &Divisor(vec![-2, 2, 0])).unwrap());
        assert!(!same_class(&g, &a, &Divisor(vec![2, -2, 0])).unwrap());
        assert!(same_class(&g, &a.scale(3), &Divisor::zero(3)).unwrap());
    }

    #[test]
    fn k4e_superstables_are_distinct() {
        let g = k4e();
        // values listed for b, a, c, d
        let reps: [[i64; 4]; 8] = [
            [0, 0, 0, 0],
            [-1, 0, 0, 1],
            [-1, 0, 1, 0],
            [-1, 1, 0, 0],
            [-2, 2, 0, 0],
            [-2, 0, 2, 0],
            [-2, 1, 0, 1],
            [-2, 0, 1, 1],
        ];
        let divs: Vec<Divisor> = reps.iter().map(|r| Divisor(vec![r[1], r[0], r[2], r[3]])).collect();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(same_class(&g, &divs[i], &divs[j]).unwrap(), i == j);
            }
            // a superstable with sink b is its own b-reduced form
            assert_eq!(reduce(&g, &divs[i], 1).unwrap(), divs[i]);
        }
        assert_eq!(group_elements(&g).unwrap().len(), 8);
    }

    #[test]
    fn move_to_sink_examples() {
        let g = cycle(3);
        let d = Divisor(vec![-1, -1, 2]);
        let m = move_to_sink(&g, &d, 0).unwrap();
        assert!(m.is_effective_off(0));
        assert!(same_class(&g, &d, &m).unwrap());
        let already = Divisor(vec![-1, 1, 0]);
        assert!(same_class(&g, &already, &move_to_sink(&g, &already, 0).unwrap()).unwrap());
        let zero = Divisor::zero(3);
        assert_eq!(move_to_sink(&g, &zero, 0).unwrap(), zero);
    }

    #[test]
    fn stabilize_triangle_delta() {
        let g = cycle(3);
        let delta = Divisor(vec![-4, 2, 2]);
        let stable = stabilize(&g, &delta, 0).unwrap();
        let diff = delta.sub(&stable);
        assert!(diff.0[1] > 0 && diff.0[2] > 0);
        assert_eq!(stabilize(&g, &stable, 0).unwrap(), stable);
    }

    #[test]
    fn group_structures() {
        for k in 3..7 {
            let s = group_structure(&cycle(k)).unwrap();
            assert_eq!(s.invariant_factors, vec![BigInt::from(k)]);
        }
        let edge = Multigraph::from_edges(&["a", "b"], &[("e", "a", "b")]).unwrap();
        assert!(group_structure(&edge).unwrap().invariant_factors.is_empty());
        let s = group_structure(&k4e()).unwrap();
        assert_eq!(s.order(), BigInt::from(8));
        assert_eq!(s.invariant_factors, vec![BigInt::from(8)]);
    }

    #[test]
    fn divisor_json_map() {
        let g = k4e();
        let d = Divisor(vec![1, 0, -1, 0]);
        let m = d.to_map(&g);
        assert_eq!(m.len(), 2);
        assert_eq!(Divisor::from_map(&g, &m).unwrap(), d);
    }
}
