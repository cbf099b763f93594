//! Regular matroids given by totally unimodular matrices: signed circuits and
//! cocircuits, the sandpile group of the matroid, acyclic signatures, and the
//! basis action built from `{0,1}` vectors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Multigraph};
use crate::lattice::{determinant, Hermite};
use crate::torsor::{verify_action_indices, AxiomReport};

pub type SignedVector = Vec<i8>;

/// Row-reduces `a` in place using pivots of absolute value 1 and returns
/// the pivot columns. Exact for totally unimodular input.
fn tu_eliminate(a: &mut [Vec<i64>], cols: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for &j in cols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&i| a[i][j] != 0) else {
            continue;
        };
        a.swap(row, p);
        let pv = a[row][j];
        debug_assert!(pv.abs() == 1, "pivot {pv} in a matrix that should be unimodular");
        if pv == -1 {
            for x in a[row].iter_mut() {
                *x = -*x;
            }
        }
        let pivot_row = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i != row && r[j] != 0 {
                let q = r[j];
                for (x, p) in r.iter_mut().zip(&pivot_row) {
                    *x -= q * p;
                }
            }
        }
        pivots.push(j);
        row += 1;
    }
    pivots
}

fn first_nonzero_positive(mut v: SignedVector) -> SignedVector {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
    v
}

fn support(v: &[i8]) -> EdgeSet {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect()
}

fn negate(v: &[i8]) -> SignedVector {
    v.iter().map(|x| -x).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

/// A regular matroid on the columns of a totally unimodular matrix.
#[derive(Clone, Debug)]
pub struct RegularMatroid {
    labels: Vec<String>,
    /// Linearly independent rows spanning the row space.
    rows: Vec<Vec<i64>>,
    bases: Vec<EdgeSet>,
    circuits: Vec<SignedVector>,
    cocircuits: Vec<SignedVector>,
    lattice: Hermite,
}

pub const MAX_ELEMENTS: usize = 16;

impl RegularMatroid {
    /// Checks total unimodularity by computing every square subdeterminant.
    pub fn from_matrix(labels: Vec<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.iter().any(|r| r.len() != labels.len()) {
            return Err(Error::InvalidInput("matrix rows must have one entry per label".into()));
        }
        if !is_totally_unimodular(&matrix) {
            return Err(Error::InvalidInput("matrix is not totally unimodular".into()));
        }
        Self::from_tu(labels, matrix)
    }

    fn from_tu(labels: Vec<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let m = labels.len();
        if m > MAX_ELEMENTS {
            return Err(Error::InvalidInput(format!(
                "at most {MAX_ELEMENTS} elements are supported"
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != m {
            return Err(Error::InvalidInput("labels must be distinct".into()));
        }
        let mut reduced = matrix.clone();
        let all: Vec<usize> = (0..m).collect();
        let pivots = tu_eliminate(&mut reduced, &all);
        reduced.truncate(pivots.len());
        let rows = reduced;
        let r = rows.len();
        let rank = |set: u64| -> usize {
            let cols: Vec<usize> = (0..m).filter(|&j| set >> j & 1 == 1).collect();
            let mut a = rows.clone();
            tu_eliminate(&mut a, &cols).len()
        };
        let ranks: Vec<usize> = (0..1u64 << m).map(rank).collect();
        let full = (1u64 << m) - 1;
        let bases = (0..=full)
            .filter(|&s| s.count_ones() as usize == r && ranks[s as usize] == r)
            .map(EdgeSet::from_bits)
            .collect();
        let mut circuits = Vec::new();
        let mut cocircuits = Vec::new();
        for s in 1..=full {
            let k = s.count_ones() as usize;
            if ranks[s as usize] + 1 == k
                && (0..m)
                    .filter(|&e| s >> e & 1 == 1)
                    .all(|e| ranks[(s & !(1 << e)) as usize] + 1 == k)
            {
                circuits.push(first_nonzero_positive(kernel_vector(&rows, s, m)));
            }
            // complements of hyperplanes
            let h = full & !s;
            if ranks[h as usize] + 1 == r
                && (0..m)
                    .filter(|&e| s >> e & 1 == 1)
                    .all(|e| ranks[(h | 1 << e) as usize] == r)
            {
                cocircuits.push(first_nonzero_positive(row_space_vector(&rows, h, m)?));
            }
        }
        circuits.sort();
        cocircuits.sort();
        let generators: Vec<Vec<BigInt>> = circuits
            .iter()
            .chain(&cocircuits)
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let lattice = if m == 0 {
            Hermite::new(&[], 0)?
        } else {
            Hermite::new(&generators, m)
                .map_err(|_| Error::Invariant("circuit and cocircuit lattices do not span".into()))?
        };
        Ok(RegularMatroid {
            labels,
            rows,
            bases,
            circuits,
            cocircuits,
            lattice,
        })
    }

    /// The cycle matroid of `g`, with each edge directed from the first to
    /// the second vertex of `orientation`, or by increasing vertex index.
    pub fn from_graph(g: &Multigraph, orientation: Option<&HashMap<String, [String; 2]>>) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = g.num_vertices();
        let mut a = vec![vec![0i64; g.num_edges()]; n];
        for e in 0..g.num_edges() {
            let [mut tail, mut head] = g.ends(e);
            if let Some(o) = orientation {
                let [t, h] = o
                    .get(g.edge_id(e))
                    .ok_or_else(|| Error::InvalidInput(format!("no orientation for edge {}", g.edge_id(e))))?;
                let (t, h) = (g.vertex_index(t)?, g.vertex_index(h)?);
                if [t.min(h), t.max(h)] != g.ends(e) {
                    return Err(Error::InvalidInput(format!(
                        "orientation of {} does not match its ends",
                        g.edge_id(e)
                    )));
                }
                (tail, head) = (t, h);
            }
            a[tail][e] = -1;
            a[head][e] = 1;
        }
        a.pop();
        let m = Self::from_tu(g.edge_ids().to_vec(), a)?;
        let trees: Vec<EdgeSet> = g.spanning_trees()?.into_iter().map(|t| t.0).collect();
        let mut bases = m.bases.clone();
        bases.sort();
        let mut trees = trees;
        trees.sort();
        if bases != trees {
            return Err(Error::Invariant("bases differ from spanning trees".into()));
        }
        Ok(m)
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        Self::from_matrix(json.labels.clone(), json.matrix.clone())
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            labels: self.labels.clone(),
            matrix: self.rows.clone(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownEdge(label.to_string()))
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<EdgeSet> {
        labels.iter().map(|l| self.index(l.as_ref())).collect()
    }

    pub fn set_labels(&self, s: EdgeSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn bases(&self) -> &[EdgeSet] {
        &self.bases
    }

    /// Signed circuits, one per support, first nonzero entry positive.
    pub fn circuits(&self) -> &[SignedVector] {
        &self.circuits
    }

    pub fn cocircuits(&self) -> &[SignedVector] {
        &self.cocircuits
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rows.iter().all(|r| r[e] == 0)
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.bases.iter().all(|b| b.contains(e))
    }

    /// Index of the circuit and cocircuit lattice in `Z^E`.
    pub fn group_order(&self) -> BigInt {
        self.lattice.determinant()
    }

    pub fn class_of(&self, v: &[i64]) -> MatroidClass {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        MatroidClass(self.lattice.reduce(&v))
    }

    /// The class of the sum of the named elements.
    pub fn class_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<MatroidClass> {
        let mut v = vec![0i64; self.len()];
        for l in labels {
            v[self.index(l.as_ref())?] += 1;
        }
        Ok(self.class_of(&v))
    }

    /// Every class, as canonical representatives.
    pub fn classes(&self) -> Vec<MatroidClass> {
        let m = self.len();
        let diag: Vec<i64> = (0..m)
            .map(|j| i64::try_from(&self.lattice.rows()[j][j]).expect("small group"))
            .collect();
        let mut out = Vec::new();
        let mut v = vec![0i64; m];
        loop {
            out.push(self.class_of(&v));
            let mut j = 0;
            loop {
                if j == m {
                    out.sort();
                    out.dedup();
                    return out;
                }
                v[j] += 1;
                if v[j] < diag[j] {
                    break;
                }
                v[j] = 0;
                j += 1;
            }
        }
    }

    fn fundamental(&self, b: EdgeSet, e: usize) -> Result<usize> {
        if b.contains(e) {
            let outside = EdgeSet::full(self.len()).difference(b).with(e);
            self.cocircuits
                .iter()
                .position(|d| support(d).difference(outside).is_empty() && d[e] != 0)
        } else {
            let inside = b.with(e);
            self.circuits
                .iter()
                .position(|c| support(c).difference(inside).is_empty() && c[e] != 0)
        }
        .ok_or_else(|| Error::Invariant("missing fundamental circuit".into()))
    }

    /// A representation of the dual matroid.
    pub fn dual(&self) -> Result<RegularMatroid> {
        let m = self.len();
        let r = self.rank();
        let mut a = self.rows.clone();
        let basis = self.bases.first().copied().unwrap_or_default();
        let cols: Vec<usize> = basis.iter().collect();
        let pivots = tu_eliminate(&mut a, &cols);
        let others: Vec<usize> = (0..m).filter(|j| !basis.contains(*j)).collect();
        let mut d = vec![vec![0i64; m]; others.len()];
        for (k, &n) in others.iter().enumerate() {
            d[k][n] = 1;
            for i in 0..r {
                d[k][pivots[i]] = -a[i][n];
            }
        }
        Self::from_tu(self.labels.clone(), d)
    }

    /// Deletion or contraction of `e`, keeping the other labels in order.
    pub fn minor(&self, e: usize, op: MinorOp) -> Result<RegularMatroid> {
        let m = self.len();
        let keep: Vec<usize> = (0..m).filter(|&j| j != e).collect();
        let labels = keep.iter().map(|&j| self.labels[j].clone()).collect();
        let mut a = self.rows.clone();
        if op == MinorOp::Contract {
            if self.is_loop(e) {
                return Err(Error::InvalidInput("cannot contract a loop".into()));
            }
            let pivots = tu_eliminate(&mut a, &[e]);
            debug_assert_eq!(pivots, [e]);
            a.remove(0);
        } else if self.is_coloop(e) {
            return Err(Error::InvalidInput("cannot delete a coloop".into()));
        }
        let a = a
            .into_iter()
            .map(|row| keep.iter().map(|&j| row[j]).collect())
            .collect();
        Self::from_tu(labels, a)
    }
}

impl RegularMatroid {
    /// The minor together with the induced signatures, which must stay acyclic.
    pub fn minor_with_signatures(
        &self,
        pair: &SignaturePair,
        e: usize,
        op: MinorOp,
    ) -> Result<(RegularMatroid, SignaturePair)> {
        let minor = self.minor(e, op)?;
        let induced = pair.induced(self, e, &minor)?;
        if pair.is_acyclic() && !induced.is_acyclic() {
            return Err(Error::Invariant("induced signatures are cyclic".into()));
        }
        Ok((minor, induced))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinorOp {
    Delete,
    Contract,
}

fn kernel_vector(rows: &[Vec<i64>], set: u64, m: usize) -> SignedVector {
    let cols: Vec<usize> = (0..m).filter(|&j| set >> j & 1 == 1).collect();
    let mut a = rows.to_vec();
    let pivots = tu_eliminate(&mut a, &cols);
    let free = *cols.iter().find(|j| !pivots.contains(j)).expect("dependent set");
    let mut v = vec![0i8; m];
    v[free] = 1;
    for (i, &p) in pivots.iter().enumerate() {
        v[p] = i8::try_from(-a[i][free]).expect("unimodular entries");
    }
    v
}

/// A nonzero row-space vector vanishing on `set`, scaled to be primitive.
fn row_space_vector(rows: &[Vec<i64>], set: u64, m: usize) -> Result<SignedVector> {
    let r = rows.len();
    let cols: Vec<usize> = (0..m).filter(|&j| set >> j & 1 == 1).collect();
    // solve y A_H = 0 over the rationals
    let mut t: Vec<Vec<BigRational>> = cols
        .iter()
        .map(|&j| (0..r).map(|i| BigRational::from_integer(rows[i][j].into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for j in 0..r {
        let Some(p) = (row..t.len()).find(|&i| !t[i][j].is_zero()) else {
            continue;
        };
        t.swap(row, p);
        let pv = t[row][j].clone();
        for x in t[row].iter_mut() {
            *x /= &pv;
        }
        let pr = t[row].clone();
        for (i, rr) in t.iter_mut().enumerate() {
            if i != row && !rr[j].is_zero() {
                let q = rr[j].clone();
                for (x, p) in rr.iter_mut().zip(&pr) {
                    *x -= &q * p;
                }
            }
        }
        pivots.push(j);
        row += 1;
    }
    let free = (0..r)
        .find(|j| !pivots.contains(j))
        .ok_or_else(|| Error::Invariant("hyperplane has full rank".into()))?;
    let mut y = vec![BigRational::zero(); r];
    y[free] = BigRational::one();
    for (i, &p) in pivots.iter().enumerate() {
        y[p] = -t[i][free].clone();
    }
    let v: Vec<BigRational> = (0..m)
        .map(|j| {
            (0..r)
                .map(|i| &y[i] * BigRational::from_integer(rows[i][j].into()))
                .sum()
        })
        .collect();
    let scale = v
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.abs())
        .min()
        .ok_or_else(|| Error::Invariant("zero cocircuit".into()))?;
    v.iter()
        .map(|x| {
            let q = x / &scale;
            if !q.is_integer() || q.abs() > BigRational::one() {
                return Err(Error::Invariant("cocircuit vector is not a sign vector".into()));
            }
            Ok(if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            })
        })
        .collect()
}

/// Every square submatrix has determinant -1, 0 or 1.
pub fn is_totally_unimodular(a: &[Vec<i64>]) -> bool {
    let r = a.len();
    let m = a.first().map_or(0, Vec::len);
    if a.iter().flatten().any(|x| x.abs() > 1) {
        return false;
    }
    let one = BigInt::one();
    for k in 2..=r.min(m) {
        let mut ok = true;
        subsets(r, k, &mut |rs| {
            if !ok {
                return;
            }
            subsets(m, k, &mut |cs| {
                if !ok {
                    return;
                }
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| BigInt::from(a[i][j])).collect())
                    .collect();
                if determinant(&sub).abs() > one {
                    ok = false;
                }
            });
        });
        if !ok {
            return false;
        }
    }
    true
}

fn subsets(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), visit);
}

/// An element of the matroid's sandpile group, as its Hermite-reduced representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatroidClass(pub Vec<BigInt>);

impl MatroidClass {
    pub fn to_i64(&self) -> Vec<i64> {
        self.0
            .iter()
            .map(|x| i64::try_from(x).expect("small representative"))
            .collect()
    }
}

/// A chosen signed circuit and cocircuit for every support, aligned with
/// [`RegularMatroid::circuits`] and [`RegularMatroid::cocircuits`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignaturePair {
    pub circuits: Vec<SignedVector>,
    pub cocircuits: Vec<SignedVector>,
}

impl SignaturePair {
    /// The first nonzero entry of every vector is positive.
    pub fn default_for(m: &RegularMatroid) -> Self {
        SignaturePair {
            circuits: m.circuits.clone(),
            cocircuits: m.cocircuits.clone(),
        }
    }

    /// Negates every chosen circuit, every chosen cocircuit, or both.
    pub fn flipped(&self, circuits: bool, cocircuits: bool) -> Self {
        let flip = |vs: &[SignedVector], yes: bool| -> Vec<SignedVector> {
            vs.iter().map(|v| if yes { negate(v) } else { v.clone() }).collect()
        };
        SignaturePair {
            circuits: flip(&self.circuits, circuits),
            cocircuits: flip(&self.cocircuits, cocircuits),
        }
    }

    /// Reorders `chosen` to match the matroid's lists, checking that each
    /// support is covered once.
    pub fn new(m: &RegularMatroid, circuits: Vec<SignedVector>, cocircuits: Vec<SignedVector>) -> Result<Self> {
        let align = |reference: &[SignedVector], chosen: Vec<SignedVector>, what: &str| -> Result<Vec<SignedVector>> {
            if chosen.len() != reference.len() {
                return Err(Error::InvalidInput(format!(
                    "expected {} signed {what}s",
                    reference.len()
                )));
            }
            let mut out = vec![None; reference.len()];
            for v in chosen {
                let i = reference
                    .iter()
                    .position(|r| *r == v || negate(r) == v)
                    .ok_or_else(|| Error::InvalidInput(format!("{v:?} is not a signed {what}")))?;
                if out[i].replace(v).is_some() {
                    return Err(Error::InvalidInput(format!("{what} chosen twice")));
                }
            }
            Ok(out.into_iter().map(|v| v.expect("all covered")).collect())
        };
        Ok(SignaturePair {
            circuits: align(&m.circuits, circuits, "circuit")?,
            cocircuits: align(&m.cocircuits, cocircuits, "cocircuit")?,
        })
    }

    pub fn is_acyclic(&self) -> bool {
        positive_functional(&self.circuits).is_some() && positive_functional(&self.cocircuits).is_some()
    }

    /// Signatures on a minor: vectors whose restriction is a signed
    /// (co)circuit of the minor keep their sign.
    pub fn induced(&self, m: &RegularMatroid, e: usize, minor: &RegularMatroid) -> Result<Self> {
        let restrict = |v: &SignedVector| -> SignedVector {
            v.iter().enumerate().filter(|&(j, _)| j != e).map(|(_, &x)| x).collect()
        };
        let pick = |reference: &[SignedVector], chosen: &[SignedVector]| -> Result<Vec<SignedVector>> {
            reference
                .iter()
                .map(|r| {
                    chosen
                        .iter()
                        .map(restrict)
                        .find(|v| v == r || negate(v) == *r)
                        .ok_or_else(|| Error::Invariant("minor vector not induced".into()))
                })
                .collect()
        };
        debug_assert_eq!(self.circuits.len(), m.circuits.len());
        Ok(SignaturePair {
            circuits: pick(&minor.circuits, &self.circuits)?,
            cocircuits: pick(&minor.cocircuits, &self.cocircuits)?,
        })
    }
}

/// A rational `w` with `v . w >= 1` for every `v`, or `None` if some
/// nonnegative nonzero combination of the vectors vanishes.
pub fn positive_functional(vectors: &[SignedVector]) -> Option<Vec<BigRational>> {
    let k = vectors.len();
    let Some(m) = vectors.first().map(Vec::len) else {
        return Some(Vec::new());
    };
    // w = u - v; columns: u (m), v (m), surplus (k), artificial (k)
    let cols = 2 * m + 2 * k;
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut tab: Vec<Vec<BigRational>> = vectors
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut row = vec![q(0); cols + 1];
            for j in 0..m {
                row[j] = q(c[j] as i64);
                row[m + j] = q(-(c[j] as i64));
            }
            row[2 * m + i] = q(-1);
            row[2 * m + k + i] = q(1);
            row[cols] = q(1);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (0..k).map(|i| 2 * m + k + i).collect();
    // minimize the sum of artificials; reduced costs of the phase-one objective
    loop {
        let reduced = |j: usize, tab: &Vec<Vec<BigRational>>, basis: &Vec<usize>| -> BigRational {
            let cost = |c: usize| if c >= 2 * m + k { q(1) } else { q(0) };
            let mut z = cost(j);
            for (i, &b) in basis.iter().enumerate() {
                z -= cost(b) * &tab[i][j];
            }
            z
        };
        let Some(enter) = (0..cols).find(|&j| !basis.contains(&j) && reduced(j, &tab, &basis).is_negative()) else {
            break;
        };
        // Bland's rule for the leaving row
        let leave = (0..k).filter(|&i| tab[i][enter].is_positive()).min_by(|&a, &b| {
            let ra = &tab[a][cols] / &tab[a][enter];
            let rb = &tab[b][cols] / &tab[b][enter];
            ra.cmp(&rb).then(basis[a].cmp(&basis[b]))
        })?;
        let pv = tab[leave][enter].clone();
        for x in tab[leave].iter_mut() {
            *x /= &pv;
        }
        let pr = tab[leave].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != leave && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pr) {
                    *x -= &f * p;
                }
            }
        }
        basis[leave] = enter;
    }
    let mut x = vec![q(0); cols];
    for (i, &b) in basis.iter().enumerate() {
        x[b] = tab[i][cols].clone();
    }
    if x[2 * m + k..].iter().any(|a| !a.is_zero()) {
        return None;
    }
    let w: Vec<BigRational> = (0..m).map(|j| &x[j] - &x[m + j]).collect();
    debug_assert!(vectors.iter().all(|c| {
        let dot: BigRational = c.iter().zip(&w).map(|(&a, b)| q(a as i64) * b).sum();
        dot >= q(1)
    }));
    Some(w)
}

/// The four ways of applying the signatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatroidVariant {
    Bby,
    /// Circuits negated.
    Prime,
    /// Both negated.
    Double,
    /// Cocircuits negated.
    Triple,
}

impl MatroidVariant {
    pub const ALL: [MatroidVariant; 4] = [
        MatroidVariant::Bby,
        MatroidVariant::Prime,
        MatroidVariant::Double,
        MatroidVariant::Triple,
    ];

    fn flips(self) -> (bool, bool) {
        match self {
            MatroidVariant::Bby => (false, false),
            MatroidVariant::Prime => (true, false),
            MatroidVariant::Double => (true, true),
            MatroidVariant::Triple => (false, true),
        }
    }
}

/// The basis action for fixed signatures, tabulated by class.
pub struct Bby {
    pub matroid: RegularMatroid,
    pub pair: SignaturePair,
    vectors: Vec<Vec<i64>>,
    by_class: HashMap<MatroidClass, usize>,
}

impl Bby {
    pub fn new(m: &RegularMatroid, pair: &SignaturePair, variant: MatroidVariant) -> Result<Self> {
        let (fc, fd) = variant.flips();
        let pair = pair.flipped(fc, fd);
        let vectors = m
            .bases
            .iter()
            .map(|&b| bby_vector(m, &pair, b))
            .collect::<Result<Vec<_>>>()?;
        let mut by_class = HashMap::new();
        for (i, v) in vectors.iter().enumerate() {
            if by_class.insert(m.class_of(v), i).is_some() {
                return Err(Error::Invariant("two bases give the same class".into()));
            }
        }
        Ok(Bby {
            matroid: m.clone(),
            pair,
            vectors,
            by_class,
        })
    }

    pub fn vector(&self, basis: usize) -> &[i64] {
        &self.vectors[basis]
    }

    pub fn basis_index(&self, b: EdgeSet) -> Result<usize> {
        self.matroid
            .bases
            .iter()
            .position(|&x| x == b)
            .ok_or_else(|| Error::InvalidInput("not a basis".into()))
    }

    /// The basis whose vector lies in the class of `vector(basis) + class`.
    pub fn act(&self, class: &MatroidClass, basis: usize) -> Result<usize> {
        let v: Vec<i64> = self.vectors[basis]
            .iter()
            .zip(class.to_i64())
            .map(|(a, b)| a + b)
            .collect();
        self.by_class
            .get(&self.matroid.class_of(&v))
            .copied()
            .ok_or_else(|| Error::Invariant("no basis in the target class".into()))
    }

    pub fn act_set(&self, class: &MatroidClass, b: EdgeSet) -> Result<EdgeSet> {
        Ok(self.matroid.bases[self.act(class, self.basis_index(b)?)?])
    }

    pub fn num_classes(&self) -> usize {
        self.by_class.len()
    }
}

/// The `{0,1}` vector of a basis: each entry is 1 iff the element is
/// positive in the chosen sign of its fundamental circuit or cocircuit.
pub fn bby_vector(m: &RegularMatroid, pair: &SignaturePair, b: EdgeSet) -> Result<Vec<i64>> {
    if !m.bases.contains(&b) {
        return Err(Error::InvalidInput("not a basis".into()));
    }
    (0..m.len())
        .map(|e| {
            let i = m.fundamental(b, e)?;
            let chosen = if b.contains(e) {
                &pair.cocircuits[i]
            } else {
                &pair.circuits[i]
            };
            Ok(i64::from(chosen[e] > 0))
        })
        .collect()
}

/// Free and transitive action of the group on the bases.
pub fn verify_bby_action(bby: &Bby) -> Result<AxiomReport> {
    let m = &bby.matroid;
    let classes = m.classes();
    let index: HashMap<&MatroidClass, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let table = classes
        .iter()
        .map(|c| (0..m.bases.len()).map(|b| bby.act(c, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let sum = classes
        .iter()
        .map(|a| {
            classes
                .iter()
                .map(|b| {
                    let v: Vec<i64> = a.to_i64().iter().zip(b.to_i64()).map(|(x, y)| x + y).collect();
                    index[&m.class_of(&v)]
                })
                .collect()
        })
        .collect::<Vec<Vec<usize>>>();
    let identity = index[&m.class_of(&vec![0; m.len()])];
    Ok(verify_action_indices(&table, &sum, identity, m.bases.len()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatroidViolation {
    pub f: String,
    pub basis: Vec<String>,
    pub e: String,
    pub condition: u8,
    pub expected: Vec<String>,
    pub actual: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MatroidConsistencyReport {
    pub checks: usize,
    pub skipped: usize,
    pub violations: Vec<MatroidViolation>,
}

/// Both contraction and deletion conditions for every element `f`, basis
/// and eligible `e`, with signatures induced on each minor.
pub fn verify_matroid_consistency(
    m: &RegularMatroid,
    pair: &SignaturePair,
    variant: MatroidVariant,
) -> Result<MatroidConsistencyReport> {
    let n = m.len();
    let bby = Bby::new(m, pair, variant)?;
    let minor = |e: usize, op: MinorOp| -> Result<Option<Bby>> {
        let ok = match op {
            MinorOp::Delete => !m.is_coloop(e),
            MinorOp::Contract => !m.is_loop(e),
        };
        if !ok {
            return Ok(None);
        }
        let (mm, induced) = m.minor_with_signatures(pair, e, op)?;
        Ok(Some(Bby::new(&mm, &induced, variant)?))
    };
    let contracted: Vec<Option<Bby>> = (0..n).map(|e| minor(e, MinorOp::Contract)).collect::<Result<_>>()?;
    let deleted: Vec<Option<Bby>> = (0..n).map(|e| minor(e, MinorOp::Delete)).collect::<Result<_>>()?;
    let shrink = |s: EdgeSet, e: usize| -> EdgeSet {
        s.iter()
            .filter(|&j| j != e)
            .map(|j| if j > e { j - 1 } else { j })
            .collect()
    };
    let mut report = MatroidConsistencyReport::default();
    for f in 0..n {
        let mut unit = vec![0i64; n];
        unit[f] = 1;
        let class = m.class_of(&unit);
        for (bi, &b) in m.bases.iter().enumerate() {
            let b2 = m.bases[bby.act(&class, bi)?];
            for e in (0..n).filter(|&e| e != f) {
                let (cond, minor) = if b.contains(e) && b2.contains(e) {
                    (1, &contracted[e])
                } else if !b.contains(e) && !b2.contains(e) {
                    (2, &deleted[e])
                } else {
                    continue;
                };
                let Some(minor) = minor else {
                    report.skipped += 1;
                    continue;
                };
                let fm = if f > e { f - 1 } else { f };
                let mut unit = vec![0i64; n - 1];
                unit[fm] = 1;
                let class = minor.matroid.class_of(&unit);
                let expected = shrink(b2, e);
                let actual = minor.act_set(&class, shrink(b, e))?;
                report.checks += 1;
                if actual != expected {
                    report.violations.push(MatroidViolation {
                        f: m.labels[f].clone(),
                        basis: m.set_labels(b),
                        e: m.labels[e].clone(),
                        condition: cond,
                        expected: minor.matroid.set_labels(expected),
                        actual: minor.matroid.set_labels(actual),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariantFinding {
    pub variant: MatroidVariant,
    pub checks: usize,
    pub skipped: usize,
    pub violations: Vec<MatroidViolation>,
}

/// Consistency of all four structure variants on one matroid with its
/// default signatures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureInstance {
    pub name: String,
    pub elements: usize,
    pub rank: usize,
    pub bases: usize,
    pub group_order: String,
    pub default_acyclic: bool,
    pub torsor_violations: Vec<String>,
    /// Number of different actions among the four variants.
    pub distinct_actions: usize,
    pub variants: Vec<VariantFinding>,
}

impl ConjectureInstance {
    pub fn consistent_variants(&self) -> Vec<MatroidVariant> {
        self.variants
            .iter()
            .filter(|v| v.violations.is_empty())
            .map(|v| v.variant)
            .collect()
    }
}

pub fn examine(name: &str, m: &RegularMatroid) -> Result<ConjectureInstance> {
    let pair = SignaturePair::default_for(m);
    let classes = m.classes();
    let mut tables = Vec::new();
    let mut variants = Vec::new();
    let mut torsor_violations = Vec::new();
    for v in MatroidVariant::ALL {
        let bby = Bby::new(m, &pair, v)?;
        let axioms = verify_bby_action(&bby)?;
        torsor_violations.extend(axioms.violations.into_iter().map(|x| format!("{v:?}: {x}")));
        let table = classes
            .iter()
            .map(|c| (0..m.bases.len()).map(|b| bby.act(c, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if !tables.contains(&table) {
            tables.push(table);
        }
        let rep = verify_matroid_consistency(m, &pair, v)?;
        variants.push(VariantFinding {
            variant: v,
            checks: rep.checks,
            skipped: rep.skipped,
            violations: rep.violations,
        });
    }
    Ok(ConjectureInstance {
        name: name.to_string(),
        elements: m.len(),
        rank: m.rank(),
        bases: m.bases.len(),
        group_order: m.group_order().to_string(),
        default_acyclic: pair.is_acyclic(),
        torsor_violations,
        distinct_actions: tables.len(),
        variants,
    })
}

/// Cycle matroids of connected multigraphs with at most `max_graph_edges`
/// edges, then the named non-graphic matroids that fit in `max_elements`.
pub fn conjecture_instances(max_graph_edges: usize, max_elements: usize) -> Result<Vec<(String, RegularMatroid)>> {
    let mut out = Vec::new();
    for (i, g) in crate::enumerate::connected_multigraphs(max_graph_edges)
        .iter()
        .enumerate()
    {
        if g.num_edges() == 0 || g.num_edges() > max_elements {
            continue;
        }
        let ends: Vec<String> = (0..g.num_edges())
            .map(|e| {
                let [u, v] = g.ends(e);
                format!("{u}{v}")
            })
            .collect();
        out.push((
            format!("graph{i:04}[{}]", ends.join(",")),
            RegularMatroid::from_graph(g, None)?,
        ));
    }
    if max_elements >= 9 {
        out.push(("bond-k33".to_string(), k33_dual()));
    }
    if max_elements >= 10 {
        out.push(("r10".to_string(), r10()));
    }
    Ok(out)
}

/// The ten-element regular matroid that is neither graphic nor cographic.
pub fn r10() -> RegularMatroid {
    let a = [
        [-1, 1, 0, 0, 1],
        [1, -1, 1, 0, 0],
        [0, 1, -1, 1, 0],
        [0, 0, 1, -1, 1],
        [1, 0, 0, 1, -1],
    ];
    let rows = (0..5)
        .map(|i| {
            (0..10)
                .map(|j| if j < 5 { i64::from(i == j) } else { a[i][j - 5] })
                .collect()
        })
        .collect();
    let labels = (1..=10).map(|i| format!("x{i:02}")).collect();
    RegularMatroid::from_matrix(labels, rows).expect("R10 is totally unimodular")
}

/// The bond matroid of `K_{3,3}`.
pub fn k33_dual() -> RegularMatroid {
    let mut edges = Vec::new();
    for a in ["a1", "a2", "a3"] {
        for b in ["b1", "b2", "b3"] {
            edges.push((format!("{a}{b}"), a.to_string(), b.to_string()));
        }
    }
    let g = Multigraph::new(["a1", "a2", "a3", "b1", "b2", "b3"].map(String::from), edges).expect("K33");
    RegularMatroid::from_graph(&g, None)
        .and_then(|m| m.dual())
        .expect("cographic")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fig_matroid() -> RegularMatroid {
        let g = Multigraph::from_edges(
            &["a", "b", "c", "d"],
            &[
                ("e1", "a", "b"),
                ("e2", "b", "c"),
                ("e3", "c", "d"),
                ("e4", "a", "d"),
                ("e5", "a", "c"),
            ],
        )
        .unwrap();
        let o: HashMap<String, [String; 2]> = [
            ("e1", "a", "b"),
            ("e2", "b", "c"),
            ("e3", "c", "d"),
            ("e4", "a", "d"),
            ("e5", "a", "c"),
        ]
        .iter()
        .map(|(e, t, h)| (e.to_string(), [t.to_string(), h.to_string()]))
        .collect();
        RegularMatroid::from_graph(&g, Some(&o)).unwrap()
    }

    #[test]
    fn square_with_diagonal() {
        let m = fig_matroid();
        assert_eq!(m.bases().len(), 8);
        assert_eq!(
            m.circuits(),
            [vec![0, 0, 1, -1, 1], vec![1, 1, 0, 0, -1], vec![1, 1, 1, -1, 0]]
        );
        assert_eq!(m.cocircuits().len(), 6);
        assert_eq!(m.group_order(), BigInt::from(8));
        assert!(SignaturePair::default_for(&m).is_acyclic());
    }

    #[test]
    fn bby_example() {
        let m = fig_matroid();
        let pair = SignaturePair::default_for(&m);
        let b = m.set_from_labels(&["e2", "e3", "e5"]).unwrap();
        assert_eq!(bby_vector(&m, &pair, b).unwrap(), [1, 0, 1, 0, 1]);
        assert_eq!(m.class_of(&[1, 0, 2, 0, 1]), m.class_of(&[1, 1, 0, 1, 1]));
        let bby = Bby::new(&m, &pair, MatroidVariant::Bby).unwrap();
        let out = bby.act_set(&m.class_of_labels(&["e3"]).unwrap(), b).unwrap();
        assert_eq!(m.set_labels(out), ["e1", "e3", "e4"]);
        assert!(verify_bby_action(&bby).unwrap().passed());
    }

    #[test]
    fn negated_circuit_is_cyclic() {
        let m = fig_matroid();
        let mut pair = SignaturePair::default_for(&m);
        pair.circuits[2] = negate(&pair.circuits[2]);
        assert!(!pair.is_acyclic());
        assert!(positive_functional(&[]).is_some());
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(RegularMatroid::from_matrix(vec!["a".into(), "b".into()], vec![vec![2, 1]]).is_err());
        assert!(!is_totally_unimodular(&[vec![1, 1], vec![-1, 1]]));
    }

    #[test]
    fn dual_swaps_circuits_and_cocircuits() {
        let m = fig_matroid();
        let d = m.dual().unwrap();
        let norm = |vs: &[SignedVector]| {
            let mut s: Vec<EdgeSet> = vs.iter().map(|v| support(v)).collect();
            s.sort();
            s
        };
        assert_eq!(norm(d.circuits()), norm(m.cocircuits()));
        assert_eq!(norm(d.cocircuits()), norm(m.circuits()));
        assert_eq!(d.group_order(), m.group_order());
    }

    #[test]
    fn special_matroids() {
        let r = r10();
        assert_eq!(r.bases().len(), 162);
        assert_eq!(r.group_order(), BigInt::from(162));
        let k = k33_dual();
        assert_eq!(k.len(), 9);
        assert_eq!(k.group_order(), BigInt::from(k.bases().len()));
    }

    #[test]
    fn consistency_report_runs() {
        let m = fig_matroid();
        let pair = SignaturePair::default_for(&m);
        for v in MatroidVariant::ALL {
            let rep = verify_matroid_consistency(&m, &pair, v).unwrap();
            assert!(rep.checks > 0);
        }
    }
}
