//! Exact metric dimension.
//!
//! A set `W` resolves a graph iff every pair of distinct vertices has some
//! `w` in `W` at different distances from the two. Writing `D(u, v)` for the
//! set of such distinguishers, resolving sets are exactly the hitting sets of
//! the family `{D(u, v)}`. The solver searches cardinalities in ascending
//! order, branching on the unresolved pair with the fewest remaining
//! distinguishers and pruning with a disjoint-pair lower bound. Twin vertices
//! show up as pairs with `D(u, v) = {u, v}` and seed the starting cardinality.
//!
//! The reported basis is the lexicographically smallest one of minimum size
//! (sorted vertex indices compared lexicographically), fixed one position at
//! a time.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::distance::Metric;
use crate::error::{Error, Result};
use crate::graph::AgGraph;
use crate::ring::IdealVector;

/// Default ceiling on `|V|` for exact solving from the command line.
pub const EXACT_VERTEX_CAP: usize = 500;

/// `r(v | W)`: distances from `v` to each witness, in witness order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Representation(pub Vec<u32>);

impl std::fmt::Display for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A witness set with the full representation table proving (or refuting)
/// that it resolves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolvingSetCertificate {
    pub witness: Vec<IdealVector>,
    #[serde(serialize_with = "table_as_map")]
    pub table: Vec<(IdealVector, Representation)>,
    pub resolves: bool,
}

fn table_as_map<S: Serializer>(table: &[(IdealVector, Representation)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(table.len()))?;
    for (v, r) in table {
        map.serialize_entry(&v.to_string(), r)?;
    }
    map.end()
}

/// Classes of mutually twin vertices, ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinPartition {
    pub classes: Vec<Vec<IdealVector>>,
}

impl TwinPartition {
    /// `sum(|C| - 1)`: every resolving set holds all but one of each class.
    pub fn forced_size(&self) -> usize {
        self.classes.iter().map(|c| c.len() - 1).sum()
    }
}

/// Result of a metric-dimension computation on vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Basis {
    pub dimension: usize,
    pub basis: Vec<usize>,
}

/// Bounds the caller already knows. `lower` must not exceed the true
/// dimension; the search starts there. Failing to resolve within `upper`
/// is reported as an error.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Hints {
    pub lower: usize,
    pub upper: Option<usize>,
}

pub fn representation_of<M: Metric + ?Sized>(metric: &M, v: usize, witness: &[usize]) -> Representation {
    Representation(witness.iter().map(|&w| metric.dist(v, w)).collect())
}

/// True iff all vertices get pairwise distinct representations.
pub fn resolves<M: Metric + ?Sized>(metric: &M, witness: &[usize]) -> bool {
    let mut seen = HashSet::with_capacity(metric.order());
    (0..metric.order()).all(|v| seen.insert(representation_of(metric, v, witness)))
}

/// Twin classes by index: `u ~ v` iff `d(u, x) = d(v, x)` for all `x` outside `{u, v}`.
pub fn twin_classes<M: Metric + ?Sized>(metric: &M) -> Vec<Vec<usize>> {
    let n = metric.order();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if class_of[u].is_some() {
            continue;
        }
        let id = classes.len();
        class_of[u] = Some(id);
        let mut class = vec![u];
        for (v, slot) in class_of.iter_mut().enumerate().skip(u + 1) {
            if slot.is_none() && (0..n).all(|x| x == u || x == v || metric.dist(u, x) == metric.dist(v, x)) {
                *slot = Some(id);
                class.push(v);
            }
        }
        classes.push(class);
    }
    classes
}

/// Minimum resolving set by exhaustive search over subsets in lexicographic
/// order, with no pruning. The first hit is the lexicographically smallest
/// basis. Only usable on small graphs.
pub fn brute_force_metric_dimension<M: Metric + ?Sized>(metric: &M) -> Basis {
    let n = metric.order();
    if n <= 1 {
        return Basis { dimension: 0, basis: Vec::new() };
    }
    for k in 1..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if resolves(metric, &combo) {
                return Basis { dimension: k, basis: combo };
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set always resolves a metric")
}

/// Advances `combo` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Hitting-set instance: one distinguisher set per vertex pair, minus
/// duplicates and supersets.
struct Instance {
    n: usize,
    sets: Vec<BitSet>,
}

/// Superset elimination is quadratic in the number of sets; skip it above this.
const SUPERSET_PRUNE_LIMIT: usize = 20_000;

impl Instance {
    fn new<M: Metric + ?Sized>(metric: &M) -> Result<Self> {
        let n = metric.order();
        let mut seen: HashSet<BitSet> = HashSet::new();
        let mut sets = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let mut d = BitSet::new(n);
                for w in 0..n {
                    if metric.dist(u, w) != metric.dist(v, w) {
                        d.insert(w);
                    }
                }
                if d.count() == 0 {
                    return Err(Error::Input(format!(
                        "vertices {u} and {v} are at equal distance from every vertex; no resolving set exists"
                    )));
                }
                if seen.insert(d.clone()) {
                    sets.push(d);
                }
            }
        }
        if sets.len() <= SUPERSET_PRUNE_LIMIT {
            sets.sort_by_key(BitSet::count);
            let mut kept: Vec<BitSet> = Vec::with_capacity(sets.len());
            for s in sets {
                let dominated = kept.iter().any(|k| k.is_subset(&s));
                if !dominated {
                    kept.push(s);
                }
            }
            sets = kept;
        }
        Ok(Self { n, sets })
    }

    fn all(&self) -> BitSet {
        let mut b = BitSet::new(self.n);
        for i in 0..self.n {
            b.insert(i);
        }
        b
    }

    fn unhit_by(&self, chosen: &[usize]) -> Vec<u32> {
        (0..self.sets.len() as u32)
            .filter(|&p| chosen.iter().all(|&w| !self.sets[p as usize].contains(w)))
            .collect()
    }

    /// Lower bound: greedily packed sets with pairwise disjoint allowed parts,
    /// smallest sets first.
    fn packing_bound(&self, unhit: &[u32], allowed: &BitSet, counts: &[usize]) -> usize {
        let mut order: Vec<usize> = (0..unhit.len()).collect();
        order.sort_by_key(|&i| counts[i]);
        let mut used = BitSet::new(self.n);
        let mut bound = 0;
        for i in order {
            let mut part = self.sets[unhit[i] as usize].clone();
            part.intersect_with(allowed);
            if !part.intersects(&used) {
                used.union_with(&part);
                bound += 1;
            }
        }
        bound
    }

    /// Can `budget` more vertices from `allowed` hit every set in `unhit`?
    fn feasible(&self, unhit: &[u32], allowed: &BitSet, budget: usize) -> bool {
        if unhit.is_empty() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let mut counts = Vec::with_capacity(unhit.len());
        let mut best = 0;
        for (i, &p) in unhit.iter().enumerate() {
            let c = self.sets[p as usize].intersection_count(allowed);
            if c == 0 {
                return false;
            }
            if c < counts.get(best).copied().unwrap_or(usize::MAX) {
                best = i;
            }
            counts.push(c);
        }
        if budget == 1 {
            let mut common = allowed.clone();
            for &p in unhit {
                common.intersect_with(&self.sets[p as usize]);
            }
            return common.count() > 0;
        }
        if self.packing_bound(unhit, allowed, &counts) > budget {
            return false;
        }
        let mut candidates = self.sets[unhit[best] as usize].clone();
        candidates.intersect_with(allowed);
        // try the vertex hitting the most open sets first
        let mut ranked: Vec<(usize, usize)> = candidates
            .iter()
            .map(|w| (unhit.iter().filter(|&&p| self.sets[p as usize].contains(w)).count(), w))
            .collect();
        ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut allowed = allowed.clone();
        for (_, w) in ranked {
            allowed.remove(w);
            let rest: Vec<u32> = unhit.iter().copied().filter(|&p| !self.sets[p as usize].contains(w)).collect();
            if self.feasible(&rest, &allowed, budget - 1) {
                return true;
            }
        }
        false
    }
}

/// Exact metric dimension and the lexicographically smallest basis.
///
/// Candidate extensions of the basis prefix are checked concurrently on the
/// current rayon pool; the smallest feasible one is kept regardless of
/// which finishes first.
pub fn exact_metric_dimension<M: Metric + Sync + ?Sized>(metric: &M, hints: Hints) -> Result<Basis> {
    let n = metric.order();
    if let Some(upper) = hints.upper {
        if hints.lower > upper || upper > n {
            return Err(Error::Input(format!(
                "inconsistent hints: need lower {} <= upper {upper} <= |V| = {n}",
                hints.lower
            )));
        }
    } else if hints.lower > n {
        return Err(Error::Input(format!("lower hint {} exceeds |V| = {n}", hints.lower)));
    }
    if n <= 1 {
        return Ok(Basis { dimension: 0, basis: Vec::new() });
    }

    let instance = Instance::new(metric)?;
    let all = instance.all();
    let root: Vec<u32> = (0..instance.sets.len() as u32).collect();
    let twin_bound: usize = twin_classes(metric).iter().map(|c| c.len() - 1).sum();
    let counts: Vec<usize> = instance.sets.iter().map(BitSet::count).collect();
    let packing = instance.packing_bound(&root, &all, &counts);
    let upper = hints.upper.unwrap_or(n);

    let mut k = hints.lower.max(twin_bound).max(packing).max(1);
    while !instance.feasible(&root, &all, k) {
        k += 1;
        if k > upper {
            return Err(Error::Input(format!("no resolving set of size <= upper hint {upper}")));
        }
    }

    let mut basis: Vec<usize> = Vec::with_capacity(k);
    for pos in 0..k {
        let start = basis.last().map_or(0, |&b| b + 1);
        let remaining = k - pos - 1;
        let next = (start..n)
            .into_par_iter()
            .find_first(|&v| {
                let mut chosen = basis.clone();
                chosen.push(v);
                let mut allowed = BitSet::new(n);
                for x in v + 1..n {
                    allowed.insert(x);
                }
                instance.feasible(&instance.unhit_by(&chosen), &allowed, remaining)
            })
            .expect("a basis of the found size exists");
        basis.push(next);
    }
    Ok(Basis { dimension: k, basis })
}

fn indices(graph: &AgGraph, set: &[IdealVector]) -> Result<Vec<usize>> {
    set.iter().map(|v| graph.index_of(v)).collect()
}

fn labels(graph: &AgGraph, idx: &[usize]) -> Vec<IdealVector> {
    idx.iter().map(|&i| graph.vertices()[i].clone()).collect()
}

/// `r(v | W)` in `graph`.
pub fn representation(graph: &AgGraph, v: &IdealVector, witness: &[IdealVector]) -> Result<Representation> {
    let v = graph.index_of(v)?;
    Ok(representation_of(graph, v, &indices(graph, witness)?))
}

/// Certificate for `witness` using the graph's closed-form distances.
pub fn is_resolving(graph: &AgGraph, witness: &[IdealVector]) -> Result<ResolvingSetCertificate> {
    certify(graph, graph, witness)
}

/// Certificate for `witness` with distances taken from `metric`, which must
/// be indexed like `graph`'s vertices.
pub fn certify<M: Metric + ?Sized>(graph: &AgGraph, metric: &M, witness: &[IdealVector]) -> Result<ResolvingSetCertificate> {
    let idx = indices(graph, witness)?;
    let mut seen = HashSet::new();
    for (i, w) in idx.iter().enumerate() {
        if !seen.insert(*w) {
            return Err(Error::Input(format!("duplicate vertex {} in witness set", witness[i])));
        }
    }
    let table: Vec<(IdealVector, Representation)> = graph
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, label)| (label.clone(), representation_of(metric, v, &idx)))
        .collect();
    let distinct: HashSet<&Representation> = table.iter().map(|(_, r)| r).collect();
    Ok(ResolvingSetCertificate {
        witness: witness.to_vec(),
        resolves: distinct.len() == table.len(),
        table,
    })
}

pub fn twin_partition(graph: &AgGraph) -> TwinPartition {
    TwinPartition {
        classes: twin_classes(graph).iter().map(|c| labels(graph, c)).collect(),
    }
}

/// Metric dimension of `graph` and its lexicographically smallest basis.
pub fn graph_metric_dimension(graph: &AgGraph, hints: Hints) -> Result<(usize, Vec<IdealVector>)> {
    let b = exact_metric_dimension(graph, hints)?;
    Ok((b.dimension, labels(graph, &b.basis)))
}
