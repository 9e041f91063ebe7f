//! The annihilating-ideal graph `AG(R)`.
//!
//! Vertices are the nonzero ideals with nonzero annihilator, and two distinct
//! ideals are adjacent when their product is zero. Distances come from a
//! closed form on the exponent vectors; a breadth-first search over the
//! adjacency matrix is kept alongside it as an independent check.

use std::collections::VecDeque;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::distance::{DistanceMatrix, Metric, PackedDistances, UNREACHABLE};
use crate::error::{Error, Result};
use crate::ring::{IdealVector, RingSpec};

pub const DEFAULT_VERTEX_CAP: usize = 100_000;

/// Environment variable overriding [`DEFAULT_VERTEX_CAP`].
pub const VERTEX_CAP_ENV: &str = "ANNIGRAPH_VERTEX_CAP";

/// The vertex cap from `ANNIGRAPH_VERTEX_CAP`, or the default when unset.
pub fn vertex_cap_from_env() -> Result<usize> {
    match std::env::var(VERTEX_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse {
            token: v.clone(),
            reason: format!("{VERTEX_CAP_ENV} must be a non-negative integer"),
        }),
        Err(_) => Ok(DEFAULT_VERTEX_CAP),
    }
}

fn require_vertex(spec: &RingSpec, v: &IdealVector) -> Result<()> {
    match spec.non_vertex_reason(v)? {
        None => Ok(()),
        Some(reason) => Err(Error::Domain(format!("{v} is not a vertex: {reason}"))),
    }
}

/// True iff `m != l` and `m * l = 0`, i.e. `m_k + l_k >= n_k` for every `k`.
pub fn adjacent(spec: &RingSpec, m: &IdealVector, l: &IdealVector) -> Result<bool> {
    require_vertex(spec, m)?;
    require_vertex(spec, l)?;
    Ok(adjacent_unchecked(spec.orders(), m.exps(), l.exps()))
}

fn adjacent_unchecked(orders: &[u32], m: &[u32], l: &[u32]) -> bool {
    m != l && orders.iter().zip(m.iter().zip(l)).all(|(&n, (&a, &b))| a + b >= n)
}

/// Which case of the closed-form distance rule applied to a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DistanceBranch {
    /// Same vertex.
    Equal,
    /// The product ideal is zero.
    ProductZero,
    /// Every factor has a whole-ring projection on one side, and some factor
    /// has a nonzero projection on both sides.
    LemmaThree,
    /// Anything else: a common neighbour exists.
    DefaultTwo,
}

impl DistanceBranch {
    pub fn distance(self) -> u8 {
        match self {
            DistanceBranch::Equal => 0,
            DistanceBranch::ProductZero => 1,
            DistanceBranch::DefaultTwo => 2,
            DistanceBranch::LemmaThree => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DistanceBranch::Equal => "equal",
            DistanceBranch::ProductZero => "product-zero",
            DistanceBranch::LemmaThree => "Lemma-3",
            DistanceBranch::DefaultTwo => "default-2",
        }
    }
}

impl fmt::Display for DistanceBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn branch_unchecked(orders: &[u32], m: &[u32], l: &[u32]) -> DistanceBranch {
    if m == l {
        return DistanceBranch::Equal;
    }
    if adjacent_unchecked(orders, m, l) {
        return DistanceBranch::ProductZero;
    }
    let whole_on_one_side = m.iter().zip(l).all(|(&a, &b)| a.min(b) == 0);
    let both_nonzero_somewhere = orders
        .iter()
        .zip(m.iter().zip(l))
        .any(|(&n, (&a, &b))| a < n && b < n);
    if whole_on_one_side && both_nonzero_somewhere {
        DistanceBranch::LemmaThree
    } else {
        DistanceBranch::DefaultTwo
    }
}

/// The closed-form rule that decided the distance between `m` and `l`.
pub fn distance_branch(spec: &RingSpec, m: &IdealVector, l: &IdealVector) -> Result<DistanceBranch> {
    require_vertex(spec, m)?;
    require_vertex(spec, l)?;
    Ok(branch_unchecked(spec.orders(), m.exps(), l.exps()))
}

/// Distance in `AG(R)` computed from exponents alone, in `{0, 1, 2, 3}`.
pub fn distance_closed_form(spec: &RingSpec, m: &IdealVector, l: &IdealVector) -> Result<u8> {
    distance_branch(spec, m, l).map(DistanceBranch::distance)
}

/// Output formats for [`AgGraph::export`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::Parse {
                token: s.to_string(),
                reason: "expected one of dot, csv, json".into(),
            }),
        }
    }
}

/// `AG(R)` with lexicographically ordered vertices and a symmetric adjacency matrix.
#[derive(Debug, Clone)]
pub struct AgGraph {
    spec: RingSpec,
    vertices: Vec<IdealVector>,
    adjacency: Vec<BitSet>,
    edge_count: usize,
    distances: OnceLock<PackedDistances>,
}

impl AgGraph {
    /// Builds with the cap from [`vertex_cap_from_env`].
    pub fn build(spec: &RingSpec) -> Result<Self> {
        Self::build_with_cap(spec, vertex_cap_from_env()?)
    }

    pub fn build_with_cap(spec: &RingSpec, cap: usize) -> Result<Self> {
        let count = spec.vertex_count();
        if count > cap as u128 {
            return Err(Error::Size { vertices: count, cap });
        }
        let vertices = spec.vertices();
        let n = vertices.len();
        let mut adjacency = vec![BitSet::new(n); n];
        let mut edge_count = 0;
        for u in 0..n {
            for v in u + 1..n {
                if adjacent_unchecked(spec.orders(), vertices[u].exps(), vertices[v].exps()) {
                    adjacency[u].insert(v);
                    adjacency[v].insert(u);
                    edge_count += 1;
                }
            }
        }
        Ok(Self {
            spec: spec.clone(),
            vertices,
            adjacency,
            edge_count,
            distances: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn vertices(&self) -> &[IdealVector] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Index of `v` in the vertex order, or a domain error naming the violated condition.
    pub fn index_of(&self, v: &IdealVector) -> Result<usize> {
        require_vertex(&self.spec, v)?;
        Ok(self.spec.vertex_index(v).expect("checked vertex"))
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Neighbour indices of `u`, ascending.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[u].iter()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn open_neighborhood(&self, v: &IdealVector) -> Result<Vec<IdealVector>> {
        let i = self.index_of(v)?;
        Ok(self.neighbors(i).map(|j| self.vertices[j].clone()).collect())
    }

    /// `N[v]`: `v` with its neighbours, in vertex order.
    pub fn closed_neighborhood(&self, v: &IdealVector) -> Result<Vec<IdealVector>> {
        let i = self.index_of(v)?;
        let mut set = self.adjacency[i].clone();
        set.insert(i);
        Ok(set.iter().map(|j| self.vertices[j].clone()).collect())
    }

    /// All-pairs distances from the closed form, computed once and cached.
    pub fn distances(&self) -> &PackedDistances {
        self.distances.get_or_init(|| {
            let orders = self.spec.orders();
            PackedDistances::from_fn(self.vertex_count(), |u, v| {
                branch_unchecked(orders, self.vertices[u].exps(), self.vertices[v].exps()).distance()
            })
        })
    }

    /// Breadth-first distances from `source`; [`UNREACHABLE`] where no path exists.
    pub fn bfs_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Shortest-path length by BFS on the adjacency matrix.
    pub fn distance_bfs(&self, m: &IdealVector, l: &IdealVector) -> Result<u32> {
        let (u, v) = (self.index_of(m)?, self.index_of(l)?);
        Ok(self.bfs_from(u)[v])
    }

    /// All-pairs distances by BFS from every vertex.
    pub fn bfs_distance_matrix(&self) -> DistanceMatrix {
        let rows = (0..self.vertex_count()).map(|u| self.bfs_from(u)).collect();
        DistanceMatrix::from_rows(rows).expect("square")
    }

    /// Largest pairwise distance; 0 for graphs with at most one vertex.
    pub fn diameter(&self) -> u8 {
        let d = self.distances();
        let n = self.vertex_count();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| d.get(u, v)))
            .max()
            .unwrap_or(0)
    }

    pub fn export(&self, format: ExportFormat, out: &mut impl Write) -> Result<()> {
        match format {
            ExportFormat::Dot => {
                writeln!(out, "graph \"AG({})\" {{", self.spec)?;
                for (i, v) in self.vertices.iter().enumerate() {
                    writeln!(out, "  {i} [label=\"{v}\"];")?;
                }
                for (u, v) in self.edges() {
                    writeln!(out, "  {u} -- {v};")?;
                }
                writeln!(out, "}}")?;
            }
            ExportFormat::Csv => {
                for (u, v) in self.edges() {
                    writeln!(out, "{u},{v}")?;
                }
            }
            ExportFormat::Json => {
                #[derive(Serialize)]
                struct Doc<'a> {
                    spec: &'a RingSpec,
                    vertices: &'a [IdealVector],
                    edges: Vec<(usize, usize)>,
                }
                let doc = Doc {
                    spec: &self.spec,
                    vertices: &self.vertices,
                    edges: self.edges().collect(),
                };
                serde_json::to_writer(&mut *out, &doc).map_err(std::io::Error::from)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

impl Metric for AgGraph {
    fn order(&self) -> usize {
        self.vertex_count()
    }

    fn dist(&self, u: usize, v: usize) -> u32 {
        u32::from(self.distances().get(u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(orders: &[u32]) -> RingSpec {
        RingSpec::new(orders.to_vec()).unwrap()
    }

    fn iv(exps: &[u32]) -> IdealVector {
        IdealVector::new(exps.to_vec())
    }

    fn graph(orders: &[u32]) -> AgGraph {
        AgGraph::build_with_cap(&spec(orders), DEFAULT_VERTEX_CAP).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        let s4 = spec(&[4]);
        assert!(adjacent(&s4, &iv(&[1]), &iv(&[3])).unwrap());
        assert!(!adjacent(&s4, &iv(&[1]), &iv(&[2])).unwrap());
        assert!(!adjacent(&s4, &iv(&[2]), &iv(&[2])).unwrap());
        assert!(adjacent(&spec(&[2, 1]), &iv(&[0, 1]), &iv(&[2, 0])).unwrap());
        let err = adjacent(&s4, &iv(&[0]), &iv(&[3])).unwrap_err().to_string();
        assert!(err.contains("zero annihilator"), "{err}");
        assert!(adjacent(&s4, &iv(&[4]), &iv(&[3])).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let s = spec(&[2, 1]);
        assert_eq!(distance_closed_form(&s, &iv(&[0, 1]), &iv(&[1, 0])).unwrap(), 3);
        assert_eq!(distance_branch(&s, &iv(&[0, 1]), &iv(&[1, 0])).unwrap(), DistanceBranch::LemmaThree);
        assert_eq!(distance_closed_form(&spec(&[4]), &iv(&[1]), &iv(&[2])).unwrap(), 2);
        assert_eq!(distance_closed_form(&spec(&[4]), &iv(&[2]), &iv(&[2])).unwrap(), 0);
        assert_eq!(distance_branch(&spec(&[4]), &iv(&[1]), &iv(&[3])).unwrap(), DistanceBranch::ProductZero);
    }

    #[test]
    fn bfs_examples() {
        let g = graph(&[2, 1]);
        assert_eq!(g.distance_bfs(&iv(&[0, 1]), &iv(&[1, 0])).unwrap(), 3);
        assert_eq!(g.distance_bfs(&iv(&[1, 1]), &iv(&[1, 1])).unwrap(), 0);
        let g = graph(&[1, 1]);
        assert_eq!(g.distance_bfs(&iv(&[0, 1]), &iv(&[1, 0])).unwrap(), 1);
        assert!(g.distance_bfs(&iv(&[1, 1]), &iv(&[1, 0])).is_err());
    }

    #[test]
    fn bfs_reports_unreachable_on_disconnected_input() {
        // AG graphs are always connected; exercise the sentinel on the empty-edge case
        let g = graph(&[2]);
        assert_eq!(g.bfs_from(0), vec![0]);
        let m = DistanceMatrix::from_rows(vec![vec![0, UNREACHABLE], vec![UNREACHABLE, 0]]).unwrap();
        assert_eq!(m.dist(0, 1), UNREACHABLE);
    }

    #[test]
    fn neighborhoods() {
        let g = graph(&[4]);
        assert_eq!(g.closed_neighborhood(&iv(&[3])).unwrap(), vec![iv(&[1]), iv(&[2]), iv(&[3])]);
        assert_eq!(g.closed_neighborhood(&iv(&[1])).unwrap(), vec![iv(&[1]), iv(&[3])]);
        assert_eq!(g.open_neighborhood(&iv(&[1])).unwrap(), vec![iv(&[3])]);
        let g = graph(&[2]);
        assert_eq!(g.closed_neighborhood(&iv(&[1])).unwrap(), vec![iv(&[1])]);
    }

    #[test]
    fn build_examples() {
        let g = graph(&[4]);
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        let g = graph(&[2, 1]);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 3));
        // path (0,1)-(2,0)-(1,1)-(1,0)
        let deg: Vec<usize> = (0..4).map(|u| g.neighbors(u).count()).collect();
        assert_eq!(deg, vec![1, 1, 2, 2]);
        assert_eq!(graph(&[1]).vertex_count(), 0);
        assert_eq!(graph(&[1]).diameter(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let err = AgGraph::build_with_cap(&spec(&[3, 3]), 10).unwrap_err();
        assert!(matches!(err, Error::Size { vertices: 14, cap: 10 }));
        assert!(AgGraph::build_with_cap(&spec(&[3, 3]), 14).is_ok());
    }

    #[test]
    fn exports() {
        let mut buf = Vec::new();
        graph(&[1, 1]).export(ExportFormat::Dot, &mut buf).unwrap();
        let dot = String::from_utf8(buf).unwrap();
        assert_eq!(dot.matches("label=").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert!(dot.contains("\"(0,1)\""));

        let mut buf = Vec::new();
        graph(&[4]).export(ExportFormat::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0,2\n1,2\n");

        let mut buf = Vec::new();
        graph(&[1]).export(ExportFormat::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["vertices"], serde_json::json!([]));
        assert_eq!(v["edges"], serde_json::json!([]));
        assert_eq!(v["spec"], serde_json::json!([1]));

        assert_eq!("DOT".parse::<ExportFormat>().unwrap(), ExportFormat::Dot);
        assert!("png".parse::<ExportFormat>().is_err());
    }

    /// Annihilator neighbourhood `{u : uv = 0}`: the open neighbourhood plus
    /// `v` itself when `v^2 = 0`.
    fn annihilator_neighborhood(g: &AgGraph, v: &IdealVector) -> Vec<IdealVector> {
        let mut out = g.open_neighborhood(v).unwrap();
        if g.spec().is_zero_ideal(&g.spec().product(v, v).unwrap()) {
            out.push(v.clone());
            out.sort();
        }
        out
    }

    #[test]
    fn local_neighborhoods_nest() {
        for n1 in 3..=12u32 {
            let g = graph(&[n1]);
            for k in 1..=n1 - 2 {
                let mut expected = annihilator_neighborhood(&g, &iv(&[k]));
                expected.push(iv(&[n1 - k - 1]));
                expected.sort();
                expected.dedup();
                assert_eq!(annihilator_neighborhood(&g, &iv(&[k + 1])), expected, "n1={n1} k={k}");
            }
        }
        // with N[v] taken literally, v's own membership breaks the recurrence
        let g = graph(&[4]);
        assert_eq!(g.closed_neighborhood(&iv(&[2])).unwrap(), vec![iv(&[2]), iv(&[3])]);
        assert_eq!(g.closed_neighborhood(&iv(&[1])).unwrap(), vec![iv(&[1]), iv(&[3])]);
    }

    #[test]
    fn local_diameter_at_most_two() {
        for n1 in 1..=15u32 {
            assert!(graph(&[n1]).diameter() <= 2, "n1={n1}");
        }
    }

    #[test]
    fn lemma_three_never_fires_on_adjacent_pairs() {
        for orders in [&[3u32, 2, 1][..], &[1, 1, 1, 1], &[4, 4]] {
            let s = spec(orders);
            let vs = s.vertices();
            for m in &vs {
                for l in &vs {
                    let whole = m.exps().iter().zip(l.exps()).all(|(&a, &b)| a.min(b) == 0);
                    let both = s.orders().iter().zip(m.exps().iter().zip(l.exps())).any(|(&n, (&a, &b))| a < n && b < n);
                    if whole && both {
                        assert!(!adjacent(&s, m, l).unwrap());
                    }
                }
            }
        }
    }
}
