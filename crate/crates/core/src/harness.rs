//! Per-ring reports and parameter sweeps checking the closed forms against
//! the exact solver and the BFS oracle.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::constructed_resolving_set;
use crate::distance::Metric;
use crate::error::{Error, Result};
use crate::formulas::{dim_bounds, Case, DimBounds};
use crate::graph::AgGraph;
use crate::metdim::{certify, graph_metric_dimension, Hints, ResolvingSetCertificate, EXACT_VERTEX_CAP};
use crate::ring::{IdealVector, RingSpec};

/// Which distance source feeds the solver and certificates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub enum Oracle {
    #[default]
    Closed,
    Bfs,
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Oracle::Closed),
            "bfs" => Ok(Oracle::Bfs),
            _ => Err(Error::Parse {
                token: s.to_string(),
                reason: "expected `closed` or `bfs`".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    FormulaMatches,
    WithinBounds,
    /// The exact solver was not run, so there is nothing to compare.
    Unverified,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::FormulaMatches => "FormulaMatches",
            Verdict::WithinBounds => "WithinBounds",
            Verdict::Unverified => "UNVERIFIED",
            Verdict::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub exact: bool,
    pub construct: bool,
    /// Compare closed-form and BFS distances on every pair.
    pub check_distances: bool,
    pub oracle: Oracle,
    pub vertex_cap: usize,
    pub exact_cap: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            exact: true,
            construct: true,
            check_distances: true,
            oracle: Oracle::Closed,
            vertex_cap: crate::graph::DEFAULT_VERTEX_CAP,
            exact_cap: EXACT_VERTEX_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimReport {
    pub spec: RingSpec,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub bounds: DimBounds,
    pub exact_solver: Option<u64>,
    pub basis: Option<Vec<IdealVector>>,
    pub constructed_size: usize,
    pub constructed_resolves: Option<bool>,
    /// `None` when the distance check was skipped.
    pub distances_agree: Option<bool>,
    pub verdict: Verdict,
    pub ms_build: u128,
    pub ms_solve: u128,
}

impl DimReport {
    /// Human-readable reasons the verdict is `MISMATCH`; empty otherwise.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.distances_agree == Some(false) {
            out.push("closed-form and BFS distances disagree".to_string());
        }
        if self.constructed_resolves == Some(false) {
            out.push("constructed set does not resolve".to_string());
        }
        if self.constructed_resolves.is_some() && self.constructed_size as u64 != self.bounds.upper {
            out.push(format!(
                "constructed set has {} vertices, upper bound is {}",
                self.constructed_size, self.bounds.upper
            ));
        }
        if let Some(d) = self.exact_solver {
            if d < self.bounds.lower || d > self.bounds.upper {
                out.push(format!("solver value {d} outside [{}, {}]", self.bounds.lower, self.bounds.upper));
            }
        }
        out
    }
}

/// True iff closed-form distances equal BFS distances on every pair.
pub fn distances_agree(graph: &AgGraph) -> bool {
    let closed = graph.distances();
    let n = graph.vertex_count();
    (0..n).all(|u| {
        let bfs = graph.bfs_from(u);
        (0..n).all(|v| closed.dist(u, v) == bfs[v])
    })
}

/// Everything the harness knows about one ring.
pub fn dim_report(spec: &RingSpec, opts: &ReportOptions) -> Result<(DimReport, Option<ResolvingSetCertificate>)> {
    let t0 = Instant::now();
    let graph = AgGraph::build_with_cap(spec, opts.vertex_cap)?;
    let bfs = (opts.oracle == Oracle::Bfs).then(|| graph.bfs_distance_matrix());
    let metric: &(dyn Metric + Sync) = match &bfs {
        Some(m) => m,
        None => {
            graph.distances();
            &graph
        }
    };
    let ms_build = t0.elapsed().as_millis();

    let bounds = dim_bounds(spec);
    let distances_agree = opts.check_distances.then(|| distances_agree(&graph));

    let constructed = constructed_resolving_set(spec);
    let certificate = if opts.construct {
        Some(certify(&graph, metric, &constructed)?)
    } else {
        None
    };

    let t1 = Instant::now();
    let solved = if opts.exact {
        if graph.vertex_count() > opts.exact_cap {
            return Err(Error::Size {
                vertices: graph.vertex_count() as u128,
                cap: opts.exact_cap,
            });
        }
        let basis = crate::metdim::exact_metric_dimension(metric, Hints::default())?;
        let labels = basis.basis.iter().map(|&i| graph.vertices()[i].clone()).collect();
        Some((basis.dimension as u64, labels))
    } else {
        None
    };
    let ms_solve = t1.elapsed().as_millis();

    let mut report = DimReport {
        spec: spec.clone(),
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count(),
        bounds,
        exact_solver: solved.as_ref().map(|s| s.0),
        basis: solved.map(|s| s.1),
        constructed_size: constructed.len(),
        constructed_resolves: certificate.as_ref().map(|c| c.resolves),
        distances_agree,
        verdict: Verdict::Unverified,
        ms_build,
        ms_solve,
    };
    report.verdict = if !report.problems().is_empty() {
        Verdict::Mismatch
    } else if report.exact_solver.is_none() {
        Verdict::Unverified
    } else if bounds.case == Case::General && bounds.exact.is_none() {
        Verdict::WithinBounds
    } else {
        Verdict::FormulaMatches
    };
    Ok((report, certificate))
}

/// Convenience wrapper around [`graph_metric_dimension`] for a spec.
pub fn solve_spec(spec: &RingSpec, vertex_cap: usize) -> Result<(usize, Vec<IdealVector>)> {
    graph_metric_dimension(&AgGraph::build_with_cap(spec, vertex_cap)?, Hints::default())
}

/// Sweep grid: every tuple with `1..=max_factors` entries in `1..=max_order`,
/// keeping only descending tuples unless `ordered`, and dropping rings with
/// more than `max_vertices` vertices. Sorted by factor count, then orders.
pub fn spec_grid(max_factors: usize, max_order: u32, max_vertices: Option<u128>, ordered: bool) -> Vec<RingSpec> {
    fn rec(prefix: &mut Vec<u32>, max_factors: usize, max_order: u32, ordered: bool, out: &mut Vec<Vec<u32>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_factors {
            return;
        }
        let top = if ordered { max_order } else { prefix.last().copied().unwrap_or(max_order) };
        for n in 1..=top {
            prefix.push(n);
            rec(prefix, max_factors, max_order, ordered, out);
            prefix.pop();
        }
    }
    let mut tuples = Vec::new();
    rec(&mut Vec::new(), max_factors, max_order, ordered, &mut tuples);
    let mut specs: Vec<RingSpec> = tuples
        .into_iter()
        .map(|t| RingSpec::new(t).expect("orders >= 1"))
        .filter(|s| max_vertices.is_none_or(|cap| s.vertex_count() <= cap))
        .collect();
    specs.sort_by(|a, b| a.factor_count().cmp(&b.factor_count()).then_with(|| a.orders().cmp(b.orders())));
    specs
}

/// Reports for every spec, computed in parallel on the current rayon pool
/// and returned in input order.
pub fn sweep(specs: &[RingSpec], opts: &ReportOptions) -> Result<Vec<DimReport>> {
    specs.par_iter().map(|s| dim_report(s, opts).map(|(r, _)| r)).collect()
}

pub const CSV_HEADER: [&str; 13] = [
    "spec",
    "beta",
    "case",
    "vertices",
    "edges",
    "lower",
    "upper",
    "exact",
    "constructed_size",
    "constructed_resolves",
    "verdict",
    "ms_build",
    "ms_solve",
];

/// Writes the sweep CSV. Timing columns stay empty unless `timings` is set,
/// so that reports diff cleanly across runs.
pub fn write_csv(reports: &[DimReport], timings: bool, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(io)?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in reports {
        w.write_record([
            r.spec.to_string(),
            r.bounds.beta.to_string(),
            r.bounds.case.to_string(),
            r.vertex_count.to_string(),
            r.edge_count.to_string(),
            r.bounds.lower.to_string(),
            r.bounds.upper.to_string(),
            opt(r.exact_solver.map(|d| d.to_string())),
            r.constructed_size.to_string(),
            opt(r.constructed_resolves.map(|b| b.to_string())),
            r.verdict.to_string(),
            if timings { r.ms_build.to_string() } else { String::new() },
            if timings { r.ms_solve.to_string() } else { String::new() },
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(orders: &[u32]) -> RingSpec {
        RingSpec::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(spec_grid(2, 5, None, false).len(), 20);
        assert_eq!(spec_grid(2, 5, None, true).len(), 30);
        assert_eq!(spec_grid(1, 9, None, false).len(), 9);
        // 3 + 6 + 10 descending tuples over {1,2,3}
        assert_eq!(spec_grid(3, 3, None, false).len(), 19);
        assert_eq!(spec_grid(3, 3, Some(14), false).len(), 3 + 6 + 3);
        let g = spec_grid(3, 2, None, false);
        assert!(g.iter().all(|s| s.orders().windows(2).all(|w| w[0] >= w[1])));
        assert_eq!(g[0], spec(&[1]));
    }

    #[test]
    fn report_examples() {
        let (r, cert) = dim_report(&spec(&[2, 2]), &ReportOptions::default()).unwrap();
        assert_eq!(r.exact_solver, Some(2));
        assert_eq!(r.constructed_size, 2);
        assert_eq!(r.constructed_resolves, Some(true));
        assert_eq!(r.verdict, Verdict::FormulaMatches);
        assert!(cert.unwrap().resolves);

        let (r, _) = dim_report(&spec(&[1, 1, 1]), &ReportOptions::default()).unwrap();
        assert_eq!(r.exact_solver, Some(2));
        assert_eq!((r.bounds.lower, r.bounds.upper), (2, 3));
        assert_eq!(r.verdict, Verdict::WithinBounds);

        let (r, _) = dim_report(&spec(&[1]), &ReportOptions::default()).unwrap();
        assert_eq!((r.vertex_count, r.exact_solver), (0, Some(0)));
    }

    #[test]
    fn bfs_oracle_gives_same_report() {
        let closed = dim_report(&spec(&[3, 2]), &ReportOptions::default()).unwrap().0;
        let bfs_opts = ReportOptions { oracle: Oracle::Bfs, ..Default::default() };
        let bfs = dim_report(&spec(&[3, 2]), &bfs_opts).unwrap().0;
        assert_eq!(closed.exact_solver, bfs.exact_solver);
        assert_eq!(closed.basis, bfs.basis);
    }

    #[test]
    fn exact_cap_is_enforced() {
        let opts = ReportOptions { exact_cap: 5, ..Default::default() };
        assert!(matches!(dim_report(&spec(&[3, 3]), &opts), Err(Error::Size { .. })));
        let opts = ReportOptions { exact: false, exact_cap: 5, ..Default::default() };
        let (r, _) = dim_report(&spec(&[3, 3]), &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Unverified);
    }

    #[test]
    fn csv_layout() {
        let reports = sweep(&[spec(&[4]), spec(&[2, 1])], &ReportOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_csv(&reports, false, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(lines[1], "4,0,Local,3,2,1,1,1,1,true,FormulaMatches,,");
        assert_eq!(lines[2], "\"2,1\",1,TwoMaximal,4,3,1,1,1,1,true,FormulaMatches,,");
    }
}
